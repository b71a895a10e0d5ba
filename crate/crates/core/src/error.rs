use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("cannot mutate at frozen node `{0}`")]
    FrozenNode(String),
    #[error("not a bijection on the node set: {0}")]
    NotBijection(String),
    #[error("invalid triangulation: {0}")]
    Triangulation(String),
    #[error("flip not supported: {0}")]
    Flip(String),
    #[error("invalid web: {0}")]
    Web(String),
    #[error("monomial not balanced at `{node}`: exponent {alpha} is not an integer")]
    Unbalanced { node: String, alpha: String },
    #[error("non-integral exponent at `{0}`")]
    NonIntegral(String),
    #[error("denominator at `{factor}` cannot be transported through the mutation at `{node}`")]
    Transport { factor: String, node: String },
    #[error("{0}")]
    Other(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

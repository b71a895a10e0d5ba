//! Command-line front end. Exit codes: 0 success, 1 verification failure, 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sl3qt::cli::{self, Outcome, Render, Style};
use sl3qt::trace::StatePair;
use sl3qt::verify::criteria::Options;

#[derive(Parser)]
#[command(name = "sl3qt", version, about = "Quantum SL3 traces, mutations and flip checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct StyleArgs {
    /// Print values at w = 1.
    #[arg(long)]
    omega_one: bool,
    /// canonical or latex-like.
    #[arg(long, default_value = "canonical", value_parser = parse_render)]
    render: Render,
}

impl From<StyleArgs> for Style {
    fn from(a: StyleArgs) -> Style {
        Style { render: a.render, omega_one: a.omega_one }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Mutate a seed (or the quiver of a triangulation) at each node in turn.
    Mutate {
        seed: PathBuf,
        #[arg(required = true)]
        nodes: Vec<String>,
    },
    /// Quantum trace of each web in every state.
    Trace {
        surface: PathBuf,
        webs: PathBuf,
        #[arg(long)]
        web: Option<String>,
        /// Boundary states as `e1,e2`.
        #[arg(long, value_parser = parse_state)]
        state: Option<StatePair>,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Compare both sides of the coordinate change across a flip of `arc`.
    FlipCheck {
        surface: PathBuf,
        arc: String,
        webs: PathBuf,
        #[arg(long)]
        web: Option<String>,
        #[arg(long, value_parser = parse_state)]
        state: Option<StatePair>,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Check mutation relations: `all`, `involution:v`, `square:v,w`,
    /// `pentagon:v,w`, or a word of node ids and `swap:v,w`.
    Consistency { seed: PathBuf, relation: String },
    /// Trace values and exponent tables of the webs across a flip.
    Tables {
        surface: PathBuf,
        arc: String,
        webs: PathBuf,
        #[arg(long)]
        web: Option<String>,
    },
    /// Run the acceptance criteria on the bundled data.
    VerifyAll {
        /// Criteria to run, 1..9; all when omitted.
        #[arg(long = "only", value_delimiter = ',')]
        only: Vec<usize>,
        /// Print passing checks too.
        #[arg(long)]
        verbose: bool,
        /// Rewrite the golden files instead of comparing against them.
        #[arg(long)]
        regen_golden: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn parse_state(s: &str) -> Result<StatePair, String> {
    StatePair::parse(s).map_err(|e| e.to_string())
}

fn parse_render(s: &str) -> Result<Render, String> {
    Render::parse(s).map_err(|e| e.to_string())
}

fn read(p: &Path) -> Result<String, String> {
    std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
}

fn dispatch(cmd: Cmd) -> Result<Outcome, String> {
    let lib = |r: sl3qt::Result<Outcome>| r.map_err(|e| e.to_string());
    match cmd {
        Cmd::Mutate { seed, nodes } => lib(cli::mutate(&read(&seed)?, &nodes)),
        Cmd::Trace { surface, webs, web, state, style } => {
            lib(cli::trace(&read(&surface)?, &read(&webs)?, web.as_deref(), state, style.into()))
        }
        Cmd::FlipCheck { surface, arc, webs, web, state, style } => {
            lib(cli::flip_check(&read(&surface)?, &arc, &read(&webs)?, web.as_deref(), state, style.into()))
        }
        Cmd::Consistency { seed, relation } => lib(cli::consistency(&read(&seed)?, &relation)),
        Cmd::Tables { surface, arc, webs, web } => lib(cli::tables(&read(&surface)?, &arc, &read(&webs)?, web.as_deref())),
        Cmd::VerifyAll { only, verbose, regen_golden, golden_dir, samples } => {
            let mut opts = Options { regen_golden, samples, ..Options::default() };
            if let Some(d) = golden_dir {
                opts.golden_dir = d;
            }
            lib(cli::verify_all(&opts, &only, verbose))
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().cmd) {
        Ok(o) => {
            print!("{}", o.text);
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Exact scalars: half-integers, third-integers and the ring `Z[w^{±1/2}]`.
//!
//! The quantum parameter `q` is `w^9`. Every exponent is stored scaled to an
//! integer so that no fraction arithmetic appears in hot paths.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;

/// `m` in `(1/2)Z`, stored as `2m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    pub doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// Integer value, if there is one.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }

    /// Parses `p`, `p/2` or `p/1`.
    pub fn parse(s: &str) -> Option<Self> {
        parse_fraction(s, 2).map(HalfInt::from_doubled)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_fraction(self.doubled, 2))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + o.doubled)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - o.doubled)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_doubled(-self.doubled)
    }
}

/// `a` in `(1/3)Z`, stored as `3a`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThirdInt {
    pub tripled: i64,
}

impl ThirdInt {
    pub const ZERO: ThirdInt = ThirdInt { tripled: 0 };

    pub fn from_tripled(tripled: i64) -> Self {
        ThirdInt { tripled }
    }

    pub fn from_int(n: i64) -> Self {
        ThirdInt { tripled: 3 * n }
    }

    pub fn is_integer(self) -> bool {
        self.tripled % 3 == 0
    }

    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.tripled / 3)
    }

    pub fn parse(s: &str) -> Option<Self> {
        parse_fraction(s, 3).map(ThirdInt::from_tripled)
    }
}

impl fmt::Display for ThirdInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_fraction(self.tripled, 3))
    }
}

impl Add for ThirdInt {
    type Output = ThirdInt;
    fn add(self, o: ThirdInt) -> ThirdInt {
        ThirdInt::from_tripled(self.tripled + o.tripled)
    }
}

impl Sub for ThirdInt {
    type Output = ThirdInt;
    fn sub(self, o: ThirdInt) -> ThirdInt {
        ThirdInt::from_tripled(self.tripled - o.tripled)
    }
}

impl Neg for ThirdInt {
    type Output = ThirdInt;
    fn neg(self) -> ThirdInt {
        ThirdInt::from_tripled(-self.tripled)
    }
}

/// `num/den` reduced, with the denominator omitted when it is 1.
pub fn render_fraction(num: i64, den: i64) -> String {
    let g = num.gcd(&den);
    let (n, d) = (num / g, den / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// Parses `p` or `p/d'` into units of `1/den`; `d'` must divide `den`.
fn parse_fraction(s: &str, den: i64) -> Option<i64> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<i64>().ok().map(|n| n * den),
        Some((p, d)) => {
            let p: i64 = p.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d <= 0 || den % d != 0 {
                return None;
            }
            Some(p * (den / d))
        }
    }
}

/// Element of `Z[w^{±1/2}]`: map from ω-exponent to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OmegaPoly {
    terms: BTreeMap<HalfInt, i64>,
}

impl OmegaPoly {
    pub fn zero() -> Self {
        OmegaPoly::default()
    }

    pub fn one() -> Self {
        OmegaPoly::monomial(1, HalfInt::ZERO)
    }

    pub fn constant(c: i64) -> Self {
        OmegaPoly::monomial(c, HalfInt::ZERO)
    }

    /// `c·w^{e}`.
    pub fn monomial(c: i64, e: HalfInt) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        OmegaPoly { terms }
    }

    /// `w^{doubled/2}`.
    pub fn omega_half(doubled: i64) -> Self {
        OmegaPoly::monomial(1, HalfInt::from_doubled(doubled))
    }

    /// `q^n = w^{9n}`.
    pub fn q_pow(n: i64) -> Self {
        OmegaPoly::omega_half(18 * n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (HalfInt, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term `±w^m`, if this is one.
    pub fn as_signed_unit(&self) -> Option<(i64, HalfInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        (c.abs() == 1).then_some((*c, *e))
    }

    pub fn add_term(&mut self, c: i64, e: HalfInt) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    /// Multiplies by `w^{doubled/2}`.
    pub fn shift(&self, doubled: i64) -> Self {
        OmegaPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (HalfInt::from_doubled(e.doubled + doubled), *c))
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return OmegaPoly::zero();
        }
        OmegaPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Value at `w^{1/2} = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| render_signed_power(*c, *e))
            .collect();
        parts.join(" ")
    }

    /// Same ring element with `w^{1/2}` written as `\omega^{1/2}`.
    pub fn render_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            out.push_str(sign);
            if mag != 1 || e.doubled == 0 {
                out.push_str(&mag.to_string());
            }
            if e.doubled != 0 {
                out.push_str(&format!("\\omega^{{{e}}}"));
            }
        }
        out
    }
}

/// `+w^{e}`, `-w^{e}` or `+3w^{e}`.
pub fn render_signed_power(c: i64, e: HalfInt) -> String {
    let sign = if c < 0 { '-' } else { '+' };
    let mag = c.abs();
    if mag == 1 {
        format!("{sign}w^{{{e}}}")
    } else {
        format!("{sign}{mag}w^{{{e}}}")
    }
}

impl fmt::Display for OmegaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn ring_add(a: &OmegaPoly, b: &OmegaPoly) -> OmegaPoly {
    let mut out = a.clone();
    for (e, c) in b.terms() {
        out.add_term(c, e);
    }
    out
}

pub fn ring_mul(a: &OmegaPoly, b: &OmegaPoly) -> OmegaPoly {
    let mut out = OmegaPoly::zero();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            out.add_term(ca * cb, ea + eb);
        }
    }
    out
}

/// `[n]_q = sum_{j<n} q^{n-1-2j}`.
pub fn quantum_integer(n: u32) -> OmegaPoly {
    let n = i64::from(n);
    let mut out = OmegaPoly::zero();
    for j in 0..n {
        out.add_term(1, HalfInt::from_doubled(18 * (n - 1 - 2 * j)));
    }
    out
}

/// `w^{1/2} -> w^{-1/2}`.
pub fn coeff_star(a: &OmegaPoly) -> OmegaPoly {
    OmegaPoly {
        terms: a.terms.iter().map(|(e, c)| (-*e, *c)).collect(),
    }
}

impl Add for &OmegaPoly {
    type Output = OmegaPoly;
    fn add(self, o: &OmegaPoly) -> OmegaPoly {
        ring_add(self, o)
    }
}

impl AddAssign<&OmegaPoly> for OmegaPoly {
    fn add_assign(&mut self, o: &OmegaPoly) {
        for (e, c) in o.terms() {
            self.add_term(c, e);
        }
    }
}

impl Sub for &OmegaPoly {
    type Output = OmegaPoly;
    fn sub(self, o: &OmegaPoly) -> OmegaPoly {
        ring_add(self, &o.scale(-1))
    }
}

impl Mul for &OmegaPoly {
    type Output = OmegaPoly;
    fn mul(self, o: &OmegaPoly) -> OmegaPoly {
        ring_mul(self, o)
    }
}

impl Neg for &OmegaPoly {
    type Output = OmegaPoly;
    fn neg(self) -> OmegaPoly {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: i64) -> OmegaPoly {
        OmegaPoly::omega_half(d)
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!(ring_add(&OmegaPoly::one(), &OmegaPoly::constant(-1)).is_zero());
    }

    #[test]
    fn equal_half_powers_add() {
        let s = ring_add(&w(1), &w(1));
        assert_eq!(s, OmegaPoly::monomial(2, HalfInt::from_doubled(1)));
        assert_eq!(s.render(), "+2w^{1/2}");
    }

    #[test]
    fn q_times_q_is_w18() {
        assert_eq!(ring_mul(&OmegaPoly::q_pow(1), &OmegaPoly::q_pow(1)), w(36));
        assert_eq!(ring_mul(&w(1), &w(-1)), OmegaPoly::one());
    }

    #[test]
    fn difference_of_squares() {
        let a = ring_add(&OmegaPoly::one(), &OmegaPoly::q_pow(1));
        let b = ring_add(&OmegaPoly::one(), &OmegaPoly::q_pow(1).scale(-1));
        let expect = ring_add(&OmegaPoly::one(), &OmegaPoly::q_pow(2).scale(-1));
        assert_eq!(ring_mul(&a, &b), expect);
    }

    #[test]
    fn quantum_integers() {
        assert!(quantum_integer(0).is_zero());
        assert_eq!(quantum_integer(1), OmegaPoly::one());
        let three = ring_add(&ring_add(&OmegaPoly::q_pow(2), &OmegaPoly::one()), &OmegaPoly::q_pow(-2));
        assert_eq!(quantum_integer(3), three);
    }

    #[test]
    fn star_negates_exponents() {
        assert_eq!(coeff_star(&w(1)), w(-1));
        assert_eq!(coeff_star(&OmegaPoly::constant(7)), OmegaPoly::constant(7));
    }

    #[test]
    fn rendering_is_decreasing_and_reduced() {
        let p = ring_add(&ring_add(&w(7), &OmegaPoly::constant(-3)), &w(4));
        assert_eq!(p.render(), "+w^{7/2} +w^{2} -3w^{0}");
        assert_eq!(OmegaPoly::zero().render(), "0");
    }

    #[test]
    fn fraction_parsing() {
        assert_eq!(HalfInt::parse("-1/2"), Some(HalfInt::from_doubled(-1)));
        assert_eq!(HalfInt::parse("2/2"), Some(HalfInt::from_int(1)));
        assert_eq!(HalfInt::parse("1/3"), None);
        assert_eq!(ThirdInt::parse("2/3"), Some(ThirdInt::from_tripled(2)));
        assert_eq!(ThirdInt::from_tripled(-4).to_string(), "-4/3");
    }
}

//! Exact scalar arithmetic for the phase ring.
//!
//! Scalars are Laurent polynomials in a unimodular phase `t` with
//! Gaussian-rational coefficients. Under the default half-angle convention
//! `t = e^{i pi theta}`, so `t^2 = e(theta)` is the rotation phase and the
//! involution sends `t^k` to `t^-k`.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;
use thiserror::Error;

/// A Gaussian rational `re + im*i` with arbitrary-precision parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse, if nonzero.
    pub fn inverse(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussianRational::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl std::ops::Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl std::ops::Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl std::ops::Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl std::ops::Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl std::ops::Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl std::ops::Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl std::ops::Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl std::ops::Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = |f: &mut fmt::Formatter<'_>, v: &BigRational, lead_sign: bool| {
            let mag = v.abs();
            let sign = if v.is_negative() {
                "-"
            } else if lead_sign {
                "+"
            } else {
                ""
            };
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}i")
            }
        };
        if self.re.is_zero() {
            return imag(f, &self.im, false);
        }
        write!(f, "{}", self.re)?;
        imag(f, &self.im, true)
    }
}

/// Structural error while reading scalars or elements back from JSON.
#[derive(Debug, Error)]
pub enum JsonFormatError {
    #[error("expected a JSON array of terms")]
    NotArray,
    #[error("term {index}: {message}")]
    BadTerm { index: usize, message: String },
}

/// An exact scalar: a finite sum `sum_k c_k t^k` with Gaussian-rational `c_k`.
///
/// Invariant: stored coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhaseScalar {
    terms: BTreeMap<i64, GaussianRational>,
}

impl PhaseScalar {
    pub fn zero() -> Self {
        PhaseScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        PhaseScalar::single(0, GaussianRational::one())
    }

    /// The monomial `c * t^k`.
    pub fn single(k: i64, coeff: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(k, coeff);
        }
        PhaseScalar { terms }
    }

    pub fn t_pow(k: i64) -> Self {
        PhaseScalar::single(k, GaussianRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        PhaseScalar::single(0, GaussianRational::from_integer(n))
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        PhaseScalar::single(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&0).map(GaussianRational::is_one).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> GaussianRational {
        self.terms.get(&k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, k: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Complex conjugation: coefficients conjugate and `t^k` becomes `t^-k`,
    /// because `t` is unimodular.
    pub fn conj(&self) -> Self {
        let mut out = PhaseScalar::zero();
        for (k, c) in &self.terms {
            out.insert_add(-k, &c.conj());
        }
        out
    }

    /// Shift every exponent by `k`, i.e. multiply by `t^k`.
    pub fn times_t_pow(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(j, c)| (j + k, c.clone()))
            .collect();
        PhaseScalar { terms }
    }

    /// The value as an exact rational number, when the scalar is a real
    /// constant (no `t` powers, no imaginary part).
    pub fn as_rational_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().expect("nonempty");
        if *k == 0 && c.im.is_zero() {
            Some(c.re.clone())
        } else {
            None
        }
    }

    /// Inverse when the scalar is a single unit monomial `c * t^k`.
    pub fn inverse_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        Some(PhaseScalar::single(-k, c.inverse()?))
    }

    /// Evaluate at `t = e^{i pi theta}` (the half-angle convention).
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.eval_at(Complex64::from_polar(1.0, std::f64::consts::PI * theta))
    }

    /// Evaluate at an explicit value of `t`.
    pub fn eval_at(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            acc += c.to_complex() * t.powi(*k as i32);
        }
        acc
    }

    /// Serialize as an ordered array of `{k, re, im}` objects with exact
    /// rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                serde_json::json!({
                    "k": k,
                    "re": c.re.to_string(),
                    "im": c.im.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(arr)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, JsonFormatError> {
        let arr = value.as_array().ok_or(JsonFormatError::NotArray)?;
        let mut out = PhaseScalar::zero();
        for (index, item) in arr.iter().enumerate() {
            let bad = |message: &str| JsonFormatError::BadTerm {
                index,
                message: message.to_string(),
            };
            let k = item
                .get("k")
                .and_then(serde_json::Value::as_i64)
                .ok_or_else(|| bad("missing integer field `k`"))?;
            let rat = |field: &str| -> Result<BigRational, JsonFormatError> {
                let s = item
                    .get(field)
                    .and_then(serde_json::Value::as_str)
                    .ok_or_else(|| bad(&format!("missing string field `{field}`")))?;
                s.parse::<BigRational>()
                    .map_err(|e| bad(&format!("field `{field}`: {e}")))
            };
            let c = GaussianRational::new(rat("re")?, rat("im")?);
            out.insert_add(k, &c);
        }
        Ok(out)
    }
}

impl std::ops::Add for &PhaseScalar {
    type Output = PhaseScalar;
    fn add(self, rhs: &PhaseScalar) -> PhaseScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, c);
        }
        out
    }
}

impl std::ops::Sub for &PhaseScalar {
    type Output = PhaseScalar;
    fn sub(self, rhs: &PhaseScalar) -> PhaseScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, &-c);
        }
        out
    }
}

impl std::ops::Mul for &PhaseScalar {
    type Output = PhaseScalar;
    fn mul(self, rhs: &PhaseScalar) -> PhaseScalar {
        let mut out = PhaseScalar::zero();
        for (j, a) in &self.terms {
            for (k, b) in &rhs.terms {
                out.insert_add(j + k, &(a * b));
            }
        }
        out
    }
}

impl std::ops::Neg for &PhaseScalar {
    type Output = PhaseScalar;
    fn neg(self) -> PhaseScalar {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c)).collect();
        PhaseScalar { terms }
    }
}

impl std::ops::Add for PhaseScalar {
    type Output = PhaseScalar;
    fn add(self, rhs: PhaseScalar) -> PhaseScalar {
        &self + &rhs
    }
}

impl std::ops::Sub for PhaseScalar {
    type Output = PhaseScalar;
    fn sub(self, rhs: PhaseScalar) -> PhaseScalar {
        &self - &rhs
    }
}

impl std::ops::Mul for PhaseScalar {
    type Output = PhaseScalar;
    fn mul(self, rhs: PhaseScalar) -> PhaseScalar {
        &self * &rhs
    }
}

impl std::ops::Neg for PhaseScalar {
    type Output = PhaseScalar;
    fn neg(self) -> PhaseScalar {
        -&self
    }
}

/// The `t^k` factor as source text, or `None` when `k = 0`.
pub(crate) fn t_factor(k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some("t".to_string()),
        _ => Some(format!("t^{k}")),
    }
}

/// Render one summand `c * <factors>` and push it onto `out`, choosing the
/// joining operator. Real coefficients absorb their sign into the join;
/// non-real ones are parenthesized so the text re-parses unambiguously.
pub(crate) fn push_term(out: &mut String, c: &GaussianRational, factors: &[String]) {
    let first = out.is_empty();
    let tail = factors.join(" ");
    if c.is_real() {
        let neg = c.re.is_negative();
        let mag = c.re.abs();
        out.push_str(match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        if tail.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&tail);
        } else {
            out.push_str(&format!("{mag} {tail}"));
        }
    } else if tail.is_empty() {
        // bare constant: pull a leading minus into the join so a following
        // reader never sees "+ -"; a sign in front of a number binds to the
        // real part only, so just the leading component flips
        let leads_negative = if c.re.is_zero() {
            c.im.is_negative()
        } else {
            c.re.is_negative()
        };
        match (first, leads_negative) {
            (true, _) => out.push_str(&c.to_string()),
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&c.to_string());
            }
            (false, true) => {
                let flipped = if c.re.is_zero() {
                    GaussianRational::new(c.re.clone(), -c.im.clone())
                } else {
                    GaussianRational::new(-c.re.clone(), c.im.clone())
                };
                out.push_str(" - ");
                out.push_str(&flipped.to_string());
            }
        }
    } else {
        if !first {
            out.push_str(" + ");
        }
        out.push_str(&format!("({c}) {tail}"));
    }
}

impl fmt::Display for PhaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in &self.terms {
            let factors: Vec<String> = t_factor(*k).into_iter().collect();
            push_term(&mut out, c, &factors);
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn gaussian_inverse_round_trip() {
        let c = GaussianRational::new(rat(3, 4), rat(-2, 5));
        let inv = c.inverse().unwrap();
        assert!((c * inv).is_one());
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn conjugation_flips_phase_exponents() {
        let s = PhaseScalar::t_pow(3) + PhaseScalar::single(-1, GaussianRational::i());
        let c = s.conj();
        assert_eq!(c.coeff(-3), GaussianRational::one());
        assert_eq!(c.coeff(1), -GaussianRational::i());
        // conj is an involution
        assert_eq!(c.conj(), s);
    }

    #[test]
    fn multiplication_adds_exponents() {
        let a = PhaseScalar::t_pow(2) + PhaseScalar::from_integer(1);
        let b = PhaseScalar::t_pow(-2) - PhaseScalar::from_integer(1);
        // (t^2 + 1)(t^-2 - 1) = t^-2 - t^2
        let p = &a * &b;
        assert_eq!(p, PhaseScalar::t_pow(-2) - PhaseScalar::t_pow(2));
    }

    #[test]
    fn eval_matches_unit_circle() {
        let theta = 0.37;
        let s = PhaseScalar::t_pow(2);
        let v = s.eval(theta);
        // t^2 = e(theta)
        let expect = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta);
        assert!((v - expect).norm() < 1e-12);
        // |t^k| = 1 so conj evaluates to the complex conjugate
        let w = s.conj().eval(theta);
        assert!((w - v.conj()).norm() < 1e-12);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let s = PhaseScalar::single(-2, GaussianRational::new(rat(1, 3), rat(-7, 2)))
            + PhaseScalar::from_integer(4);
        let j = s.to_json();
        let back = PhaseScalar::from_json(&j).unwrap();
        assert_eq!(back, s);
        // serialization is ordered by exponent
        let arr = j.as_array().unwrap();
        assert_eq!(arr[0]["k"], -2);
        assert_eq!(arr[1]["k"], 0);
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(PhaseScalar::zero().to_string(), "0");
        assert_eq!(PhaseScalar::t_pow(1).to_string(), "t");
        assert_eq!((-PhaseScalar::t_pow(-2)).to_string(), "-t^-2");
        let s = PhaseScalar::from_integer(2) - PhaseScalar::single(3, GaussianRational::i());
        assert_eq!(s.to_string(), "2 + (-i) t^3");
        let c = PhaseScalar::single(1, GaussianRational::new(rat(1, 2), rat(-1, 1)));
        assert_eq!(c.to_string(), "(1/2-i) t");
        let g = PhaseScalar::from_gaussian(GaussianRational::new(rat(-2, 1), rat(3, 1)));
        assert_eq!(g.to_string(), "-2+3i");
    }
}

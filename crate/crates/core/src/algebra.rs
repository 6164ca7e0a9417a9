//! The symbolic rotation algebra.
//!
//! Elements are finite Laurent polynomials `sum a_mn U^m V^n` with
//! [`PhaseScalar`] coefficients, multiplied through the Heisenberg relation.
//! Under the half-angle convention `t = e^{i pi theta}` the relation reads
//! `V U = t^2 U V`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::phase::{push_term, t_factor, JsonFormatError, PhaseScalar};

/// Which unimodular phase the formal variable `t` stands for.
///
/// Every identity in this crate is stated for [`PhaseConvention::HalfAngle`],
/// where `t = e^{i pi theta}` and the rotation phase is `t^2`. The full-angle
/// variant (`t = e^{2 i pi theta}`) is supported for plain ring arithmetic so
/// that mixing the two conventions is a detectable error rather than a silent
/// exponent bug, but automorphism and trace formulas need half-integer
/// rotation phases and therefore reject it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseConvention {
    HalfAngle,
    FullAngle,
}

/// How a 2x2 integer matrix maps to generator images.
///
/// The only supported layout is `[a c; b d]` acting by columns: `(a, b)` are
/// the exponents of the image of `U` and `(c, d)` those of the image of `V`.
/// The record exists so the convention travels with the data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixLayout {
    ColumnGenerators,
}

/// Shared convention record carried by every element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgebraContext {
    pub t_definition: PhaseConvention,
    pub matrix_layout: MatrixLayout,
}

impl AlgebraContext {
    /// Half-angle phases, column-to-generator matrices.
    pub fn standard() -> Self {
        AlgebraContext {
            t_definition: PhaseConvention::HalfAngle,
            matrix_layout: MatrixLayout::ColumnGenerators,
        }
    }

    pub fn full_angle() -> Self {
        AlgebraContext {
            t_definition: PhaseConvention::FullAngle,
            matrix_layout: MatrixLayout::ColumnGenerators,
        }
    }

    pub fn is_half_angle(&self) -> bool {
        self.t_definition == PhaseConvention::HalfAngle
    }

    /// Exponent of `t` produced by commuting `V^n` past `U^p`.
    fn commutation_exponent(&self, n: i64, p: i64) -> i64 {
        match self.t_definition {
            PhaseConvention::HalfAngle => 2 * n * p,
            PhaseConvention::FullAngle => n * p,
        }
    }

    /// Exponent of `t` in `(U^k V^l)^m`.
    fn power_exponent(&self, k: i64, l: i64, m: i64) -> i64 {
        match self.t_definition {
            PhaseConvention::HalfAngle => k * l * m * (m - 1),
            // m(m-1) is even, so this divides exactly
            PhaseConvention::FullAngle => k * l * m * (m - 1) / 2,
        }
    }

    /// Exponent of `t` in `(U^m V^n)*`.
    fn adjoint_exponent(&self, m: i64, n: i64) -> i64 {
        match self.t_definition {
            PhaseConvention::HalfAngle => 2 * m * n,
            PhaseConvention::FullAngle => m * n,
        }
    }

    /// Numeric value of `t` at a given `theta`.
    pub fn t_value(&self, theta: f64) -> Complex64 {
        let angle = match self.t_definition {
            PhaseConvention::HalfAngle => std::f64::consts::PI * theta,
            PhaseConvention::FullAngle => 2.0 * std::f64::consts::PI * theta,
        };
        Complex64::from_polar(1.0, angle)
    }
}

impl Default for AlgebraContext {
    fn default() -> Self {
        AlgebraContext::standard()
    }
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("context mismatch: left uses {left:?}, right uses {right:?}")]
    ContextMismatch {
        left: AlgebraContext,
        right: AlgebraContext,
    },
    #[error("operation requires a single-term element")]
    NonMonomial,
    #[error("coefficient is not invertible")]
    NonInvertible,
}

/// A finite noncommutative Laurent polynomial `sum a_mn U^m V^n`.
///
/// Invariant: stored coefficients are nonzero; term order is lexicographic
/// in `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcElement {
    ctx: AlgebraContext,
    terms: BTreeMap<(i64, i64), PhaseScalar>,
}

impl NcElement {
    pub fn zero(ctx: AlgebraContext) -> Self {
        NcElement { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: AlgebraContext) -> Self {
        NcElement::monomial(ctx, 0, 0, PhaseScalar::one())
    }

    pub fn u(ctx: AlgebraContext) -> Self {
        NcElement::monomial(ctx, 1, 0, PhaseScalar::one())
    }

    pub fn v(ctx: AlgebraContext) -> Self {
        NcElement::monomial(ctx, 0, 1, PhaseScalar::one())
    }

    /// The single term `coeff * U^m V^n`.
    pub fn monomial(ctx: AlgebraContext, m: i64, n: i64, coeff: PhaseScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((m, n), coeff);
        }
        NcElement { ctx, terms }
    }

    pub fn scalar(ctx: AlgebraContext, coeff: PhaseScalar) -> Self {
        NcElement::monomial(ctx, 0, 0, coeff)
    }

    pub fn from_terms<I>(ctx: AlgebraContext, terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), PhaseScalar)>,
    {
        let mut out = NcElement::zero(ctx);
        for ((m, n), c) in terms {
            out.insert_add(m, n, &c);
        }
        out
    }

    pub fn context(&self) -> AlgebraContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &PhaseScalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, m: i64, n: i64) -> PhaseScalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(PhaseScalar::zero)
    }

    /// Largest generator exponent magnitude appearing in the support.
    pub fn support_radius(&self) -> i64 {
        self.terms
            .keys()
            .map(|(m, n)| m.abs().max(n.abs()))
            .max()
            .unwrap_or(0)
    }

    fn insert_add(&mut self, m: i64, n: i64, c: &PhaseScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((m, n)) {
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

    fn check_ctx(&self, rhs: &NcElement) -> Result<(), AlgebraError> {
        if self.ctx == rhs.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch { left: self.ctx, right: rhs.ctx })
        }
    }

    pub fn try_add(&self, rhs: &NcElement) -> Result<NcElement, AlgebraError> {
        self.check_ctx(rhs)?;
        let mut out = self.clone();
        for ((m, n), c) in &rhs.terms {
            out.insert_add(*m, *n, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &NcElement) -> Result<NcElement, AlgebraError> {
        self.check_ctx(rhs)?;
        let mut out = self.clone();
        for ((m, n), c) in &rhs.terms {
            out.insert_add(*m, *n, &-c);
        }
        Ok(out)
    }

    /// Bilinear extension of
    /// `(U^m V^n)(U^p V^q) = t^e U^{m+p} V^{n+q}` with `e` the commutation
    /// exponent of the context (`2np` under half-angle phases).
    pub fn try_mul(&self, rhs: &NcElement) -> Result<NcElement, AlgebraError> {
        self.check_ctx(rhs)?;
        let mut out = NcElement::zero(self.ctx);
        for ((m, n), a) in &self.terms {
            for ((p, q), b) in &rhs.terms {
                let phase = self.ctx.commutation_exponent(*n, *p);
                let c = (a * b).times_t_pow(phase);
                out.insert_add(m + p, n + q, &c);
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, s: &PhaseScalar) -> NcElement {
        let mut out = NcElement::zero(self.ctx);
        for ((m, n), c) in &self.terms {
            out.insert_add(*m, *n, &(c * s));
        }
        out
    }

    /// Integer power of a single-term element, via the closed form
    /// `(c U^k V^l)^m = c^m t^{k l m (m-1)} U^{km} V^{lm}`.
    ///
    /// Negative powers need an invertible (single phase monomial)
    /// coefficient.
    pub fn power(&self, m: i64) -> Result<NcElement, AlgebraError> {
        if m == 0 {
            return Ok(NcElement::one(self.ctx));
        }
        if self.terms.len() != 1 {
            return Err(AlgebraError::NonMonomial);
        }
        let ((k, l), c) = self.terms.iter().next().expect("nonempty");
        let base = if m >= 0 {
            c.clone()
        } else {
            c.inverse_monomial().ok_or(AlgebraError::NonInvertible)?
        };
        let mut coeff = PhaseScalar::one();
        for _ in 0..m.unsigned_abs() {
            coeff = &coeff * &base;
        }
        let phase = self.ctx.power_exponent(*k, *l, m);
        Ok(NcElement::monomial(self.ctx, k * m, l * m, coeff.times_t_pow(phase)))
    }

    /// The adjoint: antilinear anti-automorphism with
    /// `(a U^m V^n)* = conj(a) t^e U^{-m} V^{-n}`, `e = 2mn` under
    /// half-angle phases.
    pub fn adjoint(&self) -> NcElement {
        let mut out = NcElement::zero(self.ctx);
        for ((m, n), c) in &self.terms {
            let phase = self.ctx.adjoint_exponent(*m, *n);
            out.insert_add(-m, -n, &c.conj().times_t_pow(phase));
        }
        out
    }

    /// The flip automorphism: `a U^m V^n` goes to `a U^{-m} V^{-n}`
    /// (linear, coefficients untouched).
    pub fn flip(&self) -> NcElement {
        let mut out = NcElement::zero(self.ctx);
        for ((m, n), c) in &self.terms {
            out.insert_add(-m, -n, c);
        }
        out
    }

    pub fn is_flip_invariant(&self) -> bool {
        *self == self.flip()
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    /// Serialize as an array of `{m, n, coeff}` sorted by `(m, n)`.
    pub fn to_json(&self) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((m, n), c)| {
                serde_json::json!({ "m": m, "n": n, "coeff": c.to_json() })
            })
            .collect();
        serde_json::Value::Array(arr)
    }

    pub fn from_json(
        ctx: AlgebraContext,
        value: &serde_json::Value,
    ) -> Result<Self, JsonFormatError> {
        let arr = value.as_array().ok_or(JsonFormatError::NotArray)?;
        let mut out = NcElement::zero(ctx);
        for (index, item) in arr.iter().enumerate() {
            let bad = |message: &str| JsonFormatError::BadTerm {
                index,
                message: message.to_string(),
            };
            let int = |field: &str| -> Result<i64, JsonFormatError> {
                item.get(field)
                    .and_then(serde_json::Value::as_i64)
                    .ok_or_else(|| bad(&format!("missing integer field `{field}`")))
            };
            let coeff = item.get("coeff").ok_or_else(|| bad("missing field `coeff`"))?;
            out.insert_add(int("m")?, int("n")?, &PhaseScalar::from_json(coeff)?);
        }
        Ok(out)
    }
}

impl std::ops::Add for &NcElement {
    type Output = NcElement;
    fn add(self, rhs: &NcElement) -> NcElement {
        self.try_add(rhs).expect("context mismatch")
    }
}

impl std::ops::Sub for &NcElement {
    type Output = NcElement;
    fn sub(self, rhs: &NcElement) -> NcElement {
        self.try_sub(rhs).expect("context mismatch")
    }
}

impl std::ops::Mul for &NcElement {
    type Output = NcElement;
    fn mul(self, rhs: &NcElement) -> NcElement {
        self.try_mul(rhs).expect("context mismatch")
    }
}

impl std::ops::Neg for &NcElement {
    type Output = NcElement;
    fn neg(self) -> NcElement {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c)).collect();
        NcElement { ctx: self.ctx, terms }
    }
}

impl std::ops::Add for NcElement {
    type Output = NcElement;
    fn add(self, rhs: NcElement) -> NcElement {
        &self + &rhs
    }
}

impl std::ops::Sub for NcElement {
    type Output = NcElement;
    fn sub(self, rhs: NcElement) -> NcElement {
        &self - &rhs
    }
}

impl std::ops::Mul for NcElement {
    type Output = NcElement;
    fn mul(self, rhs: NcElement) -> NcElement {
        &self * &rhs
    }
}

impl std::ops::Neg for NcElement {
    type Output = NcElement;
    fn neg(self) -> NcElement {
        -&self
    }
}

fn generator_factor(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl fmt::Display for NcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for ((m, n), scalar) in &self.terms {
            for (k, c) in scalar.terms() {
                let factors: Vec<String> = t_factor(k)
                    .into_iter()
                    .chain(generator_factor("U", *m))
                    .chain(generator_factor("V", *n))
                    .collect();
                push_term(&mut out, c, &factors);
            }
        }
        f.write_str(&out)
    }
}

/// Convenience constructors bound to the standard context, used pervasively
/// in tests and the CLI.
pub mod std_gens {
    use super::*;

    pub fn u() -> NcElement {
        NcElement::u(AlgebraContext::standard())
    }

    pub fn v() -> NcElement {
        NcElement::v(AlgebraContext::standard())
    }

    pub fn one() -> NcElement {
        NcElement::one(AlgebraContext::standard())
    }

    /// `t^k U^m V^n` in the standard context.
    pub fn phase_monomial(k: i64, m: i64, n: i64) -> NcElement {
        NcElement::monomial(AlgebraContext::standard(), m, n, PhaseScalar::t_pow(k))
    }

    /// `U^m V^n` in the standard context.
    pub fn monomial(m: i64, n: i64) -> NcElement {
        phase_monomial(0, m, n)
    }
}

#[cfg(test)]
mod tests {
    use super::std_gens::{monomial, one, phase_monomial, u, v};
    use super::*;
    use crate::phase::GaussianRational;

    #[test]
    fn heisenberg_relation() {
        // VU = t^2 UV
        assert_eq!(v() * u(), phase_monomial(2, 1, 1));
        // and in the full-angle convention VU = t UV
        let ctx = AlgebraContext::full_angle();
        let fu = NcElement::u(ctx);
        let fv = NcElement::v(ctx);
        assert_eq!(&fv * &fu, NcElement::monomial(ctx, 1, 1, PhaseScalar::t_pow(1)));
    }

    #[test]
    fn context_mismatch_is_detected() {
        let x = u();
        let y = NcElement::v(AlgebraContext::full_angle());
        assert!(matches!(
            x.try_mul(&y),
            Err(AlgebraError::ContextMismatch { .. })
        ));
        assert!(x.try_add(&y).is_err());
    }

    #[test]
    fn product_of_uv_with_itself() {
        let uv = u() * v();
        assert_eq!(&uv * &uv, phase_monomial(2, 2, 2));
    }

    #[test]
    fn four_term_expansion() {
        let x = u() + monomial(-1, 0);
        let y = v() + monomial(0, -1);
        let p = &x * &y;
        let expect = monomial(1, 1) + monomial(1, -1) + monomial(-1, 1) + monomial(-1, -1);
        assert_eq!(p, expect);
    }

    #[test]
    fn monomial_power_closed_form() {
        let x = monomial(2, 1);
        let cubed = x.power(3).unwrap();
        assert_eq!(cubed, phase_monomial(12, 6, 3));
        // cross-check against repeated multiplication
        assert_eq!(cubed, &(&x * &x) * &x);
        // zeroth power of anything single-term is the identity
        assert_eq!(monomial(-3, 5).power(0).unwrap(), one());
        // negative powers invert: (UV)^-1 (UV) = 1
        let uv = monomial(1, 1);
        let inv = uv.power(-1).unwrap();
        assert_eq!(inv, phase_monomial(2, -1, -1));
        assert_eq!(&inv * &uv, one());
        // non-monomials are rejected
        assert!(matches!((u() + v()).power(2), Err(AlgebraError::NonMonomial)));
    }

    #[test]
    fn adjoint_is_an_involution() {
        assert_eq!(u().adjoint(), monomial(-1, 0));
        let uv = u() * v();
        assert_eq!(uv.adjoint(), phase_monomial(2, -1, -1));
        // unitarity of the monomial: (UV)*(UV) = 1
        assert_eq!(&uv.adjoint() * &uv, one());
        let x = phase_monomial(3, 2, -1) + u().scale(&PhaseScalar::from_gaussian(GaussianRational::i()));
        assert_eq!(x.adjoint().adjoint(), x);
        // anti-automorphism on a sample pair
        let y = monomial(1, 2) + monomial(0, -1);
        assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
    }

    #[test]
    fn flip_is_a_star_automorphism_of_order_two() {
        assert_eq!(monomial(2, 3).flip(), monomial(-2, -3));
        let x = phase_monomial(1, 2, -1) + monomial(0, 1);
        assert_eq!(x.flip().flip(), x);
        let y = monomial(-1, 1) + one();
        assert_eq!((&x * &y).flip(), &x.flip() * &y.flip());
        assert_eq!(x.adjoint().flip(), x.flip().adjoint());
        let sym = (u() * v()) + (u() * v()).flip();
        assert!(sym.is_flip_invariant());
        assert!(!u().is_flip_invariant());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let x = phase_monomial(-2, 1, 1) + monomial(0, -3).scale(&PhaseScalar::from_integer(7));
        let j = x.to_json();
        let back = NcElement::from_json(AlgebraContext::standard(), &j).unwrap();
        assert_eq!(back, x);
        let arr = j.as_array().unwrap();
        // lexicographic (m, n) order
        assert_eq!(arr[0]["m"], 0);
        assert_eq!(arr[1]["m"], 1);
    }

    #[test]
    fn display_formats_monomials() {
        assert_eq!((v() * u()).to_string(), "t^2 U V");
        assert_eq!(NcElement::zero(AlgebraContext::standard()).to_string(), "0");
        let x = monomial(1, 1) - phase_monomial(-1, -2, 0).scale(&PhaseScalar::from_integer(3));
        assert_eq!(x.to_string(), "-3 t^-1 U^-2 + U V");
    }
}

//! Brute-force numeric ground truth at rational theta.
//!
//! For theta = p/q the relation `VU = e^{2 pi i theta} UV` has a
//! finite-dimensional model: U as the q-by-q clock matrix, V as the cyclic
//! shift. Every symbolic identity in the crate can be checked against dense
//! complex arithmetic in that model. The twisted traces have no matrix
//! counterpart here; the oracle covers ring structure, adjoints,
//! automorphism images, and tau only.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraContext, NcElement};
use crate::automorphism::AutomorphismSpec;
use crate::phase::{GaussianRational, PhaseScalar};
use num::bigint::BigInt;
use num::rational::BigRational;

/// Largest supported modulus; keeps every sweep comfortably subsecond.
pub const MAX_MODULUS: i64 = 512;

/// Frobenius-norm tolerance for product-level comparisons.
pub const PRODUCT_TOLERANCE: f64 = 1e-10;

/// Elementwise tolerance for the generator commutation relation.
pub const RELATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("p = {p} and q = {q} are not coprime")]
    NonCoprime { p: i64, q: i64 },
    #[error("modulus q = {q} outside 1..={max}", max = MAX_MODULUS)]
    BadModulus { q: i64 },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Auto(#[from] crate::automorphism::AutoError),
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug)]
pub struct CMatrix {
    q: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zero(q: usize) -> Self {
        CMatrix { q, data: vec![Complex64::new(0.0, 0.0); q * q] }
    }

    pub fn identity(q: usize) -> Self {
        let mut m = CMatrix::zero(q);
        for j in 0..q {
            m.data[j * q + j] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.q + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.q + c] = v;
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.q, rhs.q, "dimension mismatch");
        let q = self.q;
        let mut out = CMatrix::zero(q);
        for r in 0..q {
            for k in 0..q {
                let a = self.data[r * q + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..q {
                    out.data[r * q + c] += a * rhs.data[k * q + c];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix { q: self.q, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add_assign_scaled(&mut self, rhs: &CMatrix, s: Complex64) {
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += b * s;
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let q = self.q;
        let mut out = CMatrix::zero(q);
        for r in 0..q {
            for c in 0..q {
                out.data[c * q + r] = self.data[r * q + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.q).map(|j| self.data[j * self.q + j]).sum()
    }

    pub fn frobenius_distance(&self, rhs: &CMatrix) -> f64 {
        assert_eq!(self.q, rhs.q, "dimension mismatch");
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_distance(&self, rhs: &CMatrix) -> f64 {
        assert_eq!(self.q, rhs.q, "dimension mismatch");
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Integer power, using unitarity for negative exponents.
    pub fn unitary_power(&self, e: i64) -> CMatrix {
        let base = if e >= 0 { self.clone() } else { self.dagger() };
        let mut acc = CMatrix::identity(self.q);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// The clock-and-shift model at theta = p/q.
#[derive(Clone, Copy, Debug)]
pub struct ClockShift {
    p: i64,
    q: i64,
}

impl ClockShift {
    pub fn new(p: i64, q: i64) -> Result<Self, OracleError> {
        if !(1..=MAX_MODULUS).contains(&q) {
            return Err(OracleError::BadModulus { q });
        }
        if gcd(p, q) != 1 {
            return Err(OracleError::NonCoprime { p, q });
        }
        Ok(ClockShift { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn theta(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// The rotation phase omega = e^{2 pi i p / q}.
    pub fn omega(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.theta())
    }

    fn omega_pow(&self, e: i64) -> Complex64 {
        let reduced = (self.p * e.rem_euclid(self.q)).rem_euclid(self.q);
        Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * reduced as f64 / self.q as f64,
        )
    }

    /// Matrix of `U^m V^n`: entry `(j, k)` is `omega^{jm}` when
    /// `j = k - n mod q`, else zero.
    pub fn monomial_matrix(&self, m: i64, n: i64) -> CMatrix {
        let q = self.q as usize;
        let mut out = CMatrix::zero(q);
        for j in 0..q {
            let k = (j as i64 + n).rem_euclid(self.q) as usize;
            out.set(j, k, self.omega_pow(j as i64 * m));
        }
        out
    }

    pub fn clock(&self) -> CMatrix {
        self.monomial_matrix(1, 0)
    }

    pub fn shift(&self) -> CMatrix {
        self.monomial_matrix(0, 1)
    }

    /// Linear extension of the monomial representation, with coefficients
    /// evaluated at theta = p/q under the element's own phase convention.
    pub fn rep(&self, x: &NcElement) -> CMatrix {
        let t = x.context().t_value(self.theta());
        let mut out = CMatrix::zero(self.q as usize);
        for ((m, n), coeff) in x.terms() {
            let c = coeff.eval_at(t);
            out.add_assign_scaled(&self.monomial_matrix(m, n), c);
        }
        out
    }

    /// Max elementwise deviation of `VU - omega UV` in the model.
    pub fn relation_residual(&self) -> f64 {
        let u = self.clock();
        let v = self.shift();
        let vu = v.mul(&u);
        let uv_scaled = u.mul(&v).scale(self.omega());
        vu.max_abs_distance(&uv_scaled)
    }
}

/// Outcome of one oracle sweep.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub identity: String,
    pub p: i64,
    pub q: i64,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub witness: Option<String>,
    pub ok: bool,
}

impl OracleReport {
    fn from_sweep(
        identity: &str,
        model: &ClockShift,
        samples: usize,
        tolerance: f64,
        worst: (f64, Option<String>),
    ) -> OracleReport {
        let (max_deviation, witness) = worst;
        let ok = max_deviation <= tolerance;
        OracleReport {
            identity: identity.to_string(),
            p: model.p,
            q: model.q,
            samples,
            max_deviation,
            tolerance,
            witness: if ok { None } else { witness },
            ok,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "identity": self.identity,
            "p": self.p,
            "q": self.q,
            "samples": self.samples,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "ok": self.ok,
        })
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at theta = {}/{}: max deviation {:.3e} over {} samples (tolerance {:.0e}) -> {}",
            self.identity,
            self.p,
            self.q,
            self.max_deviation,
            self.samples,
            self.tolerance,
            if self.ok { "ok" } else { "FAIL" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

/// Draw a random element with small rational coefficients, small phase
/// exponents, and support inside `[-radius, radius]^2`.
pub fn random_element<R: Rng>(
    rng: &mut R,
    ctx: AlgebraContext,
    radius: i64,
    max_terms: usize,
) -> NcElement {
    let terms = rng.gen_range(1..=max_terms);
    let mut out = NcElement::zero(ctx);
    for _ in 0..terms {
        let m = rng.gen_range(-radius..=radius);
        let n = rng.gen_range(-radius..=radius);
        let k = rng.gen_range(-4..=4);
        let rat = |rng: &mut R| {
            BigRational::new(
                BigInt::from(rng.gen_range(-3i64..=3)),
                BigInt::from(rng.gen_range(1i64..=3)),
            )
        };
        let coeff = GaussianRational::new(rat(rng), rat(rng));
        let term = NcElement::monomial(ctx, m, n, PhaseScalar::single(k, coeff));
        out = out.try_add(&term).expect("same context");
    }
    out
}

fn track_worst(worst: &mut (f64, Option<String>), deviation: f64, describe: impl Fn() -> String) {
    if deviation > worst.0 {
        *worst = (deviation, Some(describe()));
    }
}

/// rep(x y) vs rep(x) rep(y) over random pairs.
pub fn product_sweep(
    model: &ClockShift,
    samples: usize,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    let ctx = AlgebraContext::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0, None);
    for _ in 0..samples {
        let x = random_element(&mut rng, ctx, 3, 4);
        let y = random_element(&mut rng, ctx, 3, 4);
        let symbolic = model.rep(&x.try_mul(&y)?);
        let numeric = model.rep(&x).mul(&model.rep(&y));
        let d = symbolic.frobenius_distance(&numeric);
        track_worst(&mut worst, d, || format!("x = {x}, y = {y}"));
    }
    Ok(OracleReport::from_sweep(
        "product",
        model,
        samples,
        PRODUCT_TOLERANCE,
        worst,
    ))
}

/// rep(x*) vs the conjugate transpose of rep(x).
pub fn adjoint_sweep(
    model: &ClockShift,
    samples: usize,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    let ctx = AlgebraContext::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0, None);
    for _ in 0..samples {
        let x = random_element(&mut rng, ctx, 3, 4);
        let d = model.rep(&x.adjoint()).frobenius_distance(&model.rep(&x).dagger());
        track_worst(&mut worst, d, || format!("x = {x}"));
    }
    Ok(OracleReport::from_sweep(
        "adjoint",
        model,
        samples,
        PRODUCT_TOLERANCE,
        worst,
    ))
}

/// rep of the symbolic image vs matrix powers of the generator images:
/// for each sampled monomial term the numeric side computes
/// `rep(alpha(U))^m rep(alpha(V))^n` directly.
pub fn automorphism_image_sweep(
    model: &ClockShift,
    spec: &AutomorphismSpec,
    samples: usize,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    let ctx = AlgebraContext::standard();
    let (iu, iv) = spec.image_generators(ctx)?;
    let mu = model.rep(&iu);
    let mv = model.rep(&iv);
    let t = ctx.t_value(model.theta());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0, None);
    for _ in 0..samples {
        let x = random_element(&mut rng, ctx, 3, 3);
        let symbolic = model.rep(&spec.apply(&x)?);
        let mut numeric = CMatrix::zero(model.q as usize);
        for ((m, n), coeff) in x.terms() {
            let term = mu.unitary_power(m).mul(&mv.unitary_power(n));
            numeric.add_assign_scaled(&term, coeff.eval_at(t));
        }
        let d = symbolic.frobenius_distance(&numeric);
        track_worst(&mut worst, d, || format!("spec = {spec}, x = {x}"));
    }
    Ok(OracleReport::from_sweep(
        "automorphism-image",
        model,
        samples,
        PRODUCT_TOLERANCE,
        worst,
    ))
}

/// rep(alpha(x y)) vs rep(alpha(x)) rep(alpha(y)).
pub fn automorphism_homomorphism_sweep(
    model: &ClockShift,
    spec: &AutomorphismSpec,
    samples: usize,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    let ctx = AlgebraContext::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0, None);
    for _ in 0..samples {
        let x = random_element(&mut rng, ctx, 3, 3);
        let y = random_element(&mut rng, ctx, 3, 3);
        let lhs = model.rep(&spec.apply(&x.try_mul(&y)?)?);
        let rhs = model.rep(&spec.apply(&x)?).mul(&model.rep(&spec.apply(&y)?));
        let d = lhs.frobenius_distance(&rhs);
        track_worst(&mut worst, d, || format!("spec = {spec}, x = {x}, y = {y}"));
    }
    Ok(OracleReport::from_sweep(
        "automorphism-homomorphism",
        model,
        samples,
        PRODUCT_TOLERANCE,
        worst,
    ))
}

/// The images of the generators still satisfy the commutation relation:
/// `rep(alpha(V)) rep(alpha(U)) = omega rep(alpha(U)) rep(alpha(V))`.
pub fn automorphism_relation_report(
    model: &ClockShift,
    spec: &AutomorphismSpec,
) -> Result<OracleReport, OracleError> {
    let ctx = AlgebraContext::standard();
    let (iu, iv) = spec.image_generators(ctx)?;
    let mu = model.rep(&iu);
    let mv = model.rep(&iv);
    let lhs = mv.mul(&mu);
    let rhs = mu.mul(&mv).scale(model.omega());
    let d = lhs.max_abs_distance(&rhs);
    Ok(OracleReport::from_sweep(
        "automorphism-relation",
        model,
        1,
        PRODUCT_TOLERANCE,
        (d, Some(format!("spec = {spec}"))),
    ))
}

/// Exact tau vs the normalized matrix trace. Only valid for support
/// strictly inside (-q, q), which the sweep enforces by sampling radius.
pub fn tau_sweep(
    model: &ClockShift,
    samples: usize,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    let ctx = AlgebraContext::standard();
    let radius = 3.min(model.q - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0, None);
    for _ in 0..samples {
        let x = random_element(&mut rng, ctx, radius, 4);
        let symbolic = crate::trace::trace_value(crate::trace::TraceId::Tau, &x)
            .expect("standard context")
            .eval(model.theta());
        let numeric = model.rep(&x).trace() / Complex64::new(model.q as f64, 0.0);
        let d = (symbolic - numeric).norm();
        track_worst(&mut worst, d, || format!("x = {x}"));
    }
    Ok(OracleReport::from_sweep(
        "tau",
        model,
        samples,
        PRODUCT_TOLERANCE,
        worst,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::std_gens::{monomial, u, v};
    use crate::automorphism::NamedAutomorphism;

    #[test]
    fn coprimality_and_bounds_are_enforced() {
        assert!(matches!(ClockShift::new(2, 4), Err(OracleError::NonCoprime { .. })));
        assert!(matches!(ClockShift::new(1, 0), Err(OracleError::BadModulus { .. })));
        assert!(matches!(ClockShift::new(1, 513), Err(OracleError::BadModulus { .. })));
        assert!(ClockShift::new(5, 12).is_ok());
    }

    #[test]
    fn smallest_clock_shift_pair() {
        let model = ClockShift::new(1, 2).unwrap();
        let u = model.clock();
        assert!((u.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((u.get(1, 1) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(u.get(0, 1).norm() < 1e-15);
        let v = model.shift();
        assert!((v.get(0, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((v.get(1, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(model.relation_residual() < 1e-15);
    }

    #[test]
    fn relation_holds_at_larger_moduli() {
        for (p, q) in [(1, 2), (2, 5), (5, 12), (7, 16)] {
            let model = ClockShift::new(p, q).unwrap();
            assert!(model.relation_residual() < RELATION_TOLERANCE, "q = {q}");
        }
    }

    #[test]
    fn symbolic_product_matches_matrix_product() {
        let model = ClockShift::new(2, 5).unwrap();
        let x = &u() + &monomial(-1, 0);
        let y = &v() + &monomial(0, -1);
        let lhs = model.rep(&x.try_mul(&y).unwrap());
        let rhs = model.rep(&x).mul(&model.rep(&y));
        assert!(lhs.frobenius_distance(&rhs) < PRODUCT_TOLERANCE);
    }

    #[test]
    fn adjoint_matches_dagger() {
        let model = ClockShift::new(1, 7).unwrap();
        let x = (u() * v()) + monomial(2, -1);
        assert!(
            model
                .rep(&x.adjoint())
                .frobenius_distance(&model.rep(&x).dagger())
                < PRODUCT_TOLERANCE
        );
    }

    #[test]
    fn traceless_monomials() {
        let model = ClockShift::new(2, 5).unwrap();
        for (m, n) in [(1, 0), (0, 1), (2, 3), (-1, 4)] {
            let tr = model.rep(&monomial(m, n)).trace();
            assert!(tr.norm() < 1e-12, "U^{m} V^{n}");
        }
        // and the identity has normalized trace 1
        let tr = model.rep(&monomial(0, 0)).trace() / Complex64::new(5.0, 0.0);
        assert!((tr - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn seeded_sweeps_pass() {
        let model = ClockShift::new(2, 5).unwrap();
        let report = product_sweep(&model, 50, 0xA1).unwrap();
        assert!(report.ok, "{report}");
        let report = adjoint_sweep(&model, 50, 0xA2).unwrap();
        assert!(report.ok, "{report}");
        let report = tau_sweep(&model, 50, 0xA3).unwrap();
        assert!(report.ok, "{report}");
        let model12 = ClockShift::new(5, 12).unwrap();
        let spec = AutomorphismSpec::Named(NamedAutomorphism::Kappa);
        let report = automorphism_image_sweep(&model12, &spec, 25, 0xA4).unwrap();
        assert!(report.ok, "{report}");
        let report = automorphism_homomorphism_sweep(&model12, &spec, 25, 0xA5).unwrap();
        assert!(report.ok, "{report}");
        let report = automorphism_relation_report(&model12, &spec).unwrap();
        assert!(report.ok, "{report}");
    }

    #[test]
    fn sweeps_are_deterministic() {
        let model = ClockShift::new(2, 5).unwrap();
        let a = product_sweep(&model, 20, 42).unwrap();
        let b = product_sweep(&model, 20, 42).unwrap();
        assert_eq!(a.max_deviation, b.max_deviation);
    }
}

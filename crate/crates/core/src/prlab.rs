//! Numeric laboratory for flip-invariant Powers-Rieffel projections.
//!
//! A candidate projection is `e = f_-1(U) V^-w + f_0(U) + f_1(U) V^w` for
//! circle functions `f_s` and a band power `w` with `frac(w theta)` equal to
//! the requested trace. The lab builds smooth bump profiles meeting the
//! projection identities pointwise, evaluates the Chern character through
//! closed-form parity sums and an FFT, and applies the toral sign maps.
//!
//! Everything here is double-precision; the symbolic modules stay exact.

use std::fmt;

use num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

/// Smallest accepted sampling grid (a power of two).
pub const MIN_GRID: usize = 1 << 12;

/// Residual ceiling below which a character evaluation is trusted.
pub const CHARACTER_RESIDUAL_LIMIT: f64 = 1e-8;

/// How close `frac(w theta)` must come to the requested trace.
pub const BAND_MATCH_TOLERANCE: f64 = 1e-9;

/// Largest band power tried when matching the requested trace.
pub const MAX_BAND_POWER: i64 = 8;

#[derive(Debug, Error)]
pub enum PrLabError {
    #[error("theta must lie strictly between 0 and 1, got {theta}")]
    BadTheta { theta: f64 },
    #[error("theta_prime must lie strictly between 0 and 1/2, got {theta_prime}")]
    BadThetaPrime { theta_prime: f64 },
    #[error("grid_size must be a power of two, at least {MIN_GRID}, got {grid_size}")]
    BadGridSize { grid_size: usize },
    #[error(
        "no band power n in 1..={MAX_BAND_POWER} has frac(n*theta) within {BAND_MATCH_TOLERANCE:e} \
         of theta_prime = {theta_prime}; nearest was n = {nearest_n} with frac(n*theta) = {nearest}"
    )]
    NoBandPower {
        theta_prime: f64,
        nearest_n: i64,
        nearest: f64,
    },
    #[error(
        "support geometry infeasible: effective rotation {theta_eff} leaves no room for a smooth ramp"
    )]
    InfeasibleGeometry { theta_eff: f64 },
    #[error(
        "projection residuals too large for a trustworthy character: {max:.3e} exceeds {limit:.0e}"
    )]
    ResidualsTooLarge { max: f64, limit: f64 },
}

/// Wrap a circle coordinate into `[-1/2, 1/2]`.
fn wrap_unit(x: f64) -> f64 {
    x - x.round()
}

/// The standard flat step: 0 for s <= 0, 1 for s >= 1, and
/// `a / (a + b)` with `a = exp(-1/s)`, `b = exp(-1/(1-s))` in between.
/// Satisfies `step(s) + step(1-s) = 1` up to rounding.
fn smooth_step(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / s).exp();
    let b = (-1.0 / (1.0 - s)).exp();
    a / (a + b)
}

/// `sqrt(p (1 - p))` for the smooth step `p = a / (a + b)`, computed as
/// `sqrt(a) sqrt(b) / (a + b)` so no digits cancel where `p` is tiny; the
/// naive form loses half the mantissa near the ramp ends and would push the
/// adjoint-symmetry residual to ~1e-9.
fn edge_bump_value(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        return 0.0;
    }
    let a = (-1.0 / s).exp();
    let b = (-1.0 / (1.0 - s)).exp();
    (-0.5 / s).exp() * (-0.5 / (1.0 - s)).exp() / (a + b)
}

/// A described circle function, evaluable anywhere (the identities need
/// off-grid points like `x + theta`).
#[derive(Clone, Debug)]
pub enum Profile {
    Zero,
    One,
    /// Even bump: 1 on `[-(half_width - ramp), half_width - ramp]`, smooth
    /// monotone ramps of width `ramp` down to 0 at `|x| = half_width`.
    Plateau { half_width: f64, ramp: f64 },
    /// Off-diagonal bump `sqrt(p - p^2)` of the matching plateau `p`,
    /// supported on the ascending ramp `[-half_width, -half_width + ramp]`.
    EdgeBump { half_width: f64, ramp: f64 },
    /// `inner(x + offset)`.
    Shift { inner: Box<Profile>, offset: f64 },
    /// `inner(-x)`.
    Reflect(Box<Profile>),
    Neg(Box<Profile>),
    Sum(Box<Profile>, Box<Profile>),
}

impl Profile {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::Zero => 0.0,
            Profile::One => 1.0,
            Profile::Plateau { half_width, ramp } => {
                let y = wrap_unit(x).abs();
                if y >= *half_width {
                    0.0
                } else if y <= half_width - ramp {
                    1.0
                } else {
                    smooth_step((half_width - y) / ramp)
                }
            }
            Profile::EdgeBump { half_width, ramp } => {
                let y = wrap_unit(x);
                if y <= -half_width || y >= -half_width + ramp {
                    0.0
                } else {
                    edge_bump_value((y + half_width) / ramp)
                }
            }
            Profile::Shift { inner, offset } => inner.eval(x + offset),
            Profile::Reflect(inner) => inner.eval(-x),
            Profile::Neg(inner) => -inner.eval(x),
            Profile::Sum(a, b) => a.eval(x) + b.eval(x),
        }
    }

    fn shifted(&self, offset: f64) -> Profile {
        Profile::Shift { inner: Box::new(self.clone()), offset }
    }

    fn reflected(&self) -> Profile {
        Profile::Reflect(Box::new(self.clone()))
    }

    fn negated(&self) -> Profile {
        Profile::Neg(Box::new(self.clone()))
    }
}

/// Max pointwise residuals of the projection identities on the grid.
///
/// With the effective rotation `r` (`frac(w theta)` for band power `w`):
/// `orthogonal_bands` is `|f_1(x) f_1(x - r)|`,
/// `partition_of_unity` is `|f_1(x) (f_0(x) + f_0(x + r) - 1)|`,
/// `diagonal_balance` is `|f_0(x) - f_0(x)^2 - f_1(x)^2 - f_1(x - r)^2|`,
/// `flip_symmetry` is `|f_-1(x) - f_1(-x)|`, and
/// `adjoint_symmetry` is `|f_-1(x) - f_1(x - r)|` (real profiles).
#[derive(Clone, Copy, Debug)]
pub struct IdentityResiduals {
    pub orthogonal_bands: f64,
    pub partition_of_unity: f64,
    pub diagonal_balance: f64,
    pub flip_symmetry: f64,
    pub adjoint_symmetry: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.orthogonal_bands
            .max(self.partition_of_unity)
            .max(self.diagonal_balance)
            .max(self.flip_symmetry)
            .max(self.adjoint_symmetry)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "orthogonal_bands": self.orthogonal_bands,
            "partition_of_unity": self.partition_of_unity,
            "diagonal_balance": self.diagonal_balance,
            "flip_symmetry": self.flip_symmetry,
            "adjoint_symmetry": self.adjoint_symmetry,
        })
    }
}

/// Numeric Chern character of a candidate projection.
#[derive(Clone, Copy, Debug)]
pub struct NumericCharacter {
    pub tau: f64,
    pub phi00: f64,
    pub phi01: f64,
    pub phi10: f64,
    pub phi11: f64,
    /// Largest imaginary part discarded when realifying the phis; must be
    /// negligible for a self-adjoint element.
    pub max_imag: f64,
}

impl NumericCharacter {
    pub fn phis(&self) -> [f64; 4] {
        [self.phi00, self.phi01, self.phi10, self.phi11]
    }

    /// Distance of each phi to the nearest half-integer, in basis order.
    pub fn half_integer_distances(&self) -> [f64; 4] {
        self.phis().map(|v| (v - (2.0 * v).round() / 2.0).abs())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tau": self.tau,
            "phi00": self.phi00,
            "phi01": self.phi01,
            "phi10": self.phi10,
            "phi11": self.phi11,
            "max_imag": self.max_imag,
        })
    }
}

impl fmt::Display for NumericCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(tau; phi00, phi01, phi10, phi11) = ({:.9}; {:.9}, {:.9}, {:.9}, {:.9})",
            self.tau, self.phi00, self.phi01, self.phi10, self.phi11
        )
    }
}

/// The three toral sign maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToralMap {
    Gamma1,
    Gamma2,
    Gamma3,
}

/// A sampled flip-invariant Powers-Rieffel candidate.
#[derive(Clone, Debug)]
pub struct PrProjection {
    theta: f64,
    theta_prime: f64,
    grid_size: usize,
    v_power: i64,
    theta_eff: f64,
    f_minus: Profile,
    f_zero: Profile,
    f_plus: Profile,
}

impl PrProjection {
    /// Build the standard candidate at trace target `theta_prime`.
    ///
    /// The band power `w` is the smallest `1..=8` with `frac(w theta)`
    /// matching `theta_prime`; the plateau `f_0` integrates to exactly
    /// `frac(w theta)`, and `f_1` is the edge bump making the off-diagonal
    /// identities exact.
    pub fn build(theta: f64, theta_prime: f64, grid_size: usize) -> Result<Self, PrLabError> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(PrLabError::BadTheta { theta });
        }
        if !(theta_prime > 0.0 && theta_prime < 0.5) {
            return Err(PrLabError::BadThetaPrime { theta_prime });
        }
        check_grid(grid_size)?;
        let mut nearest: (i64, f64) = (1, f64::INFINITY);
        let mut chosen: Option<(i64, f64)> = None;
        for w in 1..=MAX_BAND_POWER {
            let frac = (w as f64 * theta).fract();
            if (frac - theta_prime).abs() < BAND_MATCH_TOLERANCE {
                chosen = Some((w, frac));
                break;
            }
            if (frac - theta_prime).abs() < (nearest.1 - theta_prime).abs() {
                nearest = (w, frac);
            }
        }
        let (v_power, theta_eff) = chosen.ok_or(PrLabError::NoBandPower {
            theta_prime,
            nearest_n: nearest.0,
            nearest: nearest.1,
        })?;
        let ramp = (0.5 * theta_eff.min(1.0 - 2.0 * theta_eff)).min(0.04);
        if !ramp.is_finite() || ramp <= f64::EPSILON {
            return Err(PrLabError::InfeasibleGeometry { theta_eff });
        }
        let half_width = (theta_eff + ramp) / 2.0;
        let f_zero = Profile::Plateau { half_width, ramp };
        let f_plus = Profile::EdgeBump { half_width, ramp };
        let f_minus = f_plus.reflected();
        Ok(PrProjection {
            theta,
            theta_prime,
            grid_size,
            v_power,
            theta_eff,
            f_minus,
            f_zero,
            f_plus,
        })
    }

    /// The zero element (a degenerate projection).
    pub fn zero(theta: f64, grid_size: usize) -> Result<Self, PrLabError> {
        check_grid(grid_size)?;
        Ok(PrProjection {
            theta,
            theta_prime: 0.0,
            grid_size,
            v_power: 1,
            theta_eff: theta.fract(),
            f_minus: Profile::Zero,
            f_zero: Profile::Zero,
            f_plus: Profile::Zero,
        })
    }

    /// The unit element.
    pub fn unit(theta: f64, grid_size: usize) -> Result<Self, PrLabError> {
        check_grid(grid_size)?;
        Ok(PrProjection {
            theta,
            theta_prime: 0.0,
            grid_size,
            v_power: 1,
            theta_eff: theta.fract(),
            f_minus: Profile::Zero,
            f_zero: Profile::One,
            f_plus: Profile::Zero,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn theta_prime(&self) -> f64 {
        self.theta_prime
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn v_power(&self) -> i64 {
        self.v_power
    }

    /// The effective rotation `frac(v_power * theta)` governing the
    /// support geometry.
    pub fn theta_eff(&self) -> f64 {
        self.theta_eff
    }

    pub fn profile(&self, band: i64) -> &Profile {
        match band {
            -1 => &self.f_minus,
            0 => &self.f_zero,
            1 => &self.f_plus,
            _ => panic!("band must be -1, 0, or 1"),
        }
    }

    fn grid_point(&self, i: usize) -> f64 {
        i as f64 / self.grid_size as f64
    }

    /// Samples of one band coefficient on the uniform grid.
    pub fn samples(&self, band: i64) -> Vec<f64> {
        let p = self.profile(band);
        (0..self.grid_size).map(|i| p.eval(self.grid_point(i))).collect()
    }

    /// Translate every coefficient function: the projection rotated so the
    /// plateau is centered at `center` instead of 0.
    pub fn shifted(&self, center: f64) -> PrProjection {
        self.map_profiles(|p| p.shifted(-center))
    }

    /// The image under the flip: band s becomes band -s reflected.
    pub fn flip(&self) -> PrProjection {
        PrProjection {
            f_minus: self.f_plus.reflected(),
            f_zero: self.f_zero.reflected(),
            f_plus: self.f_minus.reflected(),
            ..self.clone()
        }
    }

    /// `self + flip(self)`, the flip symmetrization.
    pub fn symmetrize(&self) -> PrProjection {
        let flipped = self.flip();
        PrProjection {
            f_minus: Profile::Sum(Box::new(self.f_minus.clone()), Box::new(flipped.f_minus)),
            f_zero: Profile::Sum(Box::new(self.f_zero.clone()), Box::new(flipped.f_zero)),
            f_plus: Profile::Sum(Box::new(self.f_plus.clone()), Box::new(flipped.f_plus)),
            ..self.clone()
        }
    }

    /// Apply a toral sign map: gamma1 shifts the U-variable by the half
    /// period, gamma2 negates the V-band coefficients (a sign only when the
    /// band power is odd), gamma3 does both.
    pub fn apply_toral(&self, which: ToralMap) -> PrProjection {
        let shift_half = |p: &Profile| p.shifted(0.5);
        match which {
            ToralMap::Gamma1 => self.map_profiles(shift_half),
            ToralMap::Gamma2 => self.negate_bands_if_odd(),
            ToralMap::Gamma3 => self.negate_bands_if_odd().map_profiles(shift_half),
        }
    }

    fn negate_bands_if_odd(&self) -> PrProjection {
        if self.v_power % 2 == 0 {
            return self.clone();
        }
        PrProjection {
            f_minus: self.f_minus.negated(),
            f_plus: self.f_plus.negated(),
            ..self.clone()
        }
    }

    fn map_profiles(&self, f: impl Fn(&Profile) -> Profile) -> PrProjection {
        PrProjection {
            f_minus: f(&self.f_minus),
            f_zero: f(&self.f_zero),
            f_plus: f(&self.f_plus),
            ..self.clone()
        }
    }

    /// Pointwise projection-identity residuals over the grid.
    pub fn identities(&self) -> IdentityResiduals {
        let r = self.theta_eff;
        let mut out = IdentityResiduals {
            orthogonal_bands: 0.0,
            partition_of_unity: 0.0,
            diagonal_balance: 0.0,
            flip_symmetry: 0.0,
            adjoint_symmetry: 0.0,
        };
        for i in 0..self.grid_size {
            let x = self.grid_point(i);
            let f1 = self.f_plus.eval(x);
            let f1_back = self.f_plus.eval(x - r);
            let f0 = self.f_zero.eval(x);
            let fm = self.f_minus.eval(x);
            out.orthogonal_bands = out.orthogonal_bands.max((f1 * f1_back).abs());
            out.partition_of_unity = out
                .partition_of_unity
                .max((f1 * (f0 + self.f_zero.eval(x + r) - 1.0)).abs());
            out.diagonal_balance = out
                .diagonal_balance
                .max((f0 - f0 * f0 - f1 * f1 - f1_back * f1_back).abs());
            out.flip_symmetry = out.flip_symmetry.max((fm - self.f_plus.eval(-x)).abs());
            out.adjoint_symmetry = out.adjoint_symmetry.max((fm - f1_back).abs());
        }
        out
    }

    /// Quadrature trace: the mean of the diagonal band samples.
    pub fn tau(&self) -> f64 {
        let n = self.grid_size as f64;
        (0..self.grid_size)
            .map(|i| self.f_zero.eval(self.grid_point(i)))
            .sum::<f64>()
            / n
    }

    /// Max coefficient of `self * other` over the grid, across all product
    /// bands; zero exactly when the two elements are orthogonal there.
    pub fn product_residual(&self, other: &PrProjection) -> f64 {
        let r = self.theta_eff;
        let mut worst: f64 = 0.0;
        for band in -2i64..=2 {
            for i in 0..self.grid_size {
                let x = self.grid_point(i);
                let mut acc = 0.0;
                for s in -1i64..=1 {
                    let t = band - s;
                    if !(-1..=1).contains(&t) {
                        continue;
                    }
                    acc += self.profile(s).eval(x) * other.profile(t).eval(x + s as f64 * r);
                }
                worst = worst.max(acc.abs());
            }
        }
        worst
    }

    /// Numeric Chern character.
    ///
    /// The diagonal band enters `phi_j0` through the closed parity sums
    /// `(f_0(0) + (-1)^j f_0(1/2)) / 2`; the `V^{+-w}` bands enter
    /// `phi_{j, w mod 2}` through FFT Fourier coefficients weighted by
    /// `e^{-+ i pi theta m w}`. Refuses when the identity residuals are too
    /// large to call the element a projection.
    pub fn character(&self) -> Result<NumericCharacter, PrLabError> {
        let residual = self.identities().max();
        if residual > CHARACTER_RESIDUAL_LIMIT {
            return Err(PrLabError::ResidualsTooLarge {
                max: residual,
                limit: CHARACTER_RESIDUAL_LIMIT,
            });
        }
        let n = self.grid_size;
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let transform = |band: i64| {
            let mut buf: Vec<Complex64> = self
                .samples(band)
                .into_iter()
                .map(|v| Complex64::new(v, 0.0))
                .collect();
            fft.process(&mut buf);
            buf
        };
        let x_plus = transform(1);
        let x_minus = transform(-1);
        // band contributions: parity-j sums of the weighted coefficients
        let mut band = [Complex64::new(0.0, 0.0); 2];
        let w = self.v_power as f64;
        let scale = 1.0 / n as f64;
        for (idx, (cp, cm)) in x_plus.iter().zip(x_minus.iter()).enumerate() {
            // signed frequency of this DFT index (n is even)
            let m = if idx < n / 2 { idx as i64 } else { idx as i64 - n as i64 };
            let angle = std::f64::consts::PI * self.theta * m as f64 * w;
            let phase = Complex64::from_polar(1.0, -angle);
            let contribution = (cp * phase + cm * phase.conj()) * scale;
            band[m.rem_euclid(2) as usize] += contribution;
        }
        let k_band = (self.v_power.rem_euclid(2)) as usize;
        let mut phis = [Complex64::new(0.0, 0.0); 4];
        // diagonal band: closed-form parity sums
        let f0_at_0 = self.f_zero.eval(0.0);
        let f0_at_half = self.f_zero.eval(0.5);
        phis[0] += Complex64::new((f0_at_0 + f0_at_half) / 2.0, 0.0);
        phis[2] += Complex64::new((f0_at_0 - f0_at_half) / 2.0, 0.0);
        // off-diagonal bands land at k = w mod 2
        phis[k_band] += band[0];
        phis[2 + k_band] += band[1];
        let max_imag = phis.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
        Ok(NumericCharacter {
            tau: self.tau(),
            phi00: phis[0].re,
            phi01: phis[1].re,
            phi10: phis[2].re,
            phi11: phis[3].re,
            max_imag,
        })
    }

    /// Full JSON report: inputs, residuals, character, half-integer
    /// distances.
    pub fn report_json(&self) -> Result<serde_json::Value, PrLabError> {
        let character = self.character()?;
        let d = character.half_integer_distances();
        Ok(serde_json::json!({
            "theta": self.theta,
            "theta_prime": self.theta_prime,
            "grid_size": self.grid_size,
            "v_power": self.v_power,
            "residuals": self.identities().to_json(),
            "character": character.to_json(),
            "half_integer_distances": {
                "phi00": d[0],
                "phi01": d[1],
                "phi10": d[2],
                "phi11": d[3],
            },
        }))
    }
}

fn check_grid(grid_size: usize) -> Result<(), PrLabError> {
    if grid_size < MIN_GRID || !grid_size.is_power_of_two() {
        return Err(PrLabError::BadGridSize { grid_size });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: f64 = std::f64::consts::SQRT_2 - 1.0;
    const GRID: usize = 1 << 13;

    fn standard() -> PrProjection {
        PrProjection::build(THETA, THETA, GRID).unwrap()
    }

    #[test]
    fn input_validation() {
        assert!(matches!(
            PrProjection::build(1.5, 0.4, GRID),
            Err(PrLabError::BadTheta { .. })
        ));
        assert!(matches!(
            PrProjection::build(THETA, 0.6, GRID),
            Err(PrLabError::BadThetaPrime { .. })
        ));
        assert!(matches!(
            PrProjection::build(THETA, THETA, 1000),
            Err(PrLabError::BadGridSize { .. })
        ));
        // 0.3 is not frac(n theta) for any small n
        assert!(matches!(
            PrProjection::build(THETA, 0.3, GRID),
            Err(PrLabError::NoBandPower { .. })
        ));
    }

    #[test]
    fn standard_build_is_a_projection() {
        let e = standard();
        assert_eq!(e.v_power(), 1);
        let res = e.identities();
        assert!(res.max() < 1e-12, "residuals: {res:?}");
        assert!((e.tau() - THETA).abs() < 1e-8, "tau = {}", e.tau());
    }

    #[test]
    fn standard_character_is_the_half_integer_quadruple() {
        let e = standard();
        let ch = e.character().unwrap();
        assert!(ch.max_imag < 1e-8);
        assert!((ch.tau - THETA).abs() < 1e-8);
        for (v, d) in ch.phis().iter().zip(ch.half_integer_distances()) {
            assert!(d < 1e-6, "phi = {v} too far from a half-integer");
        }
        for v in ch.phis() {
            assert!((v - 0.5).abs() < 1e-6, "expected 1/2, got {v}");
        }
    }

    #[test]
    fn degenerate_projections_have_zero_residuals() {
        let zero = PrProjection::zero(THETA, GRID).unwrap();
        assert_eq!(zero.identities().max(), 0.0);
        let unit = PrProjection::unit(THETA, GRID).unwrap();
        assert_eq!(unit.identities().max(), 0.0);
        let ch = unit.character().unwrap();
        assert!((ch.tau - 1.0).abs() < 1e-12);
        assert!((ch.phi00 - 1.0).abs() < 1e-12);
        assert!(ch.phi01.abs() < 1e-12 && ch.phi10.abs() < 1e-12 && ch.phi11.abs() < 1e-12);
    }

    #[test]
    fn quadrature_is_stable_across_grids() {
        let coarse = PrProjection::build(THETA, THETA, 1 << 13).unwrap().tau();
        let fine = PrProjection::build(THETA, THETA, 1 << 14).unwrap().tau();
        assert!((coarse - fine).abs() < 1e-8);
    }

    #[test]
    fn toral_sign_pattern() {
        let e = standard();
        let base = e.character().unwrap();
        let g1 = e.apply_toral(ToralMap::Gamma1).character().unwrap();
        assert!((g1.phi00 - base.phi00).abs() < 1e-8);
        assert!((g1.phi01 - base.phi01).abs() < 1e-8);
        assert!((g1.phi10 + base.phi10).abs() < 1e-8);
        assert!((g1.phi11 + base.phi11).abs() < 1e-8);
        let g2 = e.apply_toral(ToralMap::Gamma2).character().unwrap();
        assert!((g2.phi00 - base.phi00).abs() < 1e-8);
        assert!((g2.phi01 + base.phi01).abs() < 1e-8);
        assert!((g2.phi10 - base.phi10).abs() < 1e-8);
        assert!((g2.phi11 + base.phi11).abs() < 1e-8);
        let g3 = e.apply_toral(ToralMap::Gamma3).character().unwrap();
        assert!((g3.phi00 - base.phi00).abs() < 1e-8);
        assert!((g3.phi01 + base.phi01).abs() < 1e-8);
        assert!((g3.phi10 + base.phi10).abs() < 1e-8);
        assert!((g3.phi11 - base.phi11).abs() < 1e-8);
    }

    #[test]
    fn gamma3_is_gamma1_after_gamma2_on_the_grid() {
        let e = standard();
        let direct = e.apply_toral(ToralMap::Gamma3);
        let composed = e.apply_toral(ToralMap::Gamma2).apply_toral(ToralMap::Gamma1);
        for band in [-1, 0, 1] {
            assert_eq!(direct.samples(band), composed.samples(band));
        }
    }

    #[test]
    fn shifted_pair_is_orthogonal_and_character_free() {
        let e = standard();
        let g = e.shifted(0.25);
        let phi_g = g.flip();
        assert_eq!(g.product_residual(&phi_g), 0.0);
        assert_eq!(phi_g.product_residual(&g), 0.0);
        let sym = g.symmetrize();
        assert!(sym.identities().max() < 1e-12);
        let ch = sym.character().unwrap();
        assert!((ch.tau - 2.0 * THETA).abs() < 1e-8);
        for v in ch.phis() {
            assert!(v.abs() < 1e-6, "expected vanishing phi, got {v}");
        }
    }

    #[test]
    fn even_band_power_target_is_feasible() {
        // the auxiliary trace target 2(3 theta - 1) is frac(6 theta)
        let target = 2.0 * (3.0 * THETA - 1.0);
        let e = PrProjection::build(THETA, target, GRID).unwrap();
        assert_eq!(e.v_power(), 6);
        assert!(e.identities().max() < 1e-12);
        assert!((e.tau() - target).abs() < 1e-8);
        // even band: the odd-k phis vanish identically
        let ch = e.character().unwrap();
        assert!(ch.phi01.abs() < 1e-12 && ch.phi11.abs() < 1e-12);
        for d in ch.half_integer_distances() {
            assert!(d < 1e-6);
        }
    }
}

//! Automorphisms of the rotation algebra: modular maps attached to SL(2,Z)
//! matrices, the named canonical maps (Fourier, cubic, flip, toral signs),
//! user-supplied generator images, and composites.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraError, NcElement};
use crate::phase::PhaseScalar;

/// An integer matrix `[a c; b d]` with determinant 1.
///
/// Layout convention: columns map to generator images. The first column
/// `(a, b)` gives the exponents of the image of `U` and the second column
/// `(c, d)` those of the image of `V`. Transposing this layout is the
/// classic mistake; every formula in this crate assumes it as stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModularMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl ModularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, AutoError> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(AutoError::NotUnimodular { a, b, c, d, det });
        }
        Ok(ModularMatrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        ModularMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn minus_identity() -> Self {
        ModularMatrix { a: -1, b: 0, c: 0, d: -1 }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product `self * inner`, the matrix of `self` applied after
    /// `inner` (composition order pinned by the action-law sweep).
    pub fn compose(&self, inner: &ModularMatrix) -> ModularMatrix {
        ModularMatrix {
            a: self.a * inner.a + self.c * inner.b,
            b: self.b * inner.a + self.d * inner.b,
            c: self.a * inner.c + self.c * inner.d,
            d: self.b * inner.c + self.d * inner.d,
        }
    }

    /// Exponent vector of the image of `U^m V^n` (the matrix acting on the
    /// column `(m, n)`).
    pub fn act(&self, m: i64, n: i64) -> (i64, i64) {
        (self.a * m + self.c * n, self.b * m + self.d * n)
    }
}

impl fmt::Display for ModularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.c, self.b, self.d)
    }
}

/// The canonical automorphisms with fixed generator images.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedAutomorphism {
    /// Fourier transform: U -> V^-1, V -> U (order 4).
    Sigma,
    /// Cubic transform: U -> t^-1 U^-1 V, V -> U^-1 (order 6).
    Kappa,
    /// Flip: U -> U^-1, V -> V^-1 (order 2).
    Flip,
    /// Toral sign: U -> -U, V -> V.
    Gamma1,
    /// Toral sign: U -> U, V -> -V.
    Gamma2,
    /// Toral sign: U -> -U, V -> -V.
    Gamma3,
    Id,
}

impl NamedAutomorphism {
    pub const ALL: [NamedAutomorphism; 7] = [
        NamedAutomorphism::Sigma,
        NamedAutomorphism::Kappa,
        NamedAutomorphism::Flip,
        NamedAutomorphism::Gamma1,
        NamedAutomorphism::Gamma2,
        NamedAutomorphism::Gamma3,
        NamedAutomorphism::Id,
    ];

    /// The modular matrix realizing this map, when it is modular (the toral
    /// signs are not: their -1 coefficients are not powers of `t`).
    pub fn modular_matrix(&self) -> Option<ModularMatrix> {
        match self {
            NamedAutomorphism::Sigma => Some(ModularMatrix { a: 0, b: -1, c: 1, d: 0 }),
            NamedAutomorphism::Kappa => Some(ModularMatrix { a: -1, b: 1, c: -1, d: 0 }),
            NamedAutomorphism::Flip => Some(ModularMatrix::minus_identity()),
            NamedAutomorphism::Id => Some(ModularMatrix::identity()),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            NamedAutomorphism::Sigma => "sigma",
            NamedAutomorphism::Kappa => "kappa",
            NamedAutomorphism::Flip => "flip",
            NamedAutomorphism::Gamma1 => "gamma1",
            NamedAutomorphism::Gamma2 => "gamma2",
            NamedAutomorphism::Gamma3 => "gamma3",
            NamedAutomorphism::Id => "id",
        }
    }

    /// Sign picked up by the coefficient of `U^m V^n` under a toral map.
    fn toral_sign(&self, m: i64, n: i64) -> bool {
        match self {
            NamedAutomorphism::Gamma1 => m.rem_euclid(2) == 1,
            NamedAutomorphism::Gamma2 => n.rem_euclid(2) == 1,
            NamedAutomorphism::Gamma3 => (m + n).rem_euclid(2) == 1,
            _ => false,
        }
    }
}

/// A describable automorphism.
#[derive(Clone, Debug, PartialEq)]
pub enum AutomorphismSpec {
    Modular(ModularMatrix),
    Named(NamedAutomorphism),
    /// Generator images; must pass [`validate_generator_images`].
    Custom { image_u: NcElement, image_v: NcElement },
    /// Written outermost first; application is right-to-left (innermost
    /// first), matching the textual `outer.inner` chaining.
    Composite(Vec<AutomorphismSpec>),
}

#[derive(Debug, Error)]
pub enum AutoError {
    #[error("matrix [{a} {c}; {b} {d}] has determinant {det}, expected 1")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64, det: i64 },
    #[error("automorphisms require the half-angle phase convention")]
    UnsupportedConvention,
    #[error("invalid generator images: {0}")]
    InvalidImages(#[from] ValidationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which generator-image identity failed, for diagnostics.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("commutation fails: image_V * image_U != t^2 * image_U * image_V")]
    Commutation,
    #[error("image of {generator} is not unitary")]
    NotUnitary { generator: char },
}

/// Check that candidate generator images define a *-automorphism on the
/// symbolic level: the Heisenberg relation plus unitarity of both images.
pub fn validate_generator_images(
    image_u: &NcElement,
    image_v: &NcElement,
) -> Result<(), ValidationError> {
    let ctx = image_u.context();
    let one = NcElement::one(ctx);
    let unitary = |x: &NcElement, generator: char| -> Result<(), ValidationError> {
        let adj = x.adjoint();
        if x.try_mul(&adj).map_err(|_| ValidationError::NotUnitary { generator })? == one
            && adj.try_mul(x).map_err(|_| ValidationError::NotUnitary { generator })? == one
        {
            Ok(())
        } else {
            Err(ValidationError::NotUnitary { generator })
        }
    };
    unitary(image_u, 'U')?;
    unitary(image_v, 'V')?;
    let lhs = image_v
        .try_mul(image_u)
        .map_err(|_| ValidationError::Commutation)?;
    let rhs = image_u
        .try_mul(image_v)
        .map_err(|_| ValidationError::Commutation)?
        .scale(&PhaseScalar::t_pow(2));
    if lhs == rhs {
        Ok(())
    } else {
        Err(ValidationError::Commutation)
    }
}

impl AutomorphismSpec {
    pub fn modular(a: i64, b: i64, c: i64, d: i64) -> Result<Self, AutoError> {
        Ok(AutomorphismSpec::Modular(ModularMatrix::new(a, b, c, d)?))
    }

    pub fn named(n: NamedAutomorphism) -> Self {
        AutomorphismSpec::Named(n)
    }

    /// The pair `(alpha(U), alpha(V))`.
    pub fn image_generators(
        &self,
        ctx: AlgebraContext,
    ) -> Result<(NcElement, NcElement), AutoError> {
        let u = self.apply(&NcElement::u(ctx))?;
        let v = self.apply(&NcElement::v(ctx))?;
        Ok((u, v))
    }

    /// Apply the automorphism to an element.
    ///
    /// Modular specs use the closed form
    /// `alpha(U^m V^n) = t^(a b m^2 + c d n^2 + 2 b c m n) U^(am+cn) V^(bm+dn)`,
    /// which the verification suites compare against the multiplicative
    /// extension of the generator images.
    pub fn apply(&self, x: &NcElement) -> Result<NcElement, AutoError> {
        if !x.context().is_half_angle() {
            return Err(AutoError::UnsupportedConvention);
        }
        match self {
            AutomorphismSpec::Modular(mat) => Ok(apply_modular(mat, x)),
            AutomorphismSpec::Named(named) => match named {
                NamedAutomorphism::Id => Ok(x.clone()),
                NamedAutomorphism::Flip => Ok(x.flip()),
                NamedAutomorphism::Sigma | NamedAutomorphism::Kappa => {
                    let mat = named.modular_matrix().expect("modular by definition");
                    Ok(apply_modular(&mat, x))
                }
                toral => Ok(apply_toral_sign(*toral, x)),
            },
            AutomorphismSpec::Custom { image_u, image_v } => {
                validate_generator_images(image_u, image_v)?;
                apply_multiplicative(image_u, image_v, x)
            }
            AutomorphismSpec::Composite(parts) => {
                let mut acc = x.clone();
                for part in parts.iter().rev() {
                    acc = part.apply(&acc)?;
                }
                Ok(acc)
            }
        }
    }

    /// Composite applying `inner` first, then `self`.
    pub fn compose(&self, inner: &AutomorphismSpec) -> AutomorphismSpec {
        AutomorphismSpec::Composite(vec![self.clone(), inner.clone()])
    }

    /// Whether the automorphism commutes with the flip, tested exactly on
    /// the generators: for unitary images this reduces to
    /// `alpha(U)* = flip(alpha(U))` and likewise for `V`.
    pub fn commutes_with_flip(&self, ctx: AlgebraContext) -> Result<bool, AutoError> {
        let (iu, iv) = self.image_generators(ctx)?;
        Ok(iu.adjoint() == iu.flip() && iv.adjoint() == iv.flip())
    }
}

impl fmt::Display for AutomorphismSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomorphismSpec::Modular(m) => {
                write!(f, "mod({},{},{},{})", m.a, m.b, m.c, m.d)
            }
            AutomorphismSpec::Named(n) => write!(f, "{}", n.label()),
            AutomorphismSpec::Custom { image_u, image_v } => {
                write!(f, "custom(U -> {image_u}, V -> {image_v})")
            }
            AutomorphismSpec::Composite(parts) => {
                let joined: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", joined.join("."))
            }
        }
    }
}

/// Closed-form modular action on each term.
fn apply_modular(mat: &ModularMatrix, x: &NcElement) -> NcElement {
    let (a, b, c, d) = (mat.a, mat.b, mat.c, mat.d);
    NcElement::from_terms(
        x.context(),
        x.terms().map(|((m, n), coeff)| {
            let phase = a * b * m * m + c * d * n * n + 2 * b * c * m * n;
            let (mm, nn) = mat.act(m, n);
            ((mm, nn), coeff.times_t_pow(phase))
        }),
    )
}

fn apply_toral_sign(which: NamedAutomorphism, x: &NcElement) -> NcElement {
    NcElement::from_terms(
        x.context(),
        x.terms().map(|((m, n), coeff)| {
            let c = if which.toral_sign(m, n) { -coeff } else { coeff.clone() };
            ((m, n), c)
        }),
    )
}

/// Independent application path: expand `alpha(U)^m alpha(V)^n` by repeated
/// multiplication, using the adjoint for negative powers (images are
/// unitary). Used to cross-check the closed form and to apply Custom specs.
pub fn apply_multiplicative(
    image_u: &NcElement,
    image_v: &NcElement,
    x: &NcElement,
) -> Result<NcElement, AutoError> {
    let ctx = x.context();
    let mut pow_u: HashMap<i64, NcElement> = HashMap::new();
    let mut pow_v: HashMap<i64, NcElement> = HashMap::new();
    let mut out = NcElement::zero(ctx);
    for ((m, n), coeff) in x.terms() {
        let um = unitary_power(image_u, m, ctx, &mut pow_u)?;
        let vn = unitary_power(image_v, n, ctx, &mut pow_v)?;
        let term = um.try_mul(&vn)?.scale(coeff);
        out = out.try_add(&term)?;
    }
    Ok(out)
}

fn unitary_power(
    base: &NcElement,
    e: i64,
    ctx: AlgebraContext,
    cache: &mut HashMap<i64, NcElement>,
) -> Result<NcElement, AutoError> {
    if let Some(hit) = cache.get(&e) {
        return Ok(hit.clone());
    }
    let result = if e == 0 {
        NcElement::one(ctx)
    } else if e > 0 {
        let prev = unitary_power(base, e - 1, ctx, cache)?;
        prev.try_mul(base)?
    } else {
        unitary_power(base, -e, ctx, cache)?.adjoint()
    };
    cache.insert(e, result.clone());
    Ok(result)
}

/// All matrices with entries in `[-bound, bound]` and determinant 1, in a
/// fixed deterministic order.
pub fn sl2_matrices(bound: i64) -> Vec<ModularMatrix> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    if a * d - b * c == 1 {
                        out.push(ModularMatrix { a, b, c, d });
                    }
                }
            }
        }
    }
    out
}

//! Trace calculus on the flip orbifold.
//!
//! Implements `tau` and the four basic flip-twisted trace functionals
//! `phi_jk` (j, k parities), their pullback decomposition under
//! flip-commuting automorphisms, the parity-case closed form for modular
//! maps, the S3 classification of the induced permutations, Chern character
//! vectors, and the rational representation matrices of the pullback action.

use std::fmt;

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraError, NcElement};
use crate::automorphism::{AutoError, AutomorphismSpec, ModularMatrix, NamedAutomorphism};
use crate::phase::PhaseScalar;

/// Basis order used everywhere a functional is indexed: `phi00`, `phi01`,
/// `phi10`, `phi11`.
pub const PHI_BASIS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

pub const PHI_LABELS: [&str; 4] = ["phi00", "phi01", "phi10", "phi11"];

/// One of the trace functionals: the ordinary trace `tau` or a twisted
/// functional `phi_jk`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceId {
    Tau,
    Phi { j: u8, k: u8 },
}

impl TraceId {
    /// `phi_mn` for arbitrary integers reduces the indices mod 2.
    pub fn phi(m: i64, n: i64) -> TraceId {
        TraceId::Phi {
            j: m.rem_euclid(2) as u8,
            k: n.rem_euclid(2) as u8,
        }
    }

    pub fn label(&self) -> String {
        match self {
            TraceId::Tau => "tau".to_string(),
            TraceId::Phi { j, k } => format!("phi{j}{k}"),
        }
    }
}

impl fmt::Display for TraceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("trace calculus requires the half-angle phase convention")]
    UnsupportedConvention,
    #[error("automorphism must commute with the flip to pull back the twisted traces")]
    NotFlipCommuting,
    #[error("pullback of phi{j}{k} leaves the basis span at monomial U^{m} V^{n}")]
    SpanVerificationFailed { j: u8, k: u8, m: i64, n: i64 },
    #[error("table entry for {row} on {column} is not a rational constant: {value}")]
    NonRationalEntry {
        row: &'static str,
        column: &'static str,
        value: String,
    },
    #[error("representation matrix determinant is {det}, expected +1 or -1")]
    DeterminantNotUnit { det: String },
    #[error(transparent)]
    Auto(#[from] AutoError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Evaluate a trace functional exactly.
///
/// `tau` picks the `(0,0)` coefficient. `phi_jk` sums `a_mn t^{-mn}` over
/// the terms with `m = j` and `n = k` mod 2.
pub fn trace_value(id: TraceId, x: &NcElement) -> Result<PhaseScalar, TraceError> {
    if !x.context().is_half_angle() {
        return Err(TraceError::UnsupportedConvention);
    }
    match id {
        TraceId::Tau => Ok(x.coeff(0, 0)),
        TraceId::Phi { j, k } => {
            let mut acc = PhaseScalar::zero();
            for ((m, n), c) in x.terms() {
                if m.rem_euclid(2) as u8 == j && n.rem_euclid(2) as u8 == k {
                    acc = &acc + &c.times_t_pow(-m * n);
                }
            }
            Ok(acc)
        }
    }
}

/// Check the twisted trace identity `phi(x y) = phi(flip(y) x)` exactly.
pub fn twisted_trace_identity_holds(
    id: TraceId,
    x: &NcElement,
    y: &NcElement,
) -> Result<bool, TraceError> {
    let lhs = trace_value(id, &x.try_mul(y)?)?;
    let rhs = trace_value(id, &y.flip().try_mul(x)?)?;
    Ok(lhs == rhs)
}

/// The Chern character data of an element: `tau` and the four `phi_jk`,
/// all exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterVector {
    pub tau: PhaseScalar,
    pub phi00: PhaseScalar,
    pub phi01: PhaseScalar,
    pub phi10: PhaseScalar,
    pub phi11: PhaseScalar,
}

impl CharacterVector {
    pub fn phis(&self) -> [&PhaseScalar; 4] {
        [&self.phi00, &self.phi01, &self.phi10, &self.phi11]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tau": self.tau.to_json(),
            "phi00": self.phi00.to_json(),
            "phi01": self.phi01.to_json(),
            "phi10": self.phi10.to_json(),
            "phi11": self.phi11.to_json(),
        })
    }
}

impl fmt::Display for CharacterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(tau; phi00, phi01, phi10, phi11) = ({}; {}, {}, {}, {})",
            self.tau, self.phi00, self.phi01, self.phi10, self.phi11
        )
    }
}

/// Assemble the character vector of an element.
pub fn chern_character(x: &NcElement) -> Result<CharacterVector, TraceError> {
    Ok(CharacterVector {
        tau: trace_value(TraceId::Tau, x)?,
        phi00: trace_value(TraceId::phi(0, 0), x)?,
        phi01: trace_value(TraceId::phi(0, 1), x)?,
        phi10: trace_value(TraceId::phi(1, 0), x)?,
        phi11: trace_value(TraceId::phi(1, 1), x)?,
    })
}

/// Decomposition of the pulled-back functionals in the basis
/// `(phi00, phi01, phi10, phi11)`: row `r` holds the coefficients of
/// `phi_r after alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTable {
    rows: [[PhaseScalar; 4]; 4],
    permutation: Option<[usize; 3]>,
}

impl TraceTable {
    fn from_rows(rows: [[PhaseScalar; 4]; 4]) -> TraceTable {
        let permutation = detect_permutation(&rows);
        TraceTable { rows, permutation }
    }

    pub fn rows(&self) -> &[[PhaseScalar; 4]; 4] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> &PhaseScalar {
        &self.rows[row][col]
    }

    /// When the table is a pure relabeling of `(phi01, phi10, phi11)`,
    /// the permutation as index images in that order.
    pub fn permutation(&self) -> Option<[usize; 3]> {
        self.permutation
    }

    pub fn permutation_string(&self) -> Option<String> {
        let p = self.permutation?;
        let labels = ["01", "10", "11"];
        let parts: Vec<String> = (0..3)
            .map(|i| format!("{}\u{2192}{}", labels[i], labels[p[i]]))
            .collect();
        Some(parts.join(","))
    }

    pub fn s3_word(&self) -> Option<S3Word> {
        S3Word::from_permutation(self.permutation?)
    }

    /// Entries that are half-integers but not integers; recorded as findings
    /// because no tested automorphism has produced one.
    pub fn strict_half_integer_entries(&self) -> Vec<(usize, usize, BigRational)> {
        let mut found = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                if let Some(q) = entry.as_rational_constant() {
                    if is_half_integer(&q) && !q.is_integer() {
                        found.push((r, c, q));
                    }
                }
            }
        }
        found
    }

    /// Whether every entry is an exact half-integer rational.
    pub fn entries_are_half_integers(&self) -> bool {
        self.rows.iter().flatten().all(|e| {
            e.as_rational_constant()
                .map(|q| is_half_integer(&q))
                .unwrap_or(false)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let row_json = |r: usize| -> serde_json::Value {
            serde_json::Value::Array(
                self.rows[r]
                    .iter()
                    .map(|e| serde_json::Value::String(e.to_string()))
                    .collect(),
            )
        };
        serde_json::json!({
            "phi00": row_json(0),
            "phi01": row_json(1),
            "phi10": row_json(2),
            "phi11": row_json(3),
            "permutation": self.permutation_string(),
            "s3": self.s3_word().map(|w| w.label()),
        })
    }
}

impl fmt::Display for TraceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, label) in PHI_LABELS.iter().enumerate() {
            let terms: Vec<String> = self.rows[r]
                .iter()
                .zip(PHI_LABELS.iter())
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, basis)| {
                    if e.is_one() {
                        basis.to_string()
                    } else {
                        format!("({e}) {basis}")
                    }
                })
                .collect();
            let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "{label} \u{2218} alpha = {rhs}")?;
        }
        if let Some(s) = self.permutation_string() {
            writeln!(f, "permutation: {s}")?;
        }
        if let Some(w) = self.s3_word() {
            writeln!(f, "s3 class: {}", w.label())?;
        }
        Ok(())
    }
}

pub fn is_half_integer(q: &BigRational) -> bool {
    (q + q).is_integer()
}

fn detect_permutation(rows: &[[PhaseScalar; 4]; 4]) -> Option<[usize; 3]> {
    let one = PhaseScalar::one();
    // phi00 must be fixed outright
    for (c, e) in rows[0].iter().enumerate() {
        let expect_one = c == 0;
        if (e == &one) != expect_one || (!expect_one && !e.is_zero()) {
            return None;
        }
    }
    let mut images = [0usize; 3];
    let mut seen = [false; 3];
    for r in 1..4 {
        let mut image = None;
        for (c, e) in rows[r].iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if c == 0 || e != &one || image.is_some() {
                return None;
            }
            image = Some(c - 1);
        }
        let image = image?;
        if seen[image] {
            return None;
        }
        seen[image] = true;
        images[r - 1] = image;
    }
    Some(images)
}

/// Closed-form table for a modular automorphism, by parity cases on the
/// matrix entries: with indices mod 2,
/// even `a` sends `phi_jk` to `phi_{k-dj, j}`, even `b` to `phi_{j-ck, k}`,
/// even `c` to `phi_{j, k-bj}`, and even `d` to `phi_{k, j-ak}`.
/// Some entry is always even (the determinant is odd), and when several
/// cases apply they are all computed and must agree.
pub fn modular_trace_table(mat: &ModularMatrix) -> TraceTable {
    let (a, b, c, d) = (mat.a(), mat.b(), mat.c(), mat.d());
    let even = |x: i64| x.rem_euclid(2) == 0;
    let reduce = |x: i64| x.rem_euclid(2) as u8;
    let mut rows: [[PhaseScalar; 4]; 4] = Default::default();
    for (r, (j, k)) in PHI_BASIS.iter().enumerate() {
        let (j, k) = (*j as i64, *k as i64);
        let mut targets: Vec<(u8, u8)> = Vec::new();
        if even(a) {
            targets.push((reduce(k - d * j), reduce(j)));
        }
        if even(b) {
            targets.push((reduce(j - c * k), reduce(k)));
        }
        if even(c) {
            targets.push((reduce(j), reduce(k - b * j)));
        }
        if even(d) {
            targets.push((reduce(k), reduce(j - a * k)));
        }
        let first = *targets.first().expect("some entry of a unimodular matrix is even");
        assert!(
            targets.iter().all(|t| *t == first),
            "parity cases disagree for {mat}: {targets:?}"
        );
        let col = PHI_BASIS
            .iter()
            .position(|p| *p == first)
            .expect("reduced parities index the basis");
        rows[r][col] = PhaseScalar::one();
    }
    TraceTable::from_rows(rows)
}

/// Independent pullback decomposition for any flip-commuting automorphism.
///
/// The coefficient of `phi_mn` in `phi_jk after alpha` is extracted as
/// `phi_jk(alpha(U^m V^n)) * t^{mn}` on the four parity monomials, and the
/// claimed decomposition is then verified exactly on all monomials with
/// `|m|, |n| <= 5`.
pub fn trace_pullback_table(spec: &AutomorphismSpec) -> Result<TraceTable, TraceError> {
    let ctx = AlgebraContext::standard();
    if !spec.commutes_with_flip(ctx)? {
        return Err(TraceError::NotFlipCommuting);
    }
    let monomial = |m: i64, n: i64| NcElement::monomial(ctx, m, n, PhaseScalar::one());
    let mut rows: [[PhaseScalar; 4]; 4] = Default::default();
    for (col, (m, n)) in PHI_BASIS.iter().enumerate() {
        let (m, n) = (*m as i64, *n as i64);
        let image = spec.apply(&monomial(m, n))?;
        for (row, (j, k)) in PHI_BASIS.iter().enumerate() {
            let value = trace_value(TraceId::Phi { j: *j, k: *k }, &image)?;
            rows[row][col] = value.times_t_pow(m * n);
        }
    }
    // verification sweep: the four extracted coefficients must reproduce
    // phi_jk(alpha(U^m V^n)) on the whole tested range
    for m in -5i64..=5 {
        for n in -5i64..=5 {
            let image = spec.apply(&monomial(m, n))?;
            let col = PHI_BASIS
                .iter()
                .position(|(pj, pk)| {
                    *pj as i64 == m.rem_euclid(2) && *pk as i64 == n.rem_euclid(2)
                })
                .expect("parity pair is in the basis");
            for (row, (j, k)) in PHI_BASIS.iter().enumerate() {
                let lhs = trace_value(TraceId::Phi { j: *j, k: *k }, &image)?;
                let rhs = rows[row][col].times_t_pow(-m * n);
                if lhs != rhs {
                    return Err(TraceError::SpanVerificationFailed { j: *j, k: *k, m, n });
                }
            }
        }
    }
    Ok(TraceTable::from_rows(rows))
}

/// The six words in the Fourier and cubic transforms that exhaust the
/// permutations of `(phi01, phi10, phi11)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum S3Word {
    Id,
    Sigma,
    Kappa,
    Kappa2,
    SigmaKappa,
    SigmaKappa2,
}

impl S3Word {
    pub const ALL: [S3Word; 6] = [
        S3Word::Id,
        S3Word::Sigma,
        S3Word::Kappa,
        S3Word::Kappa2,
        S3Word::SigmaKappa,
        S3Word::SigmaKappa2,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            S3Word::Id => "id",
            S3Word::Sigma => "sigma",
            S3Word::Kappa => "kappa",
            S3Word::Kappa2 => "kappa2",
            S3Word::SigmaKappa => "sigma.kappa",
            S3Word::SigmaKappa2 => "sigma.kappa2",
        }
    }

    pub fn spec(&self) -> AutomorphismSpec {
        let sigma = AutomorphismSpec::Named(NamedAutomorphism::Sigma);
        let kappa = AutomorphismSpec::Named(NamedAutomorphism::Kappa);
        match self {
            S3Word::Id => AutomorphismSpec::Named(NamedAutomorphism::Id),
            S3Word::Sigma => sigma,
            S3Word::Kappa => kappa,
            S3Word::Kappa2 => AutomorphismSpec::Composite(vec![kappa.clone(), kappa]),
            S3Word::SigmaKappa => AutomorphismSpec::Composite(vec![sigma, kappa]),
            S3Word::SigmaKappa2 => AutomorphismSpec::Composite(vec![sigma, kappa.clone(), kappa]),
        }
    }

    /// The trace permutation of the word, in the order `(phi01, phi10,
    /// phi11)`: entry `i` is the index of the functional that `phi_i`
    /// pulls back to.
    pub fn permutation(&self) -> [usize; 3] {
        match self {
            S3Word::Id => [0, 1, 2],
            S3Word::Sigma => [1, 0, 2],
            S3Word::Kappa => [2, 0, 1],
            S3Word::Kappa2 => [1, 2, 0],
            S3Word::SigmaKappa => [0, 2, 1],
            S3Word::SigmaKappa2 => [2, 1, 0],
        }
    }

    pub fn from_permutation(p: [usize; 3]) -> Option<S3Word> {
        S3Word::ALL.into_iter().find(|w| w.permutation() == p)
    }
}

impl fmt::Display for S3Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The word whose trace permutation matches the modular table of `mat`.
pub fn s3_representative(mat: &ModularMatrix) -> S3Word {
    let table = modular_trace_table(mat);
    let p = table
        .permutation()
        .expect("modular tables are permutations");
    S3Word::from_permutation(p).expect("every permutation of three symbols has a word")
}

/// Rational matrix of the pullback action on the twisted traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    three: [[BigRational; 3]; 3],
    extended: [[BigRational; 4]; 4],
}

impl RepMatrix {
    /// The action on `(phi01, phi10, phi11)` in that basis order.
    pub fn three(&self) -> &[[BigRational; 3]; 3] {
        &self.three
    }

    /// The 4x4 extension including the `phi00` row and column.
    pub fn extended(&self) -> &[[BigRational; 4]; 4] {
        &self.extended
    }

    pub fn det_three(&self) -> BigRational {
        det3(&self.three)
    }

    pub fn det_extended(&self) -> BigRational {
        det4(&self.extended)
    }

    /// Half-integer entries that are not integers, recorded as findings.
    pub fn strict_half_integer_entries(&self) -> Vec<(usize, usize, BigRational)> {
        let mut found = Vec::new();
        for (r, row) in self.extended.iter().enumerate() {
            for (c, q) in row.iter().enumerate() {
                if is_half_integer(q) && !q.is_integer() {
                    found.push((r, c, q.clone()));
                }
            }
        }
        found
    }

    pub fn entries_are_half_integers(&self) -> bool {
        self.extended.iter().flatten().all(is_half_integer)
    }

    /// Product of the 3x3 blocks, for the composition-order property tests.
    pub fn mul_three(&self, rhs: &RepMatrix) -> [[BigRational; 3]; 3] {
        let mut out: [[BigRational; 3]; 3] = Default::default();
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for k in 0..3 {
                    acc += &self.three[r][k] * &rhs.three[k][c];
                }
                *cell = acc;
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mat_json = |rows: &[Vec<BigRational>]| -> serde_json::Value {
            serde_json::Value::Array(
                rows.iter()
                    .map(|row| {
                        serde_json::Value::Array(
                            row.iter()
                                .map(|q| serde_json::Value::String(q.to_string()))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        let three: Vec<Vec<BigRational>> = self.three.iter().map(|r| r.to_vec()).collect();
        let extended: Vec<Vec<BigRational>> = self.extended.iter().map(|r| r.to_vec()).collect();
        serde_json::json!({
            "basis": ["phi01", "phi10", "phi11"],
            "three": mat_json(&three),
            "extended_basis": ["phi00", "phi01", "phi10", "phi11"],
            "extended": mat_json(&extended),
            "det": self.det_three().to_string(),
        })
    }
}

fn det3(m: &[[BigRational; 3]; 3]) -> BigRational {
    let term = |i: usize, j: usize, k: usize| &m[0][i] * (&m[1][j] * &m[2][k]);
    term(0, 1, 2) - term(0, 2, 1) - term(1, 0, 2) + term(1, 2, 0) + term(2, 0, 1)
        - term(2, 1, 0)
}

fn det4(m: &[[BigRational; 4]; 4]) -> BigRational {
    let mut acc = BigRational::zero();
    for c in 0..4 {
        if m[0][c].is_zero() {
            continue;
        }
        let mut minor: [[BigRational; 3]; 3] = Default::default();
        for (mr, r) in (1..4).enumerate() {
            let mut mc = 0;
            for (cc, val) in m[r].iter().enumerate() {
                if cc == c {
                    continue;
                }
                minor[mr][mc] = val.clone();
                mc += 1;
            }
        }
        let cofactor = det3(&minor);
        if c % 2 == 0 {
            acc += &m[0][c] * &cofactor;
        } else {
            acc -= &m[0][c] * &cofactor;
        }
    }
    acc
}

/// Compute the representation matrix of a flip-commuting automorphism.
///
/// Rows are the pulled-back traces, so composition satisfies
/// `M(outer after inner) = M(outer) * M(inner)` (the direction is pinned by
/// a property test, not assumed).
pub fn rep_matrix(spec: &AutomorphismSpec) -> Result<RepMatrix, TraceError> {
    let table = trace_pullback_table(spec)?;
    let mut extended: [[BigRational; 4]; 4] = Default::default();
    for r in 0..4 {
        for c in 0..4 {
            extended[r][c] = table.rows()[r][c].as_rational_constant().ok_or_else(|| {
                TraceError::NonRationalEntry {
                    row: PHI_LABELS[r],
                    column: PHI_LABELS[c],
                    value: table.rows()[r][c].to_string(),
                }
            })?;
        }
    }
    let mut three: [[BigRational; 3]; 3] = Default::default();
    for r in 0..3 {
        for c in 0..3 {
            three[r][c] = extended[r + 1][c + 1].clone();
        }
    }
    let rep = RepMatrix { three, extended };
    let det = rep.det_three();
    if !det.abs().is_one() {
        return Err(TraceError::DeterminantNotUnit { det: det.to_string() });
    }
    let det4 = rep.det_extended();
    if !det4.abs().is_one() {
        return Err(TraceError::DeterminantNotUnit { det: det4.to_string() });
    }
    Ok(rep)
}

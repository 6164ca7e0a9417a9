//! Exact symbolic engine for the irrational rotation algebra and its flip
//! orbifold, with a finite-dimensional numeric oracle for cross-checking.

pub mod algebra;
pub mod automorphism;
pub mod oracle;
pub mod parse;
pub mod phase;
pub mod prlab;
pub mod trace;
pub mod verify;

pub use algebra::{AlgebraContext, AlgebraError, MatrixLayout, NcElement, PhaseConvention};
pub use automorphism::{
    sl2_matrices, validate_generator_images, AutoError, AutomorphismSpec, ModularMatrix,
    NamedAutomorphism, ValidationError,
};
pub use oracle::{CMatrix, ClockShift, OracleError, OracleReport};
pub use parse::{parse_element, parse_element_in, parse_spec, ParseError};
pub use phase::{GaussianRational, JsonFormatError, PhaseScalar};
pub use prlab::{
    IdentityResiduals, NumericCharacter, PrLabError, PrProjection, Profile, ToralMap,
};
pub use trace::{
    chern_character, modular_trace_table, rep_matrix, s3_representative, trace_pullback_table,
    trace_value, twisted_trace_identity_holds, CharacterVector, RepMatrix, S3Word, TraceError,
    TraceId, TraceTable,
};
pub use verify::{CheckResult, Suite, SuiteReport};

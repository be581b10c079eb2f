//! Exact computation of framing-anomaly obstruction groups for topological
//! AKSZ theories on ℝⁿ.
//!
//! The obstruction to trivializing the rotation action lives in
//! `⊕_{i+j=n} H^i_red(so(n)) ⊗ H^j_(red)(L)`. This crate computes that group
//! from closed-form cohomology tables ([`catalog`]), derives it through the
//! Koszul page `η_j ↦ p_j` ([`koszul`]), and checks both against brute-force
//! linear algebra on the Weil-type fiber complex ([`weil`]) and on
//! Chevalley–Eilenberg complexes built from structure constants ([`lie`]).
//!
//! All arithmetic is exact. The algebra and matrix layers are generic over
//! the coefficient field; the aliases below fix it to arbitrary-precision
//! rationals, which is what every higher layer uses.

pub mod anomaly;
pub mod catalog;
pub mod gca;
pub mod graded;
pub mod koszul;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod weil;

pub use graded::{GradedDims, LabeledDims};
pub use scalar::{ExactScalar, Scalar};

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;
/// Rationals with machine-word parts; fine for small examples, overflow panics.
pub type SmallRational = num_rational::Rational64;

pub type Element = gca::Element<Rational>;
pub type Derivation = gca::Derivation<Rational>;
pub type Matrix = linalg::SparseMatrix<Rational>;
pub type Complex = linalg::CochainComplex<Rational>;
pub type Cohomology = linalg::CohomologyDims<Rational>;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("unbounded enumeration: generator {0:?} has nonpositive even degree and no word-length cap was given")]
    UnboundedEnumeration(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("shape mismatch at degree {degree}: {detail}")]
    Shape { degree: i64, detail: String },
    #[error("degree {degree} is at or beyond the window boundary [{lo}, {hi}]; its cohomology is untrusted")]
    UntrustedBoundary { degree: i64, lo: i64, hi: i64 },
    #[error("window [{lo}, {hi}] is too narrow: {detail}")]
    NarrowWindow { lo: i64, hi: i64, detail: String },
    #[error("invalid Lie algebra data: {0}")]
    InvalidLie(String),
    #[error("invalid simple type {0}")]
    InvalidSimpleType(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("size guard: {0}")]
    TooLarge(String),
}

//! Exact computations with type A and type B zigzag algebras, their braid
//! group actions on complexes of projectives, and the invariants attached.

pub mod bridge;
pub mod curves;
pub mod exact;
pub mod homotopy;
pub mod ktheory;
pub mod linalg;
pub mod tlrel;
pub mod zigzag;

pub use exact::{GaussRat, Rat, Scalar, TriPoly};

pub type AlgB = zigzag::ZigzagAlgebra<Rat>;
pub type AlgA = zigzag::ZigzagAlgebra<GaussRat>;
pub type ElemB = zigzag::Elem<Rat>;
pub type ElemA = zigzag::Elem<GaussRat>;
pub type ComplexB = homotopy::Complex<Rat>;
pub type ComplexA = homotopy::Complex<GaussRat>;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("algebra mismatch: {0}")]
    Mismatch(String),
    #[error("arithmetic: {0}")]
    Arithmetic(String),
    #[error("algebra construction failed: {0}")]
    Construction(String),
    #[error("size limit: {0}")]
    SizeLimit(String),
    #[error("curve validation: {0}")]
    Curve(String),
    #[error("undetermined: {0}")]
    Undetermined(String),
}

pub type Result<T> = std::result::Result<T, Error>;

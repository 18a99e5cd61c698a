use alloc::string::String;
use alloc::vec::Vec;

use crate::rational::ParseRationalError;

/// Errors produced by the geometric and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("axis {axis} out of range for dimension {dim}")]
    BadAxis { axis: usize, dim: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("interval lower end {lo} exceeds upper end {hi}")]
    InvertedInterval { lo: String, hi: String },

    #[error("family is empty")]
    EmptyFamily,

    #[error("color class {class} is empty")]
    EmptyClass { class: usize },

    #[error("piercing budget must be at least 1")]
    ZeroBudget,

    #[error("operation requires dimension 1, got {dim}")]
    NotOneDimensional { dim: usize },

    #[error("operation requires dimension 2, got {dim}")]
    NotTwoDimensional { dim: usize },

    #[error("needs at least {needed} items, got {got}")]
    TooSmall { needed: usize, got: usize },

    #[error("{what}: size {size} exceeds the search cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("colorful premise fails: tuple {tuple:?} is not {n}-pierceable")]
    PremiseViolated { tuple: Vec<usize>, n: usize },

    #[error(
        "no colorful Helly number is known for d={dim}, n={n}: for d >= 2 and n >= 3 \
         no finite Helly number exists (h(d,n) is infinite apart from h(2,3) = 16)"
    )]
    UnsupportedTupleSize { dim: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "table witness misses box {index} of class {class} under both Table-2 readings \
         (coordinate pair {x} / {y})"
    )]
    TableWitnessMiss { class: usize, index: usize, x: String, y: String },

    #[error("internal certificate check failed: {0}")]
    Certificate(String),

    #[error(transparent)]
    Parse(#[from] ParseRationalError),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

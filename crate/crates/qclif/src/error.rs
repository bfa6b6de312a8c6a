use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("algebra dimension mismatch: {left} vs {right} generators")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operand is not a 1-vector (grades {grades:?})")]
    NotAVector { grades: Vec<usize> },

    #[error("multivector is not in spinor space; offending blades: {blades:?}")]
    NotInSpinorSpace { blades: Vec<String> },

    #[error("no cell (r, s) = ({r}, {s}) for p = {p}")]
    InvalidCell { p: usize, r: usize, s: usize },

    #[error("field has p = {left}, expected p = {right}")]
    FieldMismatch { left: usize, right: usize },

    #[error("degree {requested} exceeds the configured cap {cap} (set QCLIF_MAX_DEGREE to raise it)")]
    DegreeCap { requested: u32, cap: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("construction failed: {0}")]
    Construction(String),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^H| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not normal (max |U U^H - U^H U| = {deviation:.3e})")]
    NotNormal { deviation: f64 },

    #[error("matrix is not unitary (max |U U^H - 1| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parameter vector has length {found}, model expects {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid optimizer options: {0}")]
    InvalidOptions(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("decomposition has a complex coefficient for {string} (imaginary part {imag:.3e})")]
    ComplexCoefficient { string: String, imag: f64 },

    #[error("Pauli string {0} is not allowed by the coupling model")]
    StringNotInModel(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("row {index} is empty: start {start} exceeds end {end}")]
    EmptyRow { index: usize, start: u32, end: u32 },
    #[error("shape has no rows")]
    EmptyShape,
    #[error("length mismatch: {left} letters vs {right} places")]
    LengthMismatch { left: usize, right: usize },
    #[error("letters within column {column} of the word are not weakly increasing")]
    UnsortedColumnSegment { column: u32 },
    #[error("flag is invalid: {reason}")]
    BadFlag { reason: String },
    #[error("no place available for column {column}")]
    MissingPlace { column: u32 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("tableau is not row-standard at row {row}, column {column}")]
    NotRowStandard { row: usize, column: u32 },
    #[error("syzygy marking is invalid: {reason}")]
    BadSpec { reason: String },
    #[error("pivot coefficient {pivot} is not a unit; marked cells share a positive letter with unmarked cells")]
    NonUnitPivot { pivot: String },
    #[error("expansion oracle rejected an emitted identity: {context}")]
    OracleMismatch { context: String },
    #[error("tableau is already straight")]
    AlreadyStraight,
    #[error("tableaux have different shapes")]
    ShapeMismatch,
    #[error("polynomial is not homogeneous in the tableau grading")]
    NotHomogeneous,
    #[error("element is not in the module; residual initial monomial {witness}")]
    NotInModule { witness: String },
    #[error("echelon certificate failed: {reason}")]
    CertificateFailure { reason: String },
    #[error("strips have different kinds")]
    KindMismatch,
    #[error("character identity failed at monomial {witness}")]
    IdentityFailure { witness: String },
    #[error("alphabet with positive letters is not supported here")]
    MixedSignUnsupported,
    #[error("unknown letter {symbol:?} in input")]
    UnknownLetter { symbol: String },
    #[error("malformed input: {reason}")]
    Parse { reason: String },
}

impl Error {
    /// Stable machine-readable code for the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyRow { .. } => "EmptyRow",
            Error::EmptyShape => "EmptyShape",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::UnsortedColumnSegment { .. } => "UnsortedColumnSegment",
            Error::BadFlag { .. } => "BadFlag",
            Error::MissingPlace { .. } => "MissingPlace",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NotRowStandard { .. } => "NotRowStandard",
            Error::BadSpec { .. } => "BadSpec",
            Error::NonUnitPivot { .. } => "NonUnitPivot",
            Error::OracleMismatch { .. } => "OracleMismatch",
            Error::AlreadyStraight => "AlreadyStraight",
            Error::ShapeMismatch => "ShapeMismatch",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NotInModule { .. } => "NotInModule",
            Error::CertificateFailure { .. } => "CertificateFailure",
            Error::KindMismatch => "KindMismatch",
            Error::IdentityFailure { .. } => "IdentityFailure",
            Error::MixedSignUnsupported => "MixedSignUnsupported",
            Error::UnknownLetter { .. } => "UnknownLetter",
            Error::Parse { .. } => "Parse",
        }
    }

    /// Witness payload, when the error carries one.
    pub fn witness(&self) -> Option<String> {
        match self {
            Error::NonUnitPivot { pivot } => Some(pivot.clone()),
            Error::NotInModule { witness } => Some(witness.clone()),
            Error::IdentityFailure { witness } => Some(witness.clone()),
            Error::OracleMismatch { context } => Some(context.clone()),
            Error::CertificateFailure { reason } => Some(reason.clone()),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid rational number `{0}`")]
    Rational(String),
    #[error("invalid multisingularity `{0}`")]
    MultiSingularity(String),
    #[error("unknown singularity `{0}`")]
    Singularity(String),
    #[error("invalid partition `{0}`")]
    Partition(String),
    #[error("invalid chi index `{0}`")]
    ChiIndex(String),
    #[error("malformed json: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("incompatible variable tables: {0}")]
    IncompatibleVars(String),
    #[error("duplicate variable {family}_{index}")]
    DuplicateVar { family: String, index: i32 },
    #[error("unknown variable {family}_{index}")]
    UnknownVar { family: String, index: i32 },
    #[error("no assignment for occurring variable {0}")]
    MissingAssignment(String),
    #[error("factor is not a unit-constant linear form: {0}")]
    NotLinearFactor(String),

    #[error("requested degree {requested} exceeds the validity bound {bound} of series {series}")]
    DegreeBoundExceeded { series: String, requested: u32, bound: u32 },
    #[error("a plug-in Thom series for {0} is required")]
    MissingSeries(String),
    #[error("invalid Thom series: {0}")]
    InvalidSeries(String),
    #[error("no residue polynomial available for {0}")]
    MissingResidue(String),
    #[error("relative dimension {ell} out of range: {reason}")]
    BadRelativeDimension { ell: i64, reason: String },

    #[error("euler class of the source does not divide the target euler class: {0}")]
    NonExactDivision(String),
    #[error("unsupported prototype: {0}")]
    UnsupportedPrototype(String),

    #[error("grassmannian mismatch: {0}")]
    RingMismatch(String),
    #[error("chern class index {index} out of range (rank {rank})")]
    ChernIndexOutOfRange { index: usize, rank: usize },

    #[error("inhomogeneous class: {0}")]
    Inhomogeneous(String),
    #[error("no value supplied for {0}")]
    MissingChi(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

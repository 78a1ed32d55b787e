use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// The variants are grouped by how a batch front end should react: bad input,
/// a computation that outgrew its truncation, or a broken chain complex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields ({0} vs {1})")]
    MixedFields(String, String),

    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,

    #[error("truncation overflow: degree {degree} exceeds truncation {limit} ({context})")]
    TruncationOverflow {
        degree: usize,
        limit: usize,
        context: String,
    },

    #[error("bidegree (s={s}, n={n}) lies outside the trusted range (s<={s_max}, n<={n_max})")]
    OutsideTrustedRange {
        s: usize,
        n: usize,
        s_max: usize,
        n_max: usize,
    },

    #[error("d^2 != 0 at bidegree (s={s}, n={n}) on generator {generator}")]
    DSquaredNonzero { s: usize, n: usize, generator: String },

    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

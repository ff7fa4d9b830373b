use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A polynomial that should be a product of cyclotomic polynomials is not.
    #[error("characteristic polynomial is not a product of cyclotomic polynomials")]
    NotQuasiUnipotent,
    #[error("rational function does not split into linear factors over Q")]
    NotSplit,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    /// `det(I - M^n) = 0`: the fixed points of the n-th iterate are not isolated.
    #[error("iterate {0} has non-isolated fixed points")]
    DegenerateIterate(usize),
    #[error("class has a negative coefficient in the T-basis")]
    NotEffectivelyTorified,
    #[error("class has half-integer Tate twists")]
    HalfTwistPresent,
    #[error("truncation {trunc} is too small for operator index {n}")]
    TruncationTooSmall { trunc: usize, n: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable name used in the JSON error envelope and the C error codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotQuasiUnipotent => "NotQuasiUnipotent",
            Error::NotSplit => "NotSplit",
            Error::NotDivisible(_) => "NotDivisible",
            Error::DegenerateIterate(_) => "DegenerateIterate",
            Error::NotEffectivelyTorified => "NotEffectivelyTorified",
            Error::HalfTwistPresent => "HalfTwistPresent",
            Error::TruncationTooSmall { .. } => "TruncationTooSmall",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

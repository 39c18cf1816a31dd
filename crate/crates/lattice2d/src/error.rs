use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate basis")]
    DegenerateBasis,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("superbase vectors do not sum to zero")]
    NotASuperbase,
    #[error("reduction did not terminate within {0} iterations")]
    NonTermination(usize),
    #[error("superbase is not obtuse")]
    NotObtuse,
    #[error("point ({0}, {1}) lies outside the obtuse region")]
    OutsideObt(f64, f64),
    #[error("invalid root invariant ({0}, {1}, {2})")]
    InvalidRootInvariant(f64, f64, f64),
    #[error("projected invariant ({0}, {1}) lies outside the quotient triangle")]
    InvalidPi(f64, f64),
    #[error("sign is inconsistent with the mirror symmetry of the invariant")]
    InconsistentSign,
    #[error("invalid sign value {0}")]
    InvalidSign(i64),
    #[error("unsupported Minkowski parameter q = {0}")]
    UnsupportedQ(f64),
    #[error("distance sequence too short to extract vonorms")]
    InsufficientLength,
    #[error("distance sequence has near-coincident values; extraction is ambiguous")]
    AmbiguousSequence,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate basis on path at t = {0}")]
    DegeneratePath(f64),
}

impl Error {
    /// Errors caused by floating point pathologies rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NonTermination(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

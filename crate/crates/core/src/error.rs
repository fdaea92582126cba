use thiserror::Error;

/// Errors produced by the library.
///
/// The variants split into two families that the command-line front end maps
/// onto different exit codes: malformed input (`InvalidInput`, `Schema`,
/// `NotPrime`, mismatches) and requests the library cannot serve for the given
/// group or field (`Unsupported`, `OreUnavailable`, `CertificationUnavailable`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("group mismatch")]
    GroupMismatch,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("Ore dimension directly computable only for Zd; use approximation")]
    OreUnavailable,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("certified rank unavailable: {0}")]
    CertificationUnavailable(String),
    #[error("word distance exceeds the memoized radius {0}")]
    RadiusTooLarge(u32),
    #[error("c_{degree} * c_{next} is nonzero", next = degree - 1)]
    NotAComplex { degree: usize },
}

impl Error {
    /// True for errors that reject a well-formed request the library does not
    /// support (as opposed to malformed input).
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::OreUnavailable
                | Error::Unsupported(_)
                | Error::CertificationUnavailable(_)
                | Error::RadiusTooLarge(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

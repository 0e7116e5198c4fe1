use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("relations produced an inconsistent table: {0}")]
    RelationInconsistency(String),
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderOverflow { order: usize, bound: usize },
    #[error("{what} ({size}) exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("subgroup belongs to a different parent group")]
    ParentMismatch,
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivideOrder { p: usize, order: usize },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("certificate does not match: {0}")]
    CertificateMismatch(String),
    #[error("orders {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("subgroup {position} is trivial or the whole group")]
    ImproperSubgroup { position: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("failed to parse: {0}")]
    Parse(String),
}

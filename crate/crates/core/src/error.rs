use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is valid but the computation would need more memory than allowed.
    #[error("resource error: {0}")]
    Resource(String),

    /// An exact computation produced a value that can only come from an arithmetic bug.
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    /// `A(p) = (2 - (2/p)) h(p)` or `h_forms = h_charsum` failed.
    #[error(
        "class number identity failed at p = {p}: A(p) = {lhs}, (2 - (2/p)) h = {rhs}, \
         h_forms = {h_forms}, h_charsum = {h_charsum}"
    )]
    IdentityMismatch {
        p: u64,
        lhs: i64,
        rhs: i64,
        h_forms: u64,
        h_charsum: u64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

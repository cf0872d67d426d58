use thiserror::Error;

/// Failure modes shared by every module of the crate.
///
/// Domain errors flag a violated mathematical precondition (the caller asked
/// a question the eigenvalue criterion or lemma does not answer). Resource
/// errors flag a computation that would exceed a configured budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base N = {0} must be at least 2")]
    InvalidBase(i64),

    #[error("digit sets differ in size: #B = {b} but #L = {l} (a Hadamard triple needs #B = #L >= 2)")]
    SizeMismatch { b: usize, l: usize },

    #[error("{0}")]
    InvalidTriple(String),

    #[error("gcd({what} = {value}, {against_name} = {against}) = {gcd}, but the {criterion} requires coprimality")]
    NotCoprime {
        what: &'static str,
        value: String,
        against_name: &'static str,
        against: String,
        gcd: String,
        criterion: &'static str,
    },

    #[error("{0} is not a member of the self-similar set, so it has no coding")]
    NotMember(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

impl Error {
    /// Resource exhaustion, as opposed to a violated precondition.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

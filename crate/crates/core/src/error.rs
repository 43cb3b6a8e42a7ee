use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ill-formed deflation expression `{expr}`: {reason}")]
    IllFormed { expr: String, reason: String },
    #[error("term {term} is not in the image of {ty}")]
    NotMember { ty: String, term: String },
    #[error("carrier guard exceeded: {what} ({size} > {limit})")]
    GuardExceeded {
        what: String,
        size: usize,
        limit: usize,
    },
    #[error("carrier of `{0}` is not bounded by rank (recursion not guarded by a lifting)")]
    Unbounded(String),
    #[error("unknown registry name `{0}`")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

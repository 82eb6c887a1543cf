//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {letter}{rank}")]
    InvalidSystem { letter: char, rank: usize },

    #[error("{op} requires two root lengths, but {system} is simply laced")]
    SimplyLaced { op: &'static str, system: String },

    #[error("operands belong to different root systems ({a} vs {b})")]
    MixedSystems { a: String, b: String },

    #[error("coefficient vector {coeffs:?} is not a root")]
    NotARoot { coeffs: Vec<i64> },

    #[error("expected a positive root, got {coeffs:?}")]
    NotPositive { coeffs: Vec<i64> },

    #[error("set is not an antichain: members {a:?} and {b:?} are comparable")]
    NotAntichain { a: Vec<i64>, b: Vec<i64> },

    #[error("set is not upward closed: {missing:?} is above a member but absent")]
    NotIdeal { missing: Vec<i64> },

    #[error(
        "{op} needs a strictly positive ideal, but the ideal contains the simple root {simple:?}"
    )]
    NotStrictlyPositive { op: &'static str, simple: Vec<i64> },

    #[error("antichain is not short: {root:?} is a long root")]
    NotShort { root: Vec<i64> },

    #[error("antichain is not strictly s-positive: {root:?} is simple in the short subsystem")]
    NotStrictlySPositive { root: Vec<i64> },

    #[error("element is not {required}")]
    WrongClass { required: &'static str },

    #[error("set is not bi-convex: {detail}")]
    NotBiconvex { detail: String },

    #[error("half-space system `{name}` is unbounded")]
    Unbounded { name: String },

    #[error("point lies outside `{name}`")]
    OutsidePoint { name: String },

    #[error("point is not in the required lattice")]
    NotInLattice,

    #[error("rank {rank} exceeds the {what} guard (max {max})")]
    RankGuard {
        rank: usize,
        max: usize,
        what: &'static str,
    },

    #[error("parameter m={m} exceeds the guard (max {max})")]
    LevelGuard { m: usize, max: usize },

    #[error("finite-field engine failed: {detail}")]
    Engine { detail: String },

    #[error("internal invariant violated: {detail}")]
    Internal { detail: String },

    #[error("invalid argument: {detail}")]
    InvalidArgument { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn internal(detail: impl Into<String>) -> Self {
        Error::Internal {
            detail: detail.into(),
        }
    }

    pub fn invalid(detail: impl Into<String>) -> Self {
        Error::InvalidArgument {
            detail: detail.into(),
        }
    }
}

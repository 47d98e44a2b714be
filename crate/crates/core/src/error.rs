use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the simulation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite sample at node {node} (r = {r})")]
    NonFiniteSample { node: usize, r: f64 },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid initial data: {0}")]
    InvalidInitialData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("lambda path vanished at T = {vanishing_time}, requested t = {t}")]
    PathVanished { t: f64, vanishing_time: f64 },

    #[error("(r, t) = ({r}, {t}) outside the domain of {family}")]
    OutOfDomain { family: &'static str, r: f64, t: f64 },

    #[error("certification failed: {reason} (best margin {best_margin:e})")]
    CertificationFailed { reason: String, best_margin: f64 },

    #[error("tridiagonal solve lost diagonal dominance at row {row}; reduce dt (dt = {dt:e})")]
    SolveFailed { row: usize, dt: f64 },

    #[error("unresolved singularity: dt fell below {min_dt:e} at t = {t}")]
    UnresolvedSingularity {
        t: f64,
        min_dt: f64,
        partial: Box<crate::evolver::Trajectory>,
    },

    #[error("blowup limit not pi; cannot continue (max near axis {max_near_axis})")]
    BlowupLimitNotPi { max_near_axis: f64 },

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("interval [{s}, {t}] contains an event at {event_time}")]
    EventInInterval { s: f64, t: f64, event_time: f64 },

    #[error("boundary incompatibility on edge {edge}: violation {violation:e} at t = {t}")]
    BoundaryIncompatible {
        edge: &'static str,
        violation: f64,
        t: f64,
    },

    #[error("t2 not reached; extend horizon (last checked t = {last_time})")]
    T2NotReached { last_time: f64 },

    #[error("bubble reinsertion needs phi(r_n) in (0, pi), got {0}")]
    DegenerateReinsertion(f64),

    #[error("time {t} falls in an event gap of branch {branch}")]
    InterpolationAcrossEvent { t: f64, branch: usize },

    #[error("branch {branch}: {source}")]
    Branch {
        branch: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("missing artifact: {}", .0.display())]
    MissingArtifact(PathBuf),

    #[error("io error at {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_branch(self, branch: usize) -> Self {
        match self {
            e @ Error::Branch { .. } => e,
            e => Error::Branch {
                branch,
                source: Box::new(e),
            },
        }
    }
}

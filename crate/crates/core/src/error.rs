use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cell limit exceeded: {count} cells (limit {limit})")]
    CellLimit { count: usize, limit: usize },

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("face {face} does not fit in dimension {dim}")]
    FaceOutOfRange { face: String, dim: usize },

    #[error("face {sigma} does not contain face {tau}")]
    FaceNotContained { tau: String, sigma: String },

    #[error("set is not a downset{}", witness_suffix(.witness))]
    NotDownset { witness: Option<Vec<String>> },

    #[error("set is not an upset{}", witness_suffix(.witness))]
    NotUpset { witness: Option<Vec<String>> },

    #[error("set is not invariant under translation along {face}")]
    NotInvariant { face: String },

    #[error("face {0} is not associated")]
    NotAssociated(String),

    #[error("family entry {0} is not contained in the reference family")]
    FamilyNotContained(String),

    #[error("interval is empty")]
    EmptyInterval,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("check failed: {what}{}", witness_suffix(.witness))]
    CheckFailed {
        what: String,
        witness: Option<Vec<String>>,
    },
}

fn witness_suffix(w: &Option<Vec<String>>) -> String {
    match w {
        Some(p) => format!(" (witness [{}])", p.join(", ")),
        None => String::new(),
    }
}

impl Error {
    /// Internal consistency failures, as opposed to bad input.
    pub fn is_check_failure(&self) -> bool {
        matches!(self, Error::CheckFailed { .. })
    }

    pub(crate) fn dims(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}

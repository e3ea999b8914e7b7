use thiserror::Error;

/// Everything that can go wrong while reading, building or solving.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate passage {0}")]
    DuplicatePassage(String),

    #[error("crossing {id} is referenced by {count} passages (expected 2)")]
    CrossingMultiplicity { id: String, count: usize },

    #[error("unknown crossing {0}")]
    UnknownCrossing(String),

    #[error("component {0} has no passages")]
    EmptyComponent(String),

    #[error("duplicate component name {0}")]
    DuplicateComponent(String),

    #[error("diagram graph is disconnected")]
    Disconnected,

    #[error("unknown face key {0}")]
    UnknownFace(String),

    #[error("undecorated face {0}")]
    UndecoratedFace(String),

    #[error("cone order {0} < 2")]
    ConeOrder(u32),

    #[error("non-integral genus: inconsistent ribbon structure")]
    NonIntegralGenus,

    #[error("diagram not in minimal position; crossing count is not i(γ,γ)")]
    NotTaut,

    #[error("over mapping is missing crossing {0}")]
    MissingOver(String),

    #[error("unknown component {0} in winding")]
    UnknownComponent(String),

    #[error("unsupported winding (v1): component {0} has nonzero winding")]
    UnsupportedWinding(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("malformed word {0:?}")]
    MalformedWord(String),

    #[error("solver did not converge: {0}")]
    NotConverged(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::MalformedWord(_) => 3,
            Error::NotConverged(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

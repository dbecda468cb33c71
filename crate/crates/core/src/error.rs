use crate::lattice::Coord;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pattern has an empty domain")]
    EmptyPattern,
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("pattern uses symbol id {0} outside the alphabet")]
    AlphabetMismatch(u8),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("vectors {0} and {1} are not independent")]
    IndependenceViolation(Coord, Coord),
    #[error("enumeration cap {cap} exceeded")]
    CapExceeded { cap: u64 },
    #[error("stripe translates of the pattern along {0} disagree on an overlap")]
    OverlapConflict(Coord),
    #[error("no stabilization within margin cap {cap}")]
    NotStabilized { cap: usize },
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("undecided pairs at the requested scale: {0:?}")]
    BoundedVerdict(Vec<(usize, usize)>),
    #[error("presentation is not limit-closed: {0}")]
    PresentationNotClosed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("period vectors are not collinear: {0} and {1}")]
    NonCollinear(Coord, Coord),
    #[error("vector {0} is collinear to period {1}")]
    CollinearityViolation(Coord, Coord),
    #[error("compactness margin search exhausted (cap {cap})")]
    NStabilizationNotFound { cap: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("choice branch {0:?} could not be realized")]
    DepthUnrealizable(Vec<bool>),
    #[error("palette has no colour for symbol `{0}`")]
    PaletteMissingSymbol(String),
    #[error("invalid render spec: {0}")]
    InvalidRenderSpec(String),
    #[error("unknown gallery item `{0}`")]
    UnknownItem(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library.
///
/// Two families matter to callers: precondition failures (bad input, a
/// hypothesis that does not hold) and invariant violations, which mean a
/// construction contradicted the theory it implements.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis of the {claim} extraction fails at index {index}")]
    Hypothesis { claim: &'static str, index: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("exact integer overflow while computing {0}")]
    Overflow(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// True when the error signals a contradiction with the theory rather
    /// than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        match self {
            Error::InvariantViolation(_) => true,
            Error::Stage { source, .. } => source.is_invariant_violation(),
            _ => false,
        }
    }

    /// Process exit code used by the CLI: 2 for user/precondition errors,
    /// 3 for invariant-violation alarms.
    pub fn exit_code(&self) -> i32 {
        if self.is_invariant_violation() {
            3
        } else {
            2
        }
    }
}

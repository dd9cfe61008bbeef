use thiserror::Error;

/// Errors raised while parsing or constructing algebraic values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("{0} is not a unit of Z/12Z (expected one of 1, 5, 7, 11)")]
    NotUnit(u8),

    #[error("a dichotomy half must have 6 elements, got {0}")]
    DichotomySize(usize),

    #[error("interval {0} is dissonant; counterpoint symmetries are only defined at consonances")]
    Dissonant(String),

    #[error("interval #{index} ({interval}) in the sequence is dissonant")]
    DissonantInSequence { index: usize, interval: String },

    #[error("a sequence needs at least two intervals, got {0}")]
    SequenceTooShort(usize),

    #[error("{polarity} does not map the consonances onto the dissonances")]
    NotAPolarity { polarity: String },

    #[error("dichotomy {0} has no unique polarity")]
    NoPolarity(String),

    #[error("{modulator} does not map the {source_key} major scale onto the {target_key} major scale")]
    NotAModulator {
        modulator: String,
        source_key: String,
        target_key: String,
    },

    #[error("no modulation quantum exists for {modulator} with cadence {cadence}")]
    QuantumNotFound { modulator: String, cadence: String },

    #[error("{0} is a diminished triad; only major and minor triads take part in PLR/TI")]
    Diminished(String),

    #[error("line {line}, column {column}: {message}")]
    Input {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Other(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

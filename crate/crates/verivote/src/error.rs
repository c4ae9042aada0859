use std::path::{Path, PathBuf};

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Toolkit-wide error type.
///
/// Usage-class errors map to process exit code 2, everything else to 1
/// (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {source}")]
    JsonLine {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    #[error("cannot score a solution with no critiques")]
    NoCritiques,

    #[error("no votable candidates: no solution carries an extractable final answer")]
    NoVotableCandidates,

    #[error("no solution proposed the selected answer {answer:?}")]
    NoProposer { answer: String },

    #[error("cannot compute metrics over an empty outcome set")]
    EmptyOutcomes,

    #[error("invalid tau grid: {reason}")]
    InvalidTauGrid { reason: String },

    #[error("question {question_id}: expected {expected} solutions, found {actual}")]
    RaggedSolutions {
        question_id: String,
        expected: usize,
        actual: usize,
    },

    #[error("question {question_id} has an unlabeled solution; run labeling first")]
    UnlabeledSolution { question_id: String },

    #[error("cannot balance: no records labeled {label}")]
    CannotBalance { label: bool },

    #[error("audit sample of {requested} exceeds the {available} available records")]
    SampleTooLarge { requested: usize, available: usize },

    #[error("unknown question id {question_id:?}")]
    UnknownQuestion { question_id: String },

    #[error("invalid question set: {reason}")]
    InvalidQuestions { reason: String },

    #[error("backend: {message}")]
    Backend { message: String },

    #[error("question {question_id}: {source}")]
    ForQuestion {
        question_id: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{message}")]
    Usage { message: String },

    #[error("{path}:{line}: bad config line: {message}")]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path} already exists; use a fresh --out-dir or pass --force")]
    ManifestExists { path: PathBuf },
}

impl Error {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn backend(message: impl Into<String>) -> Self {
        Error::Backend {
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Error::Usage {
            message: message.into(),
        }
    }

    /// Wrap with the question this error occurred on.
    pub fn for_question(self, question_id: &str) -> Self {
        Error::ForQuestion {
            question_id: question_id.to_string(),
            source: Box::new(self),
        }
    }

    /// Stable exit-code contract: 0 success, 1 runtime failure, 2 usage error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage { .. }
            | Error::Config { .. }
            | Error::InvalidTauGrid { .. }
            | Error::ManifestExists { .. } => 2,
            _ => 1,
        }
    }
}

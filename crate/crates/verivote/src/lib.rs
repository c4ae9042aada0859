//! Test-time compute for solver-verifier pipelines: verification scores
//! from critiques, weighted answer voting, selective abstention, honesty
//! metrics, and critique-dataset synthesis with rejection sampling.
//!
//! The `examples/` directory is the front door — one runnable example per
//! capability. The same functionality is scriptable through the `verivote`
//! binary (`synth`, `verify`, `vote`, `sweep`, `sim`, `audit`).

pub mod answer;
pub mod backend;
pub mod cli;
pub mod error;
pub mod jsonl;
pub mod manifest;
pub mod metrics;
pub mod model;
pub mod plot;
pub mod prompts;
pub mod rng;
pub mod synth;
pub mod util;
pub mod vote;

pub use answer::{
    answers_equal, canonicalize, contains_code, extract_boxed, label_solution, parse_judgment,
    AnswerKey, CanonicalAnswer,
};
pub use backend::{
    Backend, GenRequest, MockBackend, RemoteBackend, RemoteConfig, SimBackend, SimProfile,
};
pub use error::{Error, Result};
pub use metrics::{accuracy, honesty, honesty_accuracy_curve, CurvePoint, EvalOutcome};
pub use model::{
    AbstainReason, Critique, DatasetRecord, Decision, Judgment, Question, QuestionResult, Solution,
    SolutionRef, VerificationRecord,
};
pub use synth::{
    balance, dedup_trajectories, difficulty_filter, export_datasets, quality_audit_sample,
    synthesize_critique, synthesize_dataset, SynthConfig,
};
pub use vote::{
    decide, plain_majority, selected_mean_score, verification_score, weighted_vote, VoteConfig,
};

//! Uniform text-generation interface with three implementations: a remote
//! chat-completion client, a scripted mock for tests and offline runs, and
//! a seeded stochastic solver/verifier simulator.

mod mock;
mod remote;
mod sim;

pub use mock::MockBackend;
pub use remote::{RemoteBackend, RemoteConfig, API_KEY_ENV, API_KEY_ENV_FALLBACK};
pub use sim::{simulate_critiques, simulate_question, SimBackend, SimProfile, SimQuestion};

use crate::error::Result;

pub const DEFAULT_TEMPERATURE: f64 = 1.0;
pub const DEFAULT_MAX_TOKENS: usize = 4096;

/// One generation request: a system/user prompt pair and sampling settings.
#[derive(Debug, Clone, PartialEq)]
pub struct GenRequest {
    pub system_prompt: String,
    pub user_prompt: String,
    /// Number of completions to sample; always at least 1.
    pub n: usize,
    pub temperature: f64,
    pub max_tokens: usize,
}

impl GenRequest {
    pub fn new(system_prompt: impl Into<String>, user_prompt: impl Into<String>) -> Self {
        GenRequest {
            system_prompt: system_prompt.into(),
            user_prompt: user_prompt.into(),
            n: 1,
            temperature: DEFAULT_TEMPERATURE,
            max_tokens: DEFAULT_MAX_TOKENS,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        assert!(n >= 1, "a generation request must sample at least once");
        self.n = n;
        self
    }

    pub fn with_temperature(mut self, temperature: f64) -> Self {
        self.temperature = temperature;
        self
    }

    pub fn with_max_tokens(mut self, max_tokens: usize) -> Self {
        self.max_tokens = max_tokens;
        self
    }
}

/// A text-generation backend. Implementations return exactly `request.n`
/// completions in a stable order.
pub trait Backend: Send + Sync {
    fn generate(&self, request: &GenRequest) -> Result<Vec<String>>;

    fn name(&self) -> &str;

    /// Whether callers may fan requests out across threads. Only true for
    /// backends whose outputs do not depend on call order.
    fn supports_parallel(&self) -> bool {
        false
    }
}

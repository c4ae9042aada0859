//! Remote chat-completion client.
//!
//! Speaks the OpenAI-compatible convention: POST `{base_url}/v1/chat/completions`
//! with `model`, `messages[{role, content}]`, `n`, `temperature` and
//! `max_tokens`; completions are read from `choices[].message.content` in
//! the order the server returned them. Transient failures (timeouts,
//! connection errors, 429 and 5xx responses) are retried with capped
//! exponential backoff; protocol errors fail immediately.

use std::time::Duration;

use serde::Deserialize;
use serde_json::json;

use super::{Backend, GenRequest};
use crate::error::{Error, Result};

/// Environment variable holding the API key.
pub const API_KEY_ENV: &str = "VERIVOTE_API_KEY";
/// Consulted when [`API_KEY_ENV`] is unset.
pub const API_KEY_ENV_FALLBACK: &str = "OPENAI_API_KEY";

#[derive(Debug, Clone)]
pub struct RemoteConfig {
    /// Server root, without the `/v1/chat/completions` path.
    pub base_url: String,
    pub model: String,
    pub api_key: Option<String>,
    /// Maximum concurrent in-flight requests a pipeline may fan out.
    pub concurrency: usize,
    /// Retries after the first attempt.
    pub retry_cap: u32,
    pub timeout_seconds: u64,
    /// Base backoff; doubles per retry, capped at 8s.
    pub backoff_ms: u64,
}

impl RemoteConfig {
    pub fn new(base_url: impl Into<String>, model: impl Into<String>) -> Self {
        RemoteConfig {
            base_url: base_url.into(),
            model: model.into(),
            api_key: api_key_from_env(),
            concurrency: 8,
            retry_cap: 3,
            timeout_seconds: 120,
            backoff_ms: 500,
        }
    }
}

fn api_key_from_env() -> Option<String> {
    std::env::var(API_KEY_ENV)
        .or_else(|_| std::env::var(API_KEY_ENV_FALLBACK))
        .ok()
}

pub struct RemoteBackend {
    config: RemoteConfig,
    agent: ureq::Agent,
}

#[derive(Debug, Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
}

#[derive(Debug, Deserialize)]
struct Choice {
    message: Message,
}

#[derive(Debug, Deserialize)]
struct Message {
    content: String,
}

enum Attempt {
    Done(Vec<String>),
    Retry(Error),
    Fatal(Error),
}

impl RemoteBackend {
    pub fn new(config: RemoteConfig) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(config.timeout_seconds)))
            .http_status_as_error(false)
            .build()
            .new_agent();
        RemoteBackend { config, agent }
    }

    pub fn config(&self) -> &RemoteConfig {
        &self.config
    }

    fn endpoint(&self) -> String {
        format!(
            "{}/v1/chat/completions",
            self.config.base_url.trim_end_matches('/')
        )
    }

    /// The JSON body sent for a request; exposed so callers can inspect the
    /// wire format without a server.
    pub fn request_body(&self, request: &GenRequest) -> serde_json::Value {
        let mut messages = Vec::new();
        if !request.system_prompt.is_empty() {
            messages.push(json!({"role": "system", "content": request.system_prompt}));
        }
        messages.push(json!({"role": "user", "content": request.user_prompt}));
        json!({
            "model": self.config.model,
            "messages": messages,
            "n": request.n,
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        })
    }

    fn attempt(&self, request: &GenRequest) -> Attempt {
        let body = self.request_body(request);
        let mut builder = self.agent.post(self.endpoint());
        if let Some(key) = &self.config.api_key {
            builder = builder.header("authorization", format!("Bearer {key}"));
        }
        let mut response = match builder.send_json(&body) {
            Ok(r) => r,
            Err(e) => {
                // Transport-level failures are worth retrying.
                return Attempt::Retry(Error::backend(format!("transport error: {e}")));
            }
        };
        let status = response.status().as_u16();
        if status == 429 || (500..600).contains(&status) {
            return Attempt::Retry(Error::backend(format!("server returned {status}")));
        }
        if !(200..300).contains(&status) {
            let detail = response.body_mut().read_to_string().unwrap_or_default();
            return Attempt::Fatal(Error::backend(format!(
                "request rejected with {status}: {}",
                detail.trim()
            )));
        }
        let parsed: ChatResponse = match response.body_mut().read_json() {
            Ok(p) => p,
            Err(e) => {
                return Attempt::Fatal(Error::backend(format!("malformed response body: {e}")))
            }
        };
        if parsed.choices.len() != request.n {
            return Attempt::Fatal(Error::backend(format!(
                "expected {} completions, server returned {}",
                request.n,
                parsed.choices.len()
            )));
        }
        Attempt::Done(
            parsed
                .choices
                .into_iter()
                .map(|c| c.message.content)
                .collect(),
        )
    }
}

impl Backend for RemoteBackend {
    fn generate(&self, request: &GenRequest) -> Result<Vec<String>> {
        let mut attempt_no = 0u32;
        loop {
            match self.attempt(request) {
                Attempt::Done(texts) => return Ok(texts),
                Attempt::Fatal(e) => return Err(e),
                Attempt::Retry(e) => {
                    if attempt_no >= self.config.retry_cap {
                        return Err(Error::backend(format!(
                            "giving up after {} attempts: {e}",
                            attempt_no + 1
                        )));
                    }
                    let delay = self
                        .config
                        .backoff_ms
                        .saturating_mul(1u64 << attempt_no.min(10))
                        .min(8_000);
                    std::thread::sleep(Duration::from_millis(delay));
                    attempt_no += 1;
                }
            }
        }
    }

    fn name(&self) -> &str {
        "remote"
    }

    fn supports_parallel(&self) -> bool {
        true
    }
}

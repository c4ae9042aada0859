//! Scripted backend: replays a fixed list of responses in order.

use std::collections::VecDeque;
use std::sync::Mutex;

use super::{Backend, GenRequest};
use crate::error::{Error, Result};

/// Replays scripted responses in order, one per requested completion.
///
/// In strict mode the script running out is an error; a cycling mock wraps
/// around instead, which is what CLI runs use so a small script can cover an
/// arbitrary number of requests.
pub struct MockBackend {
    scripts: Mutex<VecDeque<String>>,
    cycle: bool,
    served: Mutex<usize>,
}

impl MockBackend {
    /// Strict mock: errors once the script is exhausted.
    pub fn new(scripts: Vec<String>) -> Self {
        MockBackend {
            scripts: Mutex::new(scripts.into()),
            cycle: false,
            served: Mutex::new(0),
        }
    }

    /// Cycling mock: replays the script forever. Panics on an empty script.
    pub fn cycling(scripts: Vec<String>) -> Self {
        assert!(
            !scripts.is_empty(),
            "cycling mock needs at least one response"
        );
        MockBackend {
            scripts: Mutex::new(scripts.into()),
            cycle: true,
            served: Mutex::new(0),
        }
    }

    /// Number of responses handed out so far.
    pub fn served(&self) -> usize {
        *self.served.lock().unwrap()
    }
}

impl Backend for MockBackend {
    fn generate(&self, request: &GenRequest) -> Result<Vec<String>> {
        let mut scripts = self.scripts.lock().unwrap();
        let mut served = self.served.lock().unwrap();
        let mut out = Vec::with_capacity(request.n);
        for _ in 0..request.n {
            let next = match scripts.pop_front() {
                Some(text) => text,
                None => {
                    return Err(Error::backend(format!(
                        "mock script exhausted after {} responses",
                        *served
                    )))
                }
            };
            if self.cycle {
                scripts.push_back(next.clone());
            }
            *served += 1;
            out.push(next);
        }
        Ok(out)
    }

    fn name(&self) -> &str {
        "mock"
    }
}

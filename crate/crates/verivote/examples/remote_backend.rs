//! The chat-completion wire format, and a live round trip when a server is
//! configured.
//!
//! Offline (default): prints the exact JSON body a critique request sends.
//! Live: set VERIVOTE_BASE_URL (and VERIVOTE_MODEL, plus VERIVOTE_API_KEY if
//! the server wants one) to POST a real request.
//!
//! Run with: cargo run --example remote_backend

use verivote::backend::{Backend, GenRequest, RemoteBackend, RemoteConfig};
use verivote::model::Question;
use verivote::prompts;

fn main() {
    let question = Question {
        id: "demo".into(),
        prompt: "Compute the sum of the first 10 positive integers.".into(),
        ground_truth_answer: "55".into(),
        reference_solution: None,
    };
    let solution_text = "Pairing terms: 10 * 11 / 2 = \\boxed{55}";

    let base_url =
        std::env::var("VERIVOTE_BASE_URL").unwrap_or_else(|_| "http://localhost:8000".into());
    let model = std::env::var("VERIVOTE_MODEL").unwrap_or_else(|_| "my-verifier".into());
    let backend = RemoteBackend::new(RemoteConfig::new(&base_url, &model));

    let request = GenRequest::new(
        prompts::CRITIQUE_NO_TRUTH,
        prompts::critique_user_prompt(&question, solution_text, false),
    )
    .with_n(4); // temperature defaults to 1.0

    println!("POST {base_url}/v1/chat/completions");
    println!(
        "{}\n",
        serde_json::to_string_pretty(&backend.request_body(&request)).unwrap()
    );

    if std::env::var("VERIVOTE_BASE_URL").is_err() {
        println!("VERIVOTE_BASE_URL is unset; stopping at the wire format.");
        return;
    }
    match backend.generate(&request) {
        Ok(critiques) => {
            for (i, critique) in critiques.iter().enumerate() {
                let judgment = verivote::parse_judgment(critique);
                println!("critique {i}: {judgment:?}\n{critique}\n");
            }
        }
        Err(e) => eprintln!("request failed: {e}"),
    }
}

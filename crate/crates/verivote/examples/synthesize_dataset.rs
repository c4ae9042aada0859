//! End-to-end critique dataset synthesis with a scripted backend: label,
//! dedup, rejection-sample critiques, difficulty-filter, balance, export.
//!
//! Run with: cargo run --example synthesize_dataset

use verivote::backend::MockBackend;
use verivote::model::{Question, Solution};
use verivote::synth::{export_datasets, synthesize_dataset, SynthConfig};

fn question(id: &str, truth: &str) -> Question {
    Question {
        id: id.into(),
        prompt: format!("problem {id}"),
        ground_truth_answer: truth.into(),
        reference_solution: Some(format!("reference derivation ending in \\boxed{{{truth}}}")),
    }
}

fn main() {
    let questions = vec![question("geo-1", "12"), question("alg-2", "1/2")];
    let solutions = vec![
        // geo-1: two equivalent correct trajectories (deduped to one) and a
        // wrong one.
        Solution::from_text("geo-1", "area halves, so \\boxed{12}"),
        Solution::from_text("geo-1", "by symmetry the area is \\boxed{12.0}"),
        Solution::from_text("geo-1", "misread the radius: \\boxed{24}"),
        // alg-2: one correct (0.5 == 1/2) and one wrong.
        Solution::from_text("alg-2", "solving gives \\boxed{0.5}"),
        Solution::from_text("alg-2", "dropped a factor: \\boxed{2}"),
    ];

    // A real run points this at an instruct model; here a script plays the
    // verifier. The rejection filter keeps a critique only when its boxed
    // judgment matches the solution's actual correctness.
    let backend = MockBackend::cycling(vec![
        "1. The setup is right.\n2. The arithmetic checks out.\n\\boxed{True}".into(),
        "1. The setup is right.\n2. The final step is off.\n\\boxed{False}".into(),
    ]);

    let config = SynthConfig::default(); // 4 attempts per pair, dedup cap 1
    let outcome = synthesize_dataset(&questions, &solutions, &backend, &config, 1).unwrap();
    println!(
        "{} pairs attempted after dedup, {} critiques accepted",
        outcome.attempted_pairs,
        outcome.records.len()
    );
    for record in &outcome.records {
        println!(
            "  {}: label={} judgment line {:?}",
            record.question_id,
            record.label,
            record.critique_text.lines().last().unwrap()
        );
    }
    println!("per-question solver accuracy: {:?}", outcome.accuracies);

    let dir = std::env::temp_dir().join("verivote-synthesize-example");
    std::fs::create_dir_all(&dir).unwrap();
    let sft = dir.join("dataset_sft.jsonl");
    let rl = dir.join("dataset_rl.jsonl");
    let summary = export_datasets(
        &outcome.records,
        &outcome.accuracies,
        &sft,
        &rl,
        &config,
        true,
    )
    .unwrap();
    println!("\nexport summary: {summary}");
    println!("wrote {} and {}", sft.display(), rl.display());
}

//! Sample synthesized records into judge prompts for a quality audit.
//!
//! Run with: cargo run --example audit_prompts

use std::collections::BTreeMap;

use verivote::model::{DatasetRecord, Question};
use verivote::synth::quality_audit_sample;

fn main() {
    let mut questions = BTreeMap::new();
    let mut records = Vec::new();
    for i in 0..40 {
        let id = format!("q{i:02}");
        questions.insert(
            id.clone(),
            Question {
                id: id.clone(),
                prompt: format!("What is {i} + {i}?"),
                ground_truth_answer: format!("{}", 2 * i),
                reference_solution: Some(format!("{i} + {i} = \\boxed{{{}}}", 2 * i)),
            },
        );
        records.push(DatasetRecord {
            question_id: id,
            solution_text: format!("adding digits gives \\boxed{{{}}}", 2 * i),
            critique_text: "1. The addition is carried correctly.\n\\boxed{True}".into(),
            label: true,
            split_tag: "sft".into(),
        });
    }

    // Same seed, same sample: audits are reproducible.
    let prompts = quality_audit_sample(&records, &questions, 3, 30).unwrap();
    let again = quality_audit_sample(&records, &questions, 3, 30).unwrap();
    assert_eq!(prompts, again);

    println!(
        "sampled {} of {} records; first prompt:\n",
        prompts.len(),
        records.len()
    );
    println!("{}", prompts[0]);
}

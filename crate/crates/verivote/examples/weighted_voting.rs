//! Verification scores, weighted majority voting, and abstention for a
//! single question.
//!
//! Run with: cargo run --example weighted_voting

use verivote::model::{Critique, Solution, SolutionRef, VerificationRecord};
use verivote::vote::{decide, plain_majority, VoteConfig};

/// A candidate solution whose critiques split `trues` True out of `total`.
fn record(index: usize, answer: &str, trues: usize, total: usize) -> VerificationRecord {
    let solution = Solution::from_text("q1", format!("candidate {index}: \\boxed{{{answer}}}"));
    let critiques = (0..total)
        .map(|i| {
            Critique::from_text(
                SolutionRef {
                    question_id: "q1".into(),
                    solution_index: index,
                },
                if i < trues {
                    "The reasoning holds.\n\\boxed{True}"
                } else {
                    "The computation slips.\n\\boxed{False}"
                },
            )
        })
        .collect();
    VerificationRecord::new(solution, critiques).unwrap()
}

fn main() {
    // Three candidates answer 7 (weakly verified), one answers 12 (strongly
    // verified): the verifier-weighted vote can recover the minority answer.
    let records = vec![
        record(0, "7", 1, 8),
        record(1, "7", 2, 8),
        record(2, "7", 1, 8),
        record(3, "12", 8, 8),
    ];
    for r in &records {
        println!(
            "candidate answers {:>2} with verification score {:.3}",
            r.solution.final_answer.as_deref().unwrap(),
            r.score
        );
    }

    let majority = plain_majority(&records).unwrap();
    println!("\nplain majority picks {:?}", majority.selected);

    let config = VoteConfig::default(); // beta 0.15, tau 0.20
    let result = decide("q1", &records, &config);
    println!("weighted vote tallies: {:?}", result.tallies);
    println!(
        "weighted vote picks {:?} (mean score of its proposers: {:.3})",
        result.decision.answer().unwrap(),
        result.selected_mean_score
    );

    // Starve the verifier of confidence and the system abstains instead of
    // guessing.
    let shaky = vec![record(0, "7", 1, 8), record(1, "9", 0, 8)];
    let result = decide("q1", &shaky, &config);
    println!(
        "\nlow-confidence case: decision = {:?} (mean score {:.3} < tau {})",
        result.decision, result.selected_mean_score, config.tau
    );
}

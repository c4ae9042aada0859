//! Sweep the abstention threshold and trace the honesty-accuracy trade-off.
//!
//! Run with: cargo run --example honesty_curve

use std::collections::BTreeMap;

use verivote::backend::{simulate_question, SimProfile};
use verivote::metrics::{curve_table, default_tau_grid, honesty_accuracy_curve};
use verivote::vote::VoteConfig;

fn main() {
    // A mid-strength verifier over 300 simulated questions.
    let profile = SimProfile {
        solver_accuracy: 0.45,
        distractor_count: 3,
        verifier_tpr: 0.85,
        verifier_fpr: 0.25,
        seed: 7,
    };
    let mut records_by_question = BTreeMap::new();
    let mut truths = BTreeMap::new();
    for i in 0..300 {
        let sim = simulate_question(&profile, &format!("q{i:03}"), 8, 8);
        truths.insert(
            sim.question.id.clone(),
            sim.question.ground_truth_answer.clone(),
        );
        records_by_question.insert(sim.question.id.clone(), sim.records);
    }

    let grid = default_tau_grid();
    let points =
        honesty_accuracy_curve(&records_by_question, &truths, &VoteConfig::default(), &grid)
            .unwrap();
    println!("{}", curve_table(&points));

    let best = points
        .iter()
        .max_by(|a, b| a.honesty.total_cmp(&b.honesty))
        .unwrap();
    println!(
        "honesty peaks at tau = {:.2}: honesty {:.3} while answering {:.0}% of questions",
        best.tau,
        best.honesty,
        100.0 * best.answered_fraction
    );
    println!(
        "at tau = 0 the system answers everything and honesty collapses to 2*accuracy - 1 = {:.3}",
        points[0].honesty
    );
}

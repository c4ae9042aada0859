//! Measure what an informative verifier buys over majority voting, at desk
//! scale, with the seeded simulator.
//!
//! Run with: cargo run --release --example simulate_scaling

use std::collections::BTreeMap;

use verivote::answers_equal;
use verivote::backend::{simulate_question, SimProfile};
use verivote::metrics::pass_at_1_avg;
use verivote::vote::{decide, decide_majority, VoteConfig};

fn accuracy_pair(profile: &SimProfile, questions: usize, n: usize, m: usize) -> (f64, f64, f64) {
    let config = VoteConfig {
        tau: 0.0,
        m_expected: m,
        n_expected: n,
        ..VoteConfig::default()
    };
    let mut weighted = 0usize;
    let mut majority = 0usize;
    let mut labeled = BTreeMap::new();
    for i in 0..questions {
        let qid = format!("scale-{i:04}");
        let sim = simulate_question(profile, &qid, n, m);
        let truth = &sim.question.ground_truth_answer;
        let correct = |answer: Option<&str>| answer.is_some_and(|a| answers_equal(a, truth));
        if correct(decide(&qid, &sim.records, &config).decision.answer()) {
            weighted += 1;
        }
        if correct(decide_majority(&qid, &sim.records).decision.answer()) {
            majority += 1;
        }
        labeled.insert(
            qid,
            sim.records.iter().map(|r| r.solution.clone()).collect(),
        );
    }
    let pass1 = pass_at_1_avg(&labeled, n).unwrap();
    (
        pass1,
        majority as f64 / questions as f64,
        weighted as f64 / questions as f64,
    )
}

fn main() {
    let profile = SimProfile {
        solver_accuracy: 0.4,
        distractor_count: 2,
        verifier_tpr: 0.9,
        verifier_fpr: 0.1,
        seed: 2025,
    };
    println!(
        "profile: solver_accuracy={} tpr={} fpr={}\n",
        profile.solver_accuracy, profile.verifier_tpr, profile.verifier_fpr
    );
    println!("   n   pass@1   majority@n   weighted@n");
    for n in [1, 2, 4, 8, 16] {
        let (pass1, majority, weighted) = accuracy_pair(&profile, 500, n, 16);
        println!("  {n:>2}   {pass1:.4}   {majority:>8.4}   {weighted:>9.4}");
    }
    println!("\nan uninformative verifier (tpr == fpr == 1) collapses back to majority:");
    let flat = SimProfile {
        verifier_tpr: 1.0,
        verifier_fpr: 1.0,
        ..profile
    };
    let (_, majority, weighted) = accuracy_pair(&flat, 500, 16, 16);
    println!("  majority {majority:.4} vs weighted {weighted:.4}");
}

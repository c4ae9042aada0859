//! Seeded solver/verifier simulator.
//!
//! Draws synthetic candidate solutions (correct with a configurable
//! probability) and synthetic critiques (judging True with `tpr` on correct
//! solutions, `fpr` on incorrect ones). Everything derives from per-question
//! ChaCha8 streams, so runs with the same seed and profile are
//! bit-reproducible and questions are independent of evaluation order.

use rand::Rng;
use sha2::{Digest, Sha256};

use super::{Backend, GenRequest};
use crate::answer::{answers_equal, extract_boxed};
use crate::error::{Error, Result};
use crate::model::{Critique, Question, Solution, SolutionRef, VerificationRecord};
use crate::rng::derive_rng;

/// Simulator parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SimProfile {
    /// Probability a sampled solution carries the true answer.
    pub solver_accuracy: f64,
    /// Number of distinct wrong answers an incorrect solution can pick.
    pub distractor_count: usize,
    /// P(critique judges True | solution correct).
    pub verifier_tpr: f64,
    /// P(critique judges True | solution incorrect).
    pub verifier_fpr: f64,
    pub seed: u64,
}

impl Default for SimProfile {
    fn default() -> Self {
        SimProfile {
            solver_accuracy: 0.4,
            distractor_count: 2,
            verifier_tpr: 0.9,
            verifier_fpr: 0.1,
            seed: 0,
        }
    }
}

impl SimProfile {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("solver-accuracy", self.solver_accuracy),
            ("tpr", self.verifier_tpr),
            ("fpr", self.verifier_fpr),
        ] {
            if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                return Err(Error::usage(format!(
                    "{name} must be a probability in [0, 1], got {p}"
                )));
            }
        }
        if self.distractor_count == 0 {
            return Err(Error::usage("distractors must be at least 1"));
        }
        Ok(())
    }
}

/// A simulated question with its fully-critiqued candidate solutions.
#[derive(Debug, Clone)]
pub struct SimQuestion {
    pub question: Question,
    pub records: Vec<VerificationRecord>,
}

fn critique_text(correct: bool) -> String {
    if correct {
        "1. The approach is sound.\n2. The computation checks out.\n\\boxed{True}".to_string()
    } else {
        "1. The approach looks plausible.\n2. The final step miscomputes.\n\\boxed{False}"
            .to_string()
    }
}

/// Draw one question: `n` candidate solutions, each with `m` critiques. The
/// true answer is `alt0`; distractors are `alt1..=altK`.
pub fn simulate_question(
    profile: &SimProfile,
    question_id: &str,
    n: usize,
    m: usize,
) -> SimQuestion {
    assert!(
        n >= 1 && m >= 1,
        "need at least one solution and one critique"
    );
    let mut rng = derive_rng(profile.seed, &["sim-question", question_id]);
    let truth = "alt0";
    let question = Question {
        id: question_id.to_string(),
        prompt: format!("Simulated question {question_id}: name the designated answer."),
        ground_truth_answer: truth.to_string(),
        reference_solution: Some(format!(
            "The designated answer for {question_id} is \\boxed{{alt0}}."
        )),
    };
    let mut records = Vec::with_capacity(n);
    for index in 0..n {
        let correct = rng.random::<f64>() < profile.solver_accuracy;
        let answer = if correct {
            truth.to_string()
        } else {
            format!("alt{}", rng.random_range(1..=profile.distractor_count))
        };
        let text = format!(
            "Sampled reasoning for {question_id}, candidate {index}.\nThe final answer is \\boxed{{{answer}}}."
        );
        let mut solution = Solution::from_text(question_id, text);
        solution.source_tag = Some("sim".to_string());
        solution.correct = Some(correct);
        let critiques = (0..m)
            .map(|_| {
                let p = if correct {
                    profile.verifier_tpr
                } else {
                    profile.verifier_fpr
                };
                let judged_true = rng.random::<f64>() < p;
                Critique::from_text(
                    SolutionRef {
                        question_id: question_id.to_string(),
                        solution_index: index,
                    },
                    critique_text(judged_true),
                )
            })
            .collect();
        records.push(VerificationRecord::new(solution, critiques).expect("m >= 1 critiques"));
    }
    SimQuestion { question, records }
}

/// Draw `m` critiques for one already-labeled solution, on a stream derived
/// from (seed, question id, solution index) so pairs are independent.
pub fn simulate_critiques(
    profile: &SimProfile,
    question_id: &str,
    solution_index: usize,
    correct: bool,
    m: usize,
) -> Vec<Critique> {
    let index_label = solution_index.to_string();
    let mut rng = derive_rng(profile.seed, &["sim-critique", question_id, &index_label]);
    let p = if correct {
        profile.verifier_tpr
    } else {
        profile.verifier_fpr
    };
    (0..m)
        .map(|_| {
            let judged_true = rng.random::<f64>() < p;
            Critique::from_text(
                SolutionRef {
                    question_id: question_id.to_string(),
                    solution_index,
                },
                critique_text(judged_true),
            )
        })
        .collect()
}

/// Simulator behind the generic [`Backend`] interface.
///
/// Responses are critique-shaped. Correctness is inferred from the prompt:
/// when the user message carries both a "Ground Truth" and a "Solution"
/// block, their boxed answers are compared; prompts where no pair is
/// recoverable are treated as incorrect. The judgment then lands True with
/// probability `tpr` or `fpr` accordingly, on a stream derived from the
/// prompt digest so identical requests get identical responses.
pub struct SimBackend {
    profile: SimProfile,
}

impl SimBackend {
    pub fn new(profile: SimProfile) -> Self {
        SimBackend { profile }
    }

    pub fn profile(&self) -> &SimProfile {
        &self.profile
    }

    fn infer_correct(user_prompt: &str) -> bool {
        let Some(truth_at) = user_prompt.find("Ground Truth:") else {
            return false;
        };
        let Some(solution_at) = user_prompt.rfind("Solution:") else {
            return false;
        };
        if solution_at <= truth_at {
            return false;
        }
        let truth_block = &user_prompt[truth_at..solution_at];
        let solution_block = &user_prompt[solution_at..];
        let truth_answer = extract_boxed(truth_block).unwrap_or_else(|| {
            truth_block
                .trim_start_matches("Ground Truth:")
                .trim()
                .to_string()
        });
        match extract_boxed(solution_block) {
            Some(candidate) => answers_equal(&candidate, &truth_answer),
            None => false,
        }
    }
}

impl Backend for SimBackend {
    fn generate(&self, request: &GenRequest) -> Result<Vec<String>> {
        let mut hasher = Sha256::new();
        hasher.update(request.system_prompt.as_bytes());
        hasher.update([0x1f]);
        hasher.update(request.user_prompt.as_bytes());
        let digest = hex::encode(hasher.finalize());
        let mut rng = derive_rng(self.profile.seed, &["sim-generate", &digest]);
        let correct = Self::infer_correct(&request.user_prompt);
        let p = if correct {
            self.profile.verifier_tpr
        } else {
            self.profile.verifier_fpr
        };
        Ok((0..request.n)
            .map(|_| critique_text(rng.random::<f64>() < p))
            .collect())
    }

    fn name(&self) -> &str {
        "sim"
    }
}

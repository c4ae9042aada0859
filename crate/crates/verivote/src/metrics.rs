//! Accuracy, honesty score, sampling baselines, and the honesty-accuracy
//! curve over a threshold sweep.
//!
//! Accuracy counts abstentions as not-correct (correct / all questions);
//! selective accuracy (correct / answered) is reported alongside since both
//! readings are useful. The honesty score averages +1 for a correct answer,
//! -1 for a wrong answer, and 0 for an abstention.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::answer::answers_equal;
use crate::error::{Error, Result};
use crate::model::{Decision, QuestionResult, Solution, VerificationRecord};
use crate::vote::{self, VoteConfig};

/// Per-question evaluation outcome. `correct` is present exactly when the
/// decision is an answer.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalOutcome {
    pub question_id: String,
    pub decision: Decision,
    pub correct: Option<bool>,
}

impl EvalOutcome {
    /// Grade a decision against the ground truth.
    pub fn grade(result: &QuestionResult, truth: &str) -> Self {
        let correct = result
            .decision
            .answer()
            .map(|answer| answers_equal(answer, truth));
        EvalOutcome {
            question_id: result.question_id.clone(),
            decision: result.decision.clone(),
            correct,
        }
    }

    pub fn is_correct(&self) -> bool {
        self.correct == Some(true)
    }

    pub fn is_wrong(&self) -> bool {
        self.correct == Some(false)
    }
}

/// Grade a batch of results against a ground-truth map.
pub fn grade_results(
    results: &[QuestionResult],
    truths: &BTreeMap<String, String>,
) -> Result<Vec<EvalOutcome>> {
    results
        .iter()
        .map(|r| {
            let truth = truths.get(&r.question_id).ok_or(Error::UnknownQuestion {
                question_id: r.question_id.clone(),
            })?;
            Ok(EvalOutcome::grade(r, truth))
        })
        .collect()
}

/// Fraction of questions answered correctly; abstentions count as wrong.
pub fn accuracy(outcomes: &[EvalOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::EmptyOutcomes);
    }
    let correct = outcomes.iter().filter(|o| o.is_correct()).count();
    Ok(correct as f64 / outcomes.len() as f64)
}

/// Fraction of *answered* questions that were correct; 0 when everything
/// was abstained.
pub fn selective_accuracy(outcomes: &[EvalOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::EmptyOutcomes);
    }
    let answered = outcomes.iter().filter(|o| o.correct.is_some()).count();
    if answered == 0 {
        return Ok(0.0);
    }
    let correct = outcomes.iter().filter(|o| o.is_correct()).count();
    Ok(correct as f64 / answered as f64)
}

/// Fraction of questions that received an answer.
pub fn answered_fraction(outcomes: &[EvalOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::EmptyOutcomes);
    }
    let answered = outcomes.iter().filter(|o| o.correct.is_some()).count();
    Ok(answered as f64 / outcomes.len() as f64)
}

/// Honesty score: mean of +1 per correct answer, -1 per wrong answer, 0 per
/// abstention. Folds the per-outcome contributions directly.
pub fn honesty(outcomes: &[EvalOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::EmptyOutcomes);
    }
    let mut sum = 0.0f64;
    for o in outcomes {
        sum += match o.correct {
            Some(true) => 1.0,
            Some(false) => -1.0,
            None => 0.0,
        };
    }
    Ok(sum / outcomes.len() as f64)
}

/// Honesty computed a second, independent way: from the correct/wrong
/// counts. Agrees exactly with [`honesty`] (both divide the same
/// exactly-representable integer by the same length).
pub fn honesty_by_counts(outcomes: &[EvalOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::EmptyOutcomes);
    }
    let correct = outcomes.iter().filter(|o| o.is_correct()).count();
    let wrong = outcomes.iter().filter(|o| o.is_wrong()).count();
    Ok((correct as f64 - wrong as f64) / outcomes.len() as f64)
}

/// Mean single-sample accuracy: each question must carry exactly `k`
/// labeled solutions, and every (question, solution) pair contributes its
/// correctness indicator.
pub fn pass_at_1_avg(
    solutions_by_question: &BTreeMap<String, Vec<Solution>>,
    k: usize,
) -> Result<f64> {
    if solutions_by_question.is_empty() {
        return Err(Error::EmptyOutcomes);
    }
    let mut correct = 0usize;
    let mut total = 0usize;
    for (question_id, solutions) in solutions_by_question {
        if solutions.len() != k {
            return Err(Error::RaggedSolutions {
                question_id: question_id.clone(),
                expected: k,
                actual: solutions.len(),
            });
        }
        for s in solutions {
            match s.correct {
                Some(true) => correct += 1,
                Some(false) => {}
                None => {
                    return Err(Error::UnlabeledSolution {
                        question_id: question_id.clone(),
                    })
                }
            }
            total += 1;
        }
    }
    Ok(correct as f64 / total as f64)
}

/// Accuracy of plain majority voting over (up to) the first `k` candidates
/// per question. Questions with nothing votable count as wrong.
pub fn majority_at_k(
    records_by_question: &BTreeMap<String, Vec<VerificationRecord>>,
    k: usize,
    truths: &BTreeMap<String, String>,
) -> Result<f64> {
    if records_by_question.is_empty() {
        return Err(Error::EmptyOutcomes);
    }
    let mut correct = 0usize;
    for (question_id, records) in records_by_question {
        let truth = truths.get(question_id).ok_or(Error::UnknownQuestion {
            question_id: question_id.clone(),
        })?;
        let take = records.len().min(k);
        if let Ok(outcome) = vote::plain_majority(&records[..take]) {
            if answers_equal(&outcome.selected, truth) {
                correct += 1;
            }
        }
    }
    Ok(correct as f64 / records_by_question.len() as f64)
}

/// One row of the honesty-accuracy curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub tau: f64,
    pub accuracy: f64,
    pub selective_accuracy: f64,
    pub honesty: f64,
    pub answered_fraction: f64,
}

/// Validate a tau sweep grid: non-empty, ascending, within [0, 1].
pub fn validate_tau_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidTauGrid {
            reason: "grid is empty".into(),
        });
    }
    for &tau in grid {
        if !(0.0..=1.0).contains(&tau) || !tau.is_finite() {
            return Err(Error::InvalidTauGrid {
                reason: format!("tau {tau} is outside [0, 1]"),
            });
        }
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidTauGrid {
            reason: "grid is not sorted ascending".into(),
        });
    }
    Ok(())
}

/// The default sweep grid: 0.00 to 1.00 in steps of 0.05 (21 points).
pub fn default_tau_grid() -> Vec<f64> {
    (0..=20).map(|i| (i as f64 * 0.05).min(1.0)).collect()
}

/// Sweep the abstention threshold over `tau_grid`, re-deciding every
/// question at each point. The answered fraction is non-increasing along
/// the grid because raising tau can only add abstentions.
pub fn honesty_accuracy_curve(
    records_by_question: &BTreeMap<String, Vec<VerificationRecord>>,
    truths: &BTreeMap<String, String>,
    config: &VoteConfig,
    tau_grid: &[f64],
) -> Result<Vec<CurvePoint>> {
    validate_tau_grid(tau_grid)?;
    if records_by_question.is_empty() {
        return Err(Error::EmptyOutcomes);
    }
    let mut points = Vec::with_capacity(tau_grid.len());
    for &tau in tau_grid {
        let point_config = VoteConfig {
            tau,
            ..config.clone()
        };
        let mut outcomes = Vec::with_capacity(records_by_question.len());
        for (question_id, records) in records_by_question {
            let truth = truths.get(question_id).ok_or(Error::UnknownQuestion {
                question_id: question_id.clone(),
            })?;
            let result = vote::decide(question_id, records, &point_config);
            outcomes.push(EvalOutcome::grade(&result, truth));
        }
        debug_assert_eq!(honesty(&outcomes)?, honesty_by_counts(&outcomes)?);
        points.push(CurvePoint {
            tau,
            accuracy: accuracy(&outcomes)?,
            selective_accuracy: selective_accuracy(&outcomes)?,
            honesty: honesty(&outcomes)?,
            answered_fraction: answered_fraction(&outcomes)?,
        });
    }
    Ok(points)
}

pub const CURVE_CSV_HEADER: &str = "tau,accuracy,selective_accuracy,honesty,answered_fraction";

/// Render the curve as CSV, the input format for plotting.
pub fn curve_to_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from(CURVE_CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(
            out,
            "{:.4},{:.4},{:.4},{:.4},{:.4}",
            p.tau, p.accuracy, p.selective_accuracy, p.honesty, p.answered_fraction
        );
    }
    out
}

pub fn write_curve_csv(points: &[CurvePoint], path: &Path) -> Result<()> {
    std::fs::write(path, curve_to_csv(points)).map_err(|e| Error::io(path, e))
}

/// Render the curve as an aligned text table.
pub fn curve_table(points: &[CurvePoint]) -> String {
    let mut out = String::from("  tau   accuracy  selective  honesty   answered\n");
    for p in points {
        let _ = writeln!(
            out,
            " {:>4.2}   {:>7.4}   {:>7.4}   {:>7.4}   {:>7.4}",
            p.tau, p.accuracy, p.selective_accuracy, p.honesty, p.answered_fraction
        );
    }
    out
}

/// Summary block for a batch of graded outcomes.
pub fn summary_report(
    title: &str,
    outcomes: &[EvalOutcome],
    config: &VoteConfig,
) -> Result<String> {
    let n = outcomes.len();
    let answered = outcomes.iter().filter(|o| o.correct.is_some()).count();
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "  questions:           {n}");
    let _ = writeln!(
        out,
        "  answered:            {answered} ({:.2}%)",
        100.0 * answered_fraction(outcomes)?
    );
    let _ = writeln!(out, "  abstained:           {}", n - answered);
    let _ = writeln!(out, "  accuracy:            {:.4}", accuracy(outcomes)?);
    let _ = writeln!(
        out,
        "  selective accuracy:  {:.4}",
        selective_accuracy(outcomes)?
    );
    let _ = writeln!(out, "  honesty:             {:.4}", honesty(outcomes)?);
    let _ = writeln!(
        out,
        "  beta: {}  tau: {}  m: {}  n: {}",
        config.beta, config.tau, config.m_expected, config.n_expected
    );
    Ok(out)
}

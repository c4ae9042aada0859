//! Verification scoring, weighted majority voting, and selective abstention.
//!
//! A solution's verification score is the fraction of its valid critiques
//! judging it correct. Each solution then votes for its final answer with
//! weight `score + beta`; the answer with the highest total wins. If the mean
//! verification score over the winning answer's proposers falls strictly
//! below `tau`, the question is abstained from instead.

use std::collections::BTreeMap;

use crate::answer::AnswerKey;
use crate::error::{Error, Result};
use crate::model::{
    AbstainReason, Critique, Decision, Judgment, QuestionResult, VerificationRecord,
};

/// Parameters of the vote: the vote floor `beta`, abstention threshold
/// `tau`, and the expected critique/candidate counts `m`/`n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteConfig {
    /// Constant added to every verification score when tallying votes.
    pub beta: f64,
    /// Abstain when the selected answer's mean verification score is
    /// strictly below this threshold.
    pub tau: f64,
    /// Critiques generated per solution.
    pub m_expected: usize,
    /// Candidate solutions sampled per question.
    pub n_expected: usize,
}

pub const DEFAULT_BETA: f64 = 0.15;
pub const DEFAULT_TAU: f64 = 0.20;
pub const DEFAULT_M: usize = 16;
pub const DEFAULT_N: usize = 16;

impl Default for VoteConfig {
    fn default() -> Self {
        VoteConfig {
            beta: DEFAULT_BETA,
            tau: DEFAULT_TAU,
            m_expected: DEFAULT_M,
            n_expected: DEFAULT_N,
        }
    }
}

impl VoteConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.tau) {
            return Err(Error::usage(format!(
                "tau must be in [0, 1], got {}",
                self.tau
            )));
        }
        if self.beta < 0.0 || !self.beta.is_finite() {
            return Err(Error::usage(format!(
                "beta must be a finite non-negative number, got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// Fraction of valid (True/False) critiques judging the solution correct.
/// Invalid critiques are excluded from the denominator; a solution whose
/// critiques are all invalid scores 0.
pub fn verification_score(critiques: &[Critique]) -> Result<f64> {
    if critiques.is_empty() {
        return Err(Error::NoCritiques);
    }
    let valid = critiques.iter().filter(|c| c.judgment.is_valid()).count();
    if valid == 0 {
        return Ok(0.0);
    }
    let positives = critiques
        .iter()
        .filter(|c| c.judgment == Judgment::True)
        .count();
    Ok(positives as f64 / valid as f64)
}

/// Winner of a vote plus the per-answer weighted mass.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteOutcome {
    pub selected: String,
    pub tallies: BTreeMap<String, f64>,
}

#[derive(Default)]
struct Group {
    tally: f64,
    mass: f64,
}

/// Core tally: each `(answer, weight)` pair contributes `weight + beta` to
/// its answer group, accumulated in input order. Ties break toward higher
/// raw weight mass, then the lexicographically smallest canonical answer.
fn tally_vote<'a>(pairs: impl Iterator<Item = (&'a str, f64)>, beta: f64) -> Result<VoteOutcome> {
    let mut groups: BTreeMap<AnswerKey, Group> = BTreeMap::new();
    for (answer, weight) in pairs {
        let group = groups.entry(AnswerKey::of(answer)).or_default();
        group.tally += weight + beta;
        group.mass += weight;
    }
    if groups.is_empty() {
        return Err(Error::NoVotableCandidates);
    }
    let mut tallies = BTreeMap::new();
    let mut best: Option<(String, f64, f64)> = None;
    for (key, group) in &groups {
        let name = key.display();
        tallies.insert(name.clone(), group.tally);
        let better = match &best {
            None => true,
            Some((best_name, best_tally, best_mass)) => {
                group.tally > *best_tally
                    || (group.tally == *best_tally
                        && (group.mass > *best_mass
                            || (group.mass == *best_mass && name < *best_name)))
            }
        };
        if better {
            best = Some((name, group.tally, group.mass));
        }
    }
    let (selected, _, _) = best.expect("non-empty groups");
    Ok(VoteOutcome { selected, tallies })
}

fn votable_pairs(records: &[VerificationRecord]) -> impl Iterator<Item = (&str, f64)> {
    records
        .iter()
        .filter_map(|r| r.solution.final_answer.as_deref().map(|a| (a, r.score)))
}

/// Weighted majority vote: argmax over answers of the summed `score + beta`
/// of their proposers. Solutions without an extractable final answer cast no
/// vote; errors when nothing is votable.
pub fn weighted_vote(records: &[VerificationRecord], beta: f64) -> Result<VoteOutcome> {
    tally_vote(votable_pairs(records), beta)
}

/// Pure vote counting: equivalent to a weighted vote with every score
/// zeroed and a positive beta, using the same tie-break.
pub fn plain_majority(records: &[VerificationRecord]) -> Result<VoteOutcome> {
    tally_vote(votable_pairs(records).map(|(a, _)| (a, 0.0)), 1.0)
}

/// Mean verification score over records proposing `selected`.
pub fn selected_mean_score(records: &[VerificationRecord], selected: &str) -> Result<f64> {
    let key = AnswerKey::of(selected);
    let mut sum = 0.0;
    let mut count = 0usize;
    for record in records {
        let Some(ans) = record.solution.final_answer.as_deref() else {
            continue;
        };
        if AnswerKey::of(ans) == key {
            sum += record.score;
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::NoProposer {
            answer: selected.to_string(),
        });
    }
    Ok(sum / count as f64)
}

/// Run the full decision for one question: weighted vote, then abstain when
/// the selected answer's mean verification score is strictly below `tau`.
/// Every failure mode folds into an abstention with a reason tag.
pub fn decide(
    question_id: &str,
    records: &[VerificationRecord],
    config: &VoteConfig,
) -> QuestionResult {
    match weighted_vote(records, config.beta) {
        Err(_) => QuestionResult {
            question_id: question_id.to_string(),
            decision: Decision::Abstain {
                reason: AbstainReason::Unparseable,
            },
            tallies: BTreeMap::new(),
            selected_mean_score: 0.0,
            tau: config.tau,
            beta: config.beta,
        },
        Ok(outcome) => {
            let mean = selected_mean_score(records, &outcome.selected)
                .expect("selected answer always has at least one proposer");
            let decision = if mean < config.tau {
                Decision::Abstain {
                    reason: AbstainReason::BelowThreshold,
                }
            } else {
                Decision::Answer {
                    answer: outcome.selected,
                }
            };
            QuestionResult {
                question_id: question_id.to_string(),
                decision,
                tallies: outcome.tallies,
                selected_mean_score: mean,
                tau: config.tau,
                beta: config.beta,
            }
        }
    }
}

/// Majority-baseline decision: plain counting, never abstains except when
/// nothing is votable. `selected_mean_score` still reports the winning
/// answer's mean verification score for reference.
pub fn decide_majority(question_id: &str, records: &[VerificationRecord]) -> QuestionResult {
    match plain_majority(records) {
        Err(_) => QuestionResult {
            question_id: question_id.to_string(),
            decision: Decision::Abstain {
                reason: AbstainReason::Unparseable,
            },
            tallies: BTreeMap::new(),
            selected_mean_score: 0.0,
            tau: 0.0,
            beta: 0.0,
        },
        Ok(outcome) => {
            let mean = selected_mean_score(records, &outcome.selected).unwrap_or(0.0);
            QuestionResult {
                question_id: question_id.to_string(),
                decision: Decision::Answer {
                    answer: outcome.selected,
                },
                tallies: outcome.tallies,
                selected_mean_score: mean,
                tau: 0.0,
                beta: 0.0,
            }
        }
    }
}

//! Shared domain types and their JSONL field schemas.
//!
//! All types are immutable value objects; nothing here holds interior
//! mutability, so records can be shared freely across threads.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::answer;
use crate::error::{Error, Result};
use crate::vote;

/// A task with a known ground-truth answer and optional reference solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Question {
    pub id: String,
    pub prompt: String,
    pub ground_truth_answer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_solution: Option<String>,
}

/// A solver trajectory: full reasoning text plus the extracted final answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub question_id: String,
    pub text: String,
    /// Extracted boxed answer; `None` when the text carries no box.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_answer: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_tag: Option<String>,
    /// Ground-truth correctness; only present after labeling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correct: Option<bool>,
}

impl Solution {
    /// Build a solution from raw text, extracting the final answer from the
    /// last boxed expression.
    pub fn from_text(question_id: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let final_answer = answer::extract_boxed(&text);
        Solution {
            question_id: question_id.into(),
            text,
            final_answer,
            source_tag: None,
            correct: None,
        }
    }

    /// Fill `final_answer` from the text when a loaded record omitted it.
    pub fn ensure_final_answer(&mut self) {
        if self.final_answer.is_none() {
            self.final_answer = answer::extract_boxed(&self.text);
        }
    }
}

/// Binary judgment carried by a critique. `Invalid` means no terminal boxed
/// True/False could be extracted from the critique text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Judgment {
    True,
    False,
    Invalid,
}

impl Judgment {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Judgment::True => Some(true),
            Judgment::False => Some(false),
            Judgment::Invalid => None,
        }
    }

    pub fn is_valid(self) -> bool {
        self != Judgment::Invalid
    }
}

/// Identifies the solution a critique talks about.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolutionRef {
    pub question_id: String,
    pub solution_index: usize,
}

/// A verifier output: rationale text ending in a boxed binary judgment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Critique {
    #[serde(flatten)]
    pub solution_ref: SolutionRef,
    pub text: String,
    pub judgment: Judgment,
}

impl Critique {
    /// Build a critique from generated text, deriving the judgment from the
    /// last boxed expression so text and judgment can never disagree.
    pub fn from_text(solution_ref: SolutionRef, text: impl Into<String>) -> Self {
        let text = text.into();
        let judgment = answer::parse_judgment(&text);
        Critique {
            solution_ref,
            text,
            judgment,
        }
    }
}

/// A solution together with its critiques and verification score.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    pub solution: Solution,
    pub critiques: Vec<Critique>,
    /// Fraction of valid critiques judging the solution correct, in [0, 1].
    pub score: f64,
}

impl VerificationRecord {
    /// Assemble a record, computing the verification score from the
    /// critiques. Errors when `critiques` is empty.
    pub fn new(solution: Solution, critiques: Vec<Critique>) -> Result<Self> {
        let score = vote::verification_score(&critiques)?;
        Ok(VerificationRecord {
            solution,
            critiques,
            score,
        })
    }
}

/// Why a question was abstained from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbstainReason {
    /// Mean verification score of the selected answer fell below tau.
    BelowThreshold,
    /// No solution carried an extractable final answer.
    Unparseable,
}

/// Outcome of answer selection for one question.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum Decision {
    Answer { answer: String },
    Abstain { reason: AbstainReason },
}

impl Decision {
    pub fn answer(&self) -> Option<&str> {
        match self {
            Decision::Answer { answer } => Some(answer),
            Decision::Abstain { .. } => None,
        }
    }

    pub fn is_abstain(&self) -> bool {
        matches!(self, Decision::Abstain { .. })
    }
}

/// Per-question aggregation outcome: the selected answer or an abstention,
/// plus the tallies and the inputs that produced the decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionResult {
    pub question_id: String,
    #[serde(flatten)]
    pub decision: Decision,
    /// Weighted vote mass per canonical answer.
    pub tallies: BTreeMap<String, f64>,
    /// Mean verification score over proposers of the selected answer
    /// (0.0 when nothing was votable).
    pub selected_mean_score: f64,
    pub tau: f64,
    pub beta: f64,
}

/// Split tag for exported dataset records.
pub const SPLIT_SFT: &str = "sft";
/// Split tag for exported dataset records.
pub const SPLIT_RL: &str = "rl";

/// One synthesized (solution, critique) training pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub question_id: String,
    pub solution_text: String,
    pub critique_text: String,
    /// Ground-truth correctness of the contained solution; the rejection
    /// filter guarantees the critique's judgment agrees with it.
    pub label: bool,
    pub split_tag: String,
}

/// One rendered judge prompt, as written to `audit_prompts.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditPrompt {
    pub prompt: String,
}

/// Check dataset-level invariants: ids unique and non-empty, ground truth
/// answers non-empty.
pub fn validate_questions(questions: &[Question]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for q in questions {
        if q.id.is_empty() {
            return Err(Error::InvalidQuestions {
                reason: "empty question id".into(),
            });
        }
        if q.ground_truth_answer.is_empty() {
            return Err(Error::InvalidQuestions {
                reason: format!("question {} has an empty ground_truth_answer", q.id),
            });
        }
        if !seen.insert(q.id.as_str()) {
            return Err(Error::InvalidQuestions {
                reason: format!("duplicate question id {:?}", q.id),
            });
        }
    }
    Ok(())
}

/// Index questions by id.
pub fn question_map(questions: &[Question]) -> BTreeMap<String, Question> {
    questions
        .iter()
        .map(|q| (q.id.clone(), q.clone()))
        .collect()
}

/// Group solutions per question, preserving file order within each question.
pub fn solutions_by_question(solutions: &[Solution]) -> BTreeMap<String, Vec<Solution>> {
    let mut map: BTreeMap<String, Vec<Solution>> = BTreeMap::new();
    for s in solutions {
        map.entry(s.question_id.clone())
            .or_default()
            .push(s.clone());
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_from_text_extracts_last_box() {
        let s = Solution::from_text("q1", "first \\boxed{1}, then \\boxed{2}.");
        assert_eq!(s.final_answer.as_deref(), Some("2"));
    }

    #[test]
    fn critique_from_text_derives_judgment() {
        let r = SolutionRef {
            question_id: "q1".into(),
            solution_index: 0,
        };
        assert_eq!(
            Critique::from_text(r.clone(), "ok\n\\boxed{True}").judgment,
            Judgment::True
        );
        assert_eq!(
            Critique::from_text(r.clone(), "bad\n\\boxed{False}").judgment,
            Judgment::False
        );
        assert_eq!(Critique::from_text(r, "no box").judgment, Judgment::Invalid);
    }

    #[test]
    fn validate_questions_rejects_duplicates_and_empties() {
        let q = |id: &str, truth: &str| Question {
            id: id.into(),
            prompt: "p".into(),
            ground_truth_answer: truth.into(),
            reference_solution: None,
        };
        assert!(validate_questions(&[q("a", "1"), q("b", "2")]).is_ok());
        assert!(validate_questions(&[q("a", "1"), q("a", "2")]).is_err());
        assert!(validate_questions(&[q("", "1")]).is_err());
        assert!(validate_questions(&[q("a", "")]).is_err());
    }

    #[test]
    fn critique_serializes_with_flat_schema() {
        let c = Critique::from_text(
            SolutionRef {
                question_id: "q1".into(),
                solution_index: 3,
            },
            "fine\n\\boxed{True}",
        );
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["question_id"], "q1");
        assert_eq!(json["solution_index"], 3);
        assert_eq!(json["judgment"], "true");
        assert!(json["text"].is_string());
    }
}

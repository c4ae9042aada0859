//! Prompt templates and rendering.
//!
//! The templates live as text assets and are used verbatim as system
//! prompts; the judge template is a single self-contained prompt with
//! `{question}`, `{ground_truth_solution}`, `{candidate_solution}` and
//! `{critique}` placeholders.

use crate::model::{DatasetRecord, Question};

/// System prompt instructing a solver to end with a boxed final answer.
pub const SOLVE: &str = include_str!("../assets/prompts/solve.txt");

/// Critique template used during synthesis, where the verifier sees the
/// ground truth.
pub const CRITIQUE_WITH_TRUTH: &str = include_str!("../assets/prompts/critique_with_truth.txt");

/// Critique template used at test time, where no ground truth exists.
pub const CRITIQUE_NO_TRUTH: &str = include_str!("../assets/prompts/critique_no_truth.txt");

/// Judge prompt for auditing the quality of synthesized critiques.
pub const JUDGE: &str = include_str!("../assets/prompts/judge.txt");

/// The ground-truth text shown to the synthesis verifier: the reference
/// solution when one exists, otherwise the bare ground-truth answer.
pub fn ground_truth_text(question: &Question) -> &str {
    question
        .reference_solution
        .as_deref()
        .unwrap_or(&question.ground_truth_answer)
}

/// User message for a critique request: the labeled blocks the critique
/// templates announce ("Question", "Ground Truth", "Solution").
pub fn critique_user_prompt(question: &Question, solution_text: &str, with_truth: bool) -> String {
    if with_truth {
        format!(
            "Question:\n{}\n\nGround Truth:\n{}\n\nSolution:\n{}",
            question.prompt,
            ground_truth_text(question),
            solution_text
        )
    } else {
        format!(
            "Question:\n{}\n\nSolution:\n{}",
            question.prompt, solution_text
        )
    }
}

/// Render the judge prompt for one dataset record.
pub fn render_judge(question: &Question, record: &DatasetRecord) -> String {
    JUDGE
        .replace("{question}", &question.prompt)
        .replace("{ground_truth_solution}", ground_truth_text(question))
        .replace("{candidate_solution}", &record.solution_text)
        .replace("{critique}", &record.critique_text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SPLIT_SFT;

    fn question() -> Question {
        Question {
            id: "q1".into(),
            prompt: "Compute 2+2.".into(),
            ground_truth_answer: "4".into(),
            reference_solution: Some("2+2 = \\boxed{4}".into()),
        }
    }

    #[test]
    fn templates_carry_the_boxed_instructions() {
        assert!(SOLVE.contains("\\boxed{}"));
        for template in [CRITIQUE_WITH_TRUTH, CRITIQUE_NO_TRUTH] {
            assert!(template.contains("\\boxed{True}"));
            assert!(template.contains("\\boxed{False}"));
            assert!(template.contains("step-by-step"));
        }
        assert!(CRITIQUE_WITH_TRUTH.contains("Ground Truth (hidden from the student)"));
        assert!(!CRITIQUE_NO_TRUTH.contains("Ground Truth"));
    }

    #[test]
    fn judge_template_has_all_placeholders() {
        for placeholder in [
            "{question}",
            "{ground_truth_solution}",
            "{candidate_solution}",
            "{critique}",
        ] {
            assert!(JUDGE.contains(placeholder), "missing {placeholder}");
        }
    }

    #[test]
    fn render_judge_substitutes_everything() {
        let record = DatasetRecord {
            question_id: "q1".into(),
            solution_text: "I think \\boxed{5}".into(),
            critique_text: "Step 1 is wrong.\n\\boxed{False}".into(),
            label: false,
            split_tag: SPLIT_SFT.into(),
        };
        let rendered = render_judge(&question(), &record);
        assert!(rendered.contains("Compute 2+2."));
        assert!(rendered.contains("2+2 = \\boxed{4}"));
        assert!(rendered.contains("I think \\boxed{5}"));
        assert!(rendered.contains("Step 1 is wrong."));
        assert!(!rendered.contains("{question}"));
        assert!(!rendered.contains("{critique}"));
    }

    #[test]
    fn ground_truth_falls_back_to_answer() {
        let mut q = question();
        q.reference_solution = None;
        assert_eq!(ground_truth_text(&q), "4");
    }

    #[test]
    fn user_prompt_blocks() {
        let q = question();
        let with = critique_user_prompt(&q, "sol text", true);
        assert!(with.contains("Question:\nCompute 2+2."));
        assert!(with.contains("Ground Truth:\n2+2 = \\boxed{4}"));
        assert!(with.contains("Solution:\nsol text"));

        let without = critique_user_prompt(&q, "sol text", false);
        assert!(!without.contains("Ground Truth:"));
        assert!(without.contains("Solution:\nsol text"));
    }
}

//! Critique dataset synthesis: trajectory dedup, rejection-sampled critique
//! generation against ground truth, difficulty filtering, class balancing,
//! split export, and quality-audit prompt sampling.
//!
//! The rejection filter keeps a generated critique only when its boxed
//! judgment matches the solution's ground-truth correctness, so every
//! emitted record's label, judgment, and solution correctness agree by
//! construction.

use std::collections::BTreeMap;
use std::path::Path;

use rand::seq::index::sample as index_sample;

use crate::answer::AnswerKey;
use crate::backend::{Backend, GenRequest};
use crate::error::{Error, Result};
use crate::jsonl::write_jsonl;
use crate::model::{DatasetRecord, Question, Solution, SPLIT_RL, SPLIT_SFT};
use crate::prompts;
use crate::rng::derive_rng;
use crate::util::try_par_map;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    /// Rejection-sampling budget per (question, solution) pair.
    pub attempts_per_pair: usize,
    /// Survivors kept per answer-equivalence class during dedup.
    pub max_per_answer_group: usize,
    /// Questions stay in the RL split only while their solver accuracy is
    /// strictly below this.
    pub difficulty_threshold: f64,
    /// positives : negatives target for the balanced RL split.
    pub balance_ratio: (usize, usize),
    pub seed: u64,
    pub temperature: f64,
    pub max_tokens: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            attempts_per_pair: 4,
            max_per_answer_group: 1,
            difficulty_threshold: 0.6,
            balance_ratio: (1, 1),
            seed: 0,
            temperature: crate::backend::DEFAULT_TEMPERATURE,
            max_tokens: crate::backend::DEFAULT_MAX_TOKENS,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.attempts_per_pair == 0 {
            return Err(Error::usage("attempts must be at least 1"));
        }
        if self.max_per_answer_group == 0 {
            return Err(Error::usage("max-per-group must be at least 1"));
        }
        if !(self.difficulty_threshold > 0.0 && self.difficulty_threshold <= 1.0) {
            return Err(Error::usage(format!(
                "difficulty-threshold must be in (0, 1], got {}",
                self.difficulty_threshold
            )));
        }
        if self.balance_ratio.0 == 0 || self.balance_ratio.1 == 0 {
            return Err(Error::usage("balance ratio parts must be positive"));
        }
        Ok(())
    }
}

/// Drop near-duplicate trajectories for one question: solutions are grouped
/// by answer equivalence on their final answer (all unparseable answers form
/// one group) and at most `max_per_answer_group` earliest members survive
/// per group, in input order.
pub fn dedup_trajectories(solutions: &[Solution], max_per_answer_group: usize) -> Vec<Solution> {
    let mut counts: BTreeMap<Option<AnswerKey>, usize> = BTreeMap::new();
    let mut kept = Vec::new();
    for solution in solutions {
        let key = solution.final_answer.as_deref().map(AnswerKey::of);
        let count = counts.entry(key).or_insert(0);
        if *count < max_per_answer_group {
            kept.push(solution.clone());
            *count += 1;
        }
    }
    kept
}

/// Generate one critique for a labeled (question, solution) pair under the
/// rejection filter: up to `attempts_per_pair` generations, returning the
/// first whose judgment matches the solution's correctness. `None` when no
/// attempt matches.
pub fn synthesize_critique(
    question: &Question,
    solution: &Solution,
    backend: &dyn Backend,
    config: &SynthConfig,
) -> Result<Option<DatasetRecord>> {
    let label = solution.correct.ok_or_else(|| Error::UnlabeledSolution {
        question_id: question.id.clone(),
    })?;
    let request = GenRequest::new(
        prompts::CRITIQUE_WITH_TRUTH,
        prompts::critique_user_prompt(question, &solution.text, true),
    )
    .with_temperature(config.temperature)
    .with_max_tokens(config.max_tokens);
    for _ in 0..config.attempts_per_pair {
        let texts = backend
            .generate(&request)
            .map_err(|e| e.for_question(&question.id))?;
        let text = texts.into_iter().next().ok_or_else(|| {
            Error::backend("backend returned no completion").for_question(&question.id)
        })?;
        if crate::answer::parse_judgment(&text).as_bool() == Some(label) {
            return Ok(Some(DatasetRecord {
                question_id: question.id.clone(),
                solution_text: solution.text.clone(),
                critique_text: text,
                label,
                split_tag: SPLIT_SFT.to_string(),
            }));
        }
    }
    Ok(None)
}

/// Empirical solver accuracy per question (correct / total over its labeled
/// solutions).
pub fn question_accuracies(
    solutions_by_question: &BTreeMap<String, Vec<Solution>>,
) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for (question_id, solutions) in solutions_by_question {
        if solutions.is_empty() {
            continue;
        }
        let mut correct = 0usize;
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
        }
        out.insert(question_id.clone(), correct as f64 / solutions.len() as f64);
    }
    Ok(out)
}

/// Keep every (question, solution) pair whose question's solver accuracy is
/// strictly below `threshold`.
pub fn difficulty_filter(
    solutions_by_question: &BTreeMap<String, Vec<Solution>>,
    threshold: f64,
) -> Result<Vec<(String, Solution)>> {
    let accuracies = question_accuracies(solutions_by_question)?;
    let mut kept = Vec::new();
    for (question_id, solutions) in solutions_by_question {
        if accuracies[question_id] < threshold {
            for s in solutions {
                kept.push((question_id.clone(), s.clone()));
            }
        }
    }
    Ok(kept)
}

/// Undersample the over-represented label so positives : negatives hits
/// `ratio`, keeping survivors in input order. The records to drop are chosen
/// uniformly at random on a stream derived from `seed`. Empty input stays
/// empty; exactly one empty class cannot be balanced and errors.
pub fn balance(
    records: &[DatasetRecord],
    ratio: (usize, usize),
    seed: u64,
) -> Result<Vec<DatasetRecord>> {
    if records.is_empty() {
        return Ok(Vec::new());
    }
    let positives: Vec<usize> = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.label)
        .map(|(i, _)| i)
        .collect();
    let negatives: Vec<usize> = records
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.label)
        .map(|(i, _)| i)
        .collect();
    if positives.is_empty() {
        return Err(Error::CannotBalance { label: true });
    }
    if negatives.is_empty() {
        return Err(Error::CannotBalance { label: false });
    }
    let (ratio_pos, ratio_neg) = ratio;
    let units = (positives.len() / ratio_pos).min(negatives.len() / ratio_neg);
    let keep_pos = units * ratio_pos;
    let keep_neg = units * ratio_neg;
    let mut rng = derive_rng(seed, &["balance"]);
    let mut keep: Vec<usize> = Vec::with_capacity(keep_pos + keep_neg);
    for (class, target) in [(&positives, keep_pos), (&negatives, keep_neg)] {
        if target == class.len() {
            keep.extend_from_slice(class);
        } else {
            let chosen = index_sample(&mut rng, class.len(), target);
            keep.extend(chosen.iter().map(|i| class[i]));
        }
    }
    keep.sort_unstable();
    Ok(keep.into_iter().map(|i| records[i].clone()).collect())
}

/// Counts per split and label after an export.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExportSummary {
    pub sft_total: usize,
    pub sft_positive: usize,
    pub sft_negative: usize,
    pub rl_total: usize,
    pub rl_positive: usize,
    pub rl_negative: usize,
}

impl std::fmt::Display for ExportSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "sft {} ({} positive / {} negative); rl {} ({} positive / {} negative)",
            self.sft_total,
            self.sft_positive,
            self.sft_negative,
            self.rl_total,
            self.rl_positive,
            self.rl_negative
        )
    }
}

fn count(records: &[DatasetRecord]) -> (usize, usize, usize) {
    let positives = records.iter().filter(|r| r.label).count();
    (records.len(), positives, records.len() - positives)
}

/// Write the two training splits. The SFT split is the full accepted set;
/// the RL split is difficulty-filtered down to hard questions and then
/// class-balanced (unless `balance_rl` is off).
pub fn export_datasets(
    records: &[DatasetRecord],
    accuracies: &BTreeMap<String, f64>,
    sft_path: &Path,
    rl_path: &Path,
    config: &SynthConfig,
    balance_rl: bool,
) -> Result<ExportSummary> {
    let sft: Vec<DatasetRecord> = records
        .iter()
        .map(|r| DatasetRecord {
            split_tag: SPLIT_SFT.to_string(),
            ..r.clone()
        })
        .collect();
    let mut hard = Vec::new();
    for record in records {
        let accuracy =
            accuracies
                .get(&record.question_id)
                .ok_or_else(|| Error::UnknownQuestion {
                    question_id: record.question_id.clone(),
                })?;
        if *accuracy < config.difficulty_threshold {
            hard.push(DatasetRecord {
                split_tag: SPLIT_RL.to_string(),
                ..record.clone()
            });
        }
    }
    let rl = if balance_rl && !hard.is_empty() {
        balance(&hard, config.balance_ratio, config.seed)?
    } else {
        hard
    };
    write_jsonl(&sft, sft_path)?;
    write_jsonl(&rl, rl_path)?;
    let (sft_total, sft_positive, sft_negative) = count(&sft);
    let (rl_total, rl_positive, rl_negative) = count(&rl);
    Ok(ExportSummary {
        sft_total,
        sft_positive,
        sft_negative,
        rl_total,
        rl_positive,
        rl_negative,
    })
}

/// Seeded uniform sample of `n` records, each rendered into the judge
/// prompt. Sampling is without replacement; the rendered prompts follow
/// input order.
pub fn quality_audit_sample(
    records: &[DatasetRecord],
    questions: &BTreeMap<String, Question>,
    n: usize,
    seed: u64,
) -> Result<Vec<String>> {
    if n > records.len() {
        return Err(Error::SampleTooLarge {
            requested: n,
            available: records.len(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut rng = derive_rng(seed, &["audit"]);
    let mut chosen: Vec<usize> = index_sample(&mut rng, records.len(), n)
        .into_iter()
        .collect();
    chosen.sort_unstable();
    chosen
        .into_iter()
        .map(|i| {
            let record = &records[i];
            let question =
                questions
                    .get(&record.question_id)
                    .ok_or_else(|| Error::UnknownQuestion {
                        question_id: record.question_id.clone(),
                    })?;
            Ok(prompts::render_judge(question, record))
        })
        .collect()
}

/// Everything a synthesis run produces besides the files.
#[derive(Debug, Clone)]
pub struct SynthOutcome {
    pub records: Vec<DatasetRecord>,
    pub accuracies: BTreeMap<String, f64>,
    /// (question, solution) pairs that went through rejection sampling.
    pub attempted_pairs: usize,
}

/// Full synthesis pass: label solutions, compute per-question solver
/// accuracy over the full sample, dedup trajectories, then rejection-sample
/// one critique per surviving pair. Accepted records come back in input
/// order (questions in `questions` order, solutions in file order) no matter
/// how many workers ran.
pub fn synthesize_dataset(
    questions: &[Question],
    solutions: &[Solution],
    backend: &dyn Backend,
    config: &SynthConfig,
    workers: usize,
) -> Result<SynthOutcome> {
    config.validate()?;
    let question_index = crate::model::question_map(questions);
    let mut labeled: BTreeMap<String, Vec<Solution>> = BTreeMap::new();
    for solution in solutions {
        let question =
            question_index
                .get(&solution.question_id)
                .ok_or_else(|| Error::UnknownQuestion {
                    question_id: solution.question_id.clone(),
                })?;
        let mut s = solution.clone();
        s.ensure_final_answer();
        labeled
            .entry(solution.question_id.clone())
            .or_default()
            .push(crate::answer::label_solution(&s, question));
    }
    let accuracies = question_accuracies(&labeled)?;

    let mut pairs: Vec<(&Question, Solution)> = Vec::new();
    for question in questions {
        if let Some(sols) = labeled.get(&question.id) {
            for survivor in dedup_trajectories(sols, config.max_per_answer_group) {
                pairs.push((question, survivor));
            }
        }
    }
    let attempted_pairs = pairs.len();

    let results = try_par_map(&pairs, workers, |(question, solution)| {
        synthesize_critique(question, solution, backend, config)
    })?;
    let records: Vec<DatasetRecord> = results.into_iter().flatten().collect();

    // Rejection-filter soundness, checked on every run: judgment, label,
    // and ground-truth correctness agree on every accepted record.
    assert!(records
        .iter()
        .all(|r| crate::answer::parse_judgment(&r.critique_text).as_bool() == Some(r.label)));

    Ok(SynthOutcome {
        records,
        accuracies,
        attempted_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::MockBackend;
    use tempfile::tempdir;

    fn question(id: &str, truth: &str) -> Question {
        Question {
            id: id.into(),
            prompt: format!("question {id}"),
            ground_truth_answer: truth.into(),
            reference_solution: Some(format!("reference: \\boxed{{{truth}}}")),
        }
    }

    fn solution(qid: &str, answer: &str) -> Solution {
        Solution::from_text(qid, format!("reasoning... \\boxed{{{answer}}}"))
    }

    fn labeled(qid: &str, answer: &str, correct: bool) -> Solution {
        let mut s = solution(qid, answer);
        s.correct = Some(correct);
        s
    }

    const MATCH_TRUE: &str = "1. all good\n\\boxed{True}";
    const MATCH_FALSE: &str = "1. mistake in step 2\n\\boxed{False}";
    const INVALID: &str = "no verdict to be found";

    #[test]
    fn dedup_groups_equivalent_answers() {
        let sols = vec![
            solution("q", "0.5"),
            solution("q", "1/2"),
            solution("q", "3"),
        ];
        let kept = dedup_trajectories(&sols, 1);
        assert_eq!(kept.len(), 2);
        assert_eq!(kept[0].final_answer.as_deref(), Some("0.5"));
        assert_eq!(kept[1].final_answer.as_deref(), Some("3"));
    }

    #[test]
    fn dedup_distinct_answers_unchanged() {
        let sols = vec![solution("q", "1"), solution("q", "2"), solution("q", "3")];
        assert_eq!(dedup_trajectories(&sols, 1), sols);
    }

    #[test]
    fn dedup_keeps_earliest_members() {
        let sols: Vec<Solution> = (0..4)
            .map(|i| {
                let mut s = solution("q", "7");
                s.source_tag = Some(format!("run{i}"));
                s
            })
            .collect();
        let kept = dedup_trajectories(&sols, 2);
        assert_eq!(kept.len(), 2);
        assert_eq!(kept[0].source_tag.as_deref(), Some("run0"));
        assert_eq!(kept[1].source_tag.as_deref(), Some("run1"));
    }

    #[test]
    fn dedup_pools_unparseable_solutions() {
        let sols = vec![
            Solution::from_text("q", "no box here"),
            Solution::from_text("q", "also boxless"),
            solution("q", "5"),
        ];
        let kept = dedup_trajectories(&sols, 1);
        assert_eq!(kept.len(), 2);
    }

    #[test]
    fn synthesize_accepts_immediately() {
        let backend = MockBackend::new(vec![MATCH_TRUE.into()]);
        let record = synthesize_critique(
            &question("q1", "4"),
            &labeled("q1", "4", true),
            &backend,
            &SynthConfig::default(),
        )
        .unwrap()
        .expect("matching judgment accepted");
        assert!(record.label);
        assert_eq!(record.critique_text, MATCH_TRUE);
        assert_eq!(backend.served(), 1);
    }

    #[test]
    fn synthesize_retries_until_match() {
        // Correct solution, so the two False critiques mismatch.
        let backend = MockBackend::new(vec![
            MATCH_FALSE.into(),
            MATCH_FALSE.into(),
            MATCH_TRUE.into(),
            MATCH_TRUE.into(),
        ]);
        let record = synthesize_critique(
            &question("q1", "4"),
            &labeled("q1", "4", true),
            &backend,
            &SynthConfig::default(),
        )
        .unwrap()
        .expect("third attempt matches");
        assert_eq!(record.critique_text, MATCH_TRUE);
        assert_eq!(backend.served(), 3);
    }

    #[test]
    fn synthesize_rejects_all_invalid() {
        let backend = MockBackend::new(vec![INVALID.into(); 4]);
        let out = synthesize_critique(
            &question("q1", "4"),
            &labeled("q1", "4", true),
            &backend,
            &SynthConfig::default(),
        )
        .unwrap();
        assert!(out.is_none());
        assert_eq!(backend.served(), 4);
    }

    #[test]
    fn synthesize_propagates_backend_failures_with_question() {
        let backend = MockBackend::new(vec![]);
        let err = synthesize_critique(
            &question("q9", "4"),
            &labeled("q9", "4", true),
            &backend,
            &SynthConfig::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("q9"));
    }

    fn sixteen(qid: &str, correct: usize) -> Vec<Solution> {
        (0..16)
            .map(|i| labeled(qid, if i < correct { "1" } else { "2" }, i < correct))
            .collect()
    }

    #[test]
    fn difficulty_keeps_strictly_below_threshold() {
        let mut by_q = BTreeMap::new();
        by_q.insert("nine".to_string(), sixteen("nine", 9)); // 56.25%
        by_q.insert("ten".to_string(), sixteen("ten", 10)); // 62.5%
        by_q.insert("zero".to_string(), sixteen("zero", 0));
        let kept = difficulty_filter(&by_q, 0.6).unwrap();
        let kept_questions: std::collections::BTreeSet<_> =
            kept.iter().map(|(q, _)| q.as_str()).collect();
        assert!(kept_questions.contains("nine"));
        assert!(kept_questions.contains("zero"));
        assert!(!kept_questions.contains("ten"));
    }

    fn records(positives: usize, negatives: usize) -> Vec<DatasetRecord> {
        let mut out = Vec::new();
        for i in 0..positives + negatives {
            out.push(DatasetRecord {
                question_id: format!("q{i}"),
                solution_text: "s".into(),
                critique_text: if i < positives {
                    MATCH_TRUE.into()
                } else {
                    MATCH_FALSE.into()
                },
                label: i < positives,
                split_tag: SPLIT_SFT.into(),
            });
        }
        out
    }

    #[test]
    fn balance_undersamples_majority() {
        let input = records(25, 75);
        let balanced = balance(&input, (1, 1), 7).unwrap();
        let positives = balanced.iter().filter(|r| r.label).count();
        assert_eq!(positives, 25);
        assert_eq!(balanced.len(), 50);
    }

    #[test]
    fn balance_leaves_balanced_input_alone() {
        let input = records(10, 10);
        assert_eq!(balance(&input, (1, 1), 7).unwrap(), input);
    }

    #[test]
    fn balance_errors_on_missing_class() {
        let input = records(0, 5);
        assert!(matches!(
            balance(&input, (1, 1), 7),
            Err(Error::CannotBalance { label: true })
        ));
        assert!(balance(&[], (1, 1), 7).unwrap().is_empty());
    }

    #[test]
    fn balance_is_seeded_and_order_preserving() {
        let input = records(5, 20);
        let a = balance(&input, (1, 1), 42).unwrap();
        let b = balance(&input, (1, 1), 42).unwrap();
        assert_eq!(a, b);
        let c = balance(&input, (1, 1), 43).unwrap();
        assert_eq!(c.len(), a.len());
        // Survivors keep their relative input order.
        let ids = |v: &[DatasetRecord]| v.iter().map(|r| r.question_id.clone()).collect::<Vec<_>>();
        let mut sorted = ids(&a);
        sorted.sort_by_key(|id| id[1..].parse::<usize>().unwrap());
        assert_eq!(ids(&a), sorted);
    }

    #[test]
    fn export_empty_input_writes_empty_files() {
        let dir = tempdir().unwrap();
        let sft = dir.path().join("sft.jsonl");
        let rl = dir.path().join("rl.jsonl");
        let summary = export_datasets(
            &[],
            &BTreeMap::new(),
            &sft,
            &rl,
            &SynthConfig::default(),
            true,
        )
        .unwrap();
        assert_eq!(summary, ExportSummary::default());
        assert_eq!(std::fs::read_to_string(&sft).unwrap(), "");
        assert_eq!(std::fs::read_to_string(&rl).unwrap(), "");
    }

    #[test]
    fn export_filters_and_balances_the_rl_split() {
        // 8 records over 2 questions; only "hard" survives the filter.
        let mut recs = Vec::new();
        for i in 0..4 {
            recs.push(DatasetRecord {
                question_id: "hard".into(),
                solution_text: format!("s{i}"),
                critique_text: if i < 1 {
                    MATCH_TRUE.into()
                } else {
                    MATCH_FALSE.into()
                },
                label: i < 1,
                split_tag: SPLIT_SFT.into(),
            });
            recs.push(DatasetRecord {
                question_id: "easy".into(),
                solution_text: format!("s{i}"),
                critique_text: MATCH_TRUE.into(),
                label: true,
                split_tag: SPLIT_SFT.into(),
            });
        }
        let accuracies: BTreeMap<String, f64> =
            [("hard".to_string(), 0.25), ("easy".to_string(), 0.9)].into();
        let dir = tempdir().unwrap();
        let sft = dir.path().join("sft.jsonl");
        let rl = dir.path().join("rl.jsonl");
        let summary =
            export_datasets(&recs, &accuracies, &sft, &rl, &SynthConfig::default(), true).unwrap();
        assert_eq!(summary.sft_total, 8);
        let rl_records: Vec<DatasetRecord> = crate::jsonl::read_jsonl(&rl).unwrap();
        assert!(rl_records.iter().all(|r| r.question_id == "hard"));
        assert!(rl_records.iter().all(|r| r.split_tag == SPLIT_RL));
        let positives = rl_records.iter().filter(|r| r.label).count();
        assert_eq!(positives * 2, rl_records.len());

        // Summary counts equal emitted line counts.
        let lines = |p: &Path| std::fs::read_to_string(p).unwrap().lines().count();
        assert_eq!(summary.sft_total, lines(&sft));
        assert_eq!(summary.rl_total, lines(&rl));
    }

    #[test]
    fn audit_sampling_is_seeded() {
        let recs = records(20, 20);
        let questions: BTreeMap<String, Question> = (0..40)
            .map(|i| (format!("q{i}"), question(&format!("q{i}"), "1")))
            .collect();
        let a = quality_audit_sample(&recs, &questions, 30, 5).unwrap();
        let b = quality_audit_sample(&recs, &questions, 30, 5).unwrap();
        assert_eq!(a.len(), 30);
        assert_eq!(a, b);
        assert!(quality_audit_sample(&recs, &questions, 0, 5)
            .unwrap()
            .is_empty());
        assert!(matches!(
            quality_audit_sample(&recs, &questions, 41, 5),
            Err(Error::SampleTooLarge { .. })
        ));
    }

    #[test]
    fn dedup_never_grows_and_keeps_a_representative_per_class() {
        use proptest::prelude::*;
        let answers = proptest::collection::vec(
            prop_oneof![
                Just(Some("1/2")),
                Just(Some("0.5")),
                Just(Some("3")),
                Just(Some("x")),
                Just(None::<&str>)
            ],
            1..20,
        );
        proptest!(|(answers in answers, cap in 1usize..4)| {
            let solutions: Vec<Solution> = answers
                .iter()
                .map(|a| match a {
                    Some(ans) => solution("q", ans),
                    None => Solution::from_text("q", "boxless"),
                })
                .collect();
            let kept = dedup_trajectories(&solutions, cap);
            prop_assert!(kept.len() <= solutions.len());
            let classes = |sols: &[Solution]| -> std::collections::BTreeSet<Option<AnswerKey>> {
                sols.iter()
                    .map(|s| s.final_answer.as_deref().map(AnswerKey::of))
                    .collect()
            };
            prop_assert_eq!(classes(&kept), classes(&solutions));
        });
    }

    #[test]
    fn full_synthesis_is_sound_and_ordered() {
        let questions = vec![question("q1", "4"), question("q2", "9")];
        // q1 gets a correct and a wrong solution; q2 one wrong solution.
        let solutions = vec![
            Solution::from_text("q1", "thus \\boxed{4}"),
            Solution::from_text("q1", "thus \\boxed{5}"),
            Solution::from_text("q2", "thus \\boxed{7}"),
        ];
        // Scripts consumed pair by pair: accept, mismatch-then-accept, accept.
        let backend = MockBackend::new(vec![
            MATCH_TRUE.into(),  // q1 correct solution
            MATCH_TRUE.into(),  // q1 wrong solution: mismatches (label false)
            MATCH_FALSE.into(), // q1 wrong solution: accepted
            MATCH_FALSE.into(), // q2 wrong solution: accepted
        ]);
        let outcome =
            synthesize_dataset(&questions, &solutions, &backend, &SynthConfig::default(), 1)
                .unwrap();
        assert_eq!(outcome.attempted_pairs, 3);
        assert_eq!(outcome.records.len(), 3);
        for record in &outcome.records {
            assert_eq!(
                crate::answer::parse_judgment(&record.critique_text).as_bool(),
                Some(record.label)
            );
        }
        assert_eq!(outcome.records[0].question_id, "q1");
        assert!(outcome.records[0].label);
        assert!(!outcome.records[1].label);
        assert_eq!(outcome.records[2].question_id, "q2");
        assert_eq!(outcome.accuracies["q1"], 0.5);
        assert_eq!(outcome.accuracies["q2"], 0.0);
    }
}

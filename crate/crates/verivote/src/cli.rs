//! Command-line entry point: `synth`, `verify`, `vote`, `sweep`, `sim`,
//! `audit`.
//!
//! Setting precedence is flags over config file over built-in defaults. The
//! config file is flat `key = value` text with keys mirroring flag names
//! (`-` and `_` interchangeable, `#` comments). Exit codes: 0 success,
//! 1 runtime failure, 2 usage error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::answer::label_solution;
use crate::backend::{
    simulate_critiques, simulate_question, Backend, GenRequest, MockBackend, RemoteBackend,
    RemoteConfig, SimBackend, SimProfile, DEFAULT_MAX_TOKENS, DEFAULT_TEMPERATURE,
};
use crate::error::{Error, Result};
use crate::jsonl::{read_jsonl, write_jsonl};
use crate::manifest::RunManifest;
use crate::metrics::{self, EvalOutcome};
use crate::model::{
    question_map, validate_questions, AuditPrompt, Critique, Question, QuestionResult, Solution,
    SolutionRef, VerificationRecord,
};
use crate::prompts;
use crate::synth::{export_datasets, quality_audit_sample, synthesize_dataset, SynthConfig};
use crate::util::try_par_map;
use crate::vote::{self, VoteConfig, DEFAULT_BETA, DEFAULT_M, DEFAULT_N, DEFAULT_TAU};

#[derive(Parser)]
#[command(
    name = "verivote",
    version,
    about = "Critique-based verification scores, weighted answer voting, and selective abstention"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a rejection-filtered critique dataset from questions and
    /// solver trajectories, exporting SFT and RL splits.
    Synth(SynthArgs),
    /// Generate critiques for every (question, solution) pair.
    Verify(VerifyArgs),
    /// Score solutions from critiques, vote, abstain, and report metrics.
    Vote(VoteArgs),
    /// Sweep the abstention threshold and emit the honesty-accuracy curve.
    Sweep(SweepArgs),
    /// Simulate a solver-verifier run end to end and report.
    Sim(SimArgs),
    /// Sample synthesized records into quality-audit judge prompts.
    Audit(AuditArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Output directory; receives the run manifest.
    #[arg(long)]
    out_dir: PathBuf,
    /// Seed for every random stream in the run.
    #[arg(long)]
    seed: Option<u64>,
    /// Flat key = value config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overwrite an existing run manifest in --out-dir.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SimProfileArgs {
    /// Probability a simulated solution is correct.
    #[arg(long)]
    solver_accuracy: Option<f64>,
    /// Wrong-answer alphabet size for the simulator.
    #[arg(long)]
    distractors: Option<usize>,
    /// P(critique says True | solution correct).
    #[arg(long)]
    tpr: Option<f64>,
    /// P(critique says True | solution incorrect).
    #[arg(long)]
    fpr: Option<f64>,
}

#[derive(Args)]
struct BackendArgs {
    /// Generation backend: remote, mock, or sim.
    #[arg(long, value_enum)]
    backend: Option<BackendKind>,
    /// Server root for the remote backend (no /v1 path).
    #[arg(long)]
    base_url: Option<String>,
    #[arg(long)]
    model: Option<String>,
    /// JSONL file of scripted responses (one JSON string per line) for the
    /// mock backend; the script cycles when exhausted.
    #[arg(long)]
    mock_script: Option<PathBuf>,
    /// Concurrent in-flight requests for the remote backend.
    #[arg(long)]
    concurrency: Option<usize>,
    #[arg(long)]
    retry_cap: Option<u32>,
    #[arg(long)]
    timeout_seconds: Option<u64>,
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long)]
    max_tokens: Option<usize>,
    #[command(flatten)]
    sim: SimProfileArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendKind {
    Remote,
    Mock,
    Sim,
}

impl FromStr for BackendKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "remote" => Ok(BackendKind::Remote),
            "mock" => Ok(BackendKind::Mock),
            "sim" => Ok(BackendKind::Sim),
            other => Err(format!("unknown backend {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaselineKind {
    Weighted,
    Majority,
}

impl FromStr for BaselineKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "weighted" => Ok(BaselineKind::Weighted),
            "majority" => Ok(BaselineKind::Majority),
            other => Err(format!("unknown baseline {other:?}")),
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    questions: PathBuf,
    #[arg(long)]
    solutions: PathBuf,
    /// Rejection-sampling attempts per (question, solution) pair.
    #[arg(long)]
    attempts: Option<usize>,
    /// Trajectories kept per answer-equivalence class.
    #[arg(long)]
    max_per_group: Option<usize>,
    /// Questions enter the RL split only below this solver accuracy.
    #[arg(long)]
    difficulty_threshold: Option<f64>,
    /// positives:negatives target for the RL split, e.g. 1:1.
    #[arg(long)]
    balance_ratio: Option<String>,
    /// Export the RL split unbalanced.
    #[arg(long)]
    no_balance: bool,
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    backend: BackendArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    questions: PathBuf,
    #[arg(long)]
    solutions: PathBuf,
    /// Critiques generated per solution.
    #[arg(long)]
    m: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    backend: BackendArgs,
}

#[derive(Args)]
struct VoteArgs {
    #[arg(long)]
    questions: PathBuf,
    #[arg(long)]
    solutions: PathBuf,
    /// Existing critiques file; omit to simulate them with --backend sim.
    #[arg(long)]
    critiques: Option<PathBuf>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Critiques per solution when simulating.
    #[arg(long)]
    m: Option<usize>,
    /// Selection rule to report.
    #[arg(long, value_enum)]
    baseline: Option<BaselineKind>,
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    backend: BackendArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    questions: PathBuf,
    #[arg(long)]
    solutions: PathBuf,
    #[arg(long)]
    critiques: Option<PathBuf>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    tau_start: Option<f64>,
    #[arg(long)]
    tau_end: Option<f64>,
    #[arg(long)]
    tau_step: Option<f64>,
    /// Also render curve.svg next to curve.csv.
    #[arg(long)]
    plot: bool,
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    backend: BackendArgs,
}

#[derive(Args)]
struct SimArgs {
    /// Number of simulated questions.
    #[arg(long)]
    num_questions: Option<usize>,
    /// Candidate solutions per question.
    #[arg(long)]
    n: Option<usize>,
    /// Critiques per solution.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    temperature: Option<f64>,
    #[command(flatten)]
    profile: SimProfileArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct AuditArgs {
    /// Synthesized dataset to sample from.
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long)]
    questions: PathBuf,
    /// Sample size.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

/// Parse args and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for --help/--version.
            e.exit();
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Vote(args) => cmd_vote(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Sim(args) => cmd_sim(args),
        Command::Audit(args) => cmd_audit(args),
    }
}

// ---- settings resolution ------------------------------------------------

/// Config-file values; `get` applies flag > file > default precedence.
#[derive(Debug)]
struct Resolver {
    values: BTreeMap<String, String>,
}

fn normalize_key(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl Resolver {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut values = BTreeMap::new();
        if let Some(path) = path {
            let body = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            for (idx, raw) in body.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(Error::Config {
                        path: path.to_path_buf(),
                        line: idx + 1,
                        message: "expected key = value".into(),
                    });
                };
                values.insert(normalize_key(key), value.trim().to_string());
            }
        }
        Ok(Resolver { values })
    }

    fn get<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if let Some(value) = flag {
            return Ok(value);
        }
        match self.values.get(&normalize_key(key)) {
            Some(raw) => raw
                .parse()
                .map_err(|e| Error::usage(format!("config key {key}: cannot parse {raw:?}: {e}"))),
            None => Ok(default),
        }
    }

    fn get_opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if let Some(value) = flag {
            return Ok(Some(value));
        }
        match self.values.get(&normalize_key(key)) {
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| Error::usage(format!("config key {key}: cannot parse {raw:?}: {e}"))),
            None => Ok(None),
        }
    }
}

fn require_file(path: &Path, what: &str) -> Result<()> {
    if !path.is_file() {
        return Err(Error::usage(format!(
            "{what} file not found: {}",
            path.display()
        )));
    }
    Ok(())
}

fn parse_ratio(raw: &str) -> Result<(usize, usize)> {
    let parsed = raw
        .split_once(':')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
    match parsed {
        Some((a, b)) if a > 0 && b > 0 => Ok((a, b)),
        _ => Err(Error::usage(format!(
            "balance ratio must look like 1:1, got {raw:?}"
        ))),
    }
}

fn format_f64(v: f64) -> String {
    format!("{v}")
}

// ---- backend construction -----------------------------------------------

enum RunBackend {
    Remote(RemoteBackend),
    Mock(MockBackend),
    Sim(SimBackend),
}

impl RunBackend {
    fn as_text(&self) -> &dyn Backend {
        match self {
            RunBackend::Remote(b) => b,
            RunBackend::Mock(b) => b,
            RunBackend::Sim(b) => b,
        }
    }

    fn sim_profile(&self) -> Option<&SimProfile> {
        match self {
            RunBackend::Sim(b) => Some(b.profile()),
            _ => None,
        }
    }

    fn workers(&self) -> usize {
        match self {
            RunBackend::Remote(b) => b.config().concurrency.max(1),
            // Mock scripts and sim streams are consumed in input order.
            _ => 1,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            RunBackend::Remote(_) => "remote",
            RunBackend::Mock(_) => "mock",
            RunBackend::Sim(_) => "sim",
        }
    }
}

struct ResolvedBackend {
    backend: RunBackend,
    temperature: f64,
    max_tokens: usize,
    snapshot: BTreeMap<String, String>,
}

fn resolve_sim_profile(
    args: &SimProfileArgs,
    resolver: &Resolver,
    seed: u64,
) -> Result<SimProfile> {
    let defaults = SimProfile::default();
    let profile = SimProfile {
        solver_accuracy: resolver.get(
            args.solver_accuracy,
            "solver_accuracy",
            defaults.solver_accuracy,
        )?,
        distractor_count: resolver.get(
            args.distractors,
            "distractors",
            defaults.distractor_count,
        )?,
        verifier_tpr: resolver.get(args.tpr, "tpr", defaults.verifier_tpr)?,
        verifier_fpr: resolver.get(args.fpr, "fpr", defaults.verifier_fpr)?,
        seed,
    };
    profile.validate()?;
    Ok(profile)
}

fn load_mock_script(path: &Path) -> Result<Vec<String>> {
    let body = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut scripts = Vec::new();
    for (idx, line) in body.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let text: String = serde_json::from_str(line).map_err(|e| Error::JsonLine {
            path: path.to_path_buf(),
            line: idx + 1,
            source: e,
        })?;
        scripts.push(text);
    }
    if scripts.is_empty() {
        return Err(Error::usage(format!(
            "mock script {} contains no responses",
            path.display()
        )));
    }
    Ok(scripts)
}

fn resolve_backend(
    args: &BackendArgs,
    resolver: &Resolver,
    seed: u64,
    default_kind: BackendKind,
) -> Result<ResolvedBackend> {
    let kind = resolver.get(args.backend, "backend", default_kind)?;
    let temperature = resolver.get(args.temperature, "temperature", DEFAULT_TEMPERATURE)?;
    let max_tokens = resolver.get(args.max_tokens, "max_tokens", DEFAULT_MAX_TOKENS)?;
    let mut snapshot = BTreeMap::new();
    snapshot.insert("temperature".into(), format_f64(temperature));
    snapshot.insert("max_tokens".into(), max_tokens.to_string());
    let backend = match kind {
        BackendKind::Remote => {
            let base_url = resolver
                .get_opt(args.base_url.clone(), "base_url")?
                .ok_or_else(|| Error::usage("--base-url is required for the remote backend"))?;
            let model = match resolver.get_opt(args.model.clone(), "model")? {
                Some(m) => m,
                // model_name accepted as a config-file alias.
                None => resolver
                    .get_opt(None, "model_name")?
                    .ok_or_else(|| Error::usage("--model is required for the remote backend"))?,
            };
            let mut config = RemoteConfig::new(base_url, model);
            config.concurrency =
                resolver.get(args.concurrency, "concurrency", config.concurrency)?;
            config.retry_cap = resolver.get(args.retry_cap, "retry_cap", config.retry_cap)?;
            config.timeout_seconds = resolver.get(
                args.timeout_seconds,
                "timeout_seconds",
                config.timeout_seconds,
            )?;
            snapshot.insert("base_url".into(), config.base_url.clone());
            snapshot.insert("model".into(), config.model.clone());
            snapshot.insert("concurrency".into(), config.concurrency.to_string());
            snapshot.insert("retry_cap".into(), config.retry_cap.to_string());
            snapshot.insert("timeout_seconds".into(), config.timeout_seconds.to_string());
            RunBackend::Remote(RemoteBackend::new(config))
        }
        BackendKind::Mock => {
            let script_path = resolver
                .get_opt(args.mock_script.clone(), "mock_script")?
                .ok_or_else(|| Error::usage("--mock-script is required for the mock backend"))?;
            require_file(&script_path, "mock script")?;
            snapshot.insert("mock_script".into(), script_path.display().to_string());
            RunBackend::Mock(MockBackend::cycling(load_mock_script(&script_path)?))
        }
        BackendKind::Sim => {
            let profile = resolve_sim_profile(&args.sim, resolver, seed)?;
            snapshot.insert(
                "solver_accuracy".into(),
                format_f64(profile.solver_accuracy),
            );
            snapshot.insert("distractors".into(), profile.distractor_count.to_string());
            snapshot.insert("tpr".into(), format_f64(profile.verifier_tpr));
            snapshot.insert("fpr".into(), format_f64(profile.verifier_fpr));
            RunBackend::Sim(SimBackend::new(profile))
        }
    };
    snapshot.insert("backend".into(), backend.name().to_string());
    Ok(ResolvedBackend {
        backend,
        temperature,
        max_tokens,
        snapshot,
    })
}

// ---- shared input loading -----------------------------------------------

fn load_questions(path: &Path) -> Result<Vec<Question>> {
    require_file(path, "questions")?;
    let questions: Vec<Question> = read_jsonl(path)?;
    validate_questions(&questions)?;
    Ok(questions)
}

fn load_solutions(path: &Path) -> Result<Vec<Solution>> {
    require_file(path, "solutions")?;
    let mut solutions: Vec<Solution> = read_jsonl(path)?;
    for s in &mut solutions {
        s.ensure_final_answer();
    }
    Ok(solutions)
}

/// Pair every question (in file order) with its solutions (in file order).
fn pair_by_question<'a>(
    questions: &'a [Question],
    solutions: &'a [Solution],
) -> Result<Vec<(&'a Question, Vec<&'a Solution>)>> {
    let index: BTreeMap<&str, usize> = questions
        .iter()
        .enumerate()
        .map(|(i, q)| (q.id.as_str(), i))
        .collect();
    let mut grouped: Vec<(&Question, Vec<&Solution>)> =
        questions.iter().map(|q| (q, Vec::new())).collect();
    for solution in solutions {
        let &at =
            index
                .get(solution.question_id.as_str())
                .ok_or_else(|| Error::UnknownQuestion {
                    question_id: solution.question_id.clone(),
                })?;
        grouped[at].1.push(solution);
    }
    Ok(grouped)
}

// ---- synth ----------------------------------------------------------------

fn cmd_synth(args: SynthArgs) -> Result<()> {
    let resolver = Resolver::load(args.common.config.as_deref())?;
    let seed = resolver.get(args.common.seed, "seed", 0)?;
    let resolved = resolve_backend(&args.backend, &resolver, seed, BackendKind::Mock)?;

    let defaults = SynthConfig::default();
    let ratio_raw = resolver.get(
        args.balance_ratio.clone(),
        "balance_ratio",
        "1:1".to_string(),
    )?;
    let config = SynthConfig {
        attempts_per_pair: resolver.get(args.attempts, "attempts", defaults.attempts_per_pair)?,
        max_per_answer_group: resolver.get(
            args.max_per_group,
            "max_per_group",
            defaults.max_per_answer_group,
        )?,
        difficulty_threshold: resolver.get(
            args.difficulty_threshold,
            "difficulty_threshold",
            defaults.difficulty_threshold,
        )?,
        balance_ratio: parse_ratio(&ratio_raw)?,
        seed,
        temperature: resolved.temperature,
        max_tokens: resolved.max_tokens,
    };
    config.validate()?;

    let questions = load_questions(&args.questions)?;
    let solutions = load_solutions(&args.solutions)?;

    let mut snapshot = resolved.snapshot.clone();
    snapshot.insert("attempts".into(), config.attempts_per_pair.to_string());
    snapshot.insert(
        "max_per_group".into(),
        config.max_per_answer_group.to_string(),
    );
    snapshot.insert(
        "difficulty_threshold".into(),
        format_f64(config.difficulty_threshold),
    );
    snapshot.insert("balance_ratio".into(), ratio_raw.clone());
    snapshot.insert("no_balance".into(), args.no_balance.to_string());
    let manifest = RunManifest::new(
        "synth",
        snapshot,
        &[
            ("questions", args.questions.as_path()),
            ("solutions", args.solutions.as_path()),
        ],
        seed,
    )?;
    manifest.write(&args.common.out_dir, args.common.force)?;

    let outcome = synthesize_dataset(
        &questions,
        &solutions,
        resolved.backend.as_text(),
        &config,
        resolved.backend.workers(),
    )?;
    let sft_path = args.common.out_dir.join("dataset_sft.jsonl");
    let rl_path = args.common.out_dir.join("dataset_rl.jsonl");
    let summary = export_datasets(
        &outcome.records,
        &outcome.accuracies,
        &sft_path,
        &rl_path,
        &config,
        !args.no_balance,
    )?;
    println!(
        "synthesis: {} pairs attempted, {} critiques accepted",
        outcome.attempted_pairs,
        outcome.records.len()
    );
    println!("datasets: {summary}");
    println!("wrote {} and {}", sft_path.display(), rl_path.display());
    Ok(())
}

// ---- verify ---------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let resolver = Resolver::load(args.common.config.as_deref())?;
    let seed = resolver.get(args.common.seed, "seed", 0)?;
    let resolved = resolve_backend(&args.backend, &resolver, seed, BackendKind::Mock)?;
    let m = resolver.get(args.m, "m", DEFAULT_M)?;
    if m == 0 {
        return Err(Error::usage("m must be at least 1"));
    }

    let questions = load_questions(&args.questions)?;
    let solutions = load_solutions(&args.solutions)?;
    let grouped = pair_by_question(&questions, &solutions)?;

    let mut snapshot = resolved.snapshot.clone();
    snapshot.insert("m".into(), m.to_string());
    let manifest = RunManifest::new(
        "verify",
        snapshot,
        &[
            ("questions", args.questions.as_path()),
            ("solutions", args.solutions.as_path()),
        ],
        seed,
    )?;
    manifest.write(&args.common.out_dir, args.common.force)?;

    let critiques = generate_critiques(&grouped, &resolved, m)?;
    let path = args.common.out_dir.join("critiques.jsonl");
    write_jsonl(&critiques, &path)?;
    println!(
        "verified {} solutions with {} critiques each ({} backend); wrote {}",
        critiques.len() / m.max(1),
        m,
        resolved.backend.name(),
        path.display()
    );
    Ok(())
}

/// Generate `m` critiques per (question, solution) pair. Text backends get
/// one request with `n = m`; the simulator draws judgments from the labeled
/// correctness on a per-pair stream.
fn generate_critiques(
    grouped: &[(&Question, Vec<&Solution>)],
    resolved: &ResolvedBackend,
    m: usize,
) -> Result<Vec<Critique>> {
    let mut pairs: Vec<(&Question, usize, &Solution)> = Vec::new();
    for (question, solutions) in grouped {
        for (index, solution) in solutions.iter().enumerate() {
            pairs.push((question, index, solution));
        }
    }
    let per_pair = try_par_map(
        &pairs,
        resolved.backend.workers(),
        |&(question, index, solution)| {
            let solution_ref = SolutionRef {
                question_id: question.id.clone(),
                solution_index: index,
            };
            if let Some(profile) = resolved.backend.sim_profile() {
                let labeled = label_solution(solution, question);
                Ok(simulate_critiques(
                    profile,
                    &question.id,
                    index,
                    labeled.correct.unwrap_or(false),
                    m,
                ))
            } else {
                let request = GenRequest::new(
                    prompts::CRITIQUE_NO_TRUTH,
                    prompts::critique_user_prompt(question, &solution.text, false),
                )
                .with_n(m)
                .with_temperature(resolved.temperature)
                .with_max_tokens(resolved.max_tokens);
                let texts = resolved
                    .backend
                    .as_text()
                    .generate(&request)
                    .map_err(|e| e.for_question(&question.id))?;
                Ok(texts
                    .into_iter()
                    .map(|t| Critique::from_text(solution_ref.clone(), t))
                    .collect())
            }
        },
    )?;
    Ok(per_pair.into_iter().flatten().collect())
}

// ---- vote / sweep ---------------------------------------------------------

struct Assembled {
    records_by_question: BTreeMap<String, Vec<VerificationRecord>>,
    truths: BTreeMap<String, String>,
    /// Question ids in file order, for stable result emission.
    order: Vec<String>,
}

/// Build per-question verification records from a critiques file, or by
/// simulating critiques when none is given and the sim backend is selected.
#[allow(clippy::too_many_arguments)]
fn assemble_records(
    questions: &[Question],
    solutions: &[Solution],
    critiques_path: Option<&Path>,
    backend_args: &BackendArgs,
    resolver: &Resolver,
    seed: u64,
    m: usize,
    snapshot: &mut BTreeMap<String, String>,
) -> Result<Assembled> {
    let grouped = pair_by_question(questions, solutions)?;
    let critiques: Vec<Critique> = match critiques_path {
        Some(path) => {
            require_file(path, "critiques")?;
            read_jsonl(path)?
        }
        None => {
            let kind = resolver.get(backend_args.backend, "backend", BackendKind::Sim)?;
            if kind != BackendKind::Sim {
                return Err(Error::usage(
                    "--critiques is required unless --backend sim generates them on the fly",
                ));
            }
            let profile = resolve_sim_profile(&backend_args.sim, resolver, seed)?;
            snapshot.insert("backend".into(), "sim".into());
            snapshot.insert(
                "solver_accuracy".into(),
                format_f64(profile.solver_accuracy),
            );
            snapshot.insert("distractors".into(), profile.distractor_count.to_string());
            snapshot.insert("tpr".into(), format_f64(profile.verifier_tpr));
            snapshot.insert("fpr".into(), format_f64(profile.verifier_fpr));
            snapshot.insert("m".into(), m.to_string());
            let mut out = Vec::new();
            for (question, sols) in &grouped {
                for (index, solution) in sols.iter().enumerate() {
                    let labeled = label_solution(solution, question);
                    out.extend(simulate_critiques(
                        &profile,
                        &question.id,
                        index,
                        labeled.correct.unwrap_or(false),
                        m,
                    ));
                }
            }
            out
        }
    };

    let mut by_pair: BTreeMap<(String, usize), Vec<Critique>> = BTreeMap::new();
    for critique in critiques {
        by_pair
            .entry((
                critique.solution_ref.question_id.clone(),
                critique.solution_ref.solution_index,
            ))
            .or_default()
            .push(critique);
    }

    let mut records_by_question = BTreeMap::new();
    let mut truths = BTreeMap::new();
    let mut order = Vec::new();
    for (question, sols) in &grouped {
        let mut records = Vec::with_capacity(sols.len());
        for (index, solution) in sols.iter().enumerate() {
            let key = (question.id.clone(), index);
            let critiques = by_pair.remove(&key).ok_or_else(|| {
                Error::backend(format!(
                    "no critiques for solution {index} of question {}",
                    question.id
                ))
            })?;
            records.push(VerificationRecord::new((*solution).clone(), critiques)?);
        }
        truths.insert(question.id.clone(), question.ground_truth_answer.clone());
        records_by_question.insert(question.id.clone(), records);
        order.push(question.id.clone());
    }
    Ok(Assembled {
        records_by_question,
        truths,
        order,
    })
}

fn decide_all(
    assembled: &Assembled,
    config: &VoteConfig,
    baseline: BaselineKind,
) -> (Vec<QuestionResult>, Vec<EvalOutcome>) {
    let mut results = Vec::with_capacity(assembled.order.len());
    let mut outcomes = Vec::with_capacity(assembled.order.len());
    for question_id in &assembled.order {
        let records = &assembled.records_by_question[question_id];
        let result = match baseline {
            BaselineKind::Weighted => vote::decide(question_id, records, config),
            BaselineKind::Majority => vote::decide_majority(question_id, records),
        };
        outcomes.push(EvalOutcome::grade(&result, &assembled.truths[question_id]));
        results.push(result);
    }
    (results, outcomes)
}

fn cmd_vote(args: VoteArgs) -> Result<()> {
    let resolver = Resolver::load(args.common.config.as_deref())?;
    let seed = resolver.get(args.common.seed, "seed", 0)?;
    let config = VoteConfig {
        beta: resolver.get(args.beta, "beta", DEFAULT_BETA)?,
        tau: resolver.get(args.tau, "tau", DEFAULT_TAU)?,
        m_expected: resolver.get(args.m, "m", DEFAULT_M)?,
        n_expected: DEFAULT_N,
    };
    config.validate()?;
    let baseline = resolver.get(args.baseline, "baseline", BaselineKind::Weighted)?;

    let questions = load_questions(&args.questions)?;
    let solutions = load_solutions(&args.solutions)?;

    let mut snapshot = BTreeMap::new();
    snapshot.insert("beta".into(), format_f64(config.beta));
    snapshot.insert("tau".into(), format_f64(config.tau));
    snapshot.insert(
        "baseline".into(),
        match baseline {
            BaselineKind::Weighted => "weighted".to_string(),
            BaselineKind::Majority => "majority".to_string(),
        },
    );
    let assembled = assemble_records(
        &questions,
        &solutions,
        args.critiques.as_deref(),
        &args.backend,
        &resolver,
        seed,
        config.m_expected,
        &mut snapshot,
    )?;

    let mut inputs: Vec<(&str, &Path)> = vec![
        ("questions", args.questions.as_path()),
        ("solutions", args.solutions.as_path()),
    ];
    if let Some(critiques) = args.critiques.as_deref() {
        inputs.push(("critiques", critiques));
    }
    RunManifest::new("vote", snapshot, &inputs, seed)?
        .write(&args.common.out_dir, args.common.force)?;

    let (results, outcomes) = decide_all(&assembled, &config, baseline);
    let title = match baseline {
        BaselineKind::Weighted => "weighted vote report",
        BaselineKind::Majority => "majority baseline report",
    };
    let report = metrics::summary_report(title, &outcomes, &config)?;
    write_jsonl(&results, &args.common.out_dir.join("results.jsonl"))?;
    let report_path = args.common.out_dir.join("report.txt");
    std::fs::write(&report_path, &report).map_err(|e| Error::io(&report_path, e))?;
    print!("{report}");
    Ok(())
}

fn build_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&end) || start > end {
        return Err(Error::InvalidTauGrid {
            reason: format!("bounds [{start}, {end}] must satisfy 0 <= start <= end <= 1"),
        });
    }
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::InvalidTauGrid {
            reason: format!("step must be positive, got {step}"),
        });
    }
    let count = ((end - start) / step + 1e-9).floor() as usize;
    let grid: Vec<f64> = (0..=count)
        .map(|i| (start + i as f64 * step).min(1.0))
        .collect();
    metrics::validate_tau_grid(&grid)?;
    Ok(grid)
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let resolver = Resolver::load(args.common.config.as_deref())?;
    let seed = resolver.get(args.common.seed, "seed", 0)?;
    let config = VoteConfig {
        beta: resolver.get(args.beta, "beta", DEFAULT_BETA)?,
        tau: DEFAULT_TAU,
        m_expected: resolver.get(args.m, "m", DEFAULT_M)?,
        n_expected: DEFAULT_N,
    };
    config.validate()?;
    let start = resolver.get(args.tau_start, "tau_start", 0.0)?;
    let end = resolver.get(args.tau_end, "tau_end", 1.0)?;
    let step = resolver.get(args.tau_step, "tau_step", 0.05)?;
    let grid = build_grid(start, end, step)?;

    let questions = load_questions(&args.questions)?;
    let solutions = load_solutions(&args.solutions)?;

    let mut snapshot = BTreeMap::new();
    snapshot.insert("beta".into(), format_f64(config.beta));
    snapshot.insert("tau_start".into(), format_f64(start));
    snapshot.insert("tau_end".into(), format_f64(end));
    snapshot.insert("tau_step".into(), format_f64(step));
    let assembled = assemble_records(
        &questions,
        &solutions,
        args.critiques.as_deref(),
        &args.backend,
        &resolver,
        seed,
        config.m_expected,
        &mut snapshot,
    )?;

    let mut inputs: Vec<(&str, &Path)> = vec![
        ("questions", args.questions.as_path()),
        ("solutions", args.solutions.as_path()),
    ];
    if let Some(critiques) = args.critiques.as_deref() {
        inputs.push(("critiques", critiques));
    }
    RunManifest::new("sweep", snapshot, &inputs, seed)?
        .write(&args.common.out_dir, args.common.force)?;

    let points = metrics::honesty_accuracy_curve(
        &assembled.records_by_question,
        &assembled.truths,
        &config,
        &grid,
    )?;
    let csv_path = args.common.out_dir.join("curve.csv");
    metrics::write_curve_csv(&points, &csv_path)?;
    if args.plot {
        let svg_path = args.common.out_dir.join("curve.svg");
        std::fs::write(&svg_path, crate::plot::render_curve_svg(&points))
            .map_err(|e| Error::io(&svg_path, e))?;
    }
    print!("{}", metrics::curve_table(&points));
    println!("wrote {}", csv_path.display());
    Ok(())
}

// ---- sim ------------------------------------------------------------------

fn cmd_sim(args: SimArgs) -> Result<()> {
    let resolver = Resolver::load(args.common.config.as_deref())?;
    let seed = resolver.get(args.common.seed, "seed", 0)?;
    let profile = resolve_sim_profile(&args.profile, &resolver, seed)?;
    let num_questions = resolver.get(args.num_questions, "num_questions", 50)?;
    let n = resolver.get(args.n, "n", DEFAULT_N)?;
    let m = resolver.get(args.m, "m", DEFAULT_M)?;
    if num_questions == 0 || n == 0 || m == 0 {
        return Err(Error::usage("num-questions, n, and m must be at least 1"));
    }
    let config = VoteConfig {
        beta: resolver.get(args.beta, "beta", DEFAULT_BETA)?,
        tau: resolver.get(args.tau, "tau", DEFAULT_TAU)?,
        m_expected: m,
        n_expected: n,
    };
    config.validate()?;
    let temperature = resolver.get(args.temperature, "temperature", DEFAULT_TEMPERATURE)?;

    let mut snapshot = BTreeMap::new();
    snapshot.insert("backend".into(), "sim".into());
    snapshot.insert("beta".into(), format_f64(config.beta));
    snapshot.insert("tau".into(), format_f64(config.tau));
    snapshot.insert("m".into(), m.to_string());
    snapshot.insert("n".into(), n.to_string());
    snapshot.insert("num_questions".into(), num_questions.to_string());
    snapshot.insert("temperature".into(), format_f64(temperature));
    snapshot.insert(
        "solver_accuracy".into(),
        format_f64(profile.solver_accuracy),
    );
    snapshot.insert("distractors".into(), profile.distractor_count.to_string());
    snapshot.insert("tpr".into(), format_f64(profile.verifier_tpr));
    snapshot.insert("fpr".into(), format_f64(profile.verifier_fpr));
    RunManifest::new("sim", snapshot, &[], seed)?.write(&args.common.out_dir, args.common.force)?;

    let mut questions = Vec::with_capacity(num_questions);
    let mut all_solutions = Vec::new();
    let mut all_critiques = Vec::new();
    let mut records_by_question = BTreeMap::new();
    let mut truths = BTreeMap::new();
    let mut order = Vec::with_capacity(num_questions);
    let mut labeled_by_question: BTreeMap<String, Vec<Solution>> = BTreeMap::new();
    for i in 0..num_questions {
        let question_id = format!("sim-{i:05}");
        let sim = simulate_question(&profile, &question_id, n, m);
        truths.insert(
            question_id.clone(),
            sim.question.ground_truth_answer.clone(),
        );
        questions.push(sim.question);
        for record in &sim.records {
            all_solutions.push(record.solution.clone());
            all_critiques.extend(record.critiques.iter().cloned());
        }
        labeled_by_question.insert(
            question_id.clone(),
            sim.records.iter().map(|r| r.solution.clone()).collect(),
        );
        records_by_question.insert(question_id.clone(), sim.records);
        order.push(question_id);
    }
    let assembled = Assembled {
        records_by_question,
        truths,
        order,
    };

    let out = &args.common.out_dir;
    write_jsonl(&questions, &out.join("questions.jsonl"))?;
    write_jsonl(&all_solutions, &out.join("solutions.jsonl"))?;
    write_jsonl(&all_critiques, &out.join("critiques.jsonl"))?;

    let (results, weighted_outcomes) = decide_all(&assembled, &config, BaselineKind::Weighted);
    let (_, majority_outcomes) = decide_all(&assembled, &config, BaselineKind::Majority);
    write_jsonl(&results, &out.join("results.jsonl"))?;

    let weighted_acc = metrics::accuracy(&weighted_outcomes)?;
    let majority_acc = metrics::accuracy(&majority_outcomes)?;
    let pass1 = metrics::pass_at_1_avg(&labeled_by_question, n)?;

    let mut report = String::new();
    report.push_str("simulation report\n");
    report.push_str(&format!(
        "  profile: solver_accuracy={} distractors={} tpr={} fpr={} seed={}\n",
        profile.solver_accuracy,
        profile.distractor_count,
        profile.verifier_tpr,
        profile.verifier_fpr,
        seed
    ));
    report.push_str(&format!(
        "  questions: {num_questions}  candidates per question: {n}  critiques per solution: {m}\n\n"
    ));
    report.push_str(&metrics::summary_report(
        "weighted vote",
        &weighted_outcomes,
        &config,
    )?);
    report.push('\n');
    report.push_str(&metrics::summary_report(
        &format!("majority@{n} baseline"),
        &majority_outcomes,
        &config,
    )?);
    report.push('\n');
    report.push_str(&format!("  pass@1 (avg@{n}):      {pass1:.4}\n"));
    report.push_str(&format!(
        "  weighted - majority accuracy margin: {:+.4}\n",
        weighted_acc - majority_acc
    ));

    let grid = metrics::default_tau_grid();
    let points = metrics::honesty_accuracy_curve(
        &assembled.records_by_question,
        &assembled.truths,
        &config,
        &grid,
    )?;
    metrics::write_curve_csv(&points, &out.join("curve.csv"))?;

    let report_path = out.join("report.txt");
    std::fs::write(&report_path, &report).map_err(|e| Error::io(&report_path, e))?;
    print!("{report}");
    println!("wrote {}", out.display());
    Ok(())
}

// ---- audit ----------------------------------------------------------------

fn cmd_audit(args: AuditArgs) -> Result<()> {
    let resolver = Resolver::load(args.common.config.as_deref())?;
    let seed = resolver.get(args.common.seed, "seed", 0)?;
    let n = resolver.get(args.n, "n", 30)?;
    require_file(&args.dataset, "dataset")?;
    let questions = load_questions(&args.questions)?;
    let records: Vec<crate::model::DatasetRecord> = read_jsonl(&args.dataset)?;

    let mut snapshot = BTreeMap::new();
    snapshot.insert("n".into(), n.to_string());
    RunManifest::new(
        "audit",
        snapshot,
        &[
            ("dataset", args.dataset.as_path()),
            ("questions", args.questions.as_path()),
        ],
        seed,
    )?
    .write(&args.common.out_dir, args.common.force)?;

    let prompts = quality_audit_sample(&records, &question_map(&questions), n, seed)?;
    let rows: Vec<AuditPrompt> = prompts
        .into_iter()
        .map(|prompt| AuditPrompt { prompt })
        .collect();
    let path = args.common.out_dir.join("audit_prompts.jsonl");
    write_jsonl(&rows, &path)?;
    println!(
        "sampled {} of {} records into {}",
        rows.len(),
        records.len(),
        path.display()
    );
    Ok(())
}

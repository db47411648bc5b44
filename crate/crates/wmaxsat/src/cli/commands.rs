//! Implementations of the four subcommands, plus the reusable sampling and
//! comparison helpers behind `analyze`.

use super::config::{expand_pattern, resolve_params, ConfigFile, OptimaTable};
use super::{AnalyzeArgs, BenchArgs, CliError, OutputFormat, SolveArgs, VerifyArgs};
use crate::backbone::PseudoBackboneFrequencies;
use crate::bgls::{run_bgls, run_bgls_resumed, BglsParams, RunReport};
use crate::formula::{parse_wcnf, Assignment, Literal, WeightedInstance};
use crate::gen::random_verify_instance;
use crate::oracle::{
    exact_optima, fix_literal, reduce_by_backbone, verify_lemma1, verify_lemma2, OracleError,
    DEFAULT_CAP,
};
use crate::rng::{derive_seed, try_rng};
use crate::walksat::{Searcher, TryParams, TryResult};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/* --- shared helpers ----------------------------------------------------- */

/// Caps how far exact enumeration may be pushed: 2^30 masks is already on
/// the order of a CPU-minute per instance, and the bit arithmetic is only
/// exercised below 32 variables.
const MAX_CAP: u32 = 30;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Reads and parses an instance, printing parse warnings to stderr. Returns
/// the instance and its display name (the file stem).
pub fn load_instance(path: &Path) -> Result<(WeightedInstance, String), CliError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let parsed = parse_wcnf(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        source: e,
    })?;
    for warning in &parsed.warnings {
        eprintln!("warning: {}: {warning}", path.display());
    }
    Ok((parsed.instance, instance_name(path)))
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs `f` on a pool with `jobs` worker threads (None: the global default).
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Contract(format!("cannot build a {n}-thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Writes to `out` when given, otherwise prints to stdout.
fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(io_err(path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Contract(format!("cannot serialize report: {e}")))
}

fn resolve_cap(cap: Option<u32>) -> Result<u32, CliError> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    if cap > MAX_CAP {
        return Err(CliError::Contract(format!(
            "cap {cap} is above the supported maximum {MAX_CAP}"
        )));
    }
    Ok(cap)
}

/// (optimum − best) / optimum · 100; negative means best exceeds the table.
pub fn gap_percent(optimum: u64, best: u64) -> f64 {
    (optimum as i128 - best as i128) as f64 / optimum as f64 * 100.0
}

/// (best − baseline) / optimum · 100, the headroom recovered over a baseline.
pub fn improvement_percent(optimum: u64, baseline: u64, best: u64) -> f64 {
    (best as i128 - baseline as i128) as f64 / optimum as f64 * 100.0
}

fn fmt_opt_u64(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn fmt_opt_pct(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4}")).unwrap_or_default()
}

/* --- solve --------------------------------------------------------------- */

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub path: String,
    pub name: String,
    pub num_variables: u32,
    pub num_clauses: usize,
    pub total_weight: u64,
}

impl InstanceMeta {
    fn new(path: &Path, name: &str, instance: &WeightedInstance) -> Self {
        InstanceMeta {
            path: path.display().to_string(),
            name: name.to_string(),
            num_variables: instance.num_variables(),
            num_clauses: instance.clauses().len(),
            total_weight: instance.total_weight(),
        }
    }
}

/// The `solve` report: instance metadata, table lookups, and the run itself.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub instance: InstanceMeta,
    /// Known optimum from the optima table, when available.
    pub optimum: Option<u64>,
    /// (optimum − best_weight) / optimum · 100, when the optimum is known.
    pub gap_percent: Option<f64>,
    #[serde(flatten)]
    pub run: RunReport,
}

pub(super) fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let config = ConfigFile::load_opt(args.config.as_ref())?;
    let params = resolve_params(&args.search, &config)?;
    let jobs = args.jobs.or(config.jobs);
    let table = OptimaTable::load_opt(args.optima_table.as_ref().or(config.optima_table.as_ref()))?;
    let (instance, name) = load_instance(&args.instance)?;

    let initial = args
        .freqs_in
        .as_ref()
        .map(|path| load_frequencies(path, &instance))
        .transpose()?;
    if initial.is_some() && params.guided_tries == 0 {
        return Err(CliError::Contract(
            "--freqs-in needs at least one guided try (n2 >= 1)".into(),
        ));
    }

    let run = with_jobs(jobs, || match initial {
        Some(freqs) => run_bgls_resumed(&instance, &params, freqs),
        None => run_bgls(&instance, &params),
    })?;

    if let Some(path) = &args.freqs_out {
        std::fs::write(path, to_json(&run.frequencies)?).map_err(io_err(path))?;
    }

    let optimum = table.get(&name).map(|row| row.optimum);
    let report = SolveReport {
        instance: InstanceMeta::new(&args.instance, &name, &instance),
        optimum,
        gap_percent: optimum.map(|o| gap_percent(o, run.best_weight)),
        run,
    };

    let json = to_json(&report)?;
    if let Some(path) = &args.out {
        std::fs::write(path, &json).map_err(io_err(path))?;
    }
    match args.format {
        OutputFormat::Json => print!("{json}"),
        OutputFormat::Csv => {
            println!("instance,best_weight,optimum,gap_pct,millis");
            println!(
                "{},{},{},{},{}",
                report.instance.name,
                report.run.best_weight,
                fmt_opt_u64(report.optimum),
                fmt_opt_pct(report.gap_percent),
                report.run.timing.total_ms
            );
        }
        OutputFormat::Text => print!("{}", solve_summary(&report)),
    }
    Ok(())
}

fn load_frequencies(
    path: &Path,
    instance: &WeightedInstance,
) -> Result<PseudoBackboneFrequencies, CliError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let freqs: PseudoBackboneFrequencies = serde_json::from_str(&text).map_err(|e| {
        CliError::Contract(format!("bad frequency file {}: {e}", path.display()))
    })?;
    if freqs.var_true_counts().len() != instance.num_variables() as usize
        || freqs.clause_sat_counts().len() != instance.clauses().len()
    {
        return Err(CliError::Contract(format!(
            "frequency file {} does not match the instance shape",
            path.display()
        )));
    }
    Ok(freqs)
}

fn solve_summary(report: &SolveReport) -> String {
    let mut s = String::new();
    let meta = &report.instance;
    let run = &report.run;
    let _ = writeln!(
        s,
        "instance    {} ({} variables, {} clauses, total weight {})",
        meta.name, meta.num_variables, meta.num_clauses, meta.total_weight
    );
    let _ = writeln!(s, "best        {}", run.best_weight);
    match (report.optimum, report.gap_percent) {
        (Some(opt), Some(gap)) => {
            let _ = writeln!(s, "optimum     {opt} (gap {gap:.4}%)");
        }
        _ => {
            let _ = writeln!(s, "optimum     unknown (no table entry)");
        }
    }
    let _ = writeln!(
        s,
        "tries       {} ({} sampling + {} guided), up to {} flips each",
        run.tries.len(),
        run.params.sampling_tries,
        run.params.guided_tries,
        run.params.max_flips
    );
    let _ = writeln!(s, "seed        {}", run.params.master_seed);
    let _ = writeln!(
        s,
        "time        {} ms (sampling {}, guided {})",
        run.timing.total_ms, run.timing.sampling_ms, run.timing.guided_ms
    );
    let _ = writeln!(s, "assignment  {}", run.best_assignment.to_bitstring());
    s
}

/* --- bench --------------------------------------------------------------- */

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub rep: u32,
    pub seed: u64,
    pub best_weight: u64,
    pub optimum: Option<u64>,
    pub gap_pct: Option<f64>,
    pub improvement_pct: Option<f64>,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchSummary {
    pub instances: usize,
    pub reps: u32,
    pub rows: usize,
    /// Instances with a table optimum.
    pub optima_known: usize,
    /// Instances whose best over all reps equals the table optimum.
    pub optima_reached: usize,
    /// Mean over known instances of the best-of-reps gap.
    pub mean_gap_pct: Option<f64>,
    /// Mean over instances with a baseline of the best-of-reps improvement.
    pub mean_improvement_pct: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summary: BenchSummary,
}

pub(super) fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let config = ConfigFile::load_opt(args.config.as_ref())?;
    let params = resolve_params(&args.search, &config)?;
    let reps = args.reps.or(config.repetitions).unwrap_or(1);
    if reps == 0 {
        return Err(CliError::Contract("reps must be at least 1".into()));
    }
    let jobs = args.jobs.or(config.jobs);
    let format = args.format.or(config.format).unwrap_or(OutputFormat::Csv);
    let out = args.out.clone().or_else(|| config.out.clone());
    let table = OptimaTable::load_opt(args.optima_table.as_ref().or(config.optima_table.as_ref()))?;

    let patterns: Vec<String> = if args.instances.is_empty() {
        config.instances.clone().unwrap_or_default()
    } else {
        args.instances.clone()
    };
    let mut paths: Vec<PathBuf> = Vec::new();
    for pattern in &patterns {
        paths.extend(expand_pattern(pattern)?);
    }

    let run_all = || -> Result<Vec<BenchRow>, CliError> {
        let mut rows = Vec::with_capacity(paths.len() * reps as usize);
        for (index, path) in paths.iter().enumerate() {
            let (instance, name) = load_instance(path)?;
            let known = table.get(&name);
            for rep in 0..reps {
                let seed = derive_seed(params.master_seed, index as u64, rep as u64);
                let run = run_bgls(
                    &instance,
                    &BglsParams {
                        master_seed: seed,
                        ..params
                    },
                );
                rows.push(BenchRow {
                    instance: name.clone(),
                    rep,
                    seed,
                    best_weight: run.best_weight,
                    optimum: known.map(|k| k.optimum),
                    gap_pct: known.map(|k| gap_percent(k.optimum, run.best_weight)),
                    improvement_pct: known.and_then(|k| {
                        k.baseline
                            .map(|b| improvement_percent(k.optimum, b, run.best_weight))
                    }),
                    millis: run.timing.total_ms,
                });
            }
        }
        Ok(rows)
    };
    let rows = with_jobs(jobs, run_all)??;

    let summary = summarize_bench(&rows, paths.len(), reps, &table);
    let report = BenchReport { rows, summary };
    let text = match format {
        OutputFormat::Json => to_json(&report)?,
        _ => bench_csv(&report),
    };
    emit(out.as_ref(), &text)
}

fn summarize_bench(
    rows: &[BenchRow],
    instances: usize,
    reps: u32,
    table: &OptimaTable,
) -> BenchSummary {
    let mut optima_known = 0usize;
    let mut optima_reached = 0usize;
    let mut gaps: Vec<f64> = Vec::new();
    let mut improvements: Vec<f64> = Vec::new();
    for group in rows.chunks(reps as usize) {
        let name = &group[0].instance;
        let best = group.iter().map(|r| r.best_weight).max().unwrap();
        if let Some(known) = table.get(name) {
            optima_known += 1;
            if best == known.optimum {
                optima_reached += 1;
            }
            gaps.push(gap_percent(known.optimum, best));
            if let Some(baseline) = known.baseline {
                improvements.push(improvement_percent(known.optimum, baseline, best));
            }
        }
    }
    let mean = |v: &[f64]| {
        if v.is_empty() {
            None
        } else {
            Some(v.iter().sum::<f64>() / v.len() as f64)
        }
    };
    BenchSummary {
        instances,
        reps,
        rows: rows.len(),
        optima_known,
        optima_reached,
        mean_gap_pct: mean(&gaps),
        mean_improvement_pct: mean(&improvements),
    }
}

fn bench_csv(report: &BenchReport) -> String {
    let mut s = String::from("instance,rep,seed,best_weight,optimum,gap_pct,improvement_pct,millis\n");
    for r in &report.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.instance,
            r.rep,
            r.seed,
            r.best_weight,
            fmt_opt_u64(r.optimum),
            fmt_opt_pct(r.gap_pct),
            fmt_opt_pct(r.improvement_pct),
            r.millis
        );
    }
    let sum = &report.summary;
    let _ = write!(
        s,
        "# instances={} reps={} rows={} optima_known={} optima_reached={}",
        sum.instances, sum.reps, sum.rows, sum.optima_known, sum.optima_reached
    );
    if let Some(g) = sum.mean_gap_pct {
        let _ = write!(s, " mean_gap_pct={g:.4}");
    }
    if let Some(i) = sum.mean_improvement_pct {
        let _ = write!(s, " mean_improvement_pct={i:.4}");
    }
    s.push('\n');
    s
}

/* --- analyze ------------------------------------------------------------- */

/// Runs `tries` independent sampling tries (streams `0..tries` off the master
/// seed) and returns each try's best.
pub fn sample_local_optima(
    instance: &WeightedInstance,
    try_params: &TryParams,
    tries: u32,
    master_seed: u64,
) -> Vec<TryResult> {
    let searcher = Searcher::new(instance);
    (0..tries)
        .into_par_iter()
        .map(|i| {
            let mut rng = try_rng(master_seed, i as u64);
            searcher.run_try(try_params, &mut rng, None)
        })
        .collect()
}

/// Normalized Hamming distance between two equal-length assignments: the
/// fraction of variables on which they disagree, in [0, 1].
pub fn normalized_distance(a: &Assignment, b: &Assignment) -> f64 {
    assert_eq!(a.len(), b.len(), "assignments must have equal length");
    assert!(a.len() > 0, "assignments must be nonempty");
    let differing = (1..=a.len() as u32)
        .filter(|&v| a.is_true(v) != b.is_true(v))
        .count();
    differing as f64 / a.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyzeMode {
    /// Reference computed by exact enumeration.
    Exact,
    /// Reference supplied by the caller.
    Reference,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AnalyzeRow {
    pub try_index: u32,
    pub weight: u64,
    pub distance: f64,
}

/// Distances of sampled local optima to a reference assignment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Analysis {
    pub rows: Vec<AnalyzeRow>,
    /// Fraction of variables whose per-variable majority over the samples
    /// matches the reference; a tie counts as a mismatch.
    pub majority_match: f64,
    pub mean_distance: f64,
}

/// Compares sampled local optima against a reference assignment.
pub fn analyze_samples(samples: &[TryResult], reference: &Assignment) -> Analysis {
    assert!(!samples.is_empty(), "need at least one sample");
    let rows: Vec<AnalyzeRow> = samples
        .iter()
        .enumerate()
        .map(|(i, s)| AnalyzeRow {
            try_index: i as u32,
            weight: s.best_weight,
            distance: normalized_distance(&s.best_assignment, reference),
        })
        .collect();
    let mean_distance = rows.iter().map(|r| r.distance).sum::<f64>() / rows.len() as f64;
    let n = reference.len() as u32;
    let mut matches = 0usize;
    for v in 1..=n {
        let true_count = samples
            .iter()
            .filter(|s| s.best_assignment.is_true(v))
            .count();
        let majority = match (2 * true_count).cmp(&samples.len()) {
            Ordering::Greater => Some(true),
            Ordering::Less => Some(false),
            Ordering::Equal => None,
        };
        if majority == Some(reference.is_true(v)) {
            matches += 1;
        }
    }
    Analysis {
        rows,
        majority_match: matches as f64 / n as f64,
        mean_distance,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub instance: String,
    pub mode: AnalyzeMode,
    /// The exact optimum weight (exact mode only).
    pub optimum_weight: Option<u64>,
    pub tries: u32,
    pub mean_distance: f64,
    pub majority_match: f64,
    pub rows: Vec<AnalyzeRow>,
}

pub(super) fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    if args.tries == 0 {
        return Err(CliError::Contract("tries must be at least 1".into()));
    }
    let probe = BglsParams {
        sampling_tries: args.tries,
        guided_tries: 0,
        max_flips: args.num.unwrap_or(400),
        initial_noise: args.p0.unwrap_or(0.0),
        noise_step: args.phi.unwrap_or(0.2),
        master_seed: args.seed.unwrap_or(0),
        break_metric: args.break_metric.unwrap_or_default(),
        time_budget_secs: None,
    };
    probe.validate().map_err(CliError::Contract)?;
    let cap = resolve_cap(args.cap)?;
    let format = args.format.unwrap_or(OutputFormat::Csv);
    let (instance, name) = load_instance(&args.instance)?;

    let (mode, reference, optimum_weight) = match &args.reference {
        Some(path) => {
            let reference = load_reference(path, instance.num_variables())?;
            (AnalyzeMode::Reference, reference, None)
        }
        None => match exact_optima(&instance, cap) {
            Ok(optima) => {
                let weight = *optima.optimal_weight();
                (AnalyzeMode::Exact, optima.assignment(0), Some(weight))
            }
            Err(OracleError::CapacityExceeded { num_variables, cap }) => {
                return Err(CliError::MissingReference(format!(
                    "{num_variables} variables exceed the exact cap {cap}; \
                     pass --reference or raise --cap"
                )));
            }
        },
    };

    let try_params = TryParams {
        max_flips: probe.max_flips,
        initial_noise: probe.initial_noise,
        noise_step: probe.noise_step,
        break_metric: probe.break_metric,
    };
    let samples = with_jobs(args.jobs, || {
        sample_local_optima(&instance, &try_params, args.tries, probe.master_seed)
    })?;
    let analysis = analyze_samples(&samples, &reference);

    let report = AnalyzeReport {
        instance: name,
        mode,
        optimum_weight,
        tries: args.tries,
        mean_distance: analysis.mean_distance,
        majority_match: analysis.majority_match,
        rows: analysis.rows,
    };
    let text = match format {
        OutputFormat::Json => to_json(&report)?,
        _ => analyze_csv(&report),
    };
    emit(args.out.as_ref(), &text)
}

fn load_reference(path: &Path, num_variables: u32) -> Result<Assignment, CliError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let line = text.lines().next().unwrap_or("").trim();
    let assignment = Assignment::from_bitstring(line).ok_or_else(|| {
        CliError::Contract(format!(
            "{}: expected a first line of '0'/'1' characters",
            path.display()
        ))
    })?;
    if assignment.len() != num_variables as usize {
        return Err(CliError::Contract(format!(
            "{}: reference has {} bits but the instance has {} variables",
            path.display(),
            assignment.len(),
            num_variables
        )));
    }
    Ok(assignment)
}

fn analyze_csv(report: &AnalyzeReport) -> String {
    let mut s = String::from("try,weight,distance\n");
    for row in &report.rows {
        let _ = writeln!(s, "{},{},{:.4}", row.try_index, row.weight, row.distance);
    }
    let mode = match report.mode {
        AnalyzeMode::Exact => "exact",
        AnalyzeMode::Reference => "reference",
    };
    let _ = write!(s, "# instance={} mode={mode}", report.instance);
    if let Some(w) = report.optimum_weight {
        let _ = write!(s, " optimum={w}");
    }
    let _ = writeln!(
        s,
        " tries={} mean_distance={:.4} majority_match={:.4}",
        report.tries, report.mean_distance, report.majority_match
    );
    s
}

/* --- verify -------------------------------------------------------------- */

/// One instance's oracle checks. Every field must end up true.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct VerifyChecks {
    /// The biased instance has a unique optimum and pairwise-distinct totals.
    pub biased_uniqueness: bool,
    /// The biased optimum is an optimum of the original instance.
    pub biased_optimum_optimal: bool,
    /// For every backbone literal ℓ: offset(ℓ) + opt(reduced) = opt(original).
    pub fixing_preserves_optimum: bool,
    /// Iterated biasing reconstructs an exactly optimal assignment.
    pub reduction_reaches_optimum: bool,
}

impl VerifyChecks {
    pub fn all_passed(&self) -> bool {
        self.biased_uniqueness
            && self.biased_optimum_optimal
            && self.fixing_preserves_optimum
            && self.reduction_reaches_optimum
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub name: String,
    pub num_variables: u32,
    pub num_clauses: usize,
    /// True when the instance is beyond the exact cap and was not checked.
    pub skipped: bool,
    pub checks: Option<VerifyChecks>,
    pub passed: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub cap: u32,
    pub seed: u64,
    pub instances: Vec<VerifyRecord>,
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
    pub passed: bool,
}

/// Runs every oracle check on one instance (which must be within the cap).
pub fn verify_instance(instance: &WeightedInstance, cap: u32) -> Result<VerifyChecks, OracleError> {
    let biased_uniqueness = verify_lemma1(instance, cap)?;
    let biased_optimum_optimal = verify_lemma2(instance, cap)?;

    let optima = exact_optima(instance, cap)?;
    let optimum = *optima.optimal_weight();
    let backbone = exact_backbone_checks(instance, cap, optimum)?;
    let reduction = reduce_by_backbone(instance, cap)?;
    let reduction_reaches_optimum = reduction.weight == optimum
        && reduction.steps.len() == instance.num_variables() as usize
        && reduction
            .steps
            .iter()
            .map(|s| s.satisfied_weight_offset)
            .sum::<u64>()
            == optimum;

    Ok(VerifyChecks {
        biased_uniqueness,
        biased_optimum_optimal,
        fixing_preserves_optimum: backbone,
        reduction_reaches_optimum,
    })
}

fn exact_backbone_checks(
    instance: &WeightedInstance,
    cap: u32,
    optimum: u64,
) -> Result<bool, OracleError> {
    let backbone = crate::oracle::exact_backbone(instance, cap)?;
    for (variable, value) in backbone.fixed_literals() {
        let fix = fix_literal(instance, Literal::new(variable, !value));
        let reduced_optimum = if fix.reduced.num_variables() == 0 {
            0
        } else {
            *exact_optima(&fix.reduced, cap)?.optimal_weight()
        };
        if fix.satisfied_weight_offset + reduced_optimum != optimum {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let cap = resolve_cap(args.cap)?;
    let seed = args.seed.unwrap_or(0);
    if args.random == Some(0) {
        return Err(CliError::Contract("--random must be at least 1".into()));
    }
    let random = match (args.instances.is_empty(), args.random) {
        (true, None) => 20,
        (_, n) => n.unwrap_or(0),
    };

    let mut targets: Vec<(String, WeightedInstance)> = Vec::new();
    for path in &args.instances {
        let (instance, name) = load_instance(path)?;
        targets.push((name, instance));
    }
    for i in 0..random {
        let mut rng = try_rng(seed, i as u64);
        targets.push((
            format!("random-{seed}-{i:03}"),
            random_verify_instance(&mut rng),
        ));
    }

    let records: Vec<VerifyRecord> = targets
        .into_par_iter()
        .map(|(name, instance)| {
            let num_variables = instance.num_variables();
            let num_clauses = instance.clauses().len();
            match verify_instance(&instance, cap) {
                Ok(checks) => VerifyRecord {
                    name,
                    num_variables,
                    num_clauses,
                    skipped: false,
                    checks: Some(checks),
                    passed: Some(checks.all_passed()),
                },
                Err(OracleError::CapacityExceeded { .. }) => VerifyRecord {
                    name,
                    num_variables,
                    num_clauses,
                    skipped: true,
                    checks: None,
                    passed: None,
                },
            }
        })
        .collect();

    let checked = records.iter().filter(|r| !r.skipped).count();
    let skipped = records.len() - checked;
    let failed = records.iter().filter(|r| r.passed == Some(false)).count();
    for record in records.iter().filter(|r| r.skipped) {
        eprintln!(
            "warning: {}: {} variables exceed the exact cap {cap}; skipped",
            record.name, record.num_variables
        );
    }
    let report = VerifyReport {
        cap,
        seed,
        instances: records,
        checked,
        skipped,
        failed,
        passed: failed == 0,
    };
    emit(args.out.as_ref(), &to_json(&report)?)?;
    eprintln!("verify: {checked} checked, {skipped} skipped, {failed} failed");
    if failed > 0 {
        return Err(CliError::ChecksFailed { failed, checked });
    }
    Ok(())
}

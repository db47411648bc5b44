//! Config files, parameter resolution and the known-optima table.
//!
//! Every search flag has a TOML mirror; precedence is flag > config file >
//! built-in default.

use super::CliError;
use crate::bgls::BglsParams;
use crate::walksat::BreakMetric;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// TOML mirror of the command-line flags plus campaign-only fields.
#[derive(Deserialize, Default, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n1: Option<u32>,
    pub n2: Option<u32>,
    pub num: Option<u32>,
    pub p0: Option<f64>,
    pub phi: Option<f64>,
    pub seed: Option<u64>,
    pub break_metric: Option<BreakMetric>,
    pub cap: Option<u32>,
    pub jobs: Option<usize>,
    pub optima_table: Option<PathBuf>,
    pub time_budget_secs: Option<f64>,
    /// Campaign instances: paths, or patterns with `*` in the file name.
    pub instances: Option<Vec<String>>,
    pub repetitions: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Option<super::OutputFormat>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Contract(format!("cannot read config {}: {e}", path.display()))
        })?;
        toml::from_str(&text)
            .map_err(|e| CliError::Contract(format!("bad config {}: {e}", path.display())))
    }

    pub fn load_opt(path: Option<&PathBuf>) -> Result<Self, CliError> {
        match path {
            Some(p) => Self::load(p),
            None => Ok(ConfigFile::default()),
        }
    }
}

/// Search flags shared by `solve` and (as overrides) `bench`.
#[derive(clap::Args, Debug, Clone, Default)]
pub struct SearchArgs {
    /// Sampling (phase 1) tries.
    #[arg(long)]
    pub n1: Option<u32>,
    /// Guided (phase 2) tries.
    #[arg(long)]
    pub n2: Option<u32>,
    /// Try length: a try performs up to num−1 flips.
    #[arg(long)]
    pub num: Option<u32>,
    /// Initial noise probability.
    #[arg(long)]
    pub p0: Option<f64>,
    /// Noise adjustment step in (0,1).
    #[arg(long)]
    pub phi: Option<f64>,
    /// Master seed; one RNG stream per try is derived from it.
    #[arg(long, env = "WMAXSAT_SEED")]
    pub seed: Option<u64>,
    /// Break metric: count | weight.
    #[arg(long)]
    pub break_metric: Option<BreakMetric>,
    /// Wall-clock budget in seconds (sequential tries, not reproducible).
    #[arg(long)]
    pub time_budget_secs: Option<f64>,
}

/// Flag > config > default, then validated.
pub fn resolve_params(args: &SearchArgs, file: &ConfigFile) -> Result<BglsParams, CliError> {
    let defaults = BglsParams::default();
    let params = BglsParams {
        sampling_tries: args.n1.or(file.n1).unwrap_or(defaults.sampling_tries),
        guided_tries: args.n2.or(file.n2).unwrap_or(defaults.guided_tries),
        max_flips: args.num.or(file.num).unwrap_or(defaults.max_flips),
        initial_noise: args.p0.or(file.p0).unwrap_or(defaults.initial_noise),
        noise_step: args.phi.or(file.phi).unwrap_or(defaults.noise_step),
        master_seed: args.seed.or(file.seed).unwrap_or(defaults.master_seed),
        break_metric: args
            .break_metric
            .or(file.break_metric)
            .unwrap_or(defaults.break_metric),
        time_budget_secs: args.time_budget_secs.or(file.time_budget_secs),
    };
    params.validate().map_err(CliError::Contract)?;
    Ok(params)
}

/// One row of the known-optima table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimaRow {
    pub optimum: u64,
    pub baseline: Option<u64>,
}

/// `instance,optimum[,baseline]` CSV keyed by instance name (file stem).
#[derive(Clone, Debug, Default)]
pub struct OptimaTable {
    rows: BTreeMap<String, OptimaRow>,
}

impl OptimaTable {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let mut rows = BTreeMap::new();
        let mut first_data_line = true;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(CliError::Contract(format!(
                    "{origin}:{}: expected `instance,optimum[,baseline]`",
                    lineno + 1
                )));
            }
            let is_header = first_data_line && fields[1].parse::<u64>().is_err();
            first_data_line = false;
            if is_header {
                continue;
            }
            let parse_positive = |s: &str, what: &str| -> Result<u64, CliError> {
                match s.parse::<u64>() {
                    Ok(v) if v >= 1 => Ok(v),
                    _ => Err(CliError::Contract(format!(
                        "{origin}:{}: {what} must be a positive integer, got {s:?}",
                        lineno + 1
                    ))),
                }
            };
            let optimum = parse_positive(fields[1], "optimum")?;
            let baseline = match fields.get(2) {
                Some(&"") | None => None,
                Some(&s) => Some(parse_positive(s, "baseline")?),
            };
            rows.insert(fields[0].to_string(), OptimaRow { optimum, baseline });
        }
        Ok(OptimaTable { rows })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Contract(format!("cannot read optima table {}: {e}", path.display()))
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn load_opt(path: Option<&PathBuf>) -> Result<Self, CliError> {
        match path {
            Some(p) => Self::load(p),
            None => Ok(OptimaTable::default()),
        }
    }

    pub fn get(&self, name: &str) -> Option<OptimaRow> {
        self.rows.get(name).copied()
    }

    /// Rows in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, OptimaRow)> {
        self.rows.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Expands an instance pattern: a literal path, or `*` wildcards in the
/// file-name component (the directory part is taken literally). Matches are
/// sorted for determinism.
pub fn expand_pattern(pattern: &str) -> Result<Vec<PathBuf>, CliError> {
    let path = Path::new(pattern);
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    if !name.contains('*') {
        return Ok(vec![path.to_path_buf()]);
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let entries = std::fs::read_dir(&dir).map_err(|e| {
        CliError::Contract(format!("cannot list {} for {pattern:?}: {e}", dir.display()))
    })?;
    let mut matches: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok())
        .map(|entry| entry.path())
        .filter(|p| {
            p.file_name()
                .map(|f| wildcard_match(&name, &f.to_string_lossy()))
                .unwrap_or(false)
        })
        .collect();
    matches.sort();
    Ok(matches)
}

/// Glob-style `*` matching on file names.
fn wildcard_match(pattern: &str, name: &str) -> bool {
    let parts: Vec<&str> = pattern.split('*').collect();
    let mut rest = name;
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            let Some(r) = rest.strip_prefix(part) else {
                return false;
            };
            rest = r;
        } else if i == parts.len() - 1 {
            return part.is_empty() || rest.ends_with(part);
        } else if let Some(at) = rest.find(part) {
            rest = &rest[at + part.len()..];
        } else {
            return false;
        }
    }
    rest.is_empty()
}

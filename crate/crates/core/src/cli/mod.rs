//! Command-line front end: configuration, boundary-data selection, command
//! dispatch and all file output.
//!
//! Every run prints one `GATE <name> PASS|FAIL <value> <tol>` line per
//! tolerance check. The exit status is 0 when every gate passes, 1 on a
//! usage or module error and 2 when a gate fails.

mod commands;
pub mod format;
pub mod phi;

pub use commands::{run, Gate, RunOutcome};

use crate::boundary_data::BoundaryFunction;
use crate::exact_solutions::Problem;
use clap::{Parser, ValueEnum};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    /// `--help` output; not a failure.
    #[error("{0}")]
    Help(String),
    #[error("{module}::{operation} failed: {source}")]
    Module {
        module: &'static str,
        operation: &'static str,
        #[source]
        source: crate::Error,
    },
    #[error("i/o on {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub(crate) fn module(module: &'static str, operation: &'static str) -> impl FnOnce(crate::Error) -> Self {
        move |source| Self::Module { module, operation, source }
    }

    pub(crate) fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Self + '_ {
        move |e| Self::Io { path: path.display().to_string(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Basis,
    Expand,
    Eval,
    Sweep,
    Verify,
    Taylor,
}

/// Gate names whose tolerance can be overridden with `--tol name=value`.
pub const GATE_NAMES: [&str; 14] = [
    "gram_residual",
    "enumeration",
    "expansion_exactness",
    "eval_boundary",
    "sweep_exponent_low",
    "sweep_exponent_high",
    "sweep_ratio",
    "radial_order",
    "radial_error",
    "polar_error",
    "polar_order",
    "polar_c0",
    "taylor_order",
    "flux",
];

/// Raw flags. Every value is optional so that config-file values can fill
/// the gaps.
#[derive(Debug, Parser)]
#[command(name = "harmshell", about = "Series solutions of conductivity problems on a spherical shell")]
struct Flags {
    command: Command,
    /// `key = value` file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// insulated or perfect
    #[arg(long)]
    problem: Option<String>,
    #[arg(long = "dim")]
    dim: Option<String>,
    #[arg(long)]
    r0: Option<String>,
    /// One gap, or a comma-separated decreasing list for sweeps.
    #[arg(long)]
    eps: Option<String>,
    /// Truncation degree.
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    phi: Option<String>,
    /// Finest grid size for `verify`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long = "radial-samples")]
    radial_samples: Option<String>,
    /// Comma-separated degrees for `taylor`.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    points: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long = "fit-out")]
    fit_out: Option<String>,
    #[arg(long)]
    threads: Option<String>,
    /// Tolerance override `gate=value`, repeatable.
    #[arg(long = "tol")]
    tol: Vec<String>,
}

const FILE_KEYS: [&str; 14] = [
    "problem",
    "dim",
    "r0",
    "eps",
    "m",
    "phi",
    "grid",
    "radial-samples",
    "k",
    "points",
    "out",
    "fit-out",
    "threads",
    "tol",
];

/// Fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub problem: Option<Problem>,
    pub d: usize,
    pub r0: f64,
    pub eps: Vec<f64>,
    pub m: usize,
    pub phi: Option<BoundaryFunction>,
    pub grid: usize,
    pub radial_samples: usize,
    pub k: Vec<usize>,
    pub points: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub fit_out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("line {}: expected key = value, got '{line}'", lineno + 1)))?;
        let key = key.trim().replace('_', "-");
        if !FILE_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("unknown config key '{key}'")));
        }
        let value = value.trim().to_string();
        if key == "tol" {
            map.entry(key)
                .and_modify(|v: &mut String| {
                    v.push(';');
                    v.push_str(&value)
                })
                .or_insert(value);
        } else {
            map.insert(key, value);
        }
    }
    Ok(map)
}

fn parsed<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value '{value}' for {key}")))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError> {
    value.split(',').map(|v| parsed(key, v)).collect()
}

/// Parses `argv` (program name first) and merges the optional config file.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let flags = Flags::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Help(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;
    let file = match &flags.config {
        Some(path) => parse_config_file(&std::fs::read_to_string(path).map_err(CliError::io(path))?)?,
        None => BTreeMap::new(),
    };
    let pick = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());

    let command = flags.command;
    let problem = pick(&flags.problem, "problem")
        .map(|p| p.parse::<Problem>().map_err(|e| CliError::Usage(e.to_string())))
        .transpose()?;
    let d = pick(&flags.dim, "dim").map(|v| parsed("--dim", &v)).transpose()?.unwrap_or(3usize);
    if d < 2 {
        return Err(CliError::Usage(format!("--dim must be at least 2, got {d}")));
    }
    let r0 = pick(&flags.r0, "r0").map(|v| parsed("--r0", &v)).transpose()?.unwrap_or(1.0f64);
    let eps = match pick(&flags.eps, "eps") {
        Some(v) => list("--eps", &v)?,
        None => match command {
            Command::Sweep | Command::Taylor => crate::experiments::DEFAULT_EPS_LIST.to_vec(),
            Command::Verify => vec![0.5],
            _ => vec![0.1],
        },
    };
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(CliError::Usage(format!("--r0 must be positive, got {r0}")));
    }
    if let Some(bad) = eps.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(CliError::Usage(format!("--eps entries must be positive, got {bad}")));
    }
    if matches!(command, Command::Sweep | Command::Taylor) && eps.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(CliError::Usage("--eps list must be strictly decreasing".into()));
    }
    let m = pick(&flags.m, "m")
        .map(|v| parsed("--m", &v))
        .transpose()?
        .unwrap_or(crate::experiments::DEFAULT_SWEEP_DEGREE);
    let phi = match pick(&flags.phi, "phi") {
        Some(spec) => {
            let f = phi::fit_to_dim(phi::parse_phi(&spec).map_err(CliError::Usage)?, d);
            f.validate(d).map_err(|e| CliError::Usage(format!("{e} (in '--phi {spec}')")))?;
            Some(f)
        }
        None => None,
    };
    let grid = pick(&flags.grid, "grid").map(|v| parsed("--grid", &v)).transpose()?.unwrap_or(256usize);
    if grid < 32 {
        return Err(CliError::Usage(format!("--grid must be at least 32, got {grid}")));
    }
    let radial_samples = pick(&flags.radial_samples, "radial-samples")
        .map(|v| parsed("--radial-samples", &v))
        .transpose()?
        .unwrap_or(crate::experiments::DEFAULT_RADIAL_SAMPLES);
    if radial_samples < 3 {
        return Err(CliError::Usage(format!("--radial-samples must be at least 3, got {radial_samples}")));
    }
    let k = match pick(&flags.k, "k") {
        Some(v) => list("--k", &v)?,
        None => vec![1, 2],
    };
    if k.contains(&0) {
        return Err(CliError::Usage("--k entries must be at least 1".into()));
    }
    let points = pick(&flags.points, "points").map(PathBuf::from);
    if let Some(p) = &points {
        if !p.is_file() {
            return Err(CliError::Usage(format!("points file '{}' does not exist", p.display())));
        }
    }
    let threads = pick(&flags.threads, "threads")
        .or_else(|| std::env::var("HARMSHELL_THREADS").ok())
        .map(|v| parsed::<usize>("--threads", &v))
        .transpose()?;
    if threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let mut tol_specs = flags.tol.clone();
    if tol_specs.is_empty() {
        if let Some(v) = file.get("tol") {
            tol_specs = v.split(';').map(str::to_string).collect();
        }
    }
    let mut tolerances = BTreeMap::new();
    for spec in &tol_specs {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--tol expects gate=value, got '{spec}'")))?;
        let name = name.trim();
        if !GATE_NAMES.contains(&name) {
            return Err(CliError::Usage(format!("unknown gate '{name}' in --tol")));
        }
        tolerances.insert(name.to_string(), parsed::<f64>("--tol", value)?);
    }

    let config = RunConfig {
        command,
        problem,
        d,
        r0,
        eps,
        m,
        phi,
        grid,
        radial_samples,
        k,
        points,
        out: pick(&flags.out, "out").map(PathBuf::from),
        fit_out: pick(&flags.fit_out, "fit-out").map(PathBuf::from),
        threads,
        tolerances,
    };
    check_required(&config)?;
    Ok(config)
}

fn check_required(config: &RunConfig) -> Result<(), CliError> {
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{:?} needs {what}", config.command).to_lowercase()))
        }
    };
    match config.command {
        Command::Basis | Command::Taylor => Ok(()),
        Command::Expand => need(config.phi.is_some(), "--phi"),
        Command::Eval => {
            need(config.phi.is_some(), "--phi")?;
            need(config.problem.is_some(), "--problem")?;
            need(config.points.is_some(), "--points")?;
            need(config.eps.len() == 1, "a single --eps")
        }
        Command::Sweep => {
            need(config.phi.is_some(), "--phi")?;
            need(config.problem.is_some(), "--problem")?;
            need(config.eps.len() >= 3, "at least three --eps values")
        }
        Command::Verify => {
            need(config.phi.is_some(), "--phi")?;
            need(config.eps.len() == 1, "a single --eps")
        }
    }
}

/// Parses, runs and reports. Returns the process exit status.
pub fn main_with_args<I, T, W>(argv: I, stdout: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(CliError::Help(msg)) => {
            let _ = write!(stdout, "{msg}");
            return 0;
        }
        Err(e) => {
            eprintln!("harmshell: {e}");
            return 1;
        }
    };
    let outcome = match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&config)),
            Err(e) => {
                eprintln!("harmshell: could not start {n} worker threads: {e}");
                return 1;
            }
        },
        None => run(&config),
    };
    match outcome {
        Ok(outcome) => {
            for line in &outcome.messages {
                let _ = writeln!(stdout, "{line}");
            }
            for gate in &outcome.gates {
                let _ = writeln!(stdout, "{gate}");
            }
            if let Some(failed) = outcome.gates.iter().find(|g| !g.passed) {
                eprintln!("harmshell: gate {} failed: {} vs tolerance {}", failed.name, format::g17(failed.value), format::g17(failed.tolerance));
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("harmshell: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        std::iter::once("harmshell".to_string())
            .chain(s.split_whitespace().map(str::to_string))
            .collect()
    }

    #[test]
    fn sweep_example_parses() {
        let c = parse_config(args(
            "sweep --problem perfect --dim 3 --r0 1.0 --eps 0.2,0.1,0.05,0.025,0.0125 --phi coord:3 --m 12 --out sweep.csv",
        ))
        .unwrap();
        assert_eq!(c.command, Command::Sweep);
        assert_eq!(c.problem, Some(Problem::Perfect));
        assert_eq!(c.eps, vec![0.2, 0.1, 0.05, 0.025, 0.0125]);
        assert_eq!(c.phi, Some(BoundaryFunction::Coordinate(3)));
        assert_eq!(c.out, Some(PathBuf::from("sweep.csv")));
    }

    #[test]
    fn coordinate_out_of_range() {
        let err = parse_config(args("expand --phi coord:9 --dim 3")).unwrap_err();
        assert!(err.to_string().contains("coordinate index out of range"), "{err}");
    }

    #[test]
    fn file_values_are_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# sweep setup\ndim = 2\nphi = coord:1  # first axis\nm = 6\ntol = sweep_ratio=2\n").unwrap();
        let c = parse_config(args(&format!("expand --config {} --m 4", path.display()))).unwrap();
        assert_eq!((c.d, c.m), (2, 4));
        assert_eq!(c.phi, Some(BoundaryFunction::Coordinate(1)));
        assert_eq!(c.tolerances.get("sweep_ratio"), Some(&2.0));
        std::fs::write(&path, "colour = blue\n").unwrap();
        let err = parse_config(args(&format!("basis --config {}", path.display()))).unwrap_err();
        assert!(err.to_string().contains("colour"));
    }

    #[test]
    fn usage_errors() {
        assert!(parse_config(args("frobnicate")).is_err());
        assert!(parse_config(args("sweep --problem perfect --phi coord:1 --eps 0.1,0.2,0.05")).is_err());
        assert!(parse_config(args("eval --problem perfect --phi coord:1")).is_err());
        assert!(parse_config(args("basis --tol nonsense=1")).is_err());
        assert!(parse_config(args("basis --dim 1")).is_err());
        assert!(parse_config(args("basis --bogus 3")).is_err());
    }
}

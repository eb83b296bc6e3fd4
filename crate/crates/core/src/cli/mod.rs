//! Batch front end: sequence and scheme loading, the `analyze`, `scheme` and
//! `verify` commands, and their file formats.
//!
//! Curves are written as CSV with header `axis,index,epsilon,witness_n,density`;
//! reports are pretty-printed JSON with a top-level `"schema": 1` and the
//! resolved run configuration embedded.

mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::density::{
    ac_sup_deviation, ac_theta_block_mean, ac_theta_verdict, asc_theta_verdict, asc_verdict, density_curve,
    ntheta_norm, Axis, ConvergenceVerdict, DensityCurve, EpsilonGrid, VerdictPolicy,
};
use crate::error::{Error, Result};
use crate::kernel::{generate, GeneratorSpec, SeqSample, WitnessModulus};
use crate::lacunary::{
    block_intersections, is_refinement, q_ratio_stats, refinement_map, LacunaryScheme, SchemeSpec,
};

pub use verify::{
    corollary_setup, crossing_sequence, run_suite, run_verify, uniform_limit_families, Suite, SuiteSummary,
    VerifyReport,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Analyze,
    Scheme,
    Verify,
}

/// Deliberate defects for checking that the verification suite notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Scalar closure compares against `ε` instead of `ε/|c|`.
    Scaling,
}

/// Fully resolved settings of one run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    /// Scheme arguments as given: file paths, inline JSON or comma lists.
    pub schemes: Vec<String>,
    pub length: Option<u64>,
    pub policy: VerdictPolicy,
    #[serde(skip)]
    pub out: PathBuf,
    pub seed: u64,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<Fault>,
}

impl RunConfig {
    pub fn new(command: Command, out: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input: None,
            schemes: Vec::new(),
            length: None,
            policy: VerdictPolicy::default(),
            out: out.into(),
            seed: 0,
            instances: 1000,
            inject_fault: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.policy.validate()?;
        if self.length == Some(0) {
            return Err(Error::Config("length must be >= 1".into()));
        }
        if self.instances == 0 {
            return Err(Error::Config("instances must be >= 1".into()));
        }
        if self.schemes.len() > 2 {
            return Err(Error::Config(format!("at most two schemes, got {}", self.schemes.len())));
        }
        match self.command {
            Command::Analyze if self.input.is_none() => Err(Error::Config("analyze needs --input".into())),
            Command::Scheme if self.schemes.is_empty() => Err(Error::Config("scheme needs --scheme".into())),
            _ => Ok(()),
        }
    }
}

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => EXIT_CONFIG,
        _ => EXIT_INPUT,
    }
}

fn input_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Input(format!("{}: {e}", path.display()))
}

/// Reads a sequence: a JSON generator spec (needs `length`) or a CSV file
/// with one value per line. A CSV is cut to `length` when one is given.
pub fn load_sequence(path: &Path, length: Option<u64>) -> Result<SeqSample> {
    let text = fs::read_to_string(path).map_err(|e| input_err(path, e))?;
    let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    if is_json {
        let spec: GeneratorSpec = serde_json::from_str(&text).map_err(|e| input_err(path, e))?;
        let len = length.ok_or_else(|| Error::Config("a generator spec needs --length".into()))?;
        return generate(&spec, len).map_err(|e| input_err(path, e));
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| input_err(path, e))?;
        if record.len() != 1 {
            return Err(input_err(path, format!("line {}: expected one value, got {}", i + 1, record.len())));
        }
        let v: f64 = record[0].parse().map_err(|e| input_err(path, format!("line {}: {e}", i + 1)))?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(input_err(path, "no values"));
    }
    if let Some(len) = length {
        if len > values.len() as u64 {
            return Err(input_err(path, format!("--length {len} exceeds the {} values in the file", values.len())));
        }
        values.truncate(len as usize);
    }
    SeqSample::new(values).map_err(|e| input_err(path, e))
}

/// Parses a scheme argument: a file holding a spec, inline JSON, or a comma
/// separated point list.
pub fn load_scheme(arg: &str) -> Result<LacunaryScheme> {
    let path = Path::new(arg);
    let text = if path.is_file() { fs::read_to_string(path)? } else { arg.to_string() };
    let trimmed = text.trim();
    let bad = |e: &dyn std::fmt::Display| Error::Input(format!("scheme {arg:?}: {e}"));
    let spec = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        serde_json::from_str::<SchemeSpec>(trimmed).map_err(|e| bad(&e))?
    } else {
        let points = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse::<u64>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| bad(&e))?;
        SchemeSpec::Explicit(points)
    };
    spec.build().map_err(|e| bad(&e))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Writes curves in the shared CSV schema.
pub fn write_curves(path: &Path, curves: &[DensityCurve]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["axis", "index", "epsilon", "witness_n", "density"])?;
    for c in curves {
        for p in &c.points {
            w.write_record([
                c.axis.as_str().to_string(),
                p.index.to_string(),
                format!("{:?}", c.epsilon),
                c.n.get().to_string(),
                format!("{:?}", p.value),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// The verdict's witness, or the `n` it examined when there is none.
fn reported_n(v: &ConvergenceVerdict) -> WitnessModulus {
    v.witness.unwrap_or(v.examined_n)
}

fn curves_for(
    x: &SeqSample,
    verdict: &ConvergenceVerdict,
    axis: Axis,
    scheme: Option<&LacunaryScheme>,
    policy: &VerdictPolicy,
) -> Result<Vec<DensityCurve>> {
    let n = reported_n(verdict);
    policy.grid.values().iter().map(|&eps| density_curve(x, n, eps, axis, scheme, policy.growth)).collect()
}

/// Paths written by a command, and whether its checks passed.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    pub passed: bool,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        }
    }
}

fn ensure_out(config: &RunConfig) -> Result<()> {
    fs::create_dir_all(&config.out)?;
    Ok(())
}

/// Density curves and verdicts for one sequence.
pub fn cmd_analyze(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let input = config.input.as_deref().ok_or_else(|| Error::Config("analyze needs --input".into()))?;
    let x = load_sequence(input, config.length)?;
    let scheme = config.schemes.first().map(|s| load_scheme(s)).transpose()?;
    let policy = &config.policy;
    ensure_out(config)?;
    let mut files = Vec::new();

    let asc = asc_verdict(&x, policy)?;
    let path = config.out.join("asc_curve.csv");
    write_curves(&path, &curves_for(&x, &asc, Axis::Prefix, None, policy)?)?;
    files.push(path);

    // smallest sup-deviation over the witness range
    let (ac_n, ac_sup) = (1..=policy.n_max)
        .map(|n| (n, ac_sup_deviation(&x, WitnessModulus::new(n).unwrap())))
        .fold((1, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });

    let mut report = json!({
        "schema": SCHEMA_VERSION,
        "config": config,
        "sequence": { "len": x.len(), "recipe": x.recipe() },
        "asc": asc,
        "ac": { "n": ac_n, "sup_deviation": ac_sup },
    });

    if let Some(scheme) = &scheme {
        let theta = asc_theta_verdict(&x, scheme, policy)?;
        let path = config.out.join("asc_theta_curve.csv");
        write_curves(&path, &curves_for(&x, &theta, Axis::Block, Some(scheme), policy)?)?;
        files.push(path);

        let ac_theta = ac_theta_verdict(&x, scheme, policy)?;
        let n = reported_n(&ac_theta);
        let means = (1..=scheme.blocks_within(x.len()))
            .map(|r| Ok(json!({ "block": r, "mean": ac_theta_block_mean(&x, scheme, n, r)? })))
            .collect::<Result<Vec<Value>>>()?;
        let obj = report.as_object_mut().unwrap();
        obj.insert("scheme".into(), json!(scheme.points()));
        obj.insert("asc_theta".into(), json!(theta));
        obj.insert("ac_theta".into(), json!({ "verdict": ac_theta, "n": n, "block_means": means }));
        obj.insert("ntheta_norm".into(), json!(ntheta_norm(&x, scheme)?));
    }

    let path = config.out.join("report.json");
    write_json(&path, &report)?;
    files.push(path);
    Ok(RunOutput { files, passed: true })
}

/// Block table, ratio statistics and, for two schemes, their relation.
pub fn cmd_scheme(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let schemes: Vec<LacunaryScheme> = config.schemes.iter().map(|s| load_scheme(s)).collect::<Result<_>>()?;
    ensure_out(config)?;
    let first = &schemes[0];

    let table_path = config.out.join("scheme.csv");
    let mut w = csv::Writer::from_path(&table_path)?;
    w.write_record(["r", "k_prev", "k_r", "h_r", "q_r"])?;
    for (b, q) in first.blocks().zip(first.ratios()) {
        w.write_record([b.index.to_string(), b.start.to_string(), b.end.to_string(), b.len().to_string(), format!("{q:?}")])?;
    }
    w.flush()?;

    let describe = |s: &LacunaryScheme| {
        json!({
            "points": s.points(),
            "blocks": s.num_blocks(),
            "lengths": s.lengths(),
            "ratios": s.ratios(),
            "ratio_stats": q_ratio_stats(s, 0.5).ok(),
            "lacunarity_advisory": s.lacunarity_advisory(),
        })
    };
    let mut report = json!({
        "schema": SCHEMA_VERSION,
        "config": config,
        "schemes": schemes.iter().map(describe).collect::<Vec<_>>(),
    });
    if let [a, b] = schemes.as_slice() {
        let relation = if is_refinement(a, b) {
            json!({ "coarse": 1, "fine": 2, "relation": refinement_map(a, b)? })
        } else if is_refinement(b, a) {
            json!({ "coarse": 2, "fine": 1, "relation": refinement_map(b, a)? })
        } else {
            json!({ "coarse": 1, "fine": 2, "relation": block_intersections(a, b) })
        };
        report.as_object_mut().unwrap().insert("relation".into(), relation);
    }
    let json_path = config.out.join("scheme.json");
    write_json(&json_path, &report)?;
    Ok(RunOutput { files: vec![table_path, json_path], passed: true })
}

/// Runs the seeded verification suite and writes `verify.json`.
pub fn cmd_verify(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let report = run_verify(config)?;
    ensure_out(config)?;
    let path = config.out.join("verify.json");
    write_json(&path, &json!({ "schema": SCHEMA_VERSION, "config": config, "report": report }))?;
    Ok(RunOutput { files: vec![path], passed: report.passed })
}

pub fn run(config: &RunConfig) -> Result<RunOutput> {
    match config.command {
        Command::Analyze => cmd_analyze(config),
        Command::Scheme => cmd_scheme(config),
        Command::Verify => cmd_verify(config),
    }
}

#[derive(Debug, Parser)]
#[command(name = "arithstat", version, about = "Arithmetic and lacunary statistical convergence at finite scale")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Density curves and convergence verdicts for one sequence.
    Analyze(CommonArgs),
    /// Block lengths, ratios and the relation between two schemes.
    Scheme(CommonArgs),
    /// Seeded exact checks and inclusion / continuity experiments.
    Verify(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Sequence file: JSON generator spec or CSV with one value per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Scheme file, inline JSON spec or comma separated points; repeat for a pair.
    #[arg(long)]
    pub scheme: Vec<String>,
    /// Sample length T.
    #[arg(long)]
    pub length: Option<u64>,
    /// Comma separated, strictly decreasing ε values.
    #[arg(long, value_delimiter = ',')]
    pub eps_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 64)]
    pub n_max: u64,
    #[arg(long, default_value_t = 8)]
    pub tail_window: usize,
    #[arg(long, default_value_t = 0.02)]
    pub tol: f64,
    #[arg(long, default_value_t = 0.2)]
    pub tol_hi: f64,
    #[arg(long, default_value_t = 1.3)]
    pub growth: f64,
    #[arg(long, default_value = "arithstat-out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000, hide = true)]
    pub instances: usize,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

impl CommonArgs {
    pub fn into_config(self, command: Command) -> Result<RunConfig> {
        let grid = match self.eps_grid {
            Some(v) => EpsilonGrid::new(v).map_err(|e| Error::Config(e.to_string()))?,
            None => EpsilonGrid::default(),
        };
        Ok(RunConfig {
            command,
            input: self.input,
            schemes: self.scheme,
            length: self.length,
            policy: VerdictPolicy {
                grid,
                tail_window: self.tail_window,
                tol: self.tol,
                tol_hi: self.tol_hi,
                n_max: self.n_max,
                growth: self.growth,
            },
            out: self.out,
            seed: self.seed,
            instances: self.instances,
            inject_fault: self.inject_fault,
        })
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let (command, args) = match cli.command {
        CliCommand::Analyze(a) => (Command::Analyze, a),
        CliCommand::Scheme(a) => (Command::Scheme, a),
        CliCommand::Verify(a) => (Command::Verify, a),
    };
    let result = args.into_config(command).and_then(|c| run(&c));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            for f in &out.files {
                let _ = writeln!(stdout, "wrote {}", f.display());
            }
            if !out.passed {
                eprintln!("verification failed");
            }
            out.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_arguments() {
        assert_eq!(load_scheme("1,4,16").unwrap().points(), &[1, 4, 16]);
        assert_eq!(load_scheme("[1, 2, 4]").unwrap().points(), &[1, 2, 4]);
        let g = load_scheme(r#"{"geometric": {"ratio": 2.0, "count": 5}}"#).unwrap();
        assert_eq!(g.points(), &[1, 2, 4, 8, 16]);
        assert_eq!(load_scheme(r#"{"factorial": {"count": 4}}"#).unwrap().points(), &[1, 2, 6, 24]);
        assert!(matches!(load_scheme("4,1"), Err(Error::Input(_))));
        assert!(matches!(load_scheme("a,b"), Err(Error::Input(_))));
    }

    #[test]
    fn config_validation() {
        let mut c = RunConfig::new(Command::Verify, "x");
        assert!(c.validate().is_ok());
        c.policy.tol = 0.5;
        assert_eq!(exit_code(&c.validate().unwrap_err()), EXIT_CONFIG);
        let c = RunConfig::new(Command::Analyze, "x");
        assert_eq!(exit_code(&c.validate().unwrap_err()), EXIT_CONFIG);
    }
}

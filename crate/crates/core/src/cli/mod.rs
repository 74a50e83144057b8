//! Command-line front end: parses a [`RunConfig`], runs one pipeline and
//! renders a [`Report`] as CSV or JSON.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error, 3 resource
//! cap refusal, 4 I/O failure.

mod commands;
mod report;
mod specfile;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub use commands::MAX_EXPANSION_TERMS;
pub use report::{num, Report};
pub use specfile::{parse_spec_value, read_spec_document, schema_validate, Diagnostic};

use crate::analysis::AnalysisError;
use crate::classify::ClassifyError;
use crate::qi::QiError;
use crate::riesz::RieszError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum EnergyVariantArg {
    Direct,
    BandProduct,
    BandExact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum MethodArg {
    Quadrature,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum QiMethodArg {
    Auto,
    Bruteforce,
    Mitm,
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "riesz", version, about = "Riesz products, quasi-independent sets and Sidon constants")]
pub struct RunConfig {
    /// Seed for stochastic commands (required by `dim --method monte_carlo`
    /// and `sidon estimate`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, visible_alias = "emit")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct SpecDepth {
    #[arg(long)]
    pub spec: PathBuf,
    /// Largest factor index of the partial product.
    #[arg(long)]
    pub depth: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SpecPair {
    #[arg(long)]
    pub spec_a: PathBuf,
    #[arg(long)]
    pub spec_b: PathBuf,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Fourier coefficients of a partial product.
    Coeffs(SpecDepth),
    /// Partial product values at points or on a uniform grid.
    Eval {
        #[command(flatten)]
        #[serde(flatten)]
        base: SpecDepth,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<f64>,
        /// Uniform grid of this many points on [0, 2π).
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Spectral bands of a partial product.
    Spectrum(SpecDepth),
    /// Coefficients of μ_a ∗ μ_b, compared with μ_{ab/2}.
    Convolve {
        #[command(flatten)]
        #[serde(flatten)]
        pair: SpecPair,
        #[arg(long)]
        depth: usize,
    },
    /// Gram matrix of the centered exponentials.
    Gram {
        #[command(flatten)]
        #[serde(flatten)]
        base: SpecDepth,
        /// Largest index j, k (defaults to depth − 1).
        #[arg(long)]
        n: Option<usize>,
    },
    /// α-energy partial sums with a ratio-test verdict.
    Energy {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "band_product")]
        variant: EnergyVariantArg,
        #[arg(long)]
        n_max: usize,
    },
    /// Peyrière integrals L_n and the dimension bracket.
    Dim {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        /// Depth of the integrating partial product (defaults to n_to + 3).
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "quadrature")]
        method: MethodArg,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        nodes_per_degree: usize,
    },
    /// Interval masses against the smoothed upper bound.
    Interval {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j_max: usize,
        /// Depth for the interval masses (defaults to j_max).
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        t: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<f64>,
    },
    /// Local Hölder ratios log μ(I) / log s.
    Holder {
        #[command(flatten)]
        #[serde(flatten)]
        base: SpecDepth,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        t: Vec<f64>,
        /// Strictly decreasing scales.
        #[arg(long, value_delimiter = ',', required = true)]
        scales: Vec<f64>,
    },
    /// Singular/equivalent classification of two products.
    Classify {
        #[command(flatten)]
        #[serde(flatten)]
        pair: SpecPair,
        /// JSON object of declared tail behaviors.
        #[arg(long)]
        tails: Option<PathBuf>,
    },
    /// ℓ² divergence witness for a divergent gap.
    Witness {
        #[command(flatten)]
        #[serde(flatten)]
        pair: SpecPair,
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
    },
    /// Quasi-independence tools.
    #[command(subcommand)]
    Qi(QiCommand),
    /// Mesh intersections.
    #[command(subcommand)]
    Mesh(MeshCommand),
    /// Sidon constants.
    #[command(subcommand)]
    Sidon(SidonCommand),
    /// Check a spec file and list every violation.
    Validate {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum QiCommand {
    /// Decide quasi-independence and report a relation if one exists.
    Check {
        /// Comma-separated integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "vectors")]
        values: Vec<String>,
        /// Vectors separated by ';', entries by ',' (e.g. "1,0;0,1").
        #[arg(long, allow_hyphen_values = true)]
        vectors: Option<String>,
        #[arg(long, value_enum, default_value = "auto")]
        method: QiMethodArg,
    },
    /// The matrix A_ν, one row per column.
    Build {
        #[arg(long)]
        nu: u32,
    },
    /// The flattened set Λ through level ν.
    Lambda {
        #[arg(long)]
        nu: u32,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum MeshCommand {
    /// Elements of a Λ file inside the β-block mesh of level `block`.
    Count {
        /// CSV with a `gamma` column, as written by `qi lambda`.
        #[arg(long)]
        lambda: PathBuf,
        #[arg(long)]
        block: u32,
        /// Mesh size in [2^ν, 2^{ν+1}); defaults to 2^ν.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Counts against ¼ k log₂ k for every k in [2^ν, 2^{ν+1}).
    Bound {
        #[arg(long)]
        nu: u32,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum SidonCommand {
    /// 3√3·k·√(2k−1) for a union of k quasi-independent sets.
    Bound {
        #[arg(long)]
        k: u64,
    },
    /// Certified lower bound from a seeded randomized search.
    Estimate {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        set: Vec<i64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 32)]
        grid_factor: usize,
        #[arg(long, default_value_t = 2)]
        refine_passes: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("[{rule}] {message}")]
    Validation { rule: String, message: String },
    #[error("[resource cap] {0}")]
    Resource(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation { .. } => 2,
            CliError::Resource(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub(crate) fn validation(rule: &str, message: impl Into<String>) -> Self {
        CliError::Validation {
            rule: rule.to_string(),
            message: message.into(),
        }
    }
}

fn riesz_rule(e: &RieszError) -> &'static str {
    match e {
        RieszError::ModulusBound { .. } => "modulus bound",
        RieszError::Lacunarity { .. } => "lacunarity",
        RieszError::NotDyadic { .. } => "dyadic frequencies",
        RieszError::DyadicModulus { .. } => "dyadic modulus",
        RieszError::IndexOutOfRange { .. } => "index range",
        RieszError::UnsupportedRegime { .. } => "regime",
        RieszError::Unstable { .. } => "coefficient stability",
        _ => "spec",
    }
}

impl From<RieszError> for CliError {
    fn from(e: RieszError) -> Self {
        CliError::validation(riesz_rule(&e), e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match &e {
            _ if e.is_resource() => CliError::Resource(e.to_string()),
            AnalysisError::Riesz(r) => r.clone().into(),
            _ => CliError::validation("analysis precondition", e.to_string()),
        }
    }
}

impl From<QiError> for CliError {
    fn from(e: QiError) -> Self {
        let above_cap = matches!(e, QiError::LevelOutOfRange { level, max } if level > max);
        if e.is_resource() || above_cap {
            CliError::Resource(e.to_string())
        } else {
            CliError::validation("quasi-independence input", e.to_string())
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Riesz(r) => r.into(),
            e => CliError::validation("classification input", e.to_string()),
        }
    }
}

/// Runs the configured command and returns its report without writing it.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let mut report = commands::dispatch(config)?;
    report.config = resolved_config(config);
    Ok(report)
}

fn flatten(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, String)>) {
    use serde_json::Value;
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                flatten(&key(k), x, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), "none".to_string())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Array(a) => out.push((
            prefix.to_string(),
            a.iter()
                .map(|x| match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(","),
        )),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn resolved_config(config: &RunConfig) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let value = serde_json::to_value(config).expect("config serializes");
    flatten("", &value, &mut out);
    out
}

fn emit(config: &RunConfig, report: &Report) -> Result<(), CliError> {
    let bytes = report.render(config.format);
    match &config.out {
        Some(path) => {
            std::fs::write(path, &bytes).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            for (k, v) in &report.summary {
                println!("{k}: {v}");
            }
            Ok(())
        }
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn execute(config: &RunConfig) -> Result<(), CliError> {
    let report = run(config)?;
    emit(config, &report)
}

/// Parses arguments, runs, writes the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match config.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&config)),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => execute(&config),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

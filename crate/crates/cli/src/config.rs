use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use semiformal::exactnum::parse_rat;
use semiformal::Rat;
use serde::Serialize;
use std::path::PathBuf;

/// Directory for reports when `--output` is not given.
pub const OUT_DIR_ENV: &str = "SEMIFORMAL_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "semiformal")]
#[command(about = "Check the exact identities and certified bounds behind two proofs that e is transcendental")]
#[command(version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,

    /// Seed for the randomized proposition suites
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Cases per randomized suite
    #[arg(long, global = true, default_value_t = 100)]
    pub cases: usize,

    /// Integer coefficients a_0,..,a_n of a_0 + a_1 e + .. + a_n e^n
    #[arg(long, global = true, default_value = "2,-1", allow_hyphen_values = true)]
    pub coeffs: String,

    /// Largest r for the integer/bounded-part rows and for recovered p_r
    #[arg(long, global = true, default_value_t = 8)]
    pub max_r: usize,

    /// Interval width (defaults: 1e-8 for hilbert, 1e-6 relative to k! for euler)
    #[arg(long, global = true)]
    pub eps: Option<String>,

    /// Nonzero integers b_1,..,b_t
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub b: String,

    /// Distinct positive integers alpha_1,..,alpha_t
    #[arg(long, global = true, default_value = "1")]
    pub alpha: String,

    /// Table depth N
    #[arg(long, global = true, default_value_t = 200)]
    pub max_n: usize,

    /// Largest power K of q in the table
    #[arg(long, global = true, default_value_t = 12)]
    pub max_k: usize,

    /// Largest k for the Euler-identity checks
    #[arg(long, global = true, default_value_t = 15)]
    pub euler_max_k: usize,

    /// Report path (default: $SEMIFORMAL_OUT_DIR/<command>-report.<ext>, else the working directory)
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Also write the tables as CSV next to the report
    #[arg(long, global = true)]
    pub emit_tables: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    /// Randomized proposition suites
    Props,
    /// Euler's identity, exactly and through the sequence definition
    Euler,
    /// Recurrence, divisibility and rationality tables for Σ b_j α_j^n
    Bbr,
    /// Integer part B_r, bounded part A_r and their identity
    Hilbert,
    /// Everything above
    All,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Props => "props",
            CommandKind::Euler => "euler",
            CommandKind::Bbr => "bbr",
            CommandKind::Hilbert => "hilbert",
            CommandKind::All => "all",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("malformed {field}: {reason}")]
    Malformed { field: &'static str, reason: String },
    #[error("{0}")]
    Invalid(String),
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub seed: u64,
    pub cases: usize,
    pub coeffs: Vec<BigInt>,
    pub max_r: usize,
    pub eps: Option<Rat>,
    pub b: Vec<BigInt>,
    pub alpha: Vec<u64>,
    pub max_n: usize,
    pub max_k: usize,
    pub euler_max_k: usize,
    pub output: PathBuf,
    pub format: Format,
    pub emit_tables: bool,
}

fn parse_list<T: std::str::FromStr>(field: &'static str, s: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|item| {
            item.trim().parse::<T>().map_err(|e| ConfigError::Malformed {
                field,
                reason: format!("{item:?}: {e}"),
            })
        })
        .collect()
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, ConfigError> {
        let eps = cli
            .eps
            .as_deref()
            .map(|s| {
                parse_rat(s).map_err(|e| ConfigError::Malformed { field: "eps", reason: e.to_string() })
            })
            .transpose()?;
        if eps.as_ref().is_some_and(|e| *e <= Rat::from_integer(0.into())) {
            return Err(ConfigError::Invalid("eps must be positive".into()));
        }
        for (name, v) in [("cases", cli.cases), ("max-r", cli.max_r), ("max-n", cli.max_n), ("max-k", cli.max_k)] {
            if v == 0 {
                return Err(ConfigError::Invalid(format!("{name} must be positive")));
            }
        }
        let output = cli.output.unwrap_or_else(|| {
            let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_default();
            dir.join(format!("{}-report.{}", cli.command.name(), cli.format.extension()))
        });
        Ok(RunConfig {
            command: cli.command,
            seed: cli.seed,
            cases: cli.cases,
            coeffs: parse_list("coeffs", &cli.coeffs)?,
            max_r: cli.max_r,
            eps,
            b: parse_list("b", &cli.b)?,
            alpha: parse_list("alpha", &cli.alpha)?,
            max_n: cli.max_n,
            max_k: cli.max_k,
            euler_max_k: cli.euler_max_k,
            output,
            format: cli.format,
            emit_tables: cli.emit_tables,
        })
    }

    pub fn runs(&self, kind: CommandKind) -> bool {
        self.command == kind || self.command == CommandKind::All
    }
}

//! The `paired` command line.
//!
//! Every subcommand renders one of three formats. JSON output is wrapped as
//! `{"command", "config", "result"}` so each report carries the [`RunConfig`]
//! that produced it.

mod commands;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::properties::Tolerances;

pub use commands::Rendered;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

/// Settings shared by every command. The config file is this struct as a flat
/// JSON object; command-line flags override file values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "N")]
    pub n: usize,
    pub grid_points: usize,
    pub tolerances: Tolerances,
    pub seed: u64,
    /// Band escalations (16 each) for an unresolved null space.
    pub escalations: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 32,
            grid_points: 1024,
            tolerances: Tolerances::default(),
            seed: 0,
            escalations: 8,
            output: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        let t = &self.tolerances;
        if self.n < 1 {
            return Err("N must be at least 1".into());
        }
        if self.grid_points < 1 {
            return Err("grid_points must be at least 1".into());
        }
        for (name, v) in [("exact", t.exact), ("numeric", t.numeric), ("null_threshold", t.null_threshold)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("tolerance {name} must be positive, got {v}"));
            }
        }
        Ok(())
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

#[derive(Debug, Parser)]
#[command(name = "paired", version, about = "Paired operators a P+ + b P- on L2 of the unit circle")]
pub struct Cli {
    /// JSON file with RunConfig fields
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    /// Working band; `norm` accepts a comma-separated list
    #[arg(long = "N", global = true, value_delimiter = ',', value_name = "INT")]
    pub n: Vec<usize>,
    /// Grid size for sup norms
    #[arg(long, global = true, value_name = "INT")]
    pub grid: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply S_{a,b} (or Sigma_{a,b}) to f
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        sigma: bool,
    },
    /// Finite-section norms with the sup-norm bounds
    Norm {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Kernel of S_{a,b} on the band [-N, N]
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Also print P+ and P- of each basis vector
        #[arg(long)]
        project: bool,
        /// Kernel of the adjoint instead
        #[arg(long)]
        adjoint: bool,
    },
    /// Inner-outer factorization of an analytic polynomial
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// The pair whose paired kernel contains f
    PairFrom {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Coburn-type dichotomy for (a, b)
    Coburn {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Run a property suite, or `all`
    Suite {
        name: String,
        #[arg(long)]
        trials: Option<usize>,
        /// Keep runtime fields in the report (output is then not reproducible)
        #[arg(long)]
        timing: bool,
    },
}

/// Failure before or during a command, with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Ambiguous { .. } | Error::Membership { .. } => 2,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// File config, then flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path).map_err(CliError::usage)?,
        None => RunConfig::default(),
    };
    if let Some(&n) = cli.n.last() {
        cfg.n = n;
    }
    if let Some(g) = cli.grid {
        cfg.grid_points = g;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.out.is_some() {
        cfg.output.clone_from(&cli.out);
    }
    if cli.n.len() > 1 && !matches!(cli.command, Command::Norm { .. }) {
        return Err(CliError::usage("only `norm` accepts a list for --N"));
    }
    if cli.n.contains(&0) {
        return Err(CliError::usage("N must be at least 1"));
    }
    cfg.validate().map_err(CliError::usage)?;
    Ok(cfg)
}

/// Renders the report in the configured format.
pub fn render(cfg: &RunConfig, out: &Rendered) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Envelope<'a> {
                command: &'a str,
                config: &'a RunConfig,
                result: &'a serde_json::Value,
            }
            let env = Envelope {
                command: out.command,
                config: cfg,
                result: &out.json,
            };
            let mut s = serde_json::to_string_pretty(&env).map_err(|e| CliError::usage(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError {
                code: 1,
                message: e.to_string(),
            };
            w.write_record(&out.header).map_err(io)?;
            for row in &out.rows {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError {
                code: 1,
                message: e.to_string(),
            })?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
        Format::Pretty => Ok(out.text.clone()),
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let cfg = resolve_config(cli)?;
    let out = commands::dispatch(&cli.command, &cfg, &cli.n)?;
    let text = render(&cfg, &out)?;
    match &cfg.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError {
            code: 1,
            message: format!("{}: {e}", path.display()),
        })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    Ok(out.code)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

//! The `anum` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
//! exceeded. Every error prints one line starting with `error:` on stderr.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{minimal_period, sweep, PeriodOptions, SweepOptions};
use crate::closed_form::closed_model;
use crate::delta::TowerParams;
use crate::error::Error;
use crate::exact::Prime;
use crate::lattice::{a_number_bruteforce, Budget, DEFAULT_BUDGET};
use crate::report::{delta_table, render_delta_table, render_formula, render_sweep, OutputFormat};
use crate::verify::verify;

pub const BUDGET_ENV: &str = "ANUM_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "anum", version, about = "Higher a-numbers in Z_p-towers: brute force, closed forms, sweeps")]
pub struct Cli {
    /// Column budget for brute-force enumeration (overrides ANUM_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Closed,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct ParamArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'd')]
    pub d: u64,
    #[arg(short = 'r')]
    pub r: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a^r(X_n).
    Compute {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short = 'n')]
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Print the quasi-polynomial for a^r(X_n).
    Formula {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
        format: OutputFormat,
    },
    /// Run every identity for one (p, d, r).
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 4)]
        n_max: u64,
    },
    /// Tabulate periods, delays and pairing data over a grid.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u64>,
        /// `all-divisors` or `list:2,4`.
        #[arg(long, default_value = "all-divisors")]
        d_mode: DMode,
        #[arg(long)]
        r_max: u64,
        /// Levels checked against brute force.
        #[arg(long, default_value_t = 3)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print δ, δ₀ and δ̃ for i = 1..i-max.
    DeltaTable {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'd')]
        d: u64,
        #[arg(long, default_value_t = 19)]
        i_max: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
        format: OutputFormat,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DMode {
    AllDivisors,
    List(Vec<u64>),
}

impl std::str::FromStr for DMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all-divisors" {
            return Ok(DMode::AllDivisors);
        }
        let list =
            s.strip_prefix("list:").ok_or_else(|| format!("expected all-divisors or list:d1,d2,..., got {s}"))?;
        list.split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| format!("bad d value {x:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(DMode::List)
    }
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Budget(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Domain(_) | Error::PreDelay { .. } => CliError::Usage(msg),
            Error::Budget { .. } => CliError::Budget(msg),
            Error::Invariant(_) => CliError::Failed(msg),
        }
    }
}

/// Standard output of a command and whether it counts as a failure.
pub struct Output {
    pub stdout: String,
    pub failed: Option<String>,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, failed: None }
    }
}

fn params(a: &ParamArgs) -> Result<TowerParams, CliError> {
    Ok(TowerParams::new(a.p, a.d, a.r)?)
}

fn resolve_budget(flag: Option<u64>, env: Option<String>) -> Result<Budget, CliError> {
    let raw = match (flag, env) {
        (Some(b), _) => b,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a non-negative integer, got {s:?}")))?,
        (None, None) => DEFAULT_BUDGET,
    };
    Ok(Budget::new(raw)?)
}

fn write_atomic(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Failed(format!("writing {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Runs one parsed command. `env_budget` is the value of `ANUM_BUDGET`.
pub fn run(cli: Cli, env_budget: Option<String>) -> Result<Output, CliError> {
    let budget = resolve_budget(cli.budget, env_budget)?;
    match cli.command {
        Command::Compute { params: a, n, method } => {
            let t = params(&a)?;
            let mut out = format!("p={} d={} r={} n={n}\n", a.p, a.d, a.r);
            let brute = match method {
                Method::Brute | Method::Both => Some(a_number_bruteforce(&t, n, &budget)?.total),
                Method::Closed => None,
            };
            let closed = match method {
                Method::Closed | Method::Both => Some(closed_model(&t)?.evaluate(n)?),
                Method::Brute => None,
            };
            if let Some(v) = &brute {
                out += &format!("brute: {v}\n");
            }
            if let Some(v) = &closed {
                out += &format!("closed: {v}\n");
            }
            if let (Some(b), Some(c)) = (&brute, &closed) {
                if b == c {
                    out += "AGREE\n";
                } else {
                    out += "DISAGREE\n";
                    return Ok(Output {
                        stdout: out,
                        failed: Some(format!("brute force {b} and closed form {c} disagree")),
                    });
                }
            }
            Ok(Output::ok(out))
        }
        Command::Formula { params: a, format } => {
            let t = params(&a)?;
            let model = closed_model(&t)?;
            let report = minimal_period(&t, &PeriodOptions { budget, ..PeriodOptions::default() })?;
            Ok(Output::ok(render_formula(&model, &report, format)?))
        }
        Command::Verify { params: a, n_max } => {
            let t = params(&a)?;
            let report = verify(&t, n_max, &budget)?;
            let mut out = String::new();
            for c in &report.checks {
                if c.passed {
                    out += &format!("PASS {}\n", c.name);
                } else {
                    out += &format!("FAIL {}: {}\n", c.name, c.detail);
                }
            }
            match report.first_failure() {
                None => {
                    out += "PASS\n";
                    Ok(Output::ok(out))
                }
                Some(c) => {
                    out += &format!("FAIL: {}\n", c.name);
                    Ok(Output { stdout: out, failed: Some(format!("identity {} failed: {}", c.name, c.detail)) })
                }
            }
        }
        Command::Sweep { p_list, d_mode, r_max, n_max, format, out } => {
            let mut grid = Vec::new();
            for &p in &p_list {
                Prime::new(p)?;
                if p == 2 {
                    return Err(CliError::Usage("p must be an odd prime".into()));
                }
                let ds = match &d_mode {
                    DMode::AllDivisors => divisors(p - 1),
                    DMode::List(ds) => ds.clone(),
                };
                for &d in &ds {
                    if d == 0 || (p - 1) % d != 0 {
                        return Err(CliError::Usage(format!("d = {d} does not divide p - 1 = {}", p - 1)));
                    }
                    grid.extend((1..=r_max).map(|r| (p, d, r)));
                }
            }
            let opts = SweepOptions { n_max, period: PeriodOptions { budget, ..PeriodOptions::default() } };
            let rows = sweep(&grid, &opts);
            let text = render_sweep(&rows, format);
            match out {
                Some(path) => {
                    write_atomic(&path, &text)?;
                    Ok(Output::ok(format!("wrote {} rows to {}\n", rows.len(), path.display())))
                }
                None => Ok(Output::ok(text)),
            }
        }
        Command::DeltaTable { p, d, i_max, format } => {
            let t = TowerParams::new(p, d, 1)?;
            Ok(Output::ok(render_delta_table(&delta_table(&t, i_max), format)))
        }
    }
}

fn one_line(msg: &str) -> String {
    let line = msg.lines().next().unwrap_or("").trim();
    let line = line.strip_prefix("error:").map_or(line, str::trim);
    format!("error: {line}")
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", one_line(&e.to_string()));
            return ExitCode::from(2);
        }
    };
    match run(cli, std::env::var(BUDGET_ENV).ok()) {
        Ok(output) => {
            print!("{}", output.stdout);
            match output.failed {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("{}", one_line(&msg));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("{}", one_line(e.message()));
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_mode_parsing() {
        assert_eq!("all-divisors".parse::<DMode>().unwrap(), DMode::AllDivisors);
        assert_eq!("list:2,4".parse::<DMode>().unwrap(), DMode::List(vec![2, 4]));
        assert!("list:x".parse::<DMode>().is_err());
        assert!("some".parse::<DMode>().is_err());
    }

    #[test]
    fn budget_resolution() {
        assert_eq!(resolve_budget(None, None).unwrap().max_columns, DEFAULT_BUDGET);
        assert_eq!(resolve_budget(None, Some("50".into())).unwrap().max_columns, 50);
        assert_eq!(resolve_budget(Some(7), Some("50".into())).unwrap().max_columns, 7);
        assert!(matches!(resolve_budget(None, Some("x".into())), Err(CliError::Usage(_))));
    }

    #[test]
    fn error_lines() {
        assert_eq!(one_line("error: bad thing\n\nUsage: x"), "error: bad thing");
        assert_eq!(one_line("domain error: d"), "error: domain error: d");
    }
}

//! `kmk`: Kostka-Foulkes polynomials, Hall-Littlewood expansions, t-string
//! functions and identity checks from the command line.
//!
//! Exit codes: 0 success, 1 identity mismatch, 2 invalid configuration,
//! 3 unsupported algebra, 4 resource guard.

mod job;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kmk_core::affine_strings::{level1_check, macdonald_identity_check, max_set, t_string, verify_level0};
use kmk_core::hall_littlewood::{c_expansion, verify_dellm, verify_stembridge, verify_tensor_minus_one};
use kmk_core::kostka::{kostka_table, verify_prop61};

use job::{guard_mb, parse_labels, parse_matrix, AlgebraSpec, Check, Command, Failure, Format, JobConfig};
use render::{render, Body, Document, Row, StringRow, SCHEMA};

#[derive(Parser)]
#[command(name = "kmk", version, about = "Exact Kostka-Foulkes and Hall-Littlewood computations for Kac-Moody algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Table of K_{lambda,mu}(t) over the dominant cone below lambda.
    Kostka(Common),
    /// Coefficients c_{lambda,mu}(t) of P_lambda in the character basis.
    Hl(Common),
    /// t-string functions a^lambda_mu(t) (all of Max(lambda) unless --mu is given).
    String(Common),
    /// Run a named identity check; exits 1 on any mismatch.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        common: Common,
    },
    /// Run a job described by a JSON config file.
    Run {
        config: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Args)]
struct Common {
    /// Algebra name such as A2, G2, A1~ or D4~ (`~` marks the untwisted affinization).
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    algebra: Option<String>,
    /// Cartan matrix, rows separated by `;`, e.g. "2,-2;-2,2".
    #[arg(long, value_parser = matrix_arg, allow_hyphen_values = true)]
    matrix: Option<Matrix>,
    /// Weight labels <lambda, alpha_i^vee>, comma separated.
    #[arg(long, value_parser = labels_arg, allow_hyphen_values = true)]
    weight: Option<Labels>,
    /// Coefficient of delta in the weight (affine only).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    delta: i64,
    #[arg(long, value_parser = labels_arg, allow_hyphen_values = true)]
    mu: Option<Labels>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    mu_delta: i64,
    /// Height bound on lambda - mu.
    #[arg(long)]
    depth: Option<usize>,
    /// Highest power of q in string functions.
    #[arg(long)]
    order: Option<usize>,
    /// Highest power of t kept in affine Stembridge sums and the Macdonald check.
    #[arg(long)]
    t_cap: Option<usize>,
    /// Largest Weyl group ball enumerated by the Macdonald check.
    #[arg(long)]
    ball_cap: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

// newtypes keep clap from treating the flags as multi-valued
#[derive(Clone)]
struct Labels(Vec<i64>);

#[derive(Clone)]
struct Matrix(Vec<Vec<i64>>);

fn labels_arg(s: &str) -> Result<Labels, String> {
    parse_labels(s).map(Labels)
}

fn matrix_arg(s: &str) -> Result<Matrix, String> {
    parse_matrix(s).map(Matrix)
}

impl Common {
    fn into_config(self, command: Command, check: Option<Check>) -> JobConfig {
        let algebra = match (self.algebra, self.matrix) {
            (_, Some(Matrix(matrix))) => AlgebraSpec::Matrix { matrix },
            (Some(name), None) => AlgebraSpec::Name(name),
            (None, None) => unreachable!("clap requires one of --algebra and --matrix"),
        };
        JobConfig {
            algebra,
            command,
            check,
            weight: self.weight.map(|l| l.0),
            delta: self.delta,
            mu: self.mu.map(|l| l.0),
            mu_delta: self.mu_delta,
            depth: self.depth,
            order: self.order,
            t_cap: self.t_cap,
            ball_cap: self.ball_cap,
            format: self.format,
        }
    }
}

/// Runs a job; the flag is `false` when a verification found a mismatch.
fn execute(cfg: &JobConfig) -> Result<(Document, bool), Failure> {
    let d = cfg.datum()?;
    let estimate = cfg.estimated_mb(&d);
    let guard = guard_mb()?;
    if estimate > guard {
        return Err(Failure {
            code: 4,
            message: format!("estimated {estimate:.1} MB exceeds KMK_MEMORY_GUARD_MB={guard}"),
        });
    }
    let mut passed = true;
    let (command, body) = match cfg.command {
        Command::Kostka => {
            let lambda = cfg.lambda(&d)?;
            let table = kostka_table(&d, &lambda, cfg.depth())?;
            let rows = table
                .entries
                .into_iter()
                .map(|e| Row { mu: e.mu, offset: e.offset, value: e.value })
                .collect();
            ("kostka", Body::Table { lambda, depth: cfg.depth(), rows })
        }
        Command::Hl => {
            let lambda = cfg.lambda(&d)?;
            let exp = c_expansion(&d, &lambda, cfg.depth())?;
            let rows = exp.entries.into_iter().map(|e| Row { mu: e.mu, offset: e.offset, value: e.c }).collect();
            ("hl", Body::Table { lambda, depth: cfg.depth(), rows })
        }
        Command::String => {
            let lambda = cfg.lambda(&d)?;
            let mus = match cfg.mu(&d)? {
                Some(mu) => vec![mu],
                None => max_set(&d, &lambda)?,
            };
            let mut strings = Vec::new();
            for mu in mus {
                let s = t_string(&d, &lambda, &mu, cfg.order())?;
                strings.push(StringRow { mu, coefficients: s.series.coeffs().to_vec() });
            }
            ("string", Body::Strings { lambda, order: cfg.order(), strings })
        }
        Command::Verify => {
            let check = cfg.check.ok_or_else(|| Failure::config("verify needs a check name"))?;
            let report = match check {
                Check::Dellm => verify_dellm(&d, &cfg.lambda(&d)?, cfg.depth())?,
                Check::Prop61 => verify_prop61(&d, &cfg.lambda(&d)?)?,
                Check::Macdonald => macdonald_identity_check(
                    &d,
                    cfg.t_cap.unwrap_or(2),
                    cfg.depth(),
                    cfg.ball_cap.unwrap_or(job::DEFAULT_BALL_CAP),
                )?,
                Check::Level0 => verify_level0(&d, cfg.order())?,
                Check::Level1 => level1_check(&d, cfg.order())?,
                Check::Stembridge => verify_stembridge(&d, &cfg.lambda(&d)?, cfg.depth(), cfg.t_cap)?,
                Check::TensorMinusOne => verify_tensor_minus_one(&d, &cfg.lambda(&d)?, cfg.depth())?,
            };
            passed = report.passed;
            ("verify", Body::Report(report))
        }
    };
    let doc = Document { schema: SCHEMA, command: command.to_string(), algebra: cfg.algebra_label(), body };
    Ok((doc, passed))
}

fn load(path: &PathBuf) -> Result<JobConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::config(format!("invalid config {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let cfg = match cli.cmd {
        Cmd::Kostka(c) => c.into_config(Command::Kostka, None),
        Cmd::Hl(c) => c.into_config(Command::Hl, None),
        Cmd::String(c) => c.into_config(Command::String, None),
        Cmd::Verify { check, common } => common.into_config(Command::Verify, Some(check)),
        Cmd::Run { config, format } => {
            let mut cfg = load(&config)?;
            if format.is_some() {
                cfg.format = format;
            }
            cfg
        }
    };
    let (doc, passed) = execute(&cfg)?;
    let text = render(&doc, cfg.format()).map_err(Failure::config)?;
    print!("{text}");
    Ok(passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("kmk: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}

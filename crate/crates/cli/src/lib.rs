//! Command-line driver: argument parsing, dispatch, JSON reports and exit
//! codes.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ffl_core::Error;

use config::{parse_kappa_list, Config};
use report::{Envelope, ErrorReport, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ffl", version, about = "Drinfeld modules, tensor structures and their L-series")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// JSON configuration file; the bundled q = 3 sample is used otherwise.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Field order q = p^m.
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// κ_1,…,κ_r of φ, comma separated, e.g. "theta+1,1".
    #[arg(long, global = true)]
    pub phi: Option<String>,
    /// κ's of ψ, comma separated.
    #[arg(long, global = true)]
    pub psi: Option<String>,
    /// Absolute θ-adic precision M.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub precision: Option<i64>,
    /// Largest prime degree.
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
    /// Dirichlet cutoff D overriding the certified one.
    #[arg(long, global = true)]
    pub cutoff: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Monic irreducibles of degree ≤ dmax, with counts.
    Irreducibles,
    /// Characteristic polynomial of Frobenius at f.
    Charpoly {
        #[arg(long, default_value = "theta")]
        f: String,
    },
    /// μ_φ(f^m) and ν_φ(f^m) by inversion and by recursion.
    Mu {
        #[arg(long, default_value = "theta")]
        f: String,
        #[arg(long, default_value_t = 10)]
        m_max: usize,
    },
    /// 𝝁_φ(a_1, …, a_{r−1}); with --f also the product formulas at f.
    Boldmu {
        /// a_1,…,a_{r−1}, comma separated.
        #[arg(long)]
        a: String,
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Builds φ, φ⊗ψ, Sym²φ or Alt²φ and reports nilpotency and purity.
    Tmodule {
        #[arg(long, default_value = "drinfeld")]
        kind: String,
    },
    /// Exponential and logarithm coefficients through τ^n.
    Explog {
        #[arg(long, default_value = "drinfeld")]
        kind: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// An L-series value by Dirichlet sum or Euler product.
    Lvalue {
        #[arg(long, default_value = "goss_dual")]
        series: String,
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// Character base for twisted_zeta: χ(a) = chi^{deg a}.
        #[arg(long, default_value_t = 1)]
        chi: u32,
        #[arg(long, default_value = "dirichlet")]
        method: String,
    },
    /// One Euler-factor identity at f through u^w.
    EulerCheck {
        #[arg(long, default_value = "tensor2")]
        kind: String,
        #[arg(long, default_value = "theta")]
        f: String,
        #[arg(long, default_value_t = 6)]
        w: usize,
    },
    /// The A-order identity at f against the brute-force oracle.
    OrderCheck {
        #[arg(long, default_value = "tensor2")]
        kind: String,
        #[arg(long, default_value = "theta")]
        f: String,
        #[arg(long, default_value_t = 12)]
        guard: usize,
    },
    /// Rank-2 regulators by closed form, by the basis pipeline, or both.
    Regulator {
        #[arg(long, default_value = "alt2")]
        kind: String,
        #[arg(long, default_value = "both")]
        pipeline: String,
    },
    /// Special value at s = 0 against a regulator.
    SpecialValue {
        #[arg(long, default_value = "alt2")]
        kind: String,
    },
    /// Every verification suite at its stated parameters.
    VerifyAll {
        /// Comma-separated suite numbers to run, all by default.
        #[arg(long)]
        only: Option<String>,
    },
    /// The JSON schema of every report.
    Schema,
}

impl Cli {
    /// The `--out` path when the arguments parse.
    pub fn try_parse_out(args: &[std::ffi::OsString]) -> Option<PathBuf> {
        Cli::try_parse_from(args).ok().and_then(|c| c.global.out)
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Irreducibles => "irreducibles",
            Command::Charpoly { .. } => "charpoly",
            Command::Mu { .. } => "mu",
            Command::Boldmu { .. } => "boldmu",
            Command::Tmodule { .. } => "tmodule",
            Command::Explog { .. } => "explog",
            Command::Lvalue { .. } => "lvalue",
            Command::EulerCheck { .. } => "euler-check",
            Command::OrderCheck { .. } => "order-check",
            Command::Regulator { .. } => "regulator",
            Command::SpecialValue { .. } => "special-value",
            Command::VerifyAll { .. } => "verify-all",
            Command::Schema => "schema",
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::UnsupportedCharacteristic(_)
        | Error::NotIrreducible(_)
        | Error::Dimension(_)
        | Error::NegativeTwist(_) => EXIT_CONFIG,
        Error::Guard(_) | Error::Divergence(_) | Error::PrecisionLoss(_) => EXIT_GUARD,
        Error::Internal(_) | Error::DivisionByZero => EXIT_INTERNAL,
    }
}

fn class(code: i32) -> &'static str {
    match code {
        EXIT_CONFIG => "config",
        EXIT_GUARD => "guard",
        _ => "internal",
    }
}

/// Configuration after applying flags over the file (or the sample).
pub fn resolve_config(g: &GlobalArgs) -> ffl_core::Result<Config> {
    let mut c = match &g.config {
        Some(p) => Config::from_path(p)?,
        None => Config::default(),
    };
    if let Some(q) = g.q {
        c.set_q(q)?;
    }
    if let Some(s) = &g.phi {
        c.phi = parse_kappa_list(s);
    }
    if let Some(s) = &g.psi {
        c.psi = Some(parse_kappa_list(s));
    }
    if let Some(m) = g.precision {
        c.precision = m;
    }
    if let Some(d) = g.dmax {
        c.dmax = d;
    }
    if g.cutoff.is_some() {
        c.cutoff = g.cutoff;
    }
    if let Some(s) = g.seed {
        c.seed = s;
    }
    Ok(c)
}

/// A finished run: the exit code and the JSON document.
pub struct Outcome {
    pub code: i32,
    pub json: String,
}

fn error_outcome(command: Option<&str>, e: &Error) -> Outcome {
    let code = exit_code(e);
    let rep = ErrorReport { command: command.map(String::from), error: e.to_string(), class: class(code), exit_code: code };
    Outcome { code, json: serde_json::to_string_pretty(&rep).expect("serializable") }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let name = cli.command.name();
    if let Command::Schema = cli.command {
        return Outcome { code: EXIT_OK, json: serde_json::to_string_pretty(&report::report_schema()).expect("json") };
    }
    let cfg = match resolve_config(&cli.global) {
        Ok(c) => c,
        Err(e) => return error_outcome(Some(name), &e),
    };
    let exec = || commands::execute(&cli.command, &cfg);
    let res = match cli.global.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Err(Error::Config(format!("worker pool: {e}"))),
        },
        None => exec(),
    };
    match res {
        Ok(env) => {
            let code = if env.status == Status::Pass { EXIT_OK } else { EXIT_CHECK_FAILED };
            Outcome { code, json: envelope_json(&env) }
        }
        Err(e) => error_outcome(Some(name), &e),
    }
}

pub fn envelope_json(env: &Envelope) -> String {
    serde_json::to_string_pretty(env).expect("serializable")
}

/// Parses arguments and runs; argument errors become config failures.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, json: e.to_string() }
                }
                _ => error_outcome(None, &Error::Config(e.to_string().trim().to_string())),
            }
        }
    }
}

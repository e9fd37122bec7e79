//! gmcalc: exact Brieskorn-module, Gauss-Manin, mixed-Hodge and
//! Picard-Fuchs computations for strongly tame polynomials.

mod job;
mod parser;
mod report;

use clap::{Args, Parser, Subcommand};

use gmcalc_core::Rational;
use job::{Command, JobSpec, OutputFormat};

#[derive(Parser)]
#[command(
    name = "gmcalc",
    about = "Exact Brieskorn bases, Gauss-Manin connections, Hodge-cycle criteria and Picard-Fuchs equations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Clone)]
struct PolyArgs {
    /// Polynomial expression, e.g. "x1^3+x2^3-x1"
    polynomial: String,
    /// Variable names (comma separated); default x1..xN inferred from the input
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Weights alpha_1,..,alpha_{n+1}; default all 1
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u32>>,
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "structured"])]
    format: String,
}

#[derive(Args, Clone)]
struct DBetaArgs {
    /// Regular value b for the d_beta search (default 1, retried at b+1, b+2)
    #[arg(long)]
    b: Option<String>,
    /// Run the d_beta search symbolically over Q(t) and report the
    /// exceptional-candidate polynomial
    #[arg(long)]
    symbolic_dbeta: bool,
}

#[derive(Subcommand, Clone)]
enum CliCommand {
    /// Check strong tameness; report mu and the minimal polynomial S(t)
    TameCheck(PolyArgs),
    /// Full Milnor report: basis, degrees A_beta, S(t), eta_f lift
    Milnor(PolyArgs),
    /// Basis change M(t) and the Gauss-Manin matrix on the eta basis
    Connection(PolyArgs),
    /// Mixed-Hodge-compatible basis of the Brieskorn module
    HodgeBasis {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        dbeta: DBetaArgs,
    },
    /// Hodge-cycle criterion: the index set I_h and its functionals
    HodgeCriterion {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        dbeta: DBetaArgs,
    },
    /// Minimal Picard-Fuchs annihilator of `[P * eta]`, optionally after
    /// applying the connection k times
    PicardFuchs {
        #[command(flatten)]
        poly: PolyArgs,
        /// Target form, a polynomial P denoting the class of P * eta
        #[arg(long)]
        form: String,
        /// Apply nabla^k to the element first
        #[arg(long, default_value_t = 0)]
        nabla: u32,
    },
    /// Hodge-cycle lattice of the Fermat hypersurface sum x_i^{m_i}
    Fermat {
        /// Exponents m1,m2,..,m_{n+1}
        m: String,
        /// Output format
        #[arg(long, default_value = "text", value_parser = ["text", "structured"])]
        format: String,
    },
}

fn format_of(s: &str) -> OutputFormat {
    match s {
        "structured" => OutputFormat::Structured,
        _ => OutputFormat::Text,
    }
}

fn job_of(poly: &PolyArgs, command: Command) -> JobSpec {
    JobSpec {
        command,
        polynomial: Some(poly.polynomial.clone()),
        vars: poly.vars.clone(),
        weights: poly.weights.clone(),
        format: format_of(&poly.format),
    }
}

fn parse_b(raw: &Option<String>) -> Result<Option<Rational>, gmcalc_core::Error> {
    raw.as_deref().map(str::parse::<Rational>).transpose()
}

fn build_job(cli: &Cli) -> Result<JobSpec, gmcalc_core::Error> {
    Ok(match &cli.command {
        CliCommand::TameCheck(p) => job_of(p, Command::TameCheck),
        CliCommand::Milnor(p) => job_of(p, Command::Milnor),
        CliCommand::Connection(p) => job_of(p, Command::Connection),
        CliCommand::HodgeBasis { poly, dbeta } => job_of(
            poly,
            Command::HodgeBasis {
                b: parse_b(&dbeta.b)?,
                symbolic: dbeta.symbolic_dbeta,
            },
        ),
        CliCommand::HodgeCriterion { poly, dbeta } => job_of(
            poly,
            Command::HodgeCriterion {
                b: parse_b(&dbeta.b)?,
                symbolic: dbeta.symbolic_dbeta,
            },
        ),
        CliCommand::PicardFuchs { poly, form, nabla } => job_of(
            poly,
            Command::PicardFuchs {
                form: form.clone(),
                nabla: *nabla,
            },
        ),
        CliCommand::Fermat { m, format } => JobSpec {
            command: Command::Fermat {
                m: job::parse_u32_list(m)?,
            },
            polynomial: None,
            vars: None,
            weights: None,
            format: format_of(format),
        },
    })
}

fn main() {
    let cli = Cli::parse();
    let result = build_job(&cli).and_then(|job| job::run(&job));
    match result {
        Ok(output) => {
            print!("{output}");
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e);
            std::process::exit(e.exit_code());
        }
    }
}

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mbx_cli::commands::{self, EvalRequest, Format, Method};
use mbx_cli::parse::{argument, rational, real};
use mbx_cli::render::Style;
use mbx_cli::CliError;
use mbx_core::expansion::Truncation;
use mbx_core::PrecisionCtx;

/// Evaluate S(a,b) = sum_{n>=1} n^gamma K_nu(nb/a) / (n^2+a^2)^mu by direct
/// summation and by its large-|a| asymptotic expansions.
#[derive(Parser)]
#[command(name = "mbx", version)]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "MBX_DIGITS", default_value_t = PrecisionCtx::DEFAULT_DIGITS)]
    digits: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
    /// Show numbers as mantissa(exponent), e.g. 5.56269(-01).
    #[arg(long, global = true)]
    paper_format: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Oracle,
    Expansion,
    Both,
}

#[derive(Args)]
struct ParamArgs {
    /// mu, an exact rational such as 5/2.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// nu >= 0, an exact rational.
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
    /// gamma, an exact rational.
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the series at one point.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        /// b > 0 (rational or decimal).
        #[arg(long, default_value = "1")]
        b: String,
        /// a as "x", "re,im" or "mod@arg" (arg in radians or like "3pi/8").
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Keep family indices k <= K instead of truncating optimally.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Reproduce an error table (1: real a, 2: complex a, 3: pole regimes).
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
    },
    /// Report which expansion applies and why.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the self-check suites; exits 4 on any failure.
    Verify {
        /// Only suites whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let format = match cli.output {
        OutputArg::Text => Format::Text,
        OutputArg::Json => Format::Json,
        OutputArg::Csv => Format::Csv,
    };
    let style = Style { paper: cli.paper_format };
    let ctx = || PrecisionCtx::new(cli.digits).map_err(|e| CliError::Parse(format!("--digits: {e}")));
    match cli.cmd {
        Cmd::Eval {
            params,
            b,
            a,
            method,
            terms,
        } => {
            let ctx = ctx()?;
            let req = EvalRequest {
                mu: rational("mu", &params.mu)?,
                nu: rational("nu", &params.nu)?,
                gamma: rational("gamma", &params.gamma)?,
                b: real("b", &b, &ctx)?,
                a: argument(&a, &ctx)?,
                method: match method {
                    MethodArg::Auto => Method::Auto,
                    MethodArg::Oracle => Method::Oracle,
                    MethodArg::Expansion => Method::Expansion,
                    MethodArg::Both => Method::Both,
                },
                trunc: terms.map_or(Truncation::Auto, Truncation::Fixed),
            };
            let rec = commands::eval(&req, &ctx)?;
            commands::render_eval(&rec, format, style, &ctx)
        }
        Cmd::Table { id } => commands::table(id, format, style, &ctx()?),
        Cmd::Classify { params } => {
            let (mu, nu, g) = (
                rational("mu", &params.mu)?,
                rational("nu", &params.nu)?,
                rational("gamma", &params.gamma)?,
            );
            let (r, s) = commands::classify(&mu, &nu, &g);
            match format {
                Format::Json => Ok(serde_json::json!({
                    "regime": r.tag(),
                    "hypothesis": r.describe(),
                    "supported": r.is_supported(),
                })
                .to_string()
                    + "\n"),
                _ => Ok(s + "\n"),
            }
        }
        Cmd::Verify { filter, list } => {
            if list {
                return Ok(mbx_core::verify::SUITES
                    .iter()
                    .map(|s| format!("{:<24}{}\n", s.name, s.about))
                    .collect());
            }
            let (report, ok) = commands::verify(filter.as_deref(), &ctx()?)?;
            if ok {
                Ok(report)
            } else {
                print!("{report}");
                Err(CliError::VerifyFailed("one or more checks failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mbx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aode::algebraic::{alg_solution_system, rational_solutions};
use aode::arith::field::Q;
use aode::chains::triangularize;
use aode::parse::{parse_series, parse_system};
use aode::puiseux::{puiseux_solve_system, solve_system_at_point};
use aode::reduction::reduce_system;
use aode::report::{self, Format};
use aode::series::ExpansionPoint;
use aode::verify::verify_series;
use aode::{AodeError, Result};

#[derive(Parser)]
#[command(name = "aode", version, about = "Solve systems of autonomous algebraic ODEs exactly")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Equations separated by ';'. Read from stdin when omitted or '-'.
    system: Option<String>,
    /// Read the equations from a file.
    #[arg(short, long, conflicts_with = "system")]
    file: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced first-order equation and its per-chain provenance.
    Reduce(Input),
    /// Puiseux series solutions.
    Solve {
        #[command(flatten)]
        input: Input,
        /// Truncation order (rational).
        #[arg(long)]
        order: Option<String>,
        /// Expand at x = infinity instead of x = 0.
        #[arg(long, conflicts_with = "point")]
        at_infinity: bool,
        /// Solutions with y(x0) = y0, given as "x0,y0".
        #[arg(long)]
        point: Option<String>,
    },
    /// Algebraic (and rational) solution families.
    SolveAlgebraic {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rational_only: bool,
    },
    /// Substitute a truncated series into the system.
    Verify {
        #[command(flatten)]
        input: Input,
        /// For example "1 + x - 1/2*x^2" or "sqrt(2)*x^(1/2)".
        #[arg(long)]
        series: String,
        /// Order up to which the series is complete; exact when omitted.
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        at_infinity: bool,
    },
    /// Show the regular chains of the algebraic system.
    Triangularize(Input),
}

fn read_input(i: &Input) -> Result<String> {
    let io = |e: std::io::Error| AodeError::Internal(format!("cannot read input: {e}"));
    if let Some(path) = &i.file {
        return std::fs::read_to_string(path).map_err(io);
    }
    match i.system.as_deref() {
        Some(s) if s != "-" => Ok(s.to_string()),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(io)?;
            Ok(buf)
        }
    }
}

fn rational_arg(s: &str) -> Result<Q> {
    let bad = || AodeError::Parse {
        line: 1,
        col: 1,
        msg: format!("expected a rational number, got '{s}'"),
    };
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n = n.trim().parse::<num_bigint::BigInt>().map_err(|_| bad())?;
    let d = d.trim().parse::<num_bigint::BigInt>().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

fn run(cli: Cli) -> Result<String> {
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match cli.command {
        Command::Reduce(input) => {
            let s = parse_system(&read_input(&input)?)?.system;
            Ok(report::render_reduce(&reduce_system(&s)?, format))
        }
        Command::Solve {
            input,
            order,
            at_infinity,
            point,
        } => {
            let s = parse_system(&read_input(&input)?)?.system;
            let order = order.as_deref().map(rational_arg).transpose()?;
            if let Some(p) = point {
                let (x0, y0) = p.split_once(',').ok_or_else(|| AodeError::Parse {
                    line: 1,
                    col: 1,
                    msg: "expected --point x0,y0".into(),
                })?;
                let (order, found) = solve_system_at_point(&s, &rational_arg(x0)?, &rational_arg(y0)?, order)?;
                return Ok(report::render_point(&order, &found, format));
            }
            Ok(report::render_solve(&puiseux_solve_system(&s, order, at_infinity)?, format))
        }
        Command::SolveAlgebraic { input, rational_only } => {
            let s = parse_system(&read_input(&input)?)?.system;
            let families = alg_solution_system(&s)?;
            let rational = rational_solutions(&s)?;
            Ok(report::render_algebraic(&families, &rational, rational_only, format))
        }
        Command::Verify {
            input,
            series,
            order,
            at_infinity,
        } => {
            let s = parse_system(&read_input(&input)?)?.system;
            let point = if at_infinity {
                ExpansionPoint::Infinity
            } else {
                ExpansionPoint::Zero
            };
            let order = order.as_deref().map(rational_arg).transpose()?;
            let y = parse_series(&series, point, order.as_ref())?;
            let v = verify_series(&s, &y);
            let shown = order.unwrap_or_else(|| Q::from_integer(0.into()));
            Ok(report::render_verification(&v, &shown, format))
        }
        Command::Triangularize(input) => {
            let s = parse_system(&read_input(&input)?)?.system;
            Ok(report::render_chains(&triangularize(&s.equations)?, format))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

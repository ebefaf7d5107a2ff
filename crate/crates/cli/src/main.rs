mod commands;
mod report;

use std::process::ExitCode;

use binodyn_core::dynlab::height::DEFAULT_PRECISION_STEPS;
use binodyn_core::dynlab::orbit::DEFAULT_MAX_STEPS;
use binodyn_core::gfq::FieldSpec;
use binodyn_core::ratfunc::factor::DEFAULT_SEED;
use clap::{Parser, Subcommand};

use commands::{Ctx, Which};

/// Exact experiments with binomial families f(x) + lambda over F_q(t).
#[derive(Debug, Parser)]
#[command(name = "binodyn", version)]
struct Cli {
    /// Coefficient field: `p`, `p^k`, or `p^k/c_k,...,c_0`.
    #[arg(long, global = true, default_value = "3")]
    field: String,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Orbit steps before giving up on preperiodicity.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
    /// Further iterates used to pin down local heights.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_STEPS)]
    precision_steps: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree decomposition, rho and regime of a binomial.
    Classify { f: String },
    /// Decide whether Prep(f; alpha, beta) is infinite.
    Verdict { f: String, alpha: String, beta: String },
    /// Size and absolute values of the fiber S(f, alpha).
    Fiber { f: String, alpha: String },
    /// Local and global canonical heights of x under f + lambda.
    Heights { f: String, lambda: String, x: String },
    /// Check the orbit identities for (alpha, beta).
    Identities {
        f: String,
        alpha: String,
        beta: String,
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
        /// Parameter for the additive identity.
        #[arg(long, default_value = "0")]
        lambda: String,
        /// Number of iterates.
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Expand f_lambda^n(x) in lambda and check its coefficients.
    Lemma51 {
        f: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Parameters in a finite field whose orbits of alpha1 and alpha2 both reach beta.
    Collide {
        f: String,
        alpha1: String,
        alpha2: String,
        beta: String,
        /// Field to search (defaults to --field).
        #[arg(long)]
        search: Option<String>,
    },
    /// Distinct-root counts of f_lambda^m(alpha) - f_lambda^n(alpha).
    Params {
        f: String,
        alpha: String,
        /// Comma-separated `m:n` pairs with m > n.
        #[arg(long, default_value = "1:0,2:1,3:2")]
        pairs: String,
    },
}

fn run(cli: &Cli) -> binodyn_core::Result<report::Report> {
    let ctx = Ctx {
        field: FieldSpec::parse(&cli.field)?,
        field_text: cli.field.clone(),
        seed: cli.seed,
        max_steps: cli.max_steps,
        precision_steps: cli.precision_steps,
    };
    match &cli.command {
        Command::Classify { f } => commands::classify(&ctx, f),
        Command::Verdict { f, alpha, beta } => commands::verdict(&ctx, f, alpha, beta),
        Command::Fiber { f, alpha } => commands::fiber(&ctx, f, alpha),
        Command::Heights { f, lambda, x } => commands::heights(&ctx, f, lambda, x),
        Command::Identities { f, alpha, beta, which, lambda, n } => {
            commands::identities(&ctx, f, alpha, beta, *which, lambda, *n)
        }
        Command::Lemma51 { f, n } => commands::lemma51(&ctx, f, *n),
        Command::Collide { f, alpha1, alpha2, beta, search } => {
            commands::collide(&ctx, search.as_deref(), f, alpha1, alpha2, beta)
        }
        Command::Params { f, alpha, pairs } => commands::params(&ctx, f, alpha, pairs),
    }
}

fn echo(cli: &Cli) -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("field {} | {}", cli.field, args.join(" "))
}

/// `0` when every assertion holds, `2` otherwise.
fn exit_code(rep: &report::Report) -> u8 {
    if rep.all_pass() {
        0
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(rep) => {
            if cli.json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", rep.to_text());
            }
            ExitCode::from(exit_code(&rep))
        }
        Err(binodyn_core::Error::AssertionFailed(m)) => {
            eprintln!("error: assertion failed: {m}\n  inputs: {}", echo(&cli));
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}\n  inputs: {}", echo(&cli));
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_assertion_exits_two() {
        let mut rep = report::Report::new("classify", Default::default());
        rep.assert("holds", true, "");
        assert_eq!(exit_code(&rep), 0);
        rep.assert("broken", false, "lhs = 1, rhs = 2");
        assert_eq!(exit_code(&rep), 2);
        assert!(rep.to_text().contains("[FAIL] broken: lhs = 1, rhs = 2"));
    }

    #[test]
    fn rationals_are_strings() {
        assert_eq!(report::rat(&binodyn_core::check::rat(-3, 6)), serde_json::json!("-1/2"));
        assert_eq!(report::rat(&binodyn_core::check::int(4)), serde_json::json!("4/1"));
    }
}

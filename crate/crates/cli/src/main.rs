//! `ybe`: verify, construct and enumerate solutions of AXA = XAX.
//!
//! Exit codes: 0 when the checked claim holds, 1 when it does not, 2 for
//! usage, parse and I/O errors.

mod commands;
mod input;

use std::io::{IsTerminal, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ybe",
    version,
    about = "Exact tools for the matrix equation AXA = XAX"
)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Field for Jordan shorthand and parameters: rat, gf:<p> or quad:<a>.
    /// Matrix files must agree with it when given.
    #[arg(long, global = true, value_name = "FIELD")]
    field: Option<String>,

    #[command(subcommand)]
    command: Command,
}

/// Coefficient matrix from a file or Jordan shorthand such as "0^3" or "1^2,2^1".
#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
pub struct CoefficientArgs {
    /// Matrix file ("-" for stdin).
    #[arg(long = "A", value_name = "FILE")]
    pub a: Option<String>,
    #[arg(long, value_name = "SPEC")]
    pub jordan: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether X solves AXA = XAX and print the residual.
    Verify {
        #[command(flatten)]
        coefficient: CoefficientArgs,
        #[arg(long = "X", value_name = "FILE")]
        x: String,
    },
    /// Build a solution from a closed-form family.
    Construct {
        /// Family name or alias (see `ybe families`).
        #[arg(long)]
        family: String,
        /// Parameters as key=value.
        #[arg(long, num_args = 0.., value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Write the solution as a matrix file.
        #[arg(long, value_name = "FILE")]
        out: Option<String>,
        /// Write the coefficient as a matrix file.
        #[arg(long, value_name = "FILE")]
        coefficient_out: Option<String>,
    },
    /// Enumerate every solution over a small prime field and check the
    /// structural properties on each.
    #[command(visible_alias = "enumerate")]
    Census {
        #[command(flatten)]
        coefficient: CoefficientArgs,
        /// Only solutions commuting with A.
        #[arg(long)]
        commuting: bool,
        /// Largest number of candidate matrices to visit.
        #[arg(long, default_value_t = ybe::oracle::DEFAULT_BUDGET as u64)]
        budget: u64,
        /// Disable the parallel sweep.
        #[arg(long)]
        sequential: bool,
        /// Print every solution with its family tag.
        #[arg(long)]
        list: bool,
        /// Write the census document to a file.
        #[arg(long, value_name = "FILE")]
        out: Option<String>,
    },
    /// Solve AX + XB = C exactly.
    Sylvester {
        #[arg(long = "A", value_name = "FILE")]
        a: String,
        #[arg(long = "B", value_name = "FILE")]
        b: String,
        #[arg(long = "C", value_name = "FILE")]
        c: String,
    },
    /// Reduced lex Gröbner basis of the solution ideal or of given generators.
    Groebner {
        /// Built-in ideal; only "ybe" (entries of AXA - XAX) exists.
        #[arg(long, value_name = "NAME", requires = "coef")]
        ideal: Option<String>,
        #[arg(long = "A", value_name = "FILE", group = "coef")]
        a: Option<String>,
        #[arg(long, value_name = "SPEC", group = "coef")]
        jordan: Option<String>,
        /// File with one generator per line (# starts a comment).
        #[arg(long, value_name = "FILE", conflicts_with = "ideal")]
        gens: Option<String>,
        /// Variables for --gens, highest first; inferred alphabetically otherwise.
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        vars: Vec<String>,
        /// Monomial order such as lex:a..i, lex:i..a or lex:c,a,b.
        #[arg(long, value_name = "ORDER")]
        order: Option<String>,
        /// Polynomial whose normal form to report; exit 1 unless every probe reduces to 0.
        #[arg(long, value_name = "POLY")]
        probe: Vec<String>,
        /// Test probes for vanishing on the solution set (radical membership)
        /// instead of ideal membership.
        #[arg(long)]
        radical: bool,
        #[arg(long, default_value_t = ybe::groebner::DEFAULT_PAIR_CAP)]
        pair_cap: usize,
    },
    /// Test whether X0 + λ·X1 solves the equation for every λ.
    Pencil {
        #[command(flatten)]
        coefficient: CoefficientArgs,
        #[arg(long = "X0", value_name = "FILE")]
        x0: String,
        #[arg(long = "X1", value_name = "FILE")]
        x1: String,
    },
    /// Basis of {M : AM = MA}, or of {M : AM = 0 = MA} with --annihilator.
    Centralizer {
        #[command(flatten)]
        coefficient: CoefficientArgs,
        #[arg(long)]
        annihilator: bool,
    },
    /// List the constructor families and their parameters.
    Families,
}

pub struct Context {
    pub json: bool,
    pub field: Option<ybe::Field>,
    pub color: bool,
}

impl Context {
    pub fn mark(&self, ok: bool) -> String {
        let (word, code) = if ok { ("PASS", "32") } else { ("FAIL", "31") };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}

/// Printed output and the exit code it goes with.
pub struct Outcome {
    pub holds: bool,
    pub stdout: String,
}

/// A usage, parse or I/O problem (exit code 2).
#[derive(Debug)]
pub struct Failure(pub String);

impl From<ybe::Error> for Failure {
    fn from(e: ybe::Error) -> Self {
        Failure(e.to_string())
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let field = cli
        .field
        .as_deref()
        .map(|f| f.parse::<ybe::Field>())
        .transpose()?;
    let color =
        !cli.json && std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let ctx = Context {
        json: cli.json,
        field,
        color,
    };
    match cli.command {
        Command::Verify { coefficient, x } => commands::verify(&ctx, &coefficient, &x),
        Command::Construct {
            family,
            params,
            out,
            coefficient_out,
        } => commands::construct(
            &ctx,
            &family,
            &params,
            out.as_deref(),
            coefficient_out.as_deref(),
        ),
        Command::Census {
            coefficient,
            commuting,
            budget,
            sequential,
            list,
            out,
        } => commands::census(
            &ctx,
            &coefficient,
            commands::CensusFlags {
                commuting,
                budget: budget as u128,
                sequential,
                list,
                out,
            },
        ),
        Command::Sylvester { a, b, c } => commands::sylvester(&ctx, &a, &b, &c),
        Command::Groebner {
            ideal,
            a,
            jordan,
            gens,
            vars,
            order,
            probe,
            radical,
            pair_cap,
        } => commands::groebner(
            &ctx,
            commands::GroebnerArgs {
                ideal,
                coefficient: CoefficientArgs { a, jordan },
                gens,
                vars,
                order,
                probes: probe,
                radical,
                pair_cap,
            },
        ),
        Command::Pencil {
            coefficient,
            x0,
            x1,
        } => commands::pencil(&ctx, &coefficient, &x0, &x1),
        Command::Centralizer {
            coefficient,
            annihilator,
        } => commands::centralizer(&ctx, &coefficient, annihilator),
        Command::Families => Ok(commands::families(&ctx)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.holds { 0 } else { 1 })
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

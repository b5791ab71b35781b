mod commands;
mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use diffpi_core::codim::DEFAULT_BUDGET;
use diffpi_core::free::DEFAULT_DEGREE_CAP;

use commands::{Context, Failure};
use input::{load, LoadError};
use report::{Format, Report};

/// Exact differential PI-invariants of finite-dimensional algebras.
///
/// ALGEBRA is a JSON algebra file or `builtin:NAME` (UT2eps, M2sl2, UT<k>,
/// M<k>, F<n>, or a `+`-joined direct sum of these).
#[derive(Parser)]
#[command(name = "diffpi", version)]
struct Cli {
    /// Seed for the randomized steps of the Wedderburn splitting.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest admissible n!·kⁿ·dimⁿ⁺¹ for an evaluation matrix.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Longest operator word tried while closing the operator basis.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity, the unit, the Leibniz rule and the Lie algebra.
    Validate { algebra: String },
    /// Differential and ordinary codimensions by evaluation rank.
    Codim {
        algebra: String,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Skip the differential codimension.
        #[arg(long)]
        ordinary: bool,
        /// Compare with the closed form 2^(n-1)·n − 1.
        #[arg(long)]
        formula: bool,
    },
    /// Multiplicities of the n-th cocharacter.
    Cocharacter {
        algebra: String,
        #[arg(long)]
        n: usize,
    },
    /// The exponent from the block formula.
    Exponent { algebra: String },
    /// Polynomial-growth classification with all checkable conditions.
    Classify {
        algebra: String,
        /// Cocharacter data is computed for n = 1..=depth.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Decide whether polynomials are identities.
    CheckIdentity {
        algebra: String,
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
    },
    /// Span of the consequences of a generator file in degree n.
    Consequences {
        algebra: String,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        n: usize,
        /// Compare the quotient dimension with the evaluation rank.
        #[arg(long)]
        cross_check: bool,
    },
    /// Radical, blocks, radical paths and derivation splitting.
    Decompose { algebra: String },
}

impl Command {
    fn algebra(&self) -> &str {
        match self {
            Command::Validate { algebra }
            | Command::Codim { algebra, .. }
            | Command::Cocharacter { algebra, .. }
            | Command::Exponent { algebra }
            | Command::Classify { algebra, .. }
            | Command::CheckIdentity { algebra, .. }
            | Command::Consequences { algebra, .. }
            | Command::Decompose { algebra } => algebra,
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let ctx = Context {
        seed: cli.seed,
        budget: cli.budget,
        degree_cap: cli.degree_cap,
    };
    let input = load(cli.command.algebra()).map_err(|e| match e {
        LoadError::Invalid(inner) => Failure::from(inner),
        other => Failure::usage(other.to_string()),
    })?;
    if let Command::Validate { .. } = cli.command {
        return Ok(commands::validate(&input, &ctx));
    }
    let l = input.l_algebra()?;
    match &cli.command {
        Command::Validate { .. } => unreachable!(),
        Command::Codim {
            max_n,
            ordinary,
            formula,
            ..
        } => commands::codim_cmd(&input, &l, &ctx, *max_n, *ordinary, *formula),
        Command::Cocharacter { n, .. } => commands::cocharacter_cmd(&input, &l, &ctx, *n),
        Command::Exponent { .. } => commands::exponent_cmd(&input, &l, &ctx),
        Command::Classify { depth, .. } => commands::classify_cmd(&input, &l, &ctx, *depth),
        Command::CheckIdentity { polys, .. } => {
            commands::check_identity_cmd(&input, &l, &ctx, polys)
        }
        Command::Consequences {
            gens,
            n,
            cross_check,
            ..
        } => commands::consequences_cmd(&input, &l, &ctx, gens, *n, *cross_check),
        Command::Decompose { .. } => commands::decompose_cmd(&input, &l, &ctx),
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
    match run(&cli) {
        Ok(report) => {
            let text = report.render(cli.format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            if cli.out.is_some() {
                for w in &report.warnings {
                    eprintln!("warning: {}", w.message);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}

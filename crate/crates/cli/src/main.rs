//! `spinweyl`: P, Q and Weyl symbols of spin operators from the command line.

mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{CoeffsArgs, KernelArgs, MoyalScanArgs, SymbolArgs, WignerArgs};

const GRAMMAR: &str = "\
Operator expressions:
  generators  I Jx Jy Jz Jp Jm
  literals    2  0.5  1e-3  3i  (1+2i)
  operators   + - * and ^ (non-negative integer powers up to 16), unary -
  precedence  ^ > unary - > * > + -; parentheses group
  example     \"Jx*Jy - Jy*Jx\" evaluates to i*Jz

Exit codes: 0 success, 2 usage or parse error, 3 numerical precondition failure.
Without --out, output goes to $OUTPUT_DIR/<command>.<ext> if OUTPUT_DIR is set, else stdout.";

#[derive(Debug, Parser)]
#[command(name = "spinweyl", version, about, after_long_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate the symbol coefficients aP, aQ, aW and K by degree l.
    Coeffs(CoeffsArgs),
    /// Sample the P, Q or Weyl symbol of an operator on a sphere grid.
    Symbol(SymbolArgs),
    /// Sample the spin Wigner function of a state.
    Wigner(WignerArgs),
    /// Measure how the Moyal product approaches its Poisson-bracket limit.
    MoyalScan(MoyalScanArgs),
    /// Print the Stratonovich-Weyl kernel matrix at one direction.
    Kernel(KernelArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coeffs(a) => commands::coeffs(a),
        Command::Symbol(a) => commands::symbol(a),
        Command::Wigner(a) => commands::wigner(a),
        Command::MoyalScan(a) => commands::moyal_scan(a),
        Command::Kernel(a) => commands::kernel(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use galois_core::Error;

#[derive(Parser)]
#[command(name = "galois", version, about = "Galois groups and field constructions for rational polynomials")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Where the polynomial comes from: given directly or via a saved session.
#[derive(clap::Args, Clone)]
pub struct Source {
    /// Polynomial in x, e.g. "x^3 - 2", or coefficients "[c0, c1, ...]".
    #[arg(long, conflicts_with = "session")]
    pub poly: Option<String>,
    /// Session file written by `galois group --session`.
    #[arg(long)]
    pub session: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Galois group: order and generators.
    Group {
        #[arg(long)]
        poly: String,
        /// Write the computed local data to this session file.
        #[arg(long)]
        session: Option<PathBuf>,
    },
    /// Defining polynomial of the subfield fixed by a subgroup.
    FixedField {
        #[command(flatten)]
        source: Source,
        /// Generators in cycle notation separated by ';', e.g. "(1,2)(3,4);(1,3)(2,4)".
        #[arg(long)]
        subgroup: String,
    },
    /// Subfields whose Galois group is a quotient of the given order.
    Quotient {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        order: u128,
        /// Restrict to quotients isomorphic to this permutation group (cycle notation, ';'-separated).
        #[arg(long)]
        group: Option<String>,
        /// Degree of the permutation group given by --group.
        #[arg(long, requires = "group")]
        group_degree: Option<usize>,
    },
    /// Splitting field as one polynomial (--simple) or as a tower (--tower, the default).
    Split {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "tower")]
        simple: bool,
        #[arg(long)]
        tower: bool,
    },
    /// Radical tower and the roots expressed in it.
    Radicals {
        #[command(flatten)]
        source: Source,
    },
    /// Roots expressed in the minimal splitting tower.
    Roots {
        #[command(flatten)]
        source: Source,
    },
    /// Rerun the consistency checks on a session.
    Verify {
        #[command(flatten)]
        source: Source,
    },
}

/// 2 for bad input, 3 for mathematical failure, 4 for exhausted precision.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Session(_) | Error::NotMonicIntegral => 2,
        Error::PrecisionExhausted(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Group { poly, session } => commands::group(poly, session.as_deref()),
        Command::FixedField { source, subgroup } => commands::fixed_field(source, subgroup),
        Command::Quotient { source, order, group, group_degree } => {
            commands::quotient(source, *order, group.as_deref(), *group_degree)
        }
        Command::Split { source, simple, .. } => commands::split(source, *simple),
        Command::Radicals { source } => commands::radicals(source),
        Command::Roots { source } => commands::roots(source),
        Command::Verify { source } => commands::verify(source),
    };
    match res {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json output")),
                Format::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err((stage, e)) => {
            eprintln!("galois: {stage} failed: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::NotSolvable), 3);
        assert_eq!(exit_code(&Error::DegreeCap(10)), 3);
        assert_eq!(exit_code(&Error::PrecisionExhausted("tower".into())), 4);
    }
}

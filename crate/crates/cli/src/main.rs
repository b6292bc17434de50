//! `osalg`: command-line front end for the exterior-algebra toolkit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use osalg_core::Error;

#[derive(Parser, Debug)]
#[command(name = "osalg", version, about = "Orlik-Solomon algebras, resolutions over exterior algebras, and square-free modules")]
pub struct Cli {
    /// Ground field: Q or Fp:<prime>. Defaults to the field named in the input, else Q.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Number of resolution steps (or series terms).
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Largest internal degree for exactness checks.
    #[arg(long, global = true)]
    pub max_degree: Option<i32>,
    /// Seed for random sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Variables from smallest to largest, 1-based and comma-separated.
    #[arg(long, global = true)]
    pub order: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    /// The homology module, as the annihilator of the presentation ideal.
    Homology,
    /// The presentation ideal itself.
    Ideal,
    /// The quotient algebra.
    Algebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Kernel-by-kernel minimal resolution.
    Iterated,
    /// Tor against the residue field through the Cartan complex.
    Tor,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generators of the Orlik-Solomon ideal.
    OsIdeal { file: PathBuf },
    /// Circuits, broken circuits and nbc dimensions.
    Circuits { file: PathBuf },
    /// Characteristic and Poincare polynomials.
    CharPoly { file: PathBuf },
    /// Betti table of a module over the exterior algebra.
    Betti {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModuleKind::Homology)]
        module: ModuleKind,
        #[arg(long, value_enum, default_value_t = Engine::Iterated)]
        engine: Engine,
    },
    /// Asserts that a resolution is linear from its generator degree.
    CheckLinear {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModuleKind::Homology)]
        module: ModuleKind,
    },
    /// Socle dimensions of the Orlik-Solomon algebra.
    Socle { file: PathBuf },
    /// Linear equations of the singular variety.
    SingularVariety { file: PathBuf },
    /// Homology of multiplication by a linear form, given or sampled.
    LocalSystem {
        file: PathBuf,
        /// Comma-separated coefficients of the linear form.
        #[arg(long, allow_hyphen_values = true)]
        e: Option<String>,
        /// Number of random samples (requires --seed).
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Hilbert function of the BGG module against the Betti series.
    BggHilbert { file: PathBuf },
    /// Groebner basis and initial ideal.
    Groebner { file: PathBuf },
    /// Multigraded Betti numbers of a square-free monomial ideal over both rings.
    SfBetti { file: PathBuf },
    /// Alexander dual of a simplicial complex.
    AlexanderDual { file: PathBuf },
    /// Runs acceptance criteria on a fixture corpus.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        dir: PathBuf,
    },
}

/// Result of one command: the JSON payload, its text rendering, and whether
/// every asserted verdict held.
pub struct Outcome {
    pub payload: serde_json::Value,
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((field, out)) => {
            match cli.format {
                Format::Json => {
                    let report = serde_json::json!({
                        "command": commands::command_name(&cli.command),
                        "field": field.to_string(),
                        "passed": out.ok,
                        "payload": out.payload,
                    });
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                }
                Format::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Precondition(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

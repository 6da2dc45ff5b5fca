//! Command-line surface for the library: argument parsing, dispatch, and
//! result rendering. Every subcommand reads a problem description (a JSON
//! file or a named preset), runs one library operation, and prints a JSON or
//! table report. `verify` replays the built-in check suite on the presets.

pub mod commands;
pub mod render;
pub mod verify;

use cartanrep::algebra::AlgebraKind;
use clap::{Parser, Subcommand, ValueEnum};

const PROBLEM_HELP: &str =
    "Problem file path or preset name (a2_22, b2, b3, c3, g2, d962, affine_a1)";

#[derive(Debug, Parser)]
#[command(
    name = "cartanrep",
    version,
    about = "Exact representation theory of quivers attached to symmetrizable Cartan matrices"
)]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Coefficient field override: `q` or `fp:P` with P prime.
    #[arg(long, global = true)]
    pub field: Option<String>,

    /// Seed for randomized samples and isomorphism certificates.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Which of the two algebras attached to a problem a command works over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// The plain algebra: orientation arrows only.
    H,
    /// The preprojective algebra: doubled arrows with mesh relations.
    Pi,
}

impl From<Kind> for AlgebraKind {
    fn from(kind: Kind) -> AlgebraKind {
        match kind {
            Kind::H => AlgebraKind::H,
            Kind::Pi => AlgebraKind::Pi,
        }
    }
}

/// Canonical module families available to `module build`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    /// Generalized simple: free of rank one at one vertex.
    E,
    /// Simple top of the generalized simple.
    S,
    /// Indecomposable projective (plain algebra only).
    P,
    /// Indecomposable injective (plain algebra only).
    I,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a problem file and echo the derived constants.
    Cartan {
        #[command(subcommand)]
        action: CartanAction,
    },
    /// Root-system listings.
    Roots {
        #[command(subcommand)]
        action: RootsAction,
    },
    /// Quiver presentation of the algebras.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Build and check representation files.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Dimension of the morphism space between two module files.
    Hom {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
        /// Source module file.
        m: String,
        /// Target module file.
        n: String,
        /// Algebra the modules live over.
        #[arg(long, value_enum, default_value_t = Kind::H)]
        algebra: Kind,
    },
    /// Hom and extension dimensions between two module files.
    Ext {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
        /// Source module file.
        m: String,
        /// Target module file.
        n: String,
        /// Work over the preprojective algebra instead of the plain one.
        #[arg(long)]
        pi: bool,
    },
    /// Orbit of the inverse translation starting from one projective.
    TauOrbit {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
        /// Base vertex, 1-based.
        #[arg(long)]
        vertex: usize,
        /// Maximum number of orbit members to collect.
        #[arg(long, default_value_t = 256)]
        cap: usize,
    },
    /// Rank vectors of all translation-orbit members from projectives.
    Classify {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
    },
    /// Gorenstein-projective test for one module file.
    GpCheck {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
        /// Module file to test.
        module: String,
    },
    /// Run the built-in verification suite on the shipped presets.
    Verify {
        /// `all`, `dynkin`, or a single check name.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CartanAction {
    /// Validate the matrix data and report every derived constant.
    Check {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum RootsAction {
    /// List the positive roots of a Dynkin-type problem.
    List {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraAction {
    /// Vertices, loops, and arrows of the algebra, optionally with relations.
    Info {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
        /// Which algebra to present.
        #[arg(long, value_enum, default_value_t = Kind::H)]
        kind: Kind,
        /// Include the defining relations as strings.
        #[arg(long)]
        relations: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModuleAction {
    /// Construct a canonical module and emit its JSON.
    Build {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
        /// Module family to build.
        #[arg(long, value_enum, ignore_case = true)]
        kind: BuildKind,
        /// Base vertex, 1-based.
        #[arg(long)]
        vertex: usize,
        /// Algebra the module lives over.
        #[arg(long, value_enum, default_value_t = Kind::H)]
        algebra: Kind,
    },
    /// Check a representation file against the defining relations.
    Validate {
        #[arg(help = PROBLEM_HELP)]
        problem: String,
        /// Module file to check.
        module: String,
        /// Algebra the module lives over.
        #[arg(long, value_enum, default_value_t = Kind::H)]
        algebra: Kind,
    },
}

/// Runs a parsed command line and returns the process exit code: 0 on
/// success, 1 when the requested check fails or an operation errors.
pub fn run(cli: &Cli) -> i32 {
    match commands::dispatch(cli) {
        Ok(outcome) => {
            if !emit(&render::render(&outcome.value, cli.format)) {
                return 1;
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Prints one report to stdout. A closed pipe (the consumer stopped reading)
/// is quiet success; any other write failure is reported.
fn emit(text: &str) -> bool {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Ok(()) => true,
        Err(e) if e.kind() == ErrorKind::BrokenPipe => true,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            false
        }
    }
}

//! Command-line front end: reproducible runs over the gsft-core toolkit.
//!
//! Every report embeds its run manifest (command, input files, parameters,
//! tool version), so a report can be regenerated byte-for-byte from the
//! manifest alone. Exit codes are a stable contract: 0 for the success /
//! witness branch, 2 for the alternate mathematical outcome (free product
//! split, unsatisfiable window, no periodic configuration found), 1 for
//! errors of any kind.

mod commands;
mod load;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "gsft", version)]
#[command(about = "Subshifts of finite type over finitely generated groups: \
                   rewriting, extensions, and desk-scale verification")]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed recorded in the manifest; fixed default keeps runs reproducible
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable report
    Text,
    /// JSON with the same content
    Structured,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Structured => "structured",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Propagate rules along conjugated generators within right cosets
    /// (alphabet A × [k]; needs a coset table)
    Right,
    /// Impose the original rules on every left coset copy of the subgroup
    Free,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Right => "right",
            Mode::Free => "free",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a one-relator presentation to a zero-exponent witness or a
    /// free product split (exit 0 / exit 2)
    Rewrite {
        /// Presentation file: `< a b c | a b c >`, `#` comments allowed
        presentation: PathBuf,
    },

    /// Extend an SFT along a subgroup embedding; writes the extended SFT
    /// next to the input (`<stem>.<mode>.sft`)
    Extend {
        /// SFT file
        sft: PathBuf,
        /// Embedding file (subgroup generators, optional coset table)
        embedding: PathBuf,
        /// Extension construction
        #[arg(long, value_enum, default_value_t = Mode::Right)]
        mode: Mode,
        /// Skip the structural re-check of the embedded coset table
        #[arg(long)]
        unchecked: bool,
    },

    /// Backtracking search for an admissible coloring of a Cayley ball
    /// (satisfiable: exit 0; unsatisfiable or out of budget: exit 2)
    Tile {
        /// SFT file
        sft: PathBuf,
        /// Ball radius
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Backtracking node budget
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },

    /// Exhaustive strongly-periodic-configuration search over finite
    /// quotients (found: exit 0; none: exit 2)
    SearchPeriodic {
        /// SFT file
        sft: PathBuf,
        /// Coset table files, tried in order
        #[arg(required = true)]
        quotients: Vec<PathBuf>,
        /// Shared node budget
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        /// Skip the structural re-check of the quotient tables
        #[arg(long)]
        unchecked: bool,
    },

    /// Full certificate pipeline: rewrite, re-check the exponent
    /// homomorphism, extend a plug SFT, tile a ball, search quotients
    Analyze {
        /// Presentation file
        presentation: PathBuf,
        /// Plug SFT on the free subgroup; default is the built-in
        /// no-two-adjacent-1s shift of matching rank
        #[arg(long)]
        plug: Option<PathBuf>,
        /// Coset table file for the periodic search (repeatable)
        #[arg(long)]
        quotient: Vec<PathBuf>,
        /// Conjugate-exponent and tiling radius
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Node budget shared by tiling and the periodic search
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        /// Skip the structural re-check of the quotient tables
        #[arg(long)]
        unchecked: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(run) => {
            match cli.format {
                Format::Text => print!("{}", run.text),
                Format::Structured => {
                    let pretty = serde_json::to_string_pretty(&run.json)
                        .expect("report values contain no non-string keys");
                    println!("{pretty}");
                }
            }
            ExitCode::from(run.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

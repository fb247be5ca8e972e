//! Command-line front end. See the library's `cli` module for the dispatch
//! logic and exit-code table: 0 success, 2 validation failure, 3 undecided
//! at the coset limit, 4 parse or reference error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xmod2::cli::{self, Command, RunOutcome, UniversalKind};
use xmod2::format;
use xmod2::induced::{InducedOptions, DEFAULT_COSET_LIMIT, DEFAULT_RELATOR_CAP};

#[derive(Parser)]
#[command(
    name = "xmod2",
    about = "Crossed modules and 2-crossed modules over finite groups: \
             validation, pullback and induced constructions, push-outs, \
             and coset enumeration",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Clone)]
struct CommonIo {
    /// Input files in the declarative text format.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Write constructed objects to this file (text format).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the report to this file as well as stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Knobs {
    /// auto, epi, mono or general
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Hard bound on cosets defined during enumeration.
    #[arg(long, default_value_t = DEFAULT_COSET_LIMIT)]
    coset_limit: usize,
    /// Hard bound on instantiated relators.
    #[arg(long, default_value_t = DEFAULT_RELATOR_CAP)]
    relator_cap: usize,
    /// Use the alternative second-exchange relator form for comparison.
    #[arg(long)]
    compare_relators: bool,
}

impl Knobs {
    fn to_options(&self) -> Result<InducedOptions, xmod2::Error> {
        Ok(InducedOptions {
            strategy: cli::parse_strategy(&self.strategy)?,
            coset_limit: self.coset_limit,
            relator_cap: self.relator_cap,
            alt_exchange_relators: self.compare_relators,
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate every object and print a per-object report.
    Check {
        #[command(flatten)]
        io: CommonIo,
    },
    /// Pullback of a crossed module along a homomorphism.
    Pullback {
        /// Crossed module over Q.
        #[arg(long)]
        xmod: String,
        /// Homomorphism P -> Q.
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Pullback of a 2-crossed module along a homomorphism.
    Pullback2 {
        #[arg(long)]
        x2mod: String,
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Induced crossed module along a homomorphism.
    Induce {
        #[arg(long)]
        xmod: String,
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        knobs: Knobs,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Induced 2-crossed module along a pre-crossed morphism.
    Induce2 {
        #[arg(long)]
        x2mod: String,
        /// xmorphism from the module's base (M -> P) to the target (N -> Q).
        #[arg(long)]
        theta: String,
        #[command(flatten)]
        knobs: Knobs,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Push-out of two 2-crossed morphisms out of a common source; with only
    /// --left, the cokernel of that morphism.
    Pushout2 {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: Option<String>,
        #[command(flatten)]
        knobs: Knobs,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Peiffer commutators, the Peiffer subgroup, and the lifted 2-crossed
    /// module of a pre-crossed module.
    Peiffer {
        #[arg(long)]
        pxmod: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Collapse a 2-crossed module to a crossed module (M / Im d2).
    Reflect {
        #[arg(long)]
        x2mod: String,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Factor a crossed-module morphism through the pullback or induced
    /// module it determines.
    Universal {
        /// pullback or induced
        #[arg(long)]
        kind: String,
        /// xmorphism (h, phi) to factor.
        #[arg(long)]
        via: String,
        #[command(flatten)]
        knobs: Knobs,
        #[command(flatten)]
        io: CommonIo,
    },
    /// Factor a 2-crossed morphism through the pullback or induced module it
    /// determines.
    Universal2 {
        #[arg(long)]
        kind: String,
        /// x2morphism to factor.
        #[arg(long)]
        via: String,
        /// xmorphism theta (required for --kind induced).
        #[arg(long)]
        theta: Option<String>,
        #[command(flatten)]
        knobs: Knobs,
        #[command(flatten)]
        io: CommonIo,
    },
}

fn parse_kind(s: &str) -> Result<UniversalKind, xmod2::Error> {
    match s {
        "pullback" => Ok(UniversalKind::Pullback),
        "induced" => Ok(UniversalKind::Induced),
        other => Err(xmod2::Error::Mismatch(format!(
            "unknown kind {other:?} (expected pullback or induced)"
        ))),
    }
}

fn split(cmd: Cmd) -> Result<(CommonIo, Command), xmod2::Error> {
    Ok(match cmd {
        Cmd::Check { io } => (io, Command::Check),
        Cmd::Pullback { xmod, phi, io } => (io, Command::Pullback { nmod: xmod, phi }),
        Cmd::Pullback2 { x2mod, phi, io } => (io, Command::Pullback2 { x2mod, phi }),
        Cmd::Induce {
            xmod,
            phi,
            knobs,
            io,
        } => (
            io,
            Command::Induce {
                mmod: xmod,
                phi,
                opts: knobs.to_options()?,
            },
        ),
        Cmd::Induce2 {
            x2mod,
            theta,
            knobs,
            io,
        } => (
            io,
            Command::Induce2 {
                x2mod,
                theta,
                opts: knobs.to_options()?,
            },
        ),
        Cmd::Pushout2 {
            left,
            right,
            knobs,
            io,
        } => (
            io,
            Command::Pushout2 {
                left,
                right,
                opts: knobs.to_options()?,
            },
        ),
        Cmd::Peiffer { pxmod, io } => (io, Command::Peiffer { pxmod }),
        Cmd::Reflect { x2mod, io } => (io, Command::Reflect { x2mod }),
        Cmd::Universal {
            kind,
            via,
            knobs,
            io,
        } => (
            io,
            Command::Universal {
                kind: parse_kind(&kind)?,
                via,
                opts: knobs.to_options()?,
            },
        ),
        Cmd::Universal2 {
            kind,
            via,
            theta,
            knobs,
            io,
        } => (
            io,
            Command::Universal2 {
                kind: parse_kind(&kind)?,
                via,
                theta,
                opts: knobs.to_options()?,
            },
        ),
    })
}

fn execute() -> Result<RunOutcome, (i32, String)> {
    let cli = Cli::parse();
    let (io, command) = split(cli.command).map_err(|e| (cli::exit_code_for(&e), e.to_string()))?;
    let ws = format::parse_files(&io.files).map_err(|e| (cli::exit_code_for(&e), e.to_string()))?;
    let outcome = cli::run(&ws, &command).map_err(|e| (cli::exit_code_for(&e), e.to_string()))?;
    if let Some(path) = &io.report {
        std::fs::write(path, &outcome.report)
            .map_err(|e| (cli::EXIT_PARSE, format!("cannot write report: {e}")))?;
    }
    if let (Some(path), Some(output)) = (&io.out, &outcome.output) {
        std::fs::write(path, output)
            .map_err(|e| (cli::EXIT_PARSE, format!("cannot write output: {e}")))?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    match execute() {
        Ok(outcome) => {
            print!("{}", outcome.report);
            ExitCode::from(outcome.exit_code as u8)
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}

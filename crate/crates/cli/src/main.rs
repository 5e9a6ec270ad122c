mod commands;
mod io;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stosskit::ideal::ModuleSelector;
use stosskit::stanley::DEFAULT_BUDGET;
use stosskit::Field;

/// Exit status: success, negative answer, bad input, budget exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    No = 1,
    Usage = 2,
    Timeout = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Parser)]
#[command(name = "stosskit", version, about = "Stoss complexes, maximal lattices and Stanley projective dimension")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Q,
    F2,
    F3,
    F5,
    F7,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::Q => Field::Rational,
            FieldArg::F2 => Field::Prime(2),
            FieldArg::F3 => Field::Prime(3),
            FieldArg::F5 => Field::Prime(5),
            FieldArg::F7 => Field::Prime(7),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "I", alias = "i")]
    I,
}

impl From<SideArg> for ModuleSelector {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Q => ModuleSelector::Q,
            SideArg::I => ModuleSelector::I,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    FiveGen,
    SixGen,
    SevenGenIdeal,
    SevenGenQuotient,
    Counts,
    Stoss5,
    Stoss6,
    Trees,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LatticeInput {
    /// Lattice JSON `{"k", "elements"}`.
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Stoss complex JSON `{"k", "facets"}`; its maximal lattice is used.
    #[arg(long)]
    complex: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct IdealInput {
    /// Ideal JSON `{"n", "generators"}`.
    #[arg(long)]
    ideal: Option<PathBuf>,
    /// Lattice JSON; the ideal is realized from it.
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Stoss complex JSON; the ideal is realized from its maximal lattice.
    #[arg(long)]
    complex: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate stoss complexes up to isomorphism and write a manifest.
    Enumerate {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        dim: i32,
        #[arg(long, value_enum, default_value = "q")]
        field: FieldArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a deletion order certifying an spdim bound.
    Reduce {
        #[command(flatten)]
        input: LatticeInput,
        /// Target p (defaults to pdim on side Q and pdim - 1 on side I).
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, value_enum, default_value = "Q")]
        side: SideArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also accept reductions ending in P₂ (solves its integer program first).
        #[arg(long)]
        with_p2: bool,
        /// Certificate output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a Hilbert decomposition with parts of size ≥ depth exists.
    Certify {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long, value_enum, default_value = "Q")]
        side: SideArg,
        /// Part size h (defaults to computing the Hilbert depth).
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long)]
        export_lp: Option<PathBuf>,
        /// Only write the LP file.
        #[arg(long, requires = "export_lp")]
        no_solve: bool,
        #[arg(long)]
        emit_decomposition: Option<PathBuf>,
    },
    /// Replay a certificate or check a decomposition.
    Verify {
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        decomposition: Option<PathBuf>,
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
    /// Rerun a pipeline and compare against the expected constants.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        /// Directory for reports, checkpoints and case lists.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return Status::Usage.into();
        }
    }
    let result = match cli.command {
        Command::Enumerate { vertices, dim, field, out } => commands::enumerate(vertices, dim, field.into(), out),
        Command::Reduce { input, target, side, budget, with_p2, out } => {
            commands::reduce(input.lattice, input.complex, target, side.into(), budget, with_p2, out)
        }
        Command::Certify { input, side, depth, budget, export_lp, no_solve, emit_decomposition } => {
            commands::certify(commands::CertifyArgs {
                ideal: input.ideal,
                lattice: input.lattice,
                complex: input.complex,
                side: side.into(),
                depth,
                budget,
                export_lp,
                no_solve,
                emit_decomposition,
            })
        }
        Command::Verify { certificate, decomposition, lattice, complex, ideal } => {
            commands::verify(certificate, decomposition, lattice, complex, ideal)
        }
        Command::Reproduce { target, out, budget } => reproduce::run(target, out, budget),
    };
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            Status::Usage.into()
        }
    }
}

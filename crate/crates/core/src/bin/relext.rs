use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use relext::cli::{emit, exit_code, run, Format, JobSpec, Kind, LrCoefficients};
use relext::scalar::Field;

/// Exact relative Ext from monads: group, groupoid, Lie and Lie–Rinehart cohomology over Q and F_p.
#[derive(Parser)]
#[command(name = "relext", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scalar field: Q or Fp:<p>; overrides the definition file.
    #[arg(long, global = true, value_parser = parse_field)]
    scalar: Option<Field>,
    /// Highest cohomological degree reported.
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: usize,
    /// Highest cosimplicial degree built (default: max degree + 1).
    #[arg(long, global = true)]
    truncation: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Directory for cached results.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for per-degree parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coefficients {
    Ground,
    DegreeZero,
    Regular,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate any definition file.
    Validate { input: PathBuf },
    /// Group cohomology H^n(G, V).
    Group { input: PathBuf },
    /// Cohomology of a transitive groupoid, checked against its vertex group.
    Groupoid { input: PathBuf },
    /// Chevalley–Eilenberg cohomology H(g, V).
    Lie { input: PathBuf },
    /// Infinitesimal equivariant cohomology Ext_(Cg, g)(R, V).
    Eqext { input: PathBuf },
    /// Equivariant cohomology from the cosimplicial Maurer–Cartan algebra.
    Mc { input: PathBuf },
    /// Rinehart cohomology of a Lie–Rinehart algebra, with diagonal checks.
    Lr { input: PathBuf },
    /// Lie–Rinehart equivariant cohomology.
    Lreq {
        input: PathBuf,
        #[arg(long, value_enum)]
        coefficients: Option<Coefficients>,
    },
    /// Machine-check the monad isomorphism U ≅ T and its factorization through EG.
    Verify { input: PathBuf },
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::from_flag(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("warning: could not set thread count: {e}");
        }
    }
    let mut coefficients = None;
    let (kind, input) = match cli.command {
        Command::Validate { input } => (Kind::Validate, input),
        Command::Group { input } => (Kind::Group, input),
        Command::Groupoid { input } => (Kind::Groupoid, input),
        Command::Lie { input } => (Kind::Lie, input),
        Command::Eqext { input } => (Kind::EquivariantExt, input),
        Command::Mc { input } => (Kind::Mc, input),
        Command::Lr { input } => (Kind::Lr, input),
        Command::Lreq { input, coefficients: c } => {
            coefficients = c.map(|c| match c {
                Coefficients::Ground => LrCoefficients::Ground,
                Coefficients::DegreeZero => LrCoefficients::DegreeZero,
                Coefficients::Regular => LrCoefficients::Regular,
            });
            (Kind::LrEquivariant, input)
        }
        Command::Verify { input } => (Kind::Verify, input),
    };
    let format = match cli.format {
        OutputFormat::Table => Format::Table,
        OutputFormat::Machine => Format::Machine,
    };
    let spec = JobSpec {
        kind,
        input,
        scalar: cli.scalar,
        max_degree: cli.max_degree,
        truncation: cli.truncation,
        format,
        cache_dir: cli.cache_dir,
        coefficients,
    };
    let result = run(&spec);
    let code = exit_code(&result);
    match &result {
        Ok(t) => print!("{}", emit(t, format)),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}

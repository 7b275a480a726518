//! `qloop`: command line front end for qloop-core.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "qloop", version, about = "Exact computations for rank-one loop algebra models, l-weights and ADHM data")]
struct Cli {
    /// Worker threads (1 runs sequentially).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    /// Write JSON to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Drinfel'd relation checks on the rank-one model.
    #[command(subcommand)]
    Relations(RelationsCmd),
    /// q-characters, dominant monomials and Drinfel'd polynomials.
    #[command(subcommand)]
    Qchar(QcharCmd),
    /// Hall-Littlewood polynomial P_λ.
    Hl(HlArgs),
    /// Dimension of a quiver variety.
    Dim(DimArgs),
    /// ADHM data checks.
    #[command(subcommand)]
    Adhm(AdhmCmd),
    /// Quiver graph checks.
    #[command(subcommand)]
    Graph(GraphCmd),
}

#[derive(Subcommand, Debug)]
enum RelationsCmd {
    /// Run the relation grid for 1 ≤ N' ≤ N.
    Check(RelationsArgs),
}

#[derive(Args, Debug)]
struct RelationsArgs {
    #[arg(long = "N")]
    n: usize,
    /// Mode range `lo..hi`.
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true, value_parser = commands::parse_range)]
    modes: (i64, i64),
    /// Truncation order of the ψ series.
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Maximal degree of basis elements.
    #[arg(long, default_value_t = 2)]
    degree: u32,
    #[arg(long, hide = true)]
    negative_control: bool,
}

#[derive(Subcommand, Debug)]
enum QcharCmd {
    /// q-character of the standard module.
    Standard {
        #[arg(long = "type", default_value = "A1")]
        kind: String,
        /// Comma separated spectral parameters such as `a,b:1`.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        params: Vec<String>,
    },
    /// Product of q-characters read from files.
    Mult {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// l-dominant monomials of a q-character.
    Dominant { file: PathBuf },
    /// Drinfel'd polynomial of an l-dominant monomial.
    Drinfeld { file: PathBuf },
}

#[derive(Args, Debug)]
struct HlArgs {
    /// Parts of λ, comma separated.
    #[arg(long, value_delimiter = ',')]
    partition: Vec<u32>,
    #[arg(long)]
    vars: usize,
}

#[derive(Args, Debug)]
struct DimArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_delimiter = ',')]
    v: Vec<i64>,
    #[arg(long, value_delimiter = ',')]
    w: Vec<i64>,
}

#[derive(Subcommand, Debug)]
enum AdhmCmd {
    /// Moment map residual, stability and codim Im τ_k per vertex.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Parse a graph and print its Cartan matrix.
    Validate { file: PathBuf },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let exec = commands::setup_jobs(cli.jobs)?;
    let out = commands::Output::new(cli.out);
    match cli.command {
        Command::Relations(RelationsCmd::Check(a)) => {
            commands::relations(&out, exec, a.n, a.modes, a.order, a.degree, a.negative_control)
        }
        Command::Qchar(QcharCmd::Standard { kind, params }) => commands::qchar_standard(&out, exec, &kind, &params),
        Command::Qchar(QcharCmd::Mult { files }) => commands::qchar_mult(&out, exec, &files),
        Command::Qchar(QcharCmd::Dominant { file }) => commands::qchar_dominant(&out, &file),
        Command::Qchar(QcharCmd::Drinfeld { file }) => commands::qchar_drinfeld(&out, &file),
        Command::Hl(a) => commands::hl(&out, exec, &a.partition, a.vars),
        Command::Dim(a) => commands::dim(&out, &a.graph, &a.v, &a.w),
        Command::Adhm(AdhmCmd::Check { file }) => commands::adhm_check(&out, &file),
        Command::Graph(GraphCmd::Validate { file }) => commands::graph_validate(&out, &file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

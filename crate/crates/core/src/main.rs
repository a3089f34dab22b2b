use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cmposet::cli::{self, IdealFormat, Output};
use cmposet::Field;

#[derive(Parser)]
#[command(
    name = "cmposet",
    version,
    about = "Cohen-Macaulay tests for dimension-two posets and permutation graphs"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide Cohen-Macaulayness and print certificates.
    Analyze {
        file: PathBuf,
        /// Coefficient field for homology: gf2, gf<p>, or rat.
        #[arg(long, default_value = "gf2")]
        field: Field,
        /// Also run the link-homology oracle and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check all P_pi for pi in S_n.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "gf2")]
        field: Field,
        #[arg(long)]
        json: bool,
    },
    /// Reduced homology of the order complex or of a link.
    Homology {
        file: PathBuf,
        /// Comma-separated face whose link to use.
        #[arg(long, value_parser = parse_face_arg)]
        link: Option<FaceArg>,
        #[arg(long, default_value = "gf2")]
        field: Field,
    },
    /// Print a shelling order of the maximal chains.
    Shelling { file: PathBuf },
    /// Print the edge ideal of the co-comparability graph.
    ExportIdeal {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: IdealFormat,
    },
    /// Print the co-comparability graph.
    Graph { file: PathBuf },
}

#[derive(Clone)]
struct FaceArg(Vec<usize>);

fn parse_face_arg(text: &str) -> Result<FaceArg, String> {
    cli::parse_face(text).map(FaceArg)
}

fn with_input(file: &Path, run: impl FnOnce(&cli::InputSpec) -> Output) -> Output {
    match cli::load(file) {
        Ok(spec) => run(&spec),
        Err(e) => Output::input_error(e),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                cli::EXIT_INPUT as u8
            } else {
                0
            });
        }
    };
    let out = match args.command {
        Command::Analyze {
            file,
            field,
            oracle,
            json,
        } => with_input(&file, |s| cli::cmd_analyze(s, field, oracle, json)),
        Command::Sweep { n, field, json } => cli::cmd_sweep(n, field, json),
        Command::Homology { file, link, field } => with_input(&file, |s| {
            cli::cmd_homology(s, link.as_ref().map(|f| f.0.as_slice()), field)
        }),
        Command::Shelling { file } => with_input(&file, cli::cmd_shelling),
        Command::ExportIdeal { file, format } => {
            with_input(&file, |s| cli::cmd_export_ideal(s, format))
        }
        Command::Graph { file } => with_input(&file, cli::cmd_graph),
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}

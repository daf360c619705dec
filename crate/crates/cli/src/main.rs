use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use morita_cli::document::render_document;
use morita_cli::{run, Calculus, Command, Options};

/// Exit status: 0 pass, 1 fail, 2 unknown, 64 usage error, 74 output error.
#[derive(Parser, Debug)]
#[command(name = "morita", version, about = "Exact bicategory and Morita equivalence checks on finite instances")]
struct Cli {
    /// Seed for every randomized isomorphism search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report rendering; JSON is the stable format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Parse and validate instance documents.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Horizontally compose two 1-cells.
    Compose {
        #[arg(long, value_enum)]
        calculus: Calculus,
        lhs: PathBuf,
        rhs: PathBuf,
        /// Where to write the composite instance.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check unit, triangle, naturality and pentagon laws on all composable tuples.
    Coherence {
        #[arg(long, value_enum)]
        calculus: Calculus,
        /// Longest tuple checked (2..=4).
        #[arg(long, default_value_t = 4)]
        cap: usize,
        /// Sampled 2-cells per naturality square.
        #[arg(long, default_value_t = 2)]
        samples: usize,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Certify or refute a Morita equivalence.
    Morita {
        #[arg(long, value_enum)]
        calculus: Calculus,
        /// Bimodule dimension cap when searching between two algebras.
        #[arg(long)]
        cap: Option<usize>,
        /// Where to write the certificate (inverse, conjugate or bibundle).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Check that a certified equivalence induces an equivalence of representations.
    RepCheck {
        #[arg(long, value_enum)]
        calculus: Calculus,
        /// Module dimension or action size cap.
        #[arg(long)]
        cap: Option<usize>,
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let mut opts = Options {
        seed: cli.seed,
        cap: None,
    };
    let (command, out) = match cli.command {
        Sub::Validate { files } => (Command::Validate { files }, None),
        Sub::Compose { calculus, lhs, rhs, out } => (Command::Compose { calculus, lhs, rhs }, out),
        Sub::Coherence {
            calculus,
            cap,
            samples,
            files,
        } => {
            opts.cap = Some(cap);
            (Command::Coherence { calculus, files, samples }, None)
        }
        Sub::Morita { calculus, cap, out, files } => {
            opts.cap = cap;
            (Command::Morita { calculus, files }, out)
        }
        Sub::RepCheck { calculus, cap, file } => {
            opts.cap = cap;
            (Command::RepCheck { calculus, file }, None)
        }
    };
    let output = run(&command, &opts);
    let rendered = match cli.format {
        Format::Json => output.report.to_json(),
        Format::Text => output.report.to_text(),
    };
    print!("{rendered}");
    if let (Some(path), Some(doc)) = (out, &output.document) {
        if let Err(e) = std::fs::write(&path, render_document(doc)) {
            eprintln!("morita: cannot write {}: {e}", path.display());
            return ExitCode::from(74);
        }
    }
    output.report.status.into()
}

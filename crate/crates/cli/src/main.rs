use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use noloop_core::certifier::CertifyOptions;
use noloop_core::AlgebraBasis;
use noloopwb::commands::{self, build, load_algebra, load_diagram, CliError, CliResult, Outcome};
use noloopwb::corpus_run;

/// Exact computations with bound quiver algebras and no-loop certificates.
///
/// ALGEBRA is a path to a `.alg` file or the name of a bundled corpus entry.
/// Exit status: 0 pass or inconclusive, 1 a check failed, 2 bad input.
#[derive(Parser)]
#[command(name = "noloopwb", version)]
struct Cli {
    /// Also write line-delimited key=value records here.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basis of the algebra and of each indecomposable projective.
    Basis { algebra: String },
    /// Structure of P_x, optionally exported as a DOT graph.
    Projective {
        algebra: String,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_name = "FILE")]
        graph: Option<String>,
    },
    /// Projective dimension of a simple module, bounded by the depth.
    Pd {
        algebra: String,
        #[arg(long, value_name = "VERTEX")]
        simple: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Ray category: standardness, rays, irreducibles and long morphisms.
    Raycat {
        algebra: String,
        #[arg(long)]
        check_cancellation: bool,
    },
    /// Contours with both sides of length at most the bound.
    Contours {
        algebra: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Penny-farthing detection.
    Pennyfarthing { algebra: String },
    /// The neighborhood of a vertex.
    Neighborhood {
        algebra: String,
        #[arg(long)]
        vertex: String,
    },
    /// Checks a cleaving diagram and its functor into the ray category.
    Cleave {
        algebra: String,
        #[arg(long)]
        diagram: String,
        /// Representative path of a long morphism to set to zero first.
        #[arg(long, value_name = "RAY")]
        quotient_long: Option<String>,
    },
    /// Alpha-filtrations of P_x.
    Filtration {
        #[command(subcommand)]
        action: Filtration,
    },
    /// The complete no-loop pipeline at a vertex.
    Certify {
        algebra: String,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
        /// Run the exhaustive search even after a template verified.
        #[arg(long)]
        always_search: bool,
    },
    /// The bundled corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum Filtration {
    /// Verifies a chain file against the alpha-filtration axioms.
    Verify {
        algebra: String,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_name = "FILE")]
        chain: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Searches for a filtration of finite projective dimension.
    Search {
        algebra: String,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Checks every expectation of the bundled corpus.
    Run,
    /// Lists the bundled algebras and diagrams.
    List,
    /// Prints a bundled file.
    Show { name: String },
}

fn run(command: Command) -> CliResult<Outcome> {
    let algebra = |spec: &str| -> CliResult<Arc<AlgebraBasis>> { load_algebra(spec).and_then(|f| build(&f)) };
    match command {
        Command::Basis { algebra: s } => Ok(commands::basis(&*algebra(&s)?)),
        Command::Projective { algebra: s, vertex, graph } => commands::projective(&algebra(&s)?, &vertex, graph.as_deref()),
        Command::Pd { algebra: s, simple, depth } => commands::pd(&algebra(&s)?, &simple, depth),
        Command::Raycat { algebra: s, check_cancellation } => commands::raycat(&algebra(&s)?, check_cancellation),
        Command::Contours { algebra: s, max_len } => Ok(commands::contours(&*algebra(&s)?, max_len)),
        Command::Pennyfarthing { algebra: s } => Ok(commands::pennyfarthing(&*algebra(&s)?)),
        Command::Neighborhood { algebra: s, vertex } => commands::neighborhood(&*algebra(&s)?, &vertex),
        Command::Cleave { algebra: s, diagram, quotient_long } => {
            commands::cleave(&algebra(&s)?, &load_diagram(&diagram)?, quotient_long.as_deref())
        }
        Command::Filtration { action: Filtration::Verify { algebra: s, vertex, chain, depth } } => {
            let text = std::fs::read_to_string(&chain).map_err(|source| CliError::Io { path: chain.clone(), source })?;
            commands::filtration_verify(&algebra(&s)?, &vertex, &text, depth)
        }
        Command::Filtration { action: Filtration::Search { algebra: s, vertex, depth, budget } } => {
            commands::filtration_search(&algebra(&s)?, &vertex, depth, budget)
        }
        Command::Certify { algebra: s, vertex, depth, budget, always_search } => {
            commands::certify(&algebra(&s)?, &vertex, &CertifyOptions { depth, budget, always_search })
        }
        Command::Corpus { action: CorpusAction::Run } => Ok(corpus_run::run()),
        Command::Corpus { action: CorpusAction::List } => Ok(corpus_run::list()),
        Command::Corpus { action: CorpusAction::Show { name } } => corpus_run::show(&name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.render());
            if let Some(path) = cli.report {
                if let Err(e) = std::fs::write(&path, out.records_text()) {
                    eprintln!("error: {path}: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maxint_cli::commands::{self, CurveArgs, Model, QuerySource};
use maxint_cli::verify::{self, Context, Suite};
use maxint_cli::{thread_limit, CliError};

#[derive(Parser)]
#[command(name = "maxint", version, about = "Maximal intersection search over randomized document models")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Zipf,
    Hier,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Zipf => Model::Zipf,
            ModelArg::Hier => Model::Hier,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random collection.
    Gen {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Number of documents (hier defaults to 2^k).
        #[arg(long)]
        n: Option<usize>,
        /// Number of terms (zipf; defaults to n).
        #[arg(long)]
        m: Option<u32>,
        /// Number of levels (hier).
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the sorted prefix index of a collection.
    Index {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Answer one query with the prefix index.
    Query {
        #[arg(long)]
        collection: PathBuf,
        #[arg(long)]
        index: PathBuf,
        /// File with whitespace-separated term ranks.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        query_file: Option<PathBuf>,
        /// Draw the query from the collection's model.
        #[arg(long, requires = "seed")]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Also report the exact maximum intersection.
        #[arg(long)]
        oracle: bool,
    },
    /// Estimate any-match and prefix-match probability curves.
    Curve {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        q_min: usize,
        #[arg(long)]
        q_max: usize,
        /// Regenerate the collection for every trial.
        #[arg(long)]
        fresh_collections: bool,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run acceptance checks.
    Verify {
        #[arg(long, value_parser = ["oracle", "thresholds", "genericity", "zipflaw", "determinism", "all"])]
        suite: String,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = &mut io::stdout().lock();
    match cli.command {
        Cmd::Gen { model, n, m, k, seed, out } => {
            let spec = commands::model_spec(model.into(), n, m, k)?;
            commands::gen(spec, seed, &out)
        }
        Cmd::Index { input, out } => commands::index(&input, &out),
        Cmd::Query { collection, index, query_file, random, seed, oracle } => {
            let source = match (&query_file, random) {
                (Some(path), _) => QuerySource::File(path),
                (None, _) => QuerySource::Random { seed: seed.unwrap_or_default() },
            };
            commands::query(&collection, &index, source, oracle, stdout)
        }
        Cmd::Curve { model, n, m, k, trials, q_min, q_max, fresh_collections, seed, csv, svg } => {
            let spec = commands::model_spec(model.into(), n, m, k)?;
            let args = CurveArgs {
                spec,
                trials,
                q_min,
                q_max,
                fresh: fresh_collections,
                seed,
                csv: &csv,
                svg: svg.as_deref(),
            };
            commands::curve(&args, stdout)
        }
        Cmd::Verify { suite } => {
            let suites = Suite::parse(&suite).expect("clap restricts suite names");
            let ctx = Context { bin: std::env::current_exe()? };
            let reports = verify::run_suites(&suites, &ctx, |r| println!("{}", r.line()));
            let failed = reports.iter().filter(|r| !r.passed()).count();
            println!("{} of {} checks passed", reports.len() - failed, reports.len());
            if failed > 0 {
                return Err(CliError::Verification(failed));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match thread_limit() {
        Ok(None) => run(cli),
        Ok(Some(threads)) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| run(cli)),
            Err(e) => Err(CliError::Usage(e.into())),
        },
        Err(e) => Err(e),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use logcheb::CorpusId;
use logcheb_cli::commands::{self, Job};
use logcheb_cli::{alpha_sweep, parse_alpha_grid, table, thread_pool, Fixtures, Format};

const DEFAULT_FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/references.json");

#[derive(Parser)]
#[command(
    name = "logcheb",
    version,
    about = "Chebyshev + logarithmic interpolation experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FnArgs {
    /// Corpus function: const, log, k1 (i1), s1, s2, s3, k2 (i2, hankel), k3 (hallen).
    function: CorpusId,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    n1: usize,
    #[arg(long)]
    n2: usize,
    /// Split at an interior singularity first.
    #[arg(long)]
    split: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl FnArgs {
    fn job(&self) -> Job {
        Job {
            id: self.function,
            alpha: self.alpha,
            n1: self.n1,
            n2: self.n2,
            split: self.split,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce one of the error/timing tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=8))]
        id: u8,
        #[command(flatten)]
        output: Output,
    },
    /// K1 interpolation error as a function of the singularity location.
    AlphaSweep {
        #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        n2: usize,
        /// `start:stop:step` or a comma-separated list.
        #[arg(long, allow_hyphen_values = true, default_value = "-1:1:0.05")]
        alphas: String,
        #[arg(long)]
        split: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Fit a corpus function and print the coefficients as JSON.
    Fit(FnArgs),
    /// Integrate a corpus function over [-1, 1] and print the result as JSON.
    Quad(FnArgs),
    /// Recompute the reference integrals and write the fixture file.
    GenFixtures {
        #[arg(long, default_value = DEFAULT_FIXTURES)]
        out: PathBuf,
    },
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json(value: &serde_json::Value, out: &Option<PathBuf>) -> Result<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let pool = thread_pool()?;
    match cli.command {
        Command::Table { id, output } => {
            let report = pool.install(|| table(id))?;
            let mut w = sink(&output.out)?;
            report.write(output.format, &mut w)?;
            w.flush()?;
        }
        Command::AlphaSweep {
            n,
            n2,
            alphas,
            split,
            output,
        } => {
            let grid = parse_alpha_grid(&alphas).map_err(Usage)?;
            let report = pool.install(|| alpha_sweep(&n, n2, &grid, split))?;
            let mut w = sink(&output.out)?;
            report.write(output.format, &mut w)?;
            w.flush()?;
        }
        Command::Fit(args) => write_json(&commands::fit(&args.job())?, &args.out)?,
        Command::Quad(args) => write_json(&commands::quad(&args.job())?, &args.out)?,
        Command::GenFixtures { out } => {
            let fixtures = Fixtures::generate()?;
            std::fs::write(&out, fixtures.to_json()?)
                .with_context(|| format!("writing {}", out.display()))?;
            for r in &fixtures.references {
                log::info!(
                    "{} = {:.17e} {:+.17e}i (series gap {:.1e})",
                    r.name,
                    r.re,
                    r.im,
                    r.series_discrepancy
                );
            }
            eprintln!("wrote {}", out.display());
        }
    }
    Ok(())
}

/// Marks an error as a usage error (exit code 2).
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> u8 {
    use logcheb::Error as E;
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(
            E::SingularOperator { .. }
            | E::NotSolvable { .. }
            | E::SingularityOnGrid { .. }
            | E::EvaluationAtSingularPoint(_),
        ) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

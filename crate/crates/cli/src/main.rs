use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use salem_cli::commands;
use salem_cli::config::{FileConfig, FlagConfig, RunConfig};
use salem_cli::verify::Scope;
use salem_cli::{CliError, Result};
use salem_core::graph6::write_graph6;

#[derive(Parser, Debug)]
#[command(name = "salemgraph", version, about = "Exact spectral classification and enumeration of 1-Salem graphs")]
struct Cli {
    /// Optional TOML config file; flags take precedence over its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Enclosure width as an exact rational p/q.
    #[arg(long, global = true)]
    tol: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify graph6 lines from a file or standard input.
    Classify { input: Option<PathBuf> },
    /// Search E8 for the 1-Salem graphs that are not generalized line graphs.
    Census {
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Emit a graph6 corpus of family members.
    Families {
        #[arg(long)]
        select: String,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Run the verification suite.
    VerifyPaper {
        #[arg(long, default_value = "full")]
        scope: Scope,
    },
}

fn open_out(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<bool> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let mut flags = FlagConfig { tol: cli.tol, out: cli.out, ..Default::default() };
    match &cli.command {
        Command::Census { max_vertices, workers, checkpoint } => {
            flags.max_vertices = *max_vertices;
            flags.workers = *workers;
            flags.checkpoint = checkpoint.clone();
        }
        Command::Families { max_vertices, .. } => flags.max_vertices = *max_vertices,
        _ => {}
    }
    let cfg = RunConfig::resolve(flags, file)?;
    match cli.command {
        Command::Classify { input } => {
            let mut out = open_out(cfg.out.as_ref())?;
            let mut err = io::stderr().lock();
            let summary = match input {
                Some(p) => commands::classify(BufReader::new(File::open(&p).map_err(|e| CliError::io(&p, e))?), &mut out, &mut err, &cfg.tol)?,
                None => commands::classify(io::stdin().lock(), &mut out, &mut err, &cfg.tol)?,
            };
            out.flush()?;
            Ok(summary.errors == 0)
        }
        Command::Census { .. } => {
            let outcome = commands::census(&commands::CensusOptions {
                max_vertices: cfg.max_vertices,
                workers: cfg.workers,
                checkpoint: cfg.checkpoint.as_deref(),
            })?;
            let corpus_path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("census.g6"));
            let mut corpus = open_out(Some(&corpus_path))?;
            for line in &outcome.corpus {
                writeln!(corpus, "{line}")?;
            }
            corpus.flush()?;
            let mut stdout = io::stdout().lock();
            for line in commands::histogram_lines(&outcome.histogram) {
                writeln!(stdout, "{line}")?;
            }
            Ok(true)
        }
        Command::Families { select, .. } => {
            let max = cfg.max_vertices.unwrap_or(10);
            let mut out = open_out(cfg.out.as_ref())?;
            for (_, g) in commands::families(&select, max)? {
                writeln!(out, "{}", write_graph6(&g)?)?;
            }
            out.flush()?;
            Ok(true)
        }
        Command::VerifyPaper { scope } => {
            let mut out = open_out(cfg.out.as_ref())?;
            let lines = commands::verify_paper(scope, &mut out)?;
            out.flush()?;
            Ok(lines.iter().all(|l| l.passed))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("salemgraph: {e}");
            ExitCode::from(2)
        }
    }
}

//! Command-line driver: read a dataset, run one algorithm, write the JSON
//! report.
//!
//! Exit codes: 0 success, 2 configuration error, 3 input error, 4 integrity
//! or instance-size error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{ArgGroup, Parser, ValueEnum};

use crate::engine::{self, Algorithm, Mode, ObjectiveKind, RunConfig, RunReport, TreeShape};
use crate::error::{Error, Result};
use crate::ingest::{self, Dataset, Format};
use crate::objectives::{KCover, KDom, KMedoid, Localize, Neighborhood};
use crate::oracle::GroundSet;
use crate::report::ReportFile;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectiveArg {
    Kcover,
    Kdom,
    Kmedoid,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Edges,
    Fimi,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Simulate,
    Concurrent,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgorithmArg {
    Greedy,
    Randgreedi,
    Greedyml,
}

/// Distributed greedy maximization of monotone submodular functions.
#[derive(Debug, Parser)]
#[command(name = "greedyml", version)]
#[command(group(ArgGroup::new("shape").args(["branching", "levels"]).multiple(false)))]
struct Args {
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    format: FormatArg,
    /// Solution size.
    #[arg(long)]
    k: usize,
    /// Number of machines (leaves of the accumulation tree).
    #[arg(long, default_value_t = 1)]
    machines: usize,
    #[arg(long)]
    branching: Option<usize>,
    /// Number of accumulation levels; the smallest fitting branching factor
    /// is used.
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "simulate")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "greedyml")]
    algorithm: AlgorithmArg,
    /// Random points added to every accumulation step (k-medoid).
    #[arg(long, default_value_t = 0)]
    kmedoid_extra: usize,
    /// Output path; standard output when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Skip mean-centring and normalization of CSV rows.
    #[arg(long)]
    no_preprocess: bool,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => 2,
        Error::Parse { .. } | Error::Io(_) => 3,
        Error::Domain(_) | Error::GuardRail(_) | Error::Integrity(_) | Error::Json(_) => 4,
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&args) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("greedyml: {e}");
            exit_code(&e)
        }
    }
}

fn run(args: &Args) -> Result<()> {
    let algorithm = match args.algorithm {
        AlgorithmArg::Greedy => Algorithm::Greedy,
        AlgorithmArg::Randgreedi => Algorithm::RandGreedi,
        AlgorithmArg::Greedyml => Algorithm::GreedyMl,
    };
    let objective = match args.objective {
        ObjectiveArg::Kcover => ObjectiveKind::KCover,
        ObjectiveArg::Kdom => ObjectiveKind::KDom,
        ObjectiveArg::Kmedoid => ObjectiveKind::KMedoid,
    };
    let format = match args.format {
        FormatArg::Edges => Format::Edges,
        FormatArg::Fimi => Format::Fimi,
        FormatArg::Csv => Format::Csv,
    };
    let expected = match objective {
        ObjectiveKind::KCover => Format::Fimi,
        ObjectiveKind::KDom => Format::Edges,
        ObjectiveKind::KMedoid => Format::Csv,
    };
    if format != expected {
        return Err(Error::config(format!(
            "objective {objective:?} reads {expected:?} files, not {format:?}"
        )));
    }

    let cfg = build_config(args, objective, algorithm)?;

    let t = Instant::now();
    let (data, _descriptor) = ingest::load(&args.input, format, !args.no_preprocess)?;
    let ingest_s = t.elapsed().as_secs_f64();

    let (run, ground) = match data {
        Dataset::Family(f) => solve(&cfg, algorithm, &KCover::new(f.family))?,
        Dataset::Graph(g) => solve(&cfg, algorithm, &KDom::from_shared(Arc::new(g), Neighborhood::Open))?,
        Dataset::Points(p) => solve(&cfg, algorithm, &KMedoid::new(p))?,
    };

    let json = ReportFile::new(&run, &ground, ingest_s).to_json()?;
    match &args.report {
        Some(path) => fs::write(path, json)?,
        None => std::io::stdout().lock().write_all(json.as_bytes())?,
    }
    Ok(())
}

fn build_config(args: &Args, objective: ObjectiveKind, algorithm: Algorithm) -> Result<RunConfig> {
    let shape = match (args.branching, args.levels, algorithm) {
        (Some(b), _, _) => TreeShape::Branching(b),
        (None, Some(l), _) => TreeShape::Levels(l),
        (None, None, Algorithm::Greedy) => TreeShape::Levels(0),
        (None, None, Algorithm::RandGreedi) => TreeShape::Levels(1),
        (None, None, Algorithm::GreedyMl) => {
            return Err(Error::config("one of --branching or --levels is required"));
        }
    };
    let (machines, shape) = match algorithm {
        // tree flags are validated but play no part in a sequential run
        Algorithm::Greedy => {
            if let TreeShape::Branching(b) = shape {
                if b < 2 {
                    return Err(Error::config("branching factor must be at least 2"));
                }
            }
            (1, TreeShape::Levels(0))
        }
        _ => (args.machines, shape),
    };
    let mode = match args.mode {
        ModeArg::Simulate => Mode::Simulate,
        ModeArg::Concurrent => Mode::Concurrent,
    };
    Ok(RunConfig::new(objective, args.k, machines, shape)?
        .seed(args.seed)
        .mode(mode)
        .kmedoid_extra(args.kmedoid_extra))
}

fn solve<O: Localize>(cfg: &RunConfig, algorithm: Algorithm, oracle: &O) -> Result<(RunReport, GroundSet)> {
    let run = match algorithm {
        Algorithm::Greedy => engine::run_sequential(cfg, oracle)?,
        Algorithm::RandGreedi => engine::run_randgreedi(cfg, oracle)?,
        Algorithm::GreedyMl => engine::run_greedyml(cfg, oracle)?,
    };
    Ok((run, oracle.ground().clone()))
}

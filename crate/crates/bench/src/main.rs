use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gavsa_bench::config::{read_config, SEED_ENV};
use gavsa_bench::{run, to_csv, ExperimentConfig, ExperimentKind, Model};
use gavsa_core::encoding::{Construction, Measure, QuestionMode};

#[derive(Parser)]
#[command(name = "gavsa-bench", version, about = "Recognition experiments for the geometric-algebra model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recognition percentage per N.
    Recognize(Flags),
    /// Mean number of potential answers per N, with the closed-form estimate.
    Potential(Flags),
    /// Fraction of trials where the correct answer is a potential answer.
    Cancel(Flags),
    /// GA against HRR and BSC at equal and scaled vector lengths.
    Compare(Flags),
    /// Closed-form estimates only.
    Estimate(Flags),
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Plate,
    Ao,
    AoOdd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rhs,
    Reversed,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Inner,
    Hamming,
    HammingSupport,
    Euclid,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Ga,
    Hrr,
    Bsc,
}

#[derive(Args)]
struct Flags {
    /// Question id such as `PSmith#name`; repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',')]
    question: Vec<String>,
    #[arg(long)]
    n_min: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    n_step: Option<u32>,
    #[arg(long)]
    trials: Option<u32>,
    /// Master seed; falls back to $GAVSA_SEED, then the config file.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    construction: Option<ConstructionArg>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    measure: Option<MeasureArg>,
    #[arg(long, value_enum, value_delimiter = ',')]
    models: Vec<ModelArg>,
    /// Baseline vector length as a multiple of N.
    #[arg(long)]
    length_multiplier: Option<usize>,
    /// Rank by the matrix measure only among the top inner-product answers.
    #[arg(long)]
    restrict_to_top: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Flat key=value file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_config(kind: ExperimentKind, f: &Flags) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::new(kind);
    if let Some(path) = &f.config {
        let settings = read_config(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.apply(&settings)?;
    }
    if let Ok(seed) = std::env::var(SEED_ENV) {
        cfg.seed = seed
            .trim()
            .parse()
            .with_context(|| format!("{SEED_ENV}={seed} is not an integer"))?;
    }
    if !f.question.is_empty() {
        cfg.questions = f.question.clone();
    }
    if let Some(v) = f.n_min {
        cfg.n_min = v;
    }
    if let Some(v) = f.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = f.n_step {
        cfg.n_step = v;
    }
    if let Some(v) = f.trials {
        cfg.trials = v;
    }
    if let Some(v) = f.seed {
        cfg.seed = v;
    }
    if let Some(c) = f.construction {
        cfg.construction = match c {
            ConstructionArg::Plate => Construction::Plate,
            ConstructionArg::Ao => Construction::AgentObject,
            ConstructionArg::AoOdd => Construction::AgentObjectOdd,
        };
    }
    if let Some(m) = f.mode {
        cfg.mode = Some(match m {
            ModeArg::Rhs => QuestionMode::RightHandSide,
            ModeArg::Reversed => QuestionMode::AppropriateReversed,
        });
    }
    if let Some(m) = f.measure {
        cfg.measure = match m {
            MeasureArg::Inner => Measure::InnerOnly,
            MeasureArg::Hamming => Measure::Hamming,
            MeasureArg::HammingSupport => Measure::HammingSupport,
            MeasureArg::Euclid => Measure::Euclidean,
        };
    }
    if !f.models.is_empty() {
        cfg.models = f
            .models
            .iter()
            .map(|m| match m {
                ModelArg::Ga => Model::Ga,
                ModelArg::Hrr => Model::Hrr,
                ModelArg::Bsc => Model::Bsc,
            })
            .collect();
    }
    if f.length_multiplier.is_some() {
        cfg.length_multiplier = f.length_multiplier;
    }
    if f.restrict_to_top {
        cfg.restrict_to_top = true;
    }
    if f.threads.is_some() {
        cfg.threads = f.threads;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (kind, flags) = match &cli.command {
        Command::Recognize(f) => (ExperimentKind::Recognize, f),
        Command::Potential(f) => (ExperimentKind::Potential, f),
        Command::Cancel(f) => (ExperimentKind::Cancel, f),
        Command::Compare(f) => (ExperimentKind::Compare, f),
        Command::Estimate(f) => (ExperimentKind::Estimate, f),
    };
    let cfg = build_config(kind, flags)?;
    eprintln!(
        "{kind}: questions={} N={}..={} step {} trials={} seed={}",
        cfg.questions.join(","),
        cfg.n_min,
        cfg.n_max,
        cfg.n_step,
        cfg.trials,
        cfg.seed
    );
    let start = Instant::now();
    let rows = run(&cfg)?;
    let csv = to_csv(&rows);
    match &flags.out {
        Some(path) => {
            std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{csv}"),
    }
    eprintln!("done in {:.1}s", start.elapsed().as_secs_f64());
    Ok(())
}

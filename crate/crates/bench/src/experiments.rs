use gavsa_core::analysis::{
    cancellation_probability, expected_potential_answers_general,
    expected_potential_answers_simple, MemoryProfile,
};
use gavsa_core::baselines::{Bsc, Hrr, VectorMemory, VectorModel};
use gavsa_core::corpus::{atom_specs, build_table1, find_question, sentence_specs, QuestionCase};
use gavsa_core::encoding::{
    recognize, Construction, Measure, QuestionMode, RecognitionOptions, TrialOutcome,
};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, ExperimentKind, Model};
use crate::output::Row;
use crate::stream::substream;
use crate::BenchError;

type Result<T> = std::result::Result<T, BenchError>;

/// Runs the experiment named by `config.kind`.
pub fn run(config: &ExperimentConfig) -> Result<Vec<Row>> {
    match config.kind {
        ExperimentKind::Recognize => run_recognition(config),
        ExperimentKind::Potential => run_potential_answers(config),
        ExperimentKind::Cancel => run_cancellation(config),
        ExperimentKind::Compare => run_comparison(config),
        ExperimentKind::Estimate => run_estimates(config),
    }
}

fn with_pool<T: Send>(config: &ExperimentConfig, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()?;
    pool.install(f)
}

fn case(id: &str) -> Result<QuestionCase> {
    find_question(id).map_err(|_| BenchError::UnknownQuestion(id.to_string()))
}

fn cases(config: &ExperimentConfig) -> Result<Vec<QuestionCase>> {
    config.questions.iter().map(|q| case(q)).collect()
}

/// Structural blade counts do not depend on the draw, so any stream will do.
fn table_profile(construction: Construction, n: u32) -> Result<MemoryProfile> {
    let mut rng = substream(0, &["profile"], n, 0);
    Ok(build_table1(&mut rng, n, construction)?.1.profile())
}

/// Largest blade count of an item in the memory under `construction`.
pub fn dynamic_k(construction: Construction) -> Result<usize> {
    Ok(table_profile(construction, 8)?.max_blades())
}

struct Row0<'a> {
    config: &'a ExperimentConfig,
    experiment: &'a str,
    question: &'a str,
}

impl Row0<'_> {
    #[allow(clippy::too_many_arguments)]
    fn row(&self, model: &str, construction: &str, mode: &str, measure: &str, n: u32, trials: u32, value: f64) -> Row {
        Row {
            experiment: self.experiment.to_string(),
            model: model.to_string(),
            question: self.question.to_string(),
            construction: construction.to_string(),
            mode: mode.to_string(),
            measure: measure.to_string(),
            n,
            trials,
            seed: self.config.seed,
            value,
        }
    }
}

fn ga_trials(
    config: &ExperimentConfig,
    labels: &[&str],
    case: &QuestionCase,
    n: u32,
    construction: Construction,
    mode: QuestionMode,
    measure: Measure,
) -> Result<Vec<TrialOutcome>> {
    let options = RecognitionOptions {
        measure,
        restrict_to_top: config.restrict_to_top,
    };
    (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(config.seed, labels, n, t);
            let (_, memory) = build_table1(&mut rng, n, construction)?;
            Ok(recognize(&memory, case.item, case.question, case.expected, mode, options)?)
        })
        .collect()
}

fn baseline_trials<M>(
    config: &ExperimentConfig,
    labels: &[&str],
    model: M,
    case: &QuestionCase,
    n: u32,
    construction: Construction,
) -> Result<u32>
where
    M: VectorModel + Copy + Send + Sync,
{
    let atoms = atom_specs();
    let sentences = sentence_specs();
    let hits: Vec<bool> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(config.seed, labels, n, t);
            let memory = VectorMemory::build(model, &atoms, &sentences, construction, &mut rng)?;
            Ok(memory.recognize(case.item, case.question, case.expected)?)
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().filter(|&h| h).count() as u32)
}

fn percent(hits: u32, trials: u32) -> f64 {
    100.0 * f64::from(hits) / f64::from(trials)
}

fn baseline_percent(
    config: &ExperimentConfig,
    labels: &[&str],
    model: Model,
    case: &QuestionCase,
    n: u32,
    length: usize,
    construction: Construction,
) -> Result<f64> {
    let hits = match model {
        Model::Hrr => baseline_trials(config, labels, Hrr { dimension: length }, case, n, construction)?,
        Model::Bsc => baseline_trials(config, labels, Bsc { dimension: length }, case, n, construction)?,
        Model::Ga => unreachable!("GA is not a vector baseline"),
    };
    Ok(percent(hits, config.trials))
}

fn baseline_measure(model: Model) -> &'static str {
    match model {
        Model::Hrr => "dot",
        Model::Bsc => "agreement",
        Model::Ga => unreachable!(),
    }
}

fn require_ga_only(config: &ExperimentConfig) -> Result<()> {
    if config.models.iter().any(|&m| m != Model::Ga) {
        return Err(BenchError::InvalidCombination(format!(
            "{} is defined for the ga model only",
            config.kind
        )));
    }
    Ok(())
}

/// Percentage of trials in which the expected answer is recognized.
pub fn run_recognition(config: &ExperimentConfig) -> Result<Vec<Row>> {
    let has_baseline = config.models.iter().any(|&m| m != Model::Ga);
    if has_baseline && config.measure != Measure::InnerOnly {
        return Err(BenchError::InvalidCombination(format!(
            "{} measure needs matrix signatures, which vector baselines lack",
            config.measure
        )));
    }
    if has_baseline && config.construction == Construction::AgentObjectOdd {
        return Err(BenchError::InvalidCombination(
            "odding blades have no vector-model analogue".into(),
        ));
    }
    let cases = cases(config)?;
    with_pool(config, || {
        let multiplier = match config.length_multiplier {
            Some(m) => m,
            None => dynamic_k(config.construction)?,
        };
        let c = config.construction.as_str();
        let mut rows = Vec::new();
        for case in &cases {
            let mode = config.mode.unwrap_or(case.mode);
            let r0 = Row0 { config, experiment: "recognize", question: case.id };
            for n in config.dimensions() {
                for &model in &config.models {
                    if model == Model::Ga {
                        let labels = ["recognize", "ga", case.id, c, mode.as_str(), config.measure.as_str()];
                        let outcomes = ga_trials(config, &labels, case, n, config.construction, mode, config.measure)?;
                        let hits = outcomes.iter().filter(|o| o.correct).count() as u32;
                        rows.push(r0.row("ga", c, mode.as_str(), config.measure.as_str(), n, config.trials, percent(hits, config.trials)));
                    } else {
                        let labels = ["recognize", model.as_str(), case.id, c];
                        let length = n as usize * multiplier;
                        let value = baseline_percent(config, &labels, model, case, n, length, config.construction)?;
                        rows.push(r0.row(model.as_str(), c, "-", baseline_measure(model), n, config.trials, value));
                    }
                }
            }
        }
        Ok(rows)
    })
}

/// Mean `|𝒜|` per `N`, next to the closed-form estimate where the question has one.
pub fn run_potential_answers(config: &ExperimentConfig) -> Result<Vec<Row>> {
    require_ga_only(config)?;
    let cases = cases(config)?;
    with_pool(config, || {
        let c = config.construction.as_str();
        let mut rows = Vec::new();
        for case in &cases {
            let mode = config.mode.unwrap_or(case.mode);
            let r0 = Row0 { config, experiment: "potential", question: case.id };
            for n in config.dimensions() {
                let labels = ["potential", "ga", case.id, c, mode.as_str()];
                let outcomes = ga_trials(config, &labels, case, n, config.construction, mode, Measure::InnerOnly)?;
                let total: usize = outcomes.iter().map(|o| o.potential_count).sum();
                let mean = total as f64 / f64::from(config.trials);
                rows.push(r0.row("ga", c, mode.as_str(), "inner", n, config.trials, mean));

                // The known potential answers are counted for agent-object memories.
                if let (Some(answer), Construction::AgentObject) = (&case.estimator, config.construction) {
                    let profile = table_profile(config.construction, n)?;
                    let value = expected_potential_answers_general(&profile, answer)?;
                    rows.push(r0.row("estimate", c, mode.as_str(), "inner", n, 0, value));
                }
            }
        }
        Ok(rows)
    })
}

/// Fraction of trials whose correct answer survives into `𝒜`, with the
/// complete-cancellation asymptote.
pub fn run_cancellation(config: &ExperimentConfig) -> Result<Vec<Row>> {
    require_ga_only(config)?;
    let cases = cases(config)?;
    with_pool(config, || {
        let c = config.construction.as_str();
        let mut rows = Vec::new();
        for case in &cases {
            let mode = config.mode.unwrap_or(case.mode);
            let r0 = Row0 { config, experiment: "cancel", question: case.id };
            for n in config.dimensions() {
                let labels = ["cancel", "ga", case.id, c, mode.as_str()];
                let outcomes = ga_trials(config, &labels, case, n, config.construction, mode, Measure::InnerOnly)?;
                let kept = outcomes.iter().filter(|o| o.correct_in_potential).count() as u32;
                rows.push(r0.row("ga", c, mode.as_str(), "inner", n, config.trials, f64::from(kept) / f64::from(config.trials)));

                let mut rng = substream(0, &["profile"], n, 0);
                let (_, memory) = build_table1(&mut rng, n, config.construction)?;
                let blades = memory
                    .get(case.expected)
                    .map(|it| it.blade_count)
                    .ok_or_else(|| BenchError::UnknownQuestion(case.id.to_string()))?;
                let asymptote = if blades % 2 == 0 {
                    let p = cancellation_probability(blades as u32 / 2);
                    1.0 - *p.numer() as f64 / *p.denom() as f64
                } else {
                    1.0
                };
                rows.push(r0.row("asymptote", c, mode.as_str(), "inner", n, 0, asymptote));
            }
        }
        Ok(rows)
    })
}

/// GA against HRR and BSC, with vectors of length `N` and of length `K·N`.
pub fn run_comparison(config: &ExperimentConfig) -> Result<Vec<Row>> {
    let cases = cases(config)?;
    with_pool(config, || {
        let k = match config.length_multiplier {
            Some(m) => m,
            None => dynamic_k(config.construction)?,
        };
        // Odding has no vector analogue; baselines use the plain construction.
        let baseline_construction = match config.construction {
            Construction::AgentObjectOdd => Construction::AgentObject,
            other => other,
        };
        let c = config.construction.as_str();
        let bc = baseline_construction.as_str();
        let mut rows = Vec::new();
        for case in &cases {
            let mode = config.mode.unwrap_or(QuestionMode::RightHandSide);
            for n in config.dimensions() {
                for &model in &config.models {
                    if model == Model::Ga {
                        let labels = ["compare", "ga", case.id, c, mode.as_str(), config.measure.as_str()];
                        let outcomes = ga_trials(config, &labels, case, n, config.construction, mode, config.measure)?;
                        let hits = outcomes.iter().filter(|o| o.correct).count() as u32;
                        let value = percent(hits, config.trials);
                        for experiment in ["compare-equal", "compare-scaled"] {
                            let r0 = Row0 { config, experiment, question: case.id };
                            rows.push(r0.row("ga", c, mode.as_str(), config.measure.as_str(), n, config.trials, value));
                        }
                        continue;
                    }
                    for (experiment, length) in [("compare-equal", n as usize), ("compare-scaled", k * n as usize)] {
                        let labels = [experiment, model.as_str(), case.id, bc];
                        let value = baseline_percent(config, &labels, model, case, n, length, baseline_construction)?;
                        let r0 = Row0 { config, experiment, question: case.id };
                        rows.push(r0.row(model.as_str(), bc, "-", baseline_measure(model), n, config.trials, value));
                    }
                }
            }
        }
        Ok(rows)
    })
}

/// Closed-form estimates only: the one-atom formula with three noisy blades
/// and the general formula for every question that carries a profile.
pub fn run_estimates(config: &ExperimentConfig) -> Result<Vec<Row>> {
    let cases = cases(config)?;
    config.validate()?;
    let mut rows = Vec::new();
    for n in config.dimensions() {
        let profile = table_profile(Construction::AgentObject, n)?;
        let r0 = Row0 { config, experiment: "estimate", question: "simple(L_noise=3)" };
        let simple = expected_potential_answers_simple(&profile, 3)?;
        rows.push(r0.row("estimate", "ao", "-", "inner", n, 0, simple));
        for case in &cases {
            if let Some(answer) = &case.estimator {
                let r0 = Row0 { config, experiment: "estimate", question: case.id };
                let value = expected_potential_answers_general(&profile, answer)?;
                rows.push(r0.row("estimate", "ao", case.mode.as_str(), "inner", n, 0, value));
            }
        }
    }
    Ok(rows)
}

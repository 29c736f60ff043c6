use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use gavsa_core::encoding::{Construction, Measure, QuestionMode};

use crate::BenchError;

/// Environment variable consulted for the master seed when no flag is given.
pub const SEED_ENV: &str = "GAVSA_SEED";

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentKind {
    Recognize,
    Potential,
    Cancel,
    Compare,
    Estimate,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Recognize => "recognize",
            ExperimentKind::Potential => "potential",
            ExperimentKind::Cancel => "cancel",
            ExperimentKind::Compare => "compare",
            ExperimentKind::Estimate => "estimate",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Ga,
    Hrr,
    Bsc,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Ga => "ga",
            Model::Hrr => "hrr",
            Model::Bsc => "bsc",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "ga" => Ok(Model::Ga),
            "hrr" => Ok(Model::Hrr),
            "bsc" => Ok(Model::Bsc),
            _ => Err(BenchError::Config(format!("unknown model `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub questions: Vec<String>,
    pub construction: Construction,
    /// `None` uses each question's catalog default.
    pub mode: Option<QuestionMode>,
    pub measure: Measure,
    pub n_min: u32,
    pub n_max: u32,
    pub n_step: u32,
    pub trials: u32,
    pub seed: u64,
    pub models: Vec<Model>,
    /// Baseline vector length as a multiple of `N`. `None` means the largest
    /// blade count of the GA memory under the configured construction.
    pub length_multiplier: Option<usize>,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
    /// Restrict the matrix measure to the top inner-product set.
    pub restrict_to_top: bool,
}

impl ExperimentConfig {
    /// Defaults for each experiment kind.
    pub fn new(kind: ExperimentKind) -> Self {
        let (questions, construction, measure, models) = match kind {
            ExperimentKind::Recognize => (
                vec!["PSmith#name"],
                Construction::Plate,
                Measure::InnerOnly,
                vec![Model::Ga],
            ),
            ExperimentKind::Potential | ExperimentKind::Estimate => (
                vec!["(1b)#bite_agt", "(1b)#bite_obj", "(4a)#cause_obj"],
                Construction::AgentObject,
                Measure::InnerOnly,
                vec![Model::Ga],
            ),
            ExperimentKind::Cancel => (
                vec!["(5a)#see_obj", "(5b)#see_obj"],
                Construction::AgentObject,
                Measure::InnerOnly,
                vec![Model::Ga],
            ),
            ExperimentKind::Compare => (
                vec!["PSmith#name"],
                Construction::AgentObjectOdd,
                Measure::Hamming,
                vec![Model::Ga, Model::Hrr, Model::Bsc],
            ),
        };
        Self {
            kind,
            questions: questions.into_iter().map(String::from).collect(),
            construction,
            mode: None,
            measure,
            n_min: 4,
            n_max: 20,
            n_step: 1,
            trials: 1000,
            seed: DEFAULT_SEED,
            models,
            length_multiplier: None,
            threads: None,
            restrict_to_top: false,
        }
    }

    pub fn dimensions(&self) -> Vec<u32> {
        (self.n_min..=self.n_max).step_by(self.n_step as usize).collect()
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.trials == 0 && self.kind != ExperimentKind::Estimate {
            return Err(BenchError::Config("trials must be at least 1".into()));
        }
        if self.n_step == 0 || self.n_min == 0 || self.n_min > self.n_max {
            return Err(BenchError::Config(format!(
                "empty dimension range {}..={} step {}",
                self.n_min, self.n_max, self.n_step
            )));
        }
        if self.questions.is_empty() {
            return Err(BenchError::Config("no question given".into()));
        }
        if self.models.is_empty() {
            return Err(BenchError::Config("no model given".into()));
        }
        Ok(())
    }

    /// Applies `key=value` settings on top of the current values.
    pub fn apply(&mut self, settings: &BTreeMap<String, String>) -> Result<(), BenchError> {
        for (key, value) in settings {
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), BenchError> {
        let bad = |e: &dyn fmt::Display| BenchError::Config(format!("{key}: {e}"));
        match key {
            "question" => self.questions = split_list(value),
            "construction" => self.construction = value.parse().map_err(|e| bad(&e))?,
            "mode" => self.mode = Some(value.parse().map_err(|e| bad(&e))?),
            "measure" => self.measure = value.parse().map_err(|e| bad(&e))?,
            "n-min" => self.n_min = value.parse().map_err(|e| bad(&e))?,
            "n-max" => self.n_max = value.parse().map_err(|e| bad(&e))?,
            "n-step" => self.n_step = value.parse().map_err(|e| bad(&e))?,
            "trials" => self.trials = value.parse().map_err(|e| bad(&e))?,
            "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
            "models" => {
                self.models = split_list(value)
                    .iter()
                    .map(|m| m.parse())
                    .collect::<Result<_, _>>()?
            }
            "length-multiplier" => self.length_multiplier = Some(value.parse().map_err(|e| bad(&e))?),
            "threads" => self.threads = Some(value.parse().map_err(|e| bad(&e))?),
            "restrict-to-top" => self.restrict_to_top = value.parse().map_err(|e| bad(&e))?,
            _ => return Err(BenchError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Flat `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, BenchError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| BenchError::Config(format!("line {}: expected key=value", i + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, BenchError> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

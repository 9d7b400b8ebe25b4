//! End-to-end ranking strategies over one dataset and configuration.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::features::extract_features;
use crate::ingest::{Method, ResolvedConfig};
use crate::mcda::{promethee_matrix, promethee_tensor, topsis_tensor, PreferenceMatrix, RankResult};
use crate::predict::{predict_tensor, PredictionReport};
use crate::tensor::{DecisionTensor, FeatureTensor, TimeSeriesPanel};

/// Which data a ranking is built from, relative to the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Adaptive predictions for the `horizon` steps after the cutoff.
    Predicted,
    /// The last `window` observations up to and including the cutoff.
    PastWindow,
    /// The snapshot at the cutoff.
    Current,
    /// Observed data for the `horizon` steps after the cutoff.
    Actual,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Predicted => "predicted",
            Source::PastWindow => "past-window",
            Source::Current => "current",
            Source::Actual => "actual",
        })
    }
}

impl FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "predicted" => Ok(Source::Predicted),
            "past-window" => Ok(Source::PastWindow),
            "current" => Ok(Source::Current),
            "actual" => Ok(Source::Actual),
            _ => Err(Error::Validation(format!("unknown source '{s}'"))),
        }
    }
}

/// Observations from the first label through the cutoff.
pub fn training_data(data: &DecisionTensor, cfg: &ResolvedConfig) -> Result<DecisionTensor> {
    data.window(data.times()[0], cfg.cutoff)
}

pub fn past_window(data: &DecisionTensor, cfg: &ResolvedConfig) -> Result<DecisionTensor> {
    let end = data.time_index(cfg.cutoff)? + 1;
    if end < cfg.window {
        return Err(Error::Validation(format!(
            "past window of {} samples needs data before {}",
            cfg.window, cfg.cutoff
        )));
    }
    data.window_by_index(end - cfg.window, end)
}

/// The `horizon` observations following the cutoff.
pub fn actual_horizon(data: &DecisionTensor, cfg: &ResolvedConfig) -> Result<DecisionTensor> {
    let start = data.time_index(cfg.cutoff)? + 1;
    if start + cfg.horizon > data.n_times() {
        return Err(Error::Validation(format!(
            "data has {} samples after cutoff {}, horizon needs {}",
            data.n_times() - start,
            cfg.cutoff,
            cfg.horizon
        )));
    }
    data.window_by_index(start, start + cfg.horizon)
}

pub fn predict(data: &DecisionTensor, cfg: &ResolvedConfig) -> Result<PredictionReport> {
    predict_tensor(&training_data(data, cfg)?, cfg.horizon, &cfg.filters)
}

/// A ranking together with the intermediates that produced it.
#[derive(Debug, Clone)]
pub struct RankRun {
    pub source: Source,
    pub method: Method,
    pub prediction: Option<PredictionReport>,
    pub features: Option<FeatureTensor>,
    pub preference: Option<PreferenceMatrix>,
    pub ranking: RankResult,
}

fn aggregate<P: TimeSeriesPanel>(panel: &P, cfg: &ResolvedConfig, method: Method) -> Result<(FeatureTensor, Option<PreferenceMatrix>, RankResult)> {
    let s = extract_features(panel, &cfg.features)?;
    match method {
        Method::PrometheeTensor => {
            let out = promethee_tensor(&s, &cfg.directions, &cfg.tensor_weights)?;
            Ok((s, Some(out.preference), out.ranking))
        }
        Method::TopsisTensor => {
            let r = topsis_tensor(&s, &cfg.directions, &cfg.tensor_weights)?;
            Ok((s, None, r))
        }
        Method::PrometheeMatrix => unreachable!("matrix method handled by caller"),
    }
}

pub fn rank(data: &DecisionTensor, cfg: &ResolvedConfig, source: Source, method: Method) -> Result<RankRun> {
    if method == Method::PrometheeMatrix {
        if source != Source::Current {
            return Err(Error::Validation(
                "promethee-matrix ranks the snapshot at the cutoff; use source 'current' (per-step rankings cover predicted years)".into(),
            ));
        }
        let h = data.matrix_at(cfg.cutoff)?;
        let out = promethee_matrix(&h, &cfg.base_directions, &cfg.matrix_weights)?;
        return Ok(RankRun {
            source,
            method,
            prediction: None,
            features: None,
            preference: Some(out.preference),
            ranking: out.ranking,
        });
    }

    let (prediction, (features, preference, ranking)) = match source {
        Source::Predicted => {
            let report = predict(data, cfg)?;
            let agg = aggregate(&report.predictions, cfg, method)?;
            (Some(report), agg)
        }
        Source::PastWindow => (None, aggregate(&past_window(data, cfg)?, cfg, method)?),
        Source::Actual => (None, aggregate(&actual_horizon(data, cfg)?, cfg, method)?),
        Source::Current => {
            return Err(Error::Validation(format!(
                "{method} needs a time window; use promethee-matrix for the current snapshot"
            )))
        }
    };
    Ok(RankRun {
        source,
        method,
        prediction,
        features: Some(features),
        preference,
        ranking,
    })
}

/// Classical PROMETHEE II on each predicted step and, where observed data
/// exists, on the matching actual year.
#[derive(Debug, Clone)]
pub struct StepRanking {
    pub label: i64,
    pub predicted: RankResult,
    pub reference: Option<RankResult>,
}

pub fn per_step_rankings(data: &DecisionTensor, cfg: &ResolvedConfig, report: &PredictionReport) -> Result<Vec<StepRanking>> {
    let pred = report.predictions.as_tensor();
    pred.times()
        .iter()
        .map(|&label| {
            let h = pred.matrix_at(label)?;
            let predicted = promethee_matrix(&h, &cfg.base_directions, &cfg.matrix_weights)?.ranking;
            let reference = match data.matrix_at(label) {
                Ok(actual) => Some(promethee_matrix(&actual, &cfg.base_directions, &cfg.matrix_weights)?.ranking),
                Err(_) => None,
            };
            Ok(StepRanking {
                label,
                predicted,
                reference,
            })
        })
        .collect()
}

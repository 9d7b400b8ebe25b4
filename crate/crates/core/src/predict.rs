//! Direct multi-step adaptive linear prediction of each fiber.
//!
//! For every step `λ` an independent linear combiner is trained on pairs
//! (`[h(t-λ), …, h(t-λ-M+1)]`, `h(t)`) and then applied to the newest `M`
//! observations, giving the forecast for `T + λ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, FiberId, Result};
use crate::tensor::{DecisionTensor, PredictionTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Rls,
    Nlms,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Rls => f.write_str("rls"),
            Algorithm::Nlms => f.write_str("nlms"),
        }
    }
}

/// Parameters of one adaptive filter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterConfig {
    pub algorithm: Algorithm,
    /// Number of taps `M`.
    pub order: usize,
    /// RLS forgetting factor, in (0, 1].
    pub forgetting_factor: f64,
    /// NLMS step size μ.
    pub step_size: f64,
    /// NLMS denominator guard ε.
    pub regularization: f64,
    /// RLS initialization: `P(0) = I / δ`.
    pub init_delta: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            algorithm: Algorithm::Rls,
            order: 2,
            forgetting_factor: 1.0,
            step_size: 0.5,
            regularization: 1e-6,
            init_delta: 1e-2,
        }
    }
}

impl FilterConfig {
    pub fn rls(order: usize, forgetting_factor: f64) -> Self {
        FilterConfig {
            order,
            forgetting_factor,
            ..Default::default()
        }
    }

    pub fn nlms(order: usize, step_size: f64) -> Self {
        FilterConfig {
            algorithm: Algorithm::Nlms,
            order,
            step_size,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Validation(format!("filter config: {what}")));
        if self.order == 0 {
            return bad("order must be at least 1");
        }
        if !(self.forgetting_factor > 0.0 && self.forgetting_factor <= 1.0) {
            return bad("forgetting factor must lie in (0, 1]");
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return bad("step size must be positive");
        }
        if !(self.regularization > 0.0 && self.regularization.is_finite()) {
            return bad("regularization must be positive");
        }
        if !(self.init_delta > 0.0 && self.init_delta.is_finite()) {
            return bad("init delta must be positive");
        }
        Ok(())
    }
}

/// The update produced a non-finite weight or error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonFiniteUpdate;

/// Tap weights plus, for RLS, the inverse correlation matrix (row-major M×M).
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState {
    weights: Vec<f64>,
    inverse_correlation: Option<Vec<f64>>,
    samples_seen: usize,
}

impl FilterState {
    /// `w = 0`, `P = I / δ`.
    pub fn rls(order: usize, init_delta: f64) -> Self {
        let mut p = vec![0.0; order * order];
        for k in 0..order {
            p[k * order + k] = 1.0 / init_delta;
        }
        FilterState {
            weights: vec![0.0; order],
            inverse_correlation: Some(p),
            samples_seen: 0,
        }
    }

    pub fn nlms(order: usize) -> Self {
        FilterState {
            weights: vec![0.0; order],
            inverse_correlation: None,
            samples_seen: 0,
        }
    }

    pub fn for_config(config: &FilterConfig) -> Self {
        match config.algorithm {
            Algorithm::Rls => FilterState::rls(config.order, config.init_delta),
            Algorithm::Nlms => FilterState::nlms(config.order),
        }
    }

    pub fn order(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn inverse_correlation(&self) -> Option<&[f64]> {
        self.inverse_correlation.as_deref()
    }

    pub fn samples_seen(&self) -> usize {
        self.samples_seen
    }

    /// Filter output `wᵀx`.
    pub fn output(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x)
    }

    /// One exponentially weighted RLS update. Returns the a-priori error.
    ///
    /// The state is left untouched if any intermediate is non-finite.
    pub fn rls_step(&mut self, x: &[f64], desired: f64, forgetting_factor: f64) -> std::result::Result<f64, NonFiniteUpdate> {
        let m = self.order();
        assert_eq!(x.len(), m, "regressor length must equal filter order");
        let p = self
            .inverse_correlation
            .as_ref()
            .expect("rls_step on a state without inverse correlation");

        // px = P x
        let px: Vec<f64> = (0..m).map(|r| dot(&p[r * m..(r + 1) * m], x)).collect();
        let denom = forgetting_factor + dot(x, &px);
        let gain: Vec<f64> = px.iter().map(|v| v / denom).collect();
        let error = desired - self.output(x);

        // xᵀP
        let xp: Vec<f64> = (0..m).map(|c| (0..m).map(|r| x[r] * p[r * m + c]).sum()).collect();
        let mut next = vec![0.0; m * m];
        for r in 0..m {
            for c in 0..m {
                next[r * m + c] = (p[r * m + c] - gain[r] * xp[c]) / forgetting_factor;
            }
        }
        for r in 0..m {
            for c in r + 1..m {
                let s = 0.5 * (next[r * m + c] + next[c * m + r]);
                next[r * m + c] = s;
                next[c * m + r] = s;
            }
        }
        let weights: Vec<f64> = self
            .weights
            .iter()
            .zip(&gain)
            .map(|(w, k)| w + k * error)
            .collect();

        if !error.is_finite()
            || !denom.is_finite()
            || weights.iter().any(|v| !v.is_finite())
            || next.iter().any(|v| !v.is_finite())
        {
            return Err(NonFiniteUpdate);
        }
        self.weights = weights;
        self.inverse_correlation = Some(next);
        self.samples_seen += 1;
        Ok(error)
    }

    /// One normalized LMS update. Returns the a-priori error.
    pub fn nlms_step(&mut self, x: &[f64], desired: f64, step_size: f64, regularization: f64) -> std::result::Result<f64, NonFiniteUpdate> {
        assert_eq!(x.len(), self.order(), "regressor length must equal filter order");
        let error = desired - self.output(x);
        let energy = regularization + dot(x, x);
        let scale = step_size * error / energy;
        let weights: Vec<f64> = self
            .weights
            .iter()
            .zip(x)
            .map(|(w, xi)| w + scale * xi)
            .collect();
        if !error.is_finite() || !energy.is_finite() || weights.iter().any(|v| !v.is_finite()) {
            return Err(NonFiniteUpdate);
        }
        self.weights = weights;
        self.samples_seen += 1;
        Ok(error)
    }

    fn step(&mut self, config: &FilterConfig, x: &[f64], desired: f64) -> std::result::Result<f64, NonFiniteUpdate> {
        match config.algorithm {
            Algorithm::Rls => self.rls_step(x, desired, config.forgetting_factor),
            Algorithm::Nlms => self.nlms_step(x, desired, config.step_size, config.regularization),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The `order` samples ending at `t - lag`, newest first:
/// `[h(t-lag), h(t-lag-1), …, h(t-lag-order+1)]`.
///
/// `t` is a 0-based sample index. Returns `None` when the window would reach
/// before the start of the series or `t` is past its end.
pub fn regressor(series: &[f64], t: usize, lag: usize, order: usize) -> Option<Vec<f64>> {
    if t >= series.len() || order == 0 {
        return None;
    }
    let newest = t.checked_sub(lag)?;
    newest.checked_sub(order - 1)?;
    Some((0..order).map(|k| series[newest - k]).collect())
}

/// First 0-based index with a full regressor at the given lag.
pub fn first_trainable_index(lag: usize, order: usize) -> usize {
    lag + order - 1
}

/// Outcome of training one filter on one fiber for one step.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberPrediction {
    pub value: f64,
    /// A-priori errors, one per adaptation step.
    pub errors: Vec<f64>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberError {
    TooShort { len: usize, required: usize },
    NonFinite { sample: usize },
}

impl FiberError {
    pub fn at(self, fiber: FiberId, step: usize) -> Error {
        match self {
            FiberError::TooShort { len, required } => Error::SeriesTooShort {
                fiber,
                step,
                len,
                required,
            },
            FiberError::NonFinite { sample } => Error::Numeric {
                fiber,
                step,
                sample,
            },
        }
    }
}

/// Trains a fresh filter for step `lag` and forecasts `h(T + lag)`.
pub fn predict_fiber(series: &[f64], lag: usize, config: &FilterConfig) -> std::result::Result<FiberPrediction, FiberError> {
    assert!(lag >= 1, "prediction step must be at least 1");
    let order = config.order;
    let required = lag + order;
    if series.len() < required {
        return Err(FiberError::TooShort {
            len: series.len(),
            required,
        });
    }
    let mut state = FilterState::for_config(config);
    let start = first_trainable_index(lag, order);
    let mut errors = Vec::with_capacity(series.len() - start);
    for t in start..series.len() {
        let x = regressor(series, t, lag, order).expect("index range checked above");
        let e = state
            .step(config, &x, series[t])
            .map_err(|_| FiberError::NonFinite { sample: t })?;
        errors.push(e);
    }
    let last = series.len() - 1;
    let newest: Vec<f64> = (0..order).map(|k| series[last - k]).collect();
    let value = state.output(&newest);
    if !value.is_finite() {
        return Err(FiberError::NonFinite { sample: last });
    }
    Ok(FiberPrediction {
        value,
        errors,
        weights: state.weights,
    })
}

/// Diagnostics for one (alternative, criterion, step) filter.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberTrace {
    pub alternative: String,
    pub criterion: String,
    pub step: usize,
    pub errors: Vec<f64>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionReport {
    pub predictions: PredictionTensor,
    pub traces: Vec<FiberTrace>,
}

/// Predicts every fiber of `tensor` for steps `1..=horizon`.
///
/// `configs[j]` is used for criterion `j`. Horizon labels continue the time
/// axis with its last spacing (unit spacing for a single sample).
pub fn predict_tensor(tensor: &DecisionTensor, horizon: usize, configs: &[FilterConfig]) -> Result<PredictionReport> {
    let [n, m, _] = tensor.shape();
    if horizon == 0 {
        return Err(Error::Validation("prediction horizon must be at least 1".into()));
    }
    if configs.len() != m {
        return Err(Error::Validation(format!(
            "{} filter configs for {m} criteria",
            configs.len()
        )));
    }
    for c in configs {
        c.validate()?;
    }

    let times = tensor.times();
    let last = *times.last().expect("non-empty time axis");
    let spacing = if times.len() >= 2 { last - times[times.len() - 2] } else { 1 };
    let labels: Vec<i64> = (1..=horizon as i64).map(|k| last + k * spacing).collect();

    let mut values = Vec::with_capacity(n * m * horizon);
    let mut traces = Vec::with_capacity(n * m * horizon);
    for i in 0..n {
        for (j, config) in configs.iter().enumerate() {
            let series = tensor.fiber(i, j)?;
            for step in 1..=horizon {
                let fiber = || FiberId::new(&tensor.alternatives()[i], &tensor.criteria()[j]);
                let p = predict_fiber(series, step, config).map_err(|e| e.at(fiber(), step))?;
                values.push(p.value);
                traces.push(FiberTrace {
                    alternative: tensor.alternatives()[i].clone(),
                    criterion: tensor.criteria()[j].clone(),
                    step,
                    errors: p.errors,
                    weights: p.weights,
                });
            }
        }
    }
    let predictions = PredictionTensor::new(
        tensor.alternatives().to_vec(),
        tensor.criteria().to_vec(),
        labels,
        values,
    )?;
    Ok(PredictionReport {
        predictions,
        traces,
    })
}

//! Dense alternatives × criteria × (time | feature) panels and their 2-D slabs.
//!
//! Storage is row-major with the last axis contiguous, so every
//! (alternative, criterion) fiber is a plain slice.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Dense row-major three-way array.
#[derive(Debug, Clone, PartialEq)]
pub struct Cube {
    data: Vec<f64>,
    shape: [usize; 3],
}

impl Cube {
    pub fn new(shape: [usize; 3], data: Vec<f64>) -> Result<Self> {
        let len = shape.iter().product::<usize>();
        if data.len() != len {
            return Err(Error::Validation(format!(
                "cube of shape {:?} needs {} values, got {}",
                shape,
                len,
                data.len()
            )));
        }
        Ok(Cube { data, shape })
    }

    pub fn zeros(shape: [usize; 3]) -> Self {
        Cube {
            data: vec![0.0; shape.iter().product()],
            shape,
        }
    }

    #[inline]
    pub fn shape(&self) -> [usize; 3] {
        self.shape
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.shape[1] + j) * self.shape[2] + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.offset(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let o = self.offset(i, j, k);
        self.data[o] = value;
    }

    #[inline]
    pub fn fiber(&self, i: usize, j: usize) -> &[f64] {
        let start = self.offset(i, j, 0);
        &self.data[start..start + self.shape[2]]
    }

    pub fn fiber_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let start = self.offset(i, j, 0);
        let len = self.shape[2];
        &mut self.data[start..start + len]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

fn check_labels(axis: &str, labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Validation(format!("{axis} axis is empty")));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Validation(format!("duplicate {axis} label '{l}'")));
        }
    }
    Ok(())
}

fn check_times(times: &[i64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Validation("time axis is empty".into()));
    }
    if let Some(w) = times.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::Validation(format!(
            "time labels must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

fn check_finite(values: &[f64], shape: [usize; 3]) -> Result<()> {
    if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
        let t = pos % shape[2];
        let j = (pos / shape[2]) % shape[1];
        let i = pos / (shape[1] * shape[2]);
        return Err(Error::Validation(format!(
            "non-finite value at cell ({i}, {j}, {t})"
        )));
    }
    Ok(())
}

/// Observed evaluations indexed by (alternative, criterion, time).
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTensor {
    cube: Cube,
    alternatives: Vec<String>,
    criteria: Vec<String>,
    times: Vec<i64>,
}

impl DecisionTensor {
    /// `values` is row-major in (alternative, criterion, time) order.
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<String>,
        times: Vec<i64>,
        values: Vec<f64>,
    ) -> Result<Self> {
        check_labels("alternative", &alternatives)?;
        check_labels("criterion", &criteria)?;
        check_times(&times)?;
        let cube = Cube::new([alternatives.len(), criteria.len(), times.len()], values)?;
        check_finite(cube.as_slice(), cube.shape())?;
        Ok(DecisionTensor {
            cube,
            alternatives,
            criteria,
            times,
        })
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn n_times(&self) -> usize {
        self.times.len()
    }

    pub fn shape(&self) -> [usize; 3] {
        self.cube.shape()
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn times(&self) -> &[i64] {
        &self.times
    }

    pub fn cube(&self) -> &Cube {
        &self.cube
    }

    pub fn value(&self, alternative: usize, criterion: usize, time: usize) -> f64 {
        self.cube.get(alternative, criterion, time)
    }

    /// Time series of one (alternative, criterion) pair, oldest first.
    pub fn fiber(&self, alternative: usize, criterion: usize) -> Result<&[f64]> {
        if alternative >= self.n_alternatives() || criterion >= self.n_criteria() {
            return Err(Error::Index(format!(
                "fiber ({alternative}, {criterion}) outside {}x{}",
                self.n_alternatives(),
                self.n_criteria()
            )));
        }
        Ok(self.cube.fiber(alternative, criterion))
    }

    pub fn alternative_index(&self, id: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a == id)
    }

    pub fn criterion_index(&self, id: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c == id)
    }

    pub fn time_index(&self, label: i64) -> Result<usize> {
        self.times
            .binary_search(&label)
            .map_err(|_| Error::Validation(format!("time label {label} not in data")))
    }

    /// Inclusive sub-range of the time axis.
    pub fn window(&self, from: i64, to: i64) -> Result<DecisionTensor> {
        if from > to {
            return Err(Error::Validation(format!(
                "window start {from} is after end {to}"
            )));
        }
        let a = self.time_index(from)?;
        let b = self.time_index(to)?;
        self.window_by_index(a, b + 1)
    }

    /// Half-open index range `[start, end)` of the time axis.
    pub fn window_by_index(&self, start: usize, end: usize) -> Result<DecisionTensor> {
        if start >= end || end > self.n_times() {
            return Err(Error::Index(format!(
                "time range {start}..{end} outside 0..{}",
                self.n_times()
            )));
        }
        let [n, m, _] = self.shape();
        let mut values = Vec::with_capacity(n * m * (end - start));
        for i in 0..n {
            for j in 0..m {
                values.extend_from_slice(&self.cube.fiber(i, j)[start..end]);
            }
        }
        DecisionTensor::new(
            self.alternatives.clone(),
            self.criteria.clone(),
            self.times[start..end].to_vec(),
            values,
        )
    }

    /// Alternatives × criteria snapshot at one time label.
    pub fn matrix_at(&self, label: i64) -> Result<DecisionMatrix> {
        let t = self.time_index(label)?;
        let [n, m, _] = self.shape();
        let mut values = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                values.push(self.cube.get(i, j, t));
            }
        }
        DecisionMatrix::new(self.alternatives.clone(), self.criteria.clone(), values)
    }

    /// Reorders the alternative axis: row `k` of the result is row `order[k]` of `self`.
    pub fn permute_alternatives(&self, order: &[usize]) -> Result<DecisionTensor> {
        check_permutation(order, self.n_alternatives())?;
        let [_, m, _] = self.shape();
        let mut values = Vec::with_capacity(self.cube.as_slice().len());
        for &i in order {
            for j in 0..m {
                values.extend_from_slice(self.cube.fiber(i, j));
            }
        }
        DecisionTensor::new(
            order.iter().map(|&i| self.alternatives[i].clone()).collect(),
            self.criteria.clone(),
            self.times.clone(),
            values,
        )
    }

    /// Reorders the criterion axis: column `k` of the result is column `order[k]` of `self`.
    pub fn permute_criteria(&self, order: &[usize]) -> Result<DecisionTensor> {
        check_permutation(order, self.n_criteria())?;
        let [n, _, _] = self.shape();
        let mut values = Vec::with_capacity(self.cube.as_slice().len());
        for i in 0..n {
            for &j in order {
                values.extend_from_slice(self.cube.fiber(i, j));
            }
        }
        DecisionTensor::new(
            self.alternatives.clone(),
            order.iter().map(|&j| self.criteria[j].clone()).collect(),
            self.times.clone(),
            values,
        )
    }

    /// Long-format records in canonical (alternative, criterion, time) order.
    pub fn records(&self) -> impl Iterator<Item = (&str, &str, i64, f64)> + '_ {
        let [n, m, t] = self.shape();
        (0..n).flat_map(move |i| {
            (0..m).flat_map(move |j| {
                (0..t).map(move |k| {
                    (
                        self.alternatives[i].as_str(),
                        self.criteria[j].as_str(),
                        self.times[k],
                        self.cube.get(i, j, k),
                    )
                })
            })
        })
    }
}

fn check_permutation(order: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if order.len() != len {
        return Err(Error::Validation(format!(
            "permutation has {} entries, expected {len}",
            order.len()
        )));
    }
    for &k in order {
        if k >= len || std::mem::replace(&mut seen[k], true) {
            return Err(Error::Validation(format!("invalid permutation {order:?}")));
        }
    }
    Ok(())
}

/// Predicted evaluations indexed by (alternative, criterion, step); the step
/// axis carries the future time labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionTensor(DecisionTensor);

impl PredictionTensor {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<String>,
        horizon: Vec<i64>,
        values: Vec<f64>,
    ) -> Result<Self> {
        DecisionTensor::new(alternatives, criteria, horizon, values).map(PredictionTensor)
    }

    pub fn horizon(&self) -> &[i64] {
        self.0.times()
    }

    pub fn steps(&self) -> usize {
        self.0.n_times()
    }

    /// View as a time-indexed tensor (for windowing, per-step slabs, CSV).
    pub fn as_tensor(&self) -> &DecisionTensor {
        &self.0
    }

    pub fn into_tensor(self) -> DecisionTensor {
        self.0
    }
}

impl From<DecisionTensor> for PredictionTensor {
    fn from(t: DecisionTensor) -> Self {
        PredictionTensor(t)
    }
}

/// Alternatives × criteria snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    values: Vec<f64>,
    alternatives: Vec<String>,
    criteria: Vec<String>,
}

impl DecisionMatrix {
    pub fn new(alternatives: Vec<String>, criteria: Vec<String>, values: Vec<f64>) -> Result<Self> {
        check_labels("alternative", &alternatives)?;
        check_labels("criterion", &criteria)?;
        let shape = [alternatives.len(), criteria.len(), 1];
        if values.len() != shape[0] * shape[1] {
            return Err(Error::Validation(format!(
                "matrix {}x{} needs {} values, got {}",
                shape[0],
                shape[1],
                shape[0] * shape[1],
                values.len()
            )));
        }
        check_finite(&values, shape)?;
        Ok(DecisionMatrix {
            values,
            alternatives,
            criteria,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn get(&self, alternative: usize, criterion: usize) -> f64 {
        self.values[alternative * self.criteria.len() + criterion]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Feature values indexed by (alternative, criterion, feature).
///
/// Entries are finite except for the coefficient-of-variation sentinel
/// (`f64::INFINITY`), which marks a series whose mean is numerically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTensor {
    cube: Cube,
    alternatives: Vec<String>,
    criteria: Vec<String>,
    features: Vec<String>,
}

impl FeatureTensor {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<String>,
        features: Vec<String>,
        values: Vec<f64>,
    ) -> Result<Self> {
        check_labels("alternative", &alternatives)?;
        check_labels("criterion", &criteria)?;
        check_labels("feature", &features)?;
        let cube = Cube::new([alternatives.len(), criteria.len(), features.len()], values)?;
        if let Some(v) = cube
            .as_slice()
            .iter()
            .find(|v| v.is_nan() || **v == f64::NEG_INFINITY)
        {
            return Err(Error::Validation(format!("invalid feature value {v}")));
        }
        Ok(FeatureTensor {
            cube,
            alternatives,
            criteria,
            features,
        })
    }

    /// Wraps a decision matrix as a single-feature slab.
    pub fn from_matrix(matrix: &DecisionMatrix, feature: &str) -> Result<Self> {
        FeatureTensor::new(
            matrix.alternatives.clone(),
            matrix.criteria.clone(),
            vec![feature.to_string()],
            matrix.values.clone(),
        )
    }

    pub fn shape(&self) -> [usize; 3] {
        self.cube.shape()
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn get(&self, alternative: usize, criterion: usize, feature: usize) -> f64 {
        self.cube.get(alternative, criterion, feature)
    }

    pub fn cube(&self) -> &Cube {
        &self.cube
    }

    /// Applies `f(criterion, feature, value)` to every entry.
    pub fn map(&self, f: impl Fn(usize, usize, f64) -> f64) -> Result<FeatureTensor> {
        let [n, m, w] = self.shape();
        let mut values = Vec::with_capacity(n * m * w);
        for i in 0..n {
            for j in 0..m {
                for l in 0..w {
                    values.push(f(j, l, self.get(i, j, l)));
                }
            }
        }
        FeatureTensor::new(
            self.alternatives.clone(),
            self.criteria.clone(),
            self.features.clone(),
            values,
        )
    }
}

/// Anything with an (alternative, criterion, time-like) layout whose fibers
/// can be summarized.
pub trait TimeSeriesPanel {
    fn alternatives(&self) -> &[String];
    fn criteria(&self) -> &[String];
    fn steps(&self) -> usize;
    fn series(&self, alternative: usize, criterion: usize) -> &[f64];
}

impl TimeSeriesPanel for DecisionTensor {
    fn alternatives(&self) -> &[String] {
        &self.alternatives
    }
    fn criteria(&self) -> &[String] {
        &self.criteria
    }
    fn steps(&self) -> usize {
        self.n_times()
    }
    fn series(&self, alternative: usize, criterion: usize) -> &[f64] {
        self.cube.fiber(alternative, criterion)
    }
}

impl TimeSeriesPanel for PredictionTensor {
    fn alternatives(&self) -> &[String] {
        self.0.alternatives()
    }
    fn criteria(&self) -> &[String] {
        self.0.criteria()
    }
    fn steps(&self) -> usize {
        self.0.n_times()
    }
    fn series(&self, alternative: usize, criterion: usize) -> &[f64] {
        self.0.cube.fiber(alternative, criterion)
    }
}

/// `["{prefix}1", …, "{prefix}n"]`.
pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

//! Summaries of time series fibers and the feature tensor built from them.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, FiberId, Result};
use crate::tensor::{FeatureTensor, TimeSeriesPanel};

/// Below this absolute mean the coefficient of variation is reported as
/// [`CV_SENTINEL`].
pub const CV_MEAN_EPSILON: f64 = 1e-12;

/// Worst-case coefficient of variation; compares worse than any finite value.
pub const CV_SENTINEL: f64 = f64::INFINITY;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[serde(alias = "max", alias = "maximise")]
    Maximize,
    #[serde(alias = "min", alias = "minimise")]
    Minimize,
}

impl Direction {
    pub fn short(self) -> &'static str {
        match self {
            Direction::Maximize => "Max",
            Direction::Minimize => "Min",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureError {
    TooShort { feature: &'static str, len: usize, required: usize },
}

impl fmt::Display for FeatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureError::TooShort { feature, len, required } => write!(
                f,
                "{feature} needs at least {required} samples, series has {len}"
            ),
        }
    }
}

/// A scalar summary of a series. Implement this to register extra features.
pub trait SeriesFeature: Send + Sync {
    fn name(&self) -> &'static str;

    fn min_len(&self) -> usize;

    /// Value for an input of at least `min_len()` samples.
    fn compute(&self, series: &[f64]) -> f64;

    /// Orientation of this feature given the criterion's own orientation.
    fn direction(&self, base: Direction) -> Direction {
        base
    }

    fn evaluate(&self, series: &[f64]) -> std::result::Result<f64, FeatureError> {
        if series.len() < self.min_len() {
            return Err(FeatureError::TooShort {
                feature: self.name(),
                len: series.len(),
                required: self.min_len(),
            });
        }
        Ok(self.compute(series))
    }
}

pub struct Average;
pub struct SlopeCoefficient;
pub struct CoefficientOfVariation;

impl SeriesFeature for Average {
    fn name(&self) -> &'static str {
        "average"
    }
    fn min_len(&self) -> usize {
        1
    }
    fn compute(&self, series: &[f64]) -> f64 {
        mean(series)
    }
}

impl SeriesFeature for SlopeCoefficient {
    fn name(&self) -> &'static str {
        "slope"
    }
    fn min_len(&self) -> usize {
        2
    }
    fn compute(&self, series: &[f64]) -> f64 {
        ols_slope(series)
    }
}

impl SeriesFeature for CoefficientOfVariation {
    fn name(&self) -> &'static str {
        "cv"
    }
    fn min_len(&self) -> usize {
        2
    }
    fn compute(&self, series: &[f64]) -> f64 {
        coefficient_of_variation(series)
    }
    fn direction(&self, _base: Direction) -> Direction {
        Direction::Minimize
    }
}

fn mean(series: &[f64]) -> f64 {
    series.iter().sum::<f64>() / series.len() as f64
}

/// Least-squares slope against the time index 1..=len.
fn ols_slope(series: &[f64]) -> f64 {
    let n = series.len() as f64;
    let t_mean = (n + 1.0) / 2.0;
    let y_mean = mean(series);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (k, y) in series.iter().enumerate() {
        let dt = (k + 1) as f64 - t_mean;
        sxy += dt * (y - y_mean);
        sxx += dt * dt;
    }
    sxy / sxx
}

/// Population standard deviation over |mean|.
fn coefficient_of_variation(series: &[f64]) -> f64 {
    let mu = mean(series);
    if mu.abs() < CV_MEAN_EPSILON {
        return CV_SENTINEL;
    }
    let var = series.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / series.len() as f64;
    var.sqrt() / mu.abs()
}

pub fn feature_average(series: &[f64]) -> std::result::Result<f64, FeatureError> {
    Average.evaluate(series)
}

pub fn feature_slope(series: &[f64]) -> std::result::Result<f64, FeatureError> {
    SlopeCoefficient.evaluate(series)
}

pub fn feature_cv(series: &[f64]) -> std::result::Result<f64, FeatureError> {
    CoefficientOfVariation.evaluate(series)
}

/// Looks up a built-in feature by name.
pub fn builtin(name: &str) -> Option<Arc<dyn SeriesFeature>> {
    match name.to_ascii_lowercase().as_str() {
        "average" | "mean" => Some(Arc::new(Average)),
        "slope" | "sc" | "slope_coefficient" => Some(Arc::new(SlopeCoefficient)),
        "cv" | "coefficient_of_variation" => Some(Arc::new(CoefficientOfVariation)),
        _ => None,
    }
}

/// Ordered, duplicate-free list of features.
#[derive(Clone)]
pub struct FeatureSet(Vec<Arc<dyn SeriesFeature>>);

impl fmt::Debug for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl PartialEq for FeatureSet {
    fn eq(&self, other: &Self) -> bool {
        self.names() == other.names()
    }
}

impl FeatureSet {
    pub fn new(features: Vec<Arc<dyn SeriesFeature>>) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::Validation("feature set is empty".into()));
        }
        for (k, f) in features.iter().enumerate() {
            if features[..k].iter().any(|g| g.name() == f.name()) {
                return Err(Error::Validation(format!("duplicate feature '{}'", f.name())));
            }
        }
        Ok(FeatureSet(features))
    }

    /// Average, slope coefficient, coefficient of variation.
    pub fn standard() -> Self {
        FeatureSet(vec![
            Arc::new(Average),
            Arc::new(SlopeCoefficient),
            Arc::new(CoefficientOfVariation),
        ])
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let features = names
            .iter()
            .map(|n| {
                builtin(n.as_ref())
                    .ok_or_else(|| Error::Validation(format!("unknown feature '{}'", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        FeatureSet::new(features)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|f| f.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn SeriesFeature>> {
        self.0.iter()
    }

    pub fn min_len(&self) -> usize {
        self.0.iter().map(|f| f.min_len()).max().unwrap_or(1)
    }
}

/// Summarizes every fiber of `panel` with every feature of `set`.
pub fn extract_features<P: TimeSeriesPanel + ?Sized>(panel: &P, set: &FeatureSet) -> Result<FeatureTensor> {
    let n = panel.alternatives().len();
    let m = panel.criteria().len();
    let mut values = Vec::with_capacity(n * m * set.len());
    for i in 0..n {
        for j in 0..m {
            let series = panel.series(i, j);
            for f in set.iter() {
                let v = f.evaluate(series).map_err(|e| {
                    Error::Validation(format!(
                        "fiber {}: {e}",
                        FiberId::new(&panel.alternatives()[i], &panel.criteria()[j])
                    ))
                })?;
                values.push(v);
            }
        }
    }
    FeatureTensor::new(
        panel.alternatives().to_vec(),
        panel.criteria().to_vec(),
        set.names().into_iter().map(String::from).collect(),
        values,
    )
}

/// Orientation of every (criterion, feature) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionFeatureDirections {
    base: Vec<Direction>,
    features: Vec<String>,
    cells: Vec<Direction>,
}

impl CriterionFeatureDirections {
    /// One feature slab whose directions equal the criterion directions.
    pub fn matrix(base: Vec<Direction>) -> Self {
        CriterionFeatureDirections {
            cells: base.clone(),
            base,
            features: vec!["value".into()],
        }
    }

    pub fn from_cells(base: Vec<Direction>, features: Vec<String>, cells: Vec<Direction>) -> Result<Self> {
        if cells.len() != base.len() * features.len() {
            return Err(Error::Validation(format!(
                "{} direction cells for {} criteria x {} features",
                cells.len(),
                base.len(),
                features.len()
            )));
        }
        Ok(CriterionFeatureDirections { base, features, cells })
    }

    pub fn n_criteria(&self) -> usize {
        self.base.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    pub fn base(&self) -> &[Direction] {
        &self.base
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn get(&self, criterion: usize, feature: usize) -> Direction {
        self.cells[criterion * self.features.len() + feature]
    }

    pub fn set(&mut self, criterion: usize, feature: usize, direction: Direction) {
        let w = self.features.len();
        self.cells[criterion * w + feature] = direction;
    }
}

/// Explicit direction for one (criterion index, feature name) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionOverride {
    pub criterion: usize,
    pub feature: String,
    pub direction: Direction,
}

/// Each feature's rule applied to each criterion direction, then overrides.
pub fn derive_directions(base: &[Direction], set: &FeatureSet, overrides: &[DirectionOverride]) -> Result<CriterionFeatureDirections> {
    let names: Vec<String> = set.names().into_iter().map(String::from).collect();
    let cells = base
        .iter()
        .flat_map(|&b| set.iter().map(move |f| f.direction(b)))
        .collect();
    let mut dirs = CriterionFeatureDirections::from_cells(base.to_vec(), names, cells)?;
    for o in overrides {
        let l = dirs
            .features
            .iter()
            .position(|f| *f == o.feature)
            .ok_or_else(|| Error::Validation(format!("override for unknown feature '{}'", o.feature)))?;
        if o.criterion >= dirs.n_criteria() {
            return Err(Error::Validation(format!("override for criterion index {}", o.criterion)));
        }
        dirs.set(o.criterion, l, o.direction);
    }
    Ok(dirs)
}

//! TOML run configuration.
//!
//! ```toml
//! cutoff = 2012          # last observed time label; default: last label in data
//! horizon = 6            # prediction steps q
//! window = 6             # past-window length
//! method = "promethee-tensor"
//! features = ["average", "slope", "cv"]
//!
//! [directions]           # per-criterion orientation, default "max"
//! c1 = "max"
//! c2 = "min"
//!
//! [overrides]            # per (criterion.feature) orientation
//! "c1.slope" = "min"
//!
//! [weights.tensor]       # per (criterion.feature); unlisted cells get 0
//! "c1.average" = 0.5
//! [weights.matrix]       # per criterion for matrix aggregation
//! c1 = 1.0
//!
//! [filter]
//! algorithm = "rls"      # or "nlms"
//! order = 2
//! forgetting_factor = 1.0
//! init_delta = 0.01
//! step_size = 0.5
//! regularization = 1e-6
//! [filter.forgetting]    # per-criterion forgetting factor
//! c2 = 0.99
//! ```
//!
//! Every key is optional; unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{derive_directions, CriterionFeatureDirections, Direction, DirectionOverride, FeatureSet};
use crate::mcda::WeightScheme;
use crate::predict::{Algorithm, FilterConfig};
use crate::tensor::DecisionTensor;

pub const DEFAULT_HORIZON: usize = 6;
pub const DEFAULT_WINDOW: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    PrometheeTensor,
    PrometheeMatrix,
    TopsisTensor,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::PrometheeTensor => "promethee-tensor",
            Method::PrometheeMatrix => "promethee-matrix",
            Method::TopsisTensor => "topsis-tensor",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "promethee-tensor" => Ok(Method::PrometheeTensor),
            "promethee-matrix" => Ok(Method::PrometheeMatrix),
            "topsis-tensor" => Ok(Method::TopsisTensor),
            _ => Err(Error::Config(format!("unknown method '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSection {
    #[serde(default)]
    pub tensor: BTreeMap<String, f64>,
    #[serde(default)]
    pub matrix: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FilterSection {
    pub algorithm: Algorithm,
    pub order: usize,
    pub forgetting_factor: f64,
    pub init_delta: f64,
    pub step_size: f64,
    pub regularization: f64,
    pub forgetting: BTreeMap<String, f64>,
}

impl Default for FilterSection {
    fn default() -> Self {
        let d = FilterConfig::default();
        FilterSection {
            algorithm: d.algorithm,
            order: d.order,
            forgetting_factor: d.forgetting_factor,
            init_delta: d.init_delta,
            step_size: d.step_size,
            regularization: d.regularization,
            forgetting: BTreeMap::new(),
        }
    }
}

/// Run configuration as written, keyed by labels.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub cutoff: Option<i64>,
    pub horizon: usize,
    pub window: usize,
    pub method: Method,
    pub features: Vec<String>,
    pub directions: BTreeMap<String, Direction>,
    pub overrides: BTreeMap<String, Direction>,
    pub weights: WeightsSection,
    pub filter: FilterSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cutoff: None,
            horizon: DEFAULT_HORIZON,
            window: DEFAULT_WINDOW,
            method: Method::default(),
            features: FeatureSet::standard().names().into_iter().map(String::from).collect(),
            directions: BTreeMap::new(),
            overrides: BTreeMap::new(),
            weights: WeightsSection::default(),
            filter: FilterSection::default(),
        }
    }
}

pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
    cfg.check()?;
    Ok(cfg)
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    parse_config_str(&std::fs::read_to_string(path)?)
}

fn split_cell(key: &str) -> Result<(&str, &str)> {
    key.rsplit_once('.')
        .ok_or_else(|| Error::Config(format!("key '{key}' must look like 'criterion.feature'")))
}

impl RunConfig {
    /// Checks that need no data.
    fn check(&self) -> Result<()> {
        if self.horizon < 2 {
            return Err(Error::Validation(format!("horizon must be at least 2, got {}", self.horizon)));
        }
        if self.window < 2 {
            return Err(Error::Validation(format!("window must be at least 2, got {}", self.window)));
        }
        FeatureSet::from_names(&self.features)?;
        for (k, g) in self.weights.tensor.iter().chain(&self.weights.matrix) {
            if !(g.is_finite() && *g >= 0.0) {
                return Err(Error::Validation(format!("weight '{k}' = {g} must be non-negative")));
            }
        }
        self.filter_config(None).validate()?;
        for rho in self.filter.forgetting.values() {
            self.filter_config(Some(*rho)).validate()?;
        }
        Ok(())
    }

    fn filter_config(&self, forgetting: Option<f64>) -> FilterConfig {
        FilterConfig {
            algorithm: self.filter.algorithm,
            order: self.filter.order,
            forgetting_factor: forgetting.unwrap_or(self.filter.forgetting_factor),
            step_size: self.filter.step_size,
            regularization: self.filter.regularization,
            init_delta: self.filter.init_delta,
        }
    }

    /// The configuration used in the reference IMF experiment.
    pub fn reference() -> Self {
        let mut cfg = RunConfig {
            cutoff: Some(2012),
            ..Default::default()
        };
        cfg.directions = [("c1", Direction::Maximize), ("c2", Direction::Minimize), ("c3", Direction::Minimize)]
            .into_iter()
            .map(|(c, d)| (c.to_string(), d))
            .collect();
        cfg.filter.forgetting = [("c1", 0.90), ("c2", 0.99), ("c3", 0.90)]
            .into_iter()
            .map(|(c, r)| (c.to_string(), r))
            .collect();
        cfg
    }

    /// Binds labels to the axes of `data` and validates everything.
    pub fn resolve(&self, data: &DecisionTensor) -> Result<ResolvedConfig> {
        self.check()?;
        let criteria = data.criteria();
        let criterion = |label: &str, section: &str| {
            data.criterion_index(label)
                .ok_or_else(|| Error::Validation(format!("[{section}] names unknown criterion '{label}'")))
        };

        let cutoff = self.cutoff.unwrap_or(*data.times().last().expect("non-empty time axis"));
        data.time_index(cutoff)
            .map_err(|_| Error::Validation(format!("cutoff {cutoff} not in data")))?;

        let features = FeatureSet::from_names(&self.features)?;
        let w = features.len();
        let names = features.names();

        let mut base = vec![Direction::Maximize; criteria.len()];
        for (label, d) in &self.directions {
            base[criterion(label, "directions")?] = *d;
        }
        let overrides = self
            .overrides
            .iter()
            .map(|(key, d)| {
                let (c, f) = split_cell(key)?;
                Ok(DirectionOverride {
                    criterion: criterion(c, "overrides")?,
                    feature: f.to_string(),
                    direction: *d,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let directions = derive_directions(&base, &features, &overrides)?;

        let tensor_weights = if self.weights.tensor.is_empty() {
            WeightScheme::uniform(criteria.len(), w)
        } else {
            let mut gamma = vec![0.0; criteria.len() * w];
            for (key, g) in &self.weights.tensor {
                let (c, f) = split_cell(key)?;
                let j = criterion(c, "weights.tensor")?;
                let l = names
                    .iter()
                    .position(|n| *n == f)
                    .ok_or_else(|| Error::Validation(format!("[weights.tensor] names unknown feature '{f}'")))?;
                gamma[j * w + l] = *g;
            }
            WeightScheme::new(criteria.len(), w, gamma)?
        };
        let matrix_weights = if self.weights.matrix.is_empty() {
            WeightScheme::uniform(criteria.len(), 1)
        } else {
            let mut gamma = vec![0.0; criteria.len()];
            for (label, g) in &self.weights.matrix {
                gamma[criterion(label, "weights.matrix")?] = *g;
            }
            WeightScheme::matrix(gamma)?
        };

        let mut filters = vec![self.filter_config(None); criteria.len()];
        for (label, rho) in &self.filter.forgetting {
            filters[criterion(label, "filter.forgetting")?] = self.filter_config(Some(*rho));
        }

        Ok(ResolvedConfig {
            cutoff,
            horizon: self.horizon,
            window: self.window,
            method: self.method,
            features,
            base_directions: base,
            directions,
            tensor_weights,
            matrix_weights,
            filters,
        })
    }
}

/// Configuration bound to a dataset's criteria.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    pub cutoff: i64,
    pub horizon: usize,
    pub window: usize,
    pub method: Method,
    pub features: FeatureSet,
    pub base_directions: Vec<Direction>,
    pub directions: CriterionFeatureDirections,
    pub tensor_weights: WeightScheme,
    pub matrix_weights: WeightScheme,
    /// One filter per criterion.
    pub filters: Vec<FilterConfig>,
}

impl ResolvedConfig {
    /// Same settings with every filter switched to `algorithm`.
    pub fn with_algorithm(&self, algorithm: Algorithm) -> Self {
        let mut out = self.clone();
        for f in &mut out.filters {
            f.algorithm = algorithm;
        }
        out
    }
}

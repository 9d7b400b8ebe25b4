//! Multi-criteria ranking of alternatives whose criteria evolve over time.
//!
//! Observations form a decision tensor (alternative × criterion × time).
//! Each criterion fiber is extrapolated with an adaptive filter, summarized by
//! features (average, slope, coefficient of variation) and the resulting
//! feature tensor is ranked with PROMETHEE II or TOPSIS.

pub mod error;
pub mod experiments;
pub mod features;
pub mod ingest;
pub mod mcda;
pub mod pipeline;
pub mod predict;
pub mod tensor;

pub use error::{Error, FiberId, Result};
pub use features::{derive_directions, extract_features, CriterionFeatureDirections, Direction, FeatureSet};
pub use ingest::{Method, ResolvedConfig, RunConfig};
pub use mcda::{promethee_matrix, promethee_tensor, topsis_tensor, RankResult, WeightScheme};
pub use pipeline::Source;
pub use predict::{predict_tensor, Algorithm, FilterConfig, PredictionReport};
pub use tensor::{DecisionMatrix, DecisionTensor, FeatureTensor, PredictionTensor, TimeSeriesPanel};

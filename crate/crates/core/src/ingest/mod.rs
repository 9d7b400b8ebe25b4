//! Reading data and configuration, writing results.

mod config;
mod csv;
mod emit;

pub use self::config::{
    parse_config, parse_config_str, FilterSection, Method, ResolvedConfig, RunConfig, WeightsSection,
    DEFAULT_HORIZON, DEFAULT_WINDOW,
};
pub use self::csv::{parse_timeseries_csv, parse_wide_csv, read_timeseries_file, HEADER};
pub use self::emit::{emit_features, emit_preference, emit_ranking, emit_tensor, emit_traces, OutputFormat};

//! Vendored IMF fixture, reference rankings and the reproduction harness.
//!
//! The fixture holds five countries (a1 Belgium, a2 Canada, a3 France,
//! a4 Japan, a5 Netherlands) and three criteria (c1 gross national savings
//! in % of GDP, c2 consumer price index, c3 unemployment rate) for 1980–2018.
//! See `data/README.md` for provenance.

pub mod oracle;

use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::features::extract_features;
use crate::ingest::{emit_features, emit_tensor, parse_timeseries_csv, Method, OutputFormat, ResolvedConfig, RunConfig};
use crate::mcda::{kendall_tau, RankResult};
use crate::pipeline::{self, Source};
use crate::predict::Algorithm;
use crate::tensor::DecisionTensor;

pub const IMF_CSV: &str = include_str!("../../data/imf_weo.csv");

/// Run configuration matching [`RunConfig::reference`], as TOML.
pub const IMF_CONFIG: &str = include_str!("../../data/imf.toml");

pub const IMF_SHA256: &str = "52430ecc2ad1fbe0a183900534e6d52d513d6a9f1439a44e819ea3c7049038d2";

pub const ALTERNATIVE_NAMES: [(&str, &str); 5] = [
    ("a1", "Belgium"),
    ("a2", "Canada"),
    ("a3", "France"),
    ("a4", "Japan"),
    ("a5", "Netherlands"),
];

pub const CRITERION_NAMES: [(&str, &str); 3] = [
    ("c1", "gross national savings (% of GDP)"),
    ("c2", "consumer prices (index)"),
    ("c3", "unemployment rate (%)"),
];

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// The vendored dataset, after verifying its checksum.
pub fn imf_dataset() -> Result<DecisionTensor> {
    let digest = sha256_hex(IMF_CSV.as_bytes());
    if digest != IMF_SHA256 {
        return Err(Error::Fixture(format!(
            "imf_weo.csv checksum mismatch: expected {IMF_SHA256}, found {digest}"
        )));
    }
    parse_timeseries_csv(IMF_CSV.as_bytes())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchPolicy {
    /// The observed ordering must equal the expected one.
    Exact,
    /// Compared and reported, never a failure.
    ReportOnly,
}

/// Which ranking of the reference experiment a case reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Tensor aggregation over a source, with the given predictor for predicted data.
    Tensor { source: Source, method: Method, algorithm: Algorithm },
    /// Matrix PROMETHEE on the snapshot at the cutoff.
    Current,
    /// Matrix PROMETHEE on the predicted slab for one year.
    StepPrediction(i64),
    /// Matrix PROMETHEE on the observed slab for one year.
    StepReference(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenCase {
    pub name: String,
    pub strategy: Strategy,
    pub expected: Vec<String>,
    pub policy: MatchPolicy,
}

fn order(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

fn tensor_case(name: &str, source: Source, method: Method, algorithm: Algorithm, expected: &[&str], policy: MatchPolicy) -> GoldenCase {
    GoldenCase {
        name: name.into(),
        strategy: Strategy::Tensor { source, method, algorithm },
        expected: order(expected),
        policy,
    }
}

/// Reference orderings of the IMF experiment (cutoff 2012, six-step horizon).
pub fn reference_cases() -> Vec<GoldenCase> {
    use Algorithm::*;
    use MatchPolicy::*;
    use Method::*;
    use Source::*;
    let mut cases = vec![
        tensor_case("benchmark, actual 2013-2018", Actual, PrometheeTensor, Rls, &["a5", "a4", "a3", "a1", "a2"], Exact),
        tensor_case("prediction, RLS", Predicted, PrometheeTensor, Rls, &["a5", "a4", "a3", "a1", "a2"], Exact),
        GoldenCase {
            name: "current snapshot 2012".into(),
            strategy: Strategy::Current,
            expected: order(&["a4", "a5", "a1", "a2", "a3"]),
            policy: Exact,
        },
        tensor_case("past window 2007-2012", PastWindow, PrometheeTensor, Rls, &["a5", "a4", "a1", "a3", "a2"], Exact),
    ];
    let reference: [(i64, [&str; 5], [&str; 5]); 6] = [
        (2013, ["a4", "a5", "a1", "a2", "a3"], ["a4", "a5", "a1", "a2", "a3"]),
        (2014, ["a4", "a5", "a1", "a2", "a3"], ["a4", "a5", "a1", "a2", "a3"]),
        (2015, ["a5", "a4", "a1", "a3", "a2"], ["a5", "a4", "a1", "a2", "a3"]),
        (2016, ["a4", "a5", "a1", "a3", "a2"], ["a5", "a4", "a1", "a2", "a3"]),
        (2017, ["a4", "a5", "a1", "a3", "a2"], ["a5", "a4", "a1", "a3", "a2"]),
        (2018, ["a4", "a5", "a1", "a3", "a2"], ["a5", "a4", "a1", "a3", "a2"]),
    ];
    for (year, refr, pred) in reference {
        let policy = if year <= 2014 { Exact } else { ReportOnly };
        cases.push(GoldenCase {
            name: format!("per-year reference {year}"),
            strategy: Strategy::StepReference(year),
            expected: order(&refr),
            policy,
        });
        cases.push(GoldenCase {
            name: format!("per-year prediction {year}"),
            strategy: Strategy::StepPrediction(year),
            expected: order(&pred),
            policy,
        });
    }
    cases.extend([
        tensor_case("prediction, NLMS", Predicted, PrometheeTensor, Nlms, &["a1", "a2", "a3", "a4", "a5"], ReportOnly),
        tensor_case("TOPSIS benchmark, actual 2013-2018", Actual, TopsisTensor, Rls, &["a2", "a5", "a3", "a1", "a4"], ReportOnly),
        tensor_case("TOPSIS prediction, RLS", Predicted, TopsisTensor, Rls, &["a2", "a5", "a3", "a1", "a4"], ReportOnly),
        tensor_case("TOPSIS prediction, NLMS", Predicted, TopsisTensor, Nlms, &["a3", "a1", "a5", "a2", "a4"], ReportOnly),
    ]);
    cases
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenOutcome {
    pub case: GoldenCase,
    pub observed: Vec<String>,
    pub tau: f64,
    /// First position (0-based) where observed and expected differ.
    pub first_divergence: Option<usize>,
}

impl GoldenOutcome {
    pub fn matches(&self) -> bool {
        self.first_divergence.is_none()
    }

    /// False only for a mismatching exact-policy case.
    pub fn passes(&self) -> bool {
        self.matches() || self.case.policy == MatchPolicy::ReportOnly
    }
}

/// Runs the strategy of `case` and computes its ordering.
pub fn run_strategy(strategy: Strategy, data: &DecisionTensor, cfg: &ResolvedConfig) -> Result<RankResult> {
    match strategy {
        Strategy::Tensor { source, method, algorithm } => {
            let cfg = cfg.with_algorithm(algorithm);
            Ok(pipeline::rank(data, &cfg, source, method)?.ranking)
        }
        Strategy::Current => Ok(pipeline::rank(data, cfg, Source::Current, Method::PrometheeMatrix)?.ranking),
        Strategy::StepPrediction(year) | Strategy::StepReference(year) => {
            let report = pipeline::predict(data, cfg)?;
            let step = pipeline::per_step_rankings(data, cfg, &report)?
                .into_iter()
                .find(|s| s.label == year)
                .ok_or_else(|| Error::Validation(format!("year {year} outside the prediction horizon")))?;
            match strategy {
                Strategy::StepPrediction(_) => Ok(step.predicted),
                _ => step
                    .reference
                    .ok_or_else(|| Error::Validation(format!("no observed data for {year}"))),
            }
        }
    }
}

pub fn run_golden(case: &GoldenCase, data: &DecisionTensor, cfg: &ResolvedConfig) -> Result<GoldenOutcome> {
    let ranking = run_strategy(case.strategy, data, cfg)?;
    let observed: Vec<String> = ranking.ordered_labels().into_iter().map(String::from).collect();
    let tau = kendall_tau(&case.expected, &observed)?.tau;
    let first_divergence = case.expected.iter().zip(&observed).position(|(a, b)| a != b);
    Ok(GoldenOutcome {
        case: case.clone(),
        observed,
        tau,
        first_divergence,
    })
}

fn find(outcomes: &[GoldenOutcome], strategy: Strategy) -> Option<&GoldenOutcome> {
    outcomes.iter().find(|o| o.case.strategy == strategy)
}

/// Everything the reproduction run produced.
#[derive(Debug, Clone)]
pub struct Reproduction {
    pub dataset_sha256: String,
    pub outcomes: Vec<GoldenOutcome>,
    /// Prediction ordering equals benchmark ordering (PROMETHEE, RLS).
    pub prediction_matches_benchmark: bool,
    /// NLMS prediction ordering differs from the benchmark ordering.
    pub nlms_differs_from_benchmark: bool,
    /// TOPSIS prediction ordering equals TOPSIS benchmark ordering (RLS).
    pub topsis_prediction_matches_benchmark: bool,
    pub report: String,
    /// Named CSV artifacts (file name, contents).
    pub artifacts: Vec<(String, String)>,
}

/// Runs every reference case on `data` with the reference configuration.
pub fn reproduce(data: &DecisionTensor, csv_text: Option<&str>) -> Result<Reproduction> {
    let cfg = RunConfig::reference().resolve(data)?;
    let outcomes = reference_cases()
        .iter()
        .map(|c| run_golden(c, data, &cfg))
        .collect::<Result<Vec<_>>>()?;

    let tensor = |source, method, algorithm| Strategy::Tensor { source, method, algorithm };
    let observed = |s: Strategy| find(&outcomes, s).map(|o| o.observed.clone());
    let bench = observed(tensor(Source::Actual, Method::PrometheeTensor, Algorithm::Rls));
    let pred = observed(tensor(Source::Predicted, Method::PrometheeTensor, Algorithm::Rls));
    let nlms = observed(tensor(Source::Predicted, Method::PrometheeTensor, Algorithm::Nlms));
    let t_bench = observed(tensor(Source::Actual, Method::TopsisTensor, Algorithm::Rls));
    let t_pred = observed(tensor(Source::Predicted, Method::TopsisTensor, Algorithm::Rls));
    let prediction_matches_benchmark = pred.is_some() && pred == bench;
    let nlms_differs_from_benchmark = nlms.is_some() && nlms != bench;
    let topsis_prediction_matches_benchmark = t_pred.is_some() && t_pred == t_bench;

    let dataset_sha256 = csv_text.map(|t| sha256_hex(t.as_bytes())).unwrap_or_else(|| IMF_SHA256.to_string());
    let yes = |b: bool| if b { "yes" } else { "no" };

    let mut report = String::new();
    let _ = writeln!(report, "# Reproduction report\n");
    let _ = writeln!(
        report,
        "dataset sha256 {dataset_sha256} ({})",
        if dataset_sha256 == IMF_SHA256 { "vendored fixture" } else { "differs from vendored fixture" }
    );
    let _ = writeln!(
        report,
        "cutoff {}, horizon {}, window {}, filter order {}, forgetting factors [{}], uniform weights {:.4}\n",
        cfg.cutoff,
        cfg.horizon,
        cfg.window,
        cfg.filters[0].order,
        cfg.filters.iter().map(|f| f.forgetting_factor.to_string()).collect::<Vec<_>>().join(", "),
        cfg.tensor_weights.get(0, 0)
    );
    let _ = writeln!(report, "## Rankings\n");
    let mut rows = vec![vec![
        "case".to_string(),
        "policy".into(),
        "expected".into(),
        "observed".into(),
        "match".into(),
        "tau".into(),
    ]];
    for o in &outcomes {
        rows.push(vec![
            o.case.name.clone(),
            match o.case.policy {
                MatchPolicy::Exact => "exact".into(),
                MatchPolicy::ReportOnly => "report-only".into(),
            },
            o.case.expected.join(" "),
            o.observed.join(" "),
            match (o.matches(), o.first_divergence) {
                (true, _) => "yes".into(),
                (false, Some(p)) => format!("no (position {})", p + 1),
                (false, None) => "no".into(),
            },
            format!("{:.2}", o.tau),
        ]);
    }
    report.push_str(&table(&rows));
    let _ = writeln!(report, "\n## Checks\n");
    let _ = writeln!(report, "prediction (RLS) equals benchmark: {}", yes(prediction_matches_benchmark));
    let _ = writeln!(report, "prediction (NLMS) differs from benchmark: {}", yes(nlms_differs_from_benchmark));
    let _ = writeln!(report, "TOPSIS prediction (RLS) equals TOPSIS benchmark: {}", yes(topsis_prediction_matches_benchmark));
    let failing: Vec<&str> = outcomes.iter().filter(|o| !o.passes()).map(|o| o.case.name.as_str()).collect();
    let _ = writeln!(
        report,
        "exact-policy mismatches: {}",
        if failing.is_empty() { "none".to_string() } else { failing.join("; ") }
    );

    // raw intermediates, so divergences can be traced to features
    let mut artifacts = Vec::new();
    let predicted = pipeline::predict(data, &cfg)?;
    let nlms_pred = pipeline::predict(data, &cfg.with_algorithm(Algorithm::Nlms))?;
    let blocks = [
        ("predicted (RLS)", "features_predicted.csv", extract_features(&predicted.predictions, &cfg.features)?),
        ("predicted (NLMS)", "features_predicted_nlms.csv", extract_features(&nlms_pred.predictions, &cfg.features)?),
        ("actual horizon", "features_actual.csv", extract_features(&pipeline::actual_horizon(data, &cfg)?, &cfg.features)?),
        ("past window", "features_past_window.csv", extract_features(&pipeline::past_window(data, &cfg)?, &cfg.features)?),
    ];
    for (title, file, s) in &blocks {
        let _ = writeln!(report, "\n## Feature tensor, {title}\n");
        report.push_str(&emit_features(s, Some(&cfg.directions), OutputFormat::Table));
        artifacts.push((file.to_string(), emit_features(s, None, OutputFormat::Csv)));
    }
    let current = data.window(cfg.cutoff, cfg.cutoff)?;
    let _ = writeln!(report, "\n## Snapshot at cutoff\n");
    report.push_str(&emit_tensor(&current, OutputFormat::Table));
    artifacts.push(("predictions_rls.csv".into(), emit_tensor(predicted.predictions.as_tensor(), OutputFormat::Csv)));
    artifacts.push(("predictions_nlms.csv".into(), emit_tensor(nlms_pred.predictions.as_tensor(), OutputFormat::Csv)));

    Ok(Reproduction {
        dataset_sha256,
        outcomes,
        prediction_matches_benchmark,
        nlms_differs_from_benchmark,
        topsis_prediction_matches_benchmark,
        report,
        artifacts,
    })
}

fn table(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_checksum_and_shape() {
        let t = imf_dataset().unwrap();
        assert_eq!(t.shape(), [5, 3, 39]);
        assert_eq!(t.times()[0], 1980);
        assert_eq!(*t.times().last().unwrap(), 2018);
    }

    #[test]
    fn shipped_config_is_the_reference() {
        let parsed = crate::ingest::parse_config_str(IMF_CONFIG).unwrap();
        assert_eq!(parsed, RunConfig::reference());
    }

    #[test]
    fn expected_orderings_are_permutations() {
        for c in reference_cases() {
            let mut e = c.expected.clone();
            e.sort();
            assert_eq!(e, vec!["a1", "a2", "a3", "a4", "a5"], "{}", c.name);
        }
    }
}

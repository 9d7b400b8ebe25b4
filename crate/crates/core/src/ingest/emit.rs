//! Text renderings of tensors, preference matrices and rankings.
//!
//! Machine formats (CSV, JSON lines) print floats with the shortest
//! representation that parses back to the same bits. The table format rounds
//! to three decimals.

use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::features::CriterionFeatureDirections;
use crate::mcda::{PreferenceMatrix, RankResult};
use crate::predict::FiberTrace;
use crate::tensor::{DecisionTensor, FeatureTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    JsonLines,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json-lines" | "jsonl" => Ok(OutputFormat::JsonLines),
            _ => Err(Error::Validation(format!("unknown output format '{s}'"))),
        }
    }
}

#[derive(Serialize)]
struct CellRecord<'a> {
    alternative: &'a str,
    criterion: &'a str,
    axis_label: Value,
    value: f64,
}

fn json_line<T: Serialize>(out: &mut String, record: &T) {
    out.push_str(&serde_json::to_string(record).expect("plain records serialize"));
    out.push('\n');
}

fn pad(cells: &[Vec<String>]) -> String {
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| cells.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>width$}", width = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn fixed3(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.3}")
    } else {
        "inf".into()
    }
}

/// Time-indexed tensor (observed or predicted). CSV output uses the ingest
/// header so it parses back with [`super::parse_timeseries_csv`].
pub fn emit_tensor(t: &DecisionTensor, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("alternative,criterion,time,value\n");
            for (a, c, time, v) in t.records() {
                let _ = writeln!(out, "{a},{c},{time},{v}");
            }
        }
        OutputFormat::JsonLines => {
            for (a, c, time, v) in t.records() {
                json_line(
                    &mut out,
                    &CellRecord {
                        alternative: a,
                        criterion: c,
                        axis_label: json!(time),
                        value: v,
                    },
                );
            }
        }
        OutputFormat::Table => {
            let mut rows = vec![{
                let mut h = vec!["alternative".to_string(), "criterion".to_string()];
                h.extend(t.times().iter().map(|x| x.to_string()));
                h
            }];
            for (i, a) in t.alternatives().iter().enumerate() {
                for (j, c) in t.criteria().iter().enumerate() {
                    let mut r = vec![a.clone(), c.clone()];
                    r.extend(t.fiber(i, j).expect("in range").iter().map(|v| fixed3(*v)));
                    rows.push(r);
                }
            }
            out = pad(&rows);
        }
    }
    out
}

/// Feature tensor. The table has one row per alternative and one column per
/// (feature, criterion), with an orientation row when `dirs` is given.
pub fn emit_features(s: &FeatureTensor, dirs: Option<&CriterionFeatureDirections>, format: OutputFormat) -> String {
    let [n, m, w] = s.shape();
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("alternative,criterion,feature,value\n");
            for i in 0..n {
                for j in 0..m {
                    for l in 0..w {
                        let _ = writeln!(
                            out,
                            "{},{},{},{}",
                            s.alternatives()[i],
                            s.criteria()[j],
                            s.features()[l],
                            s.get(i, j, l)
                        );
                    }
                }
            }
        }
        OutputFormat::JsonLines => {
            for i in 0..n {
                for j in 0..m {
                    for l in 0..w {
                        json_line(
                            &mut out,
                            &CellRecord {
                                alternative: &s.alternatives()[i],
                                criterion: &s.criteria()[j],
                                axis_label: json!(s.features()[l]),
                                value: s.get(i, j, l),
                            },
                        );
                    }
                }
            }
        }
        OutputFormat::Table => {
            let mut head_f = vec![String::new()];
            let mut head_c = vec![String::new()];
            let mut head_d = vec![String::new()];
            for l in 0..w {
                for j in 0..m {
                    head_f.push(if j == 0 { s.features()[l].clone() } else { String::new() });
                    head_c.push(s.criteria()[j].clone());
                    if let Some(d) = dirs {
                        head_d.push(d.get(j, l).short().to_string());
                    }
                }
            }
            let mut rows = vec![head_f, head_c];
            if dirs.is_some() {
                rows.push(head_d);
            }
            for i in 0..n {
                let mut r = vec![s.alternatives()[i].clone()];
                for l in 0..w {
                    for j in 0..m {
                        r.push(fixed3(s.get(i, j, l)));
                    }
                }
                rows.push(r);
            }
            out = pad(&rows);
        }
    }
    out
}

/// Global preference matrix π; `alternative` is preferred to `over` with degree `value`.
pub fn emit_preference(pi: &PreferenceMatrix, alternatives: &[String], format: OutputFormat) -> String {
    let n = pi.size();
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("alternative,over,value\n");
            for i in 0..n {
                for k in 0..n {
                    let _ = writeln!(out, "{},{},{}", alternatives[i], alternatives[k], pi.get(i, k));
                }
            }
        }
        OutputFormat::JsonLines => {
            for i in 0..n {
                for k in 0..n {
                    json_line(
                        &mut out,
                        &json!({"alternative": alternatives[i], "over": alternatives[k], "value": pi.get(i, k)}),
                    );
                }
            }
        }
        OutputFormat::Table => {
            let mut head = vec!["pi".to_string()];
            head.extend(alternatives.iter().cloned());
            let mut rows = vec![head];
            for (i, a) in alternatives.iter().enumerate().take(n) {
                let mut r = vec![a.clone()];
                r.extend((0..n).map(|k| fixed3(pi.get(i, k))));
                rows.push(r);
            }
            out = pad(&rows);
        }
    }
    out
}

/// Ranking rows in order, best first. `tied` marks membership of a tie group.
pub fn emit_ranking(r: &RankResult, format: OutputFormat) -> String {
    let tied = |k: usize| r.tie_groups.iter().any(|g| g.contains(&k));
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("rank,alternative,score,tied\n");
            for (pos, &k) in r.ordering.iter().enumerate() {
                let _ = writeln!(out, "{},{},{},{}", pos + 1, r.alternatives[k], r.scores[k], tied(k));
            }
        }
        OutputFormat::JsonLines => {
            for (pos, &k) in r.ordering.iter().enumerate() {
                json_line(
                    &mut out,
                    &json!({"rank": pos + 1, "alternative": r.alternatives[k], "score": r.scores[k], "tied": tied(k)}),
                );
            }
        }
        OutputFormat::Table => {
            let mut rows = vec![vec!["rank".to_string(), "alternative".into(), "score".into(), String::new()]];
            for (pos, &k) in r.ordering.iter().enumerate() {
                rows.push(vec![
                    (pos + 1).to_string(),
                    r.alternatives[k].clone(),
                    fixed3(r.scores[k]),
                    if tied(k) { "(tie)".into() } else { String::new() },
                ]);
            }
            out = pad(&rows);
        }
    }
    out
}

/// Filter diagnostics in long CSV form. `kind` is `error` (a-priori error per
/// adaptation step) or `weight` (final coefficient per tap).
pub fn emit_traces(traces: &[FiberTrace]) -> String {
    let mut out = String::from("alternative,criterion,step,kind,index,value\n");
    for t in traces {
        for (k, e) in t.errors.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},error,{k},{e}", t.alternative, t.criterion, t.step);
        }
        for (k, w) in t.weights.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},weight,{k},{w}", t.alternative, t.criterion, t.step);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_timeseries_csv;
    use crate::tensor::labels;

    #[test]
    fn ranking_rows_in_order() {
        let r = RankResult::from_scores(labels("a", 2), vec![-0.25, 0.25]).unwrap();
        let csv = emit_ranking(&r, OutputFormat::Csv);
        assert_eq!(csv, "rank,alternative,score,tied\n1,a2,0.25,false\n2,a1,-0.25,false\n");
        let table = emit_ranking(&r, OutputFormat::Table);
        let lines: Vec<_> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].contains("a2") && lines[1].contains("0.250"));
        let jl = emit_ranking(&r, OutputFormat::JsonLines);
        let first: Value = serde_json::from_str(jl.lines().next().unwrap()).unwrap();
        assert_eq!(first["alternative"], "a2");
        assert_eq!(first["rank"], 1);
    }

    #[test]
    fn tensor_csv_round_trip() {
        let t = DecisionTensor::new(
            labels("a", 2),
            labels("c", 1),
            vec![2013, 2014],
            vec![0.1 + 0.2, 1.0 / 3.0, -2.5e-17, 123456.789012345],
        )
        .unwrap();
        let text = emit_tensor(&t, OutputFormat::Csv);
        assert_eq!(parse_timeseries_csv(text.as_bytes()).unwrap(), t);
    }

    #[test]
    fn json_lines_keys() {
        let t = DecisionTensor::new(labels("a", 1), labels("c", 1), vec![7], vec![1.5]).unwrap();
        let line = emit_tensor(&t, OutputFormat::JsonLines);
        let v: Value = serde_json::from_str(line.trim()).unwrap();
        assert_eq!(v, json!({"alternative": "a1", "criterion": "c1", "axis_label": 7, "value": 1.5}));
    }

    #[test]
    fn feature_table_layout() {
        let s = FeatureTensor::new(labels("a", 2), labels("c", 2), vec!["average".into(), "cv".into()], vec![1., 2., 3., 4., 5., 6., 7., 8.]).unwrap();
        let table = emit_features(&s, None, OutputFormat::Table);
        let lines: Vec<_> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        // row a1: average c1, average c2, cv c1, cv c2
        let cells: Vec<_> = lines[2].split_whitespace().collect();
        assert_eq!(cells, vec!["a1", "1.000", "3.000", "2.000", "4.000"]);
    }
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn tmcda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmcda"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn imf_csv() -> String {
    data_dir().join("imf_weo.csv").display().to_string()
}

fn imf_toml() -> String {
    data_dir().join("imf.toml").display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Alternatives in rank order from `--format csv` ranking output.
fn csv_ordering(text: &str) -> Vec<String> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect()
}

#[test]
fn predict_to_stdout_has_full_shape() {
    let o = tmcda(&["predict", "--data", &imf_csv(), "--config", &imf_toml()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("alternative,criterion,time,value"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5 * 3 * 6);
    assert!(rows[0].starts_with("a1,c1,2013,"));
    assert!(rows.last().unwrap().starts_with("a5,c3,2018,"));
}

#[test]
fn predict_writes_file_and_traces() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pred.csv");
    let o = tmcda(&[
        "predict",
        "--data",
        &imf_csv(),
        "--config",
        &imf_toml(),
        "--out",
        out.to_str().unwrap(),
        "--plot",
        dir.path().join("overlay.svg").to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 91);
    let traces = std::fs::read_to_string(dir.path().join("pred.csv.traces.csv")).unwrap();
    assert!(traces.starts_with("alternative,criterion,step,kind,index,value\n"));
    assert!(traces.contains("a3,c2,6,weight,1,"));
    assert!(std::fs::read_to_string(dir.path().join("overlay.svg")).unwrap().starts_with("<svg"));
}

#[test]
fn too_short_series_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("short.csv");
    let mut text = String::from("alternative,criterion,time,value\n");
    for t in 0..4 {
        text.push_str(&format!("x,c1,{t},{}\ny,c1,{t},{}\n", t as f64, 2.0 * t as f64));
    }
    std::fs::write(&csv, text).unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "horizon = 3\nwindow = 2\n").unwrap();
    let o = tmcda(&["predict", "--data", csv.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("predict"), "{err}");
    assert!(err.contains("(x, c1)"), "{err}");
}

#[test]
fn rank_current_snapshot() {
    let o = tmcda(&[
        "rank", "--data", &imf_csv(), "--config", &imf_toml(), "--method", "promethee-matrix", "--source", "current",
        "--format", "csv",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(csv_ordering(&stdout(&o)), ["a4", "a5", "a1", "a2", "a3"]);
}

#[test]
fn rank_past_window() {
    let o = tmcda(&[
        "rank", "--data", &imf_csv(), "--config", &imf_toml(), "--method", "promethee-tensor", "--source",
        "past-window", "--format", "csv",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(csv_ordering(&stdout(&o)), ["a5", "a4", "a1", "a3", "a2"]);
}

#[test]
fn rank_predicted_with_intermediates() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("scores.svg");
    let o = tmcda(&[
        "rank",
        "--data",
        &imf_csv(),
        "--config",
        &imf_toml(),
        "--source",
        "predicted",
        "--emit-intermediates",
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    for section in ["# predictions", "# features", "# preference", "# ranking (promethee-tensor, predicted)"] {
        assert!(out.contains(section), "missing {section}");
    }
    assert!(out.contains("Max") && out.contains("Min"));
    assert_eq!(std::fs::read_to_string(svg).unwrap().matches("<rect").count(), 5);
}

#[test]
fn rank_json_lines() {
    let o = tmcda(&["rank", "--data", &imf_csv(), "--config", &imf_toml(), "--source", "actual", "--format", "json-lines"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().next().unwrap().starts_with("{\"alternative\":\"a5\""));
}

#[test]
fn incompatible_method_and_source() {
    let o = tmcda(&["rank", "--data", &imf_csv(), "--method", "promethee-matrix", "--source", "predicted"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tmcda(&["rank", "--data", &imf_csv(), "--source", "sideways"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "horizon = 6\nhorizn = 5\n").unwrap();
    let o = tmcda(&["rank", "--data", &imf_csv(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("config"));
}

#[test]
fn duplicate_cell_names_lines() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("dup.csv");
    std::fs::write(&csv, "alternative,criterion,time,value\na1,c1,1,1.0\na1,c1,1,2.0\n").unwrap();
    let o = tmcda(&["predict", "--data", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 3") && err.contains("line 2"), "{err}");
}

#[test]
fn missing_data_file_fails() {
    let o = tmcda(&["predict", "--data", "/nonexistent/data.csv"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tmcda(&["reproduce", "--data", "/nonexistent/data.csv", "--out-dir", "/tmp/unused"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reproduce_writes_report_and_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = tmcda(&["reproduce", "--out-dir", dir.path().to_str().unwrap(), "--plot"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let names = [
        "report.md",
        "rankings.csv",
        "features_predicted.csv",
        "features_past_window.csv",
        "predictions_rls.csv",
        "scores_predicted.svg",
    ];
    for name in names {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between runs");
    }
    let report = std::fs::read_to_string(a.path().join("report.md")).unwrap();
    assert!(report.contains("per-year prediction 2013"));
    assert!(report.contains("prediction (RLS) equals benchmark:"));
    assert!(report.contains("prediction (NLMS) differs from benchmark:"));
    assert!(report.contains("## Feature tensor, past window"));
}

#[test]
fn reproduce_on_explicit_data_matches_fixture_run() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let o = tmcda(&["reproduce", "--out-dir", a.path().to_str().unwrap()]);
    assert!(o.status.success());
    let o = tmcda(&["reproduce", "--data", &imf_csv(), "--out-dir", b.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read(a.path().join("rankings.csv")).unwrap(),
        std::fs::read(b.path().join("rankings.csv")).unwrap()
    );
}

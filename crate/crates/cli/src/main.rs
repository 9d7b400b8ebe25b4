use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tensor_mcda::experiments::{self, MatchPolicy};
use tensor_mcda::ingest::{
    emit_features, emit_preference, emit_ranking, emit_tensor, emit_traces, parse_config, read_timeseries_file,
    OutputFormat,
};
use tensor_mcda::pipeline::{self, Source};
use tensor_mcda::{DecisionTensor, Error, Method, RankResult, Result, RunConfig};

#[derive(Parser)]
#[command(name = "tmcda", version, about = "Rank alternatives on predicted multi-criteria time series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predict every (alternative, criterion) series over the horizon.
    Predict {
        /// Long-format CSV: alternative,criterion,time,value
        #[arg(long)]
        data: PathBuf,
        /// TOML run configuration (defaults apply when omitted)
        #[arg(long)]
        config: Option<PathBuf>,
        /// Prediction CSV; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Filter diagnostics CSV; defaults to `<out>.traces.csv` when --out is given
        #[arg(long)]
        traces: Option<PathBuf>,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
        /// Also write an SVG overlay of observed and predicted series
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Rank alternatives with one strategy.
    Rank {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// promethee-tensor, promethee-matrix or topsis-tensor; defaults to the config's method
        #[arg(long, value_parser = parse_method)]
        method: Option<Method>,
        /// predicted, past-window, current or actual
        #[arg(long, default_value = "predicted", value_parser = parse_source)]
        source: Source,
        /// Also print the feature tensor and the preference matrix
        #[arg(long)]
        emit_intermediates: bool,
        #[arg(long, default_value = "table", value_parser = parse_format)]
        format: OutputFormat,
        /// Also write an SVG bar chart of the scores
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Run every reference strategy on the IMF dataset and write a comparison report.
    Reproduce {
        /// Dataset to use instead of the vendored fixture
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value = "reproduction")]
        out_dir: PathBuf,
        /// Also write SVG score charts into the output directory
        #[arg(long)]
        plot: bool,
    },
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_source(s: &str) -> std::result::Result<Source, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    match path {
        Some(p) => parse_config(p),
        None => Ok(RunConfig::default()),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_predict(
    data: &Path,
    config: Option<&Path>,
    out: Option<&Path>,
    traces: Option<&Path>,
    format: OutputFormat,
    plot: Option<&Path>,
) -> Result<()> {
    let tensor = read_timeseries_file(data)?;
    let cfg = load_config(config)?.resolve(&tensor)?;
    let report = pipeline::predict(&tensor, &cfg)?;
    write_out(out, &emit_tensor(report.predictions.as_tensor(), format))?;

    let traces = traces.map(Path::to_path_buf).or_else(|| out.map(|p| {
        let mut name = p.as_os_str().to_owned();
        name.push(".traces.csv");
        PathBuf::from(name)
    }));
    if let Some(t) = traces {
        fs::write(t, emit_traces(&report.traces))?;
    }
    if let Some(p) = plot {
        let history = pipeline::past_window(&tensor, &cfg)?;
        fs::write(p, overlay_svg(&history, report.predictions.as_tensor()))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_rank(
    data: &Path,
    config: Option<&Path>,
    method: Option<Method>,
    source: Source,
    emit_intermediates: bool,
    format: OutputFormat,
    plot: Option<&Path>,
) -> Result<()> {
    let tensor = read_timeseries_file(data)?;
    let cfg = load_config(config)?.resolve(&tensor)?;
    let method = method.unwrap_or(cfg.method);
    let run = pipeline::rank(&tensor, &cfg, source, method)?;

    let mut out = String::new();
    if emit_intermediates {
        let section = |out: &mut String, title: &str, body: String| {
            if format == OutputFormat::Table {
                let _ = writeln!(out, "# {title}");
            }
            out.push_str(&body);
            if format == OutputFormat::Table {
                out.push('\n');
            }
        };
        if let Some(p) = &run.prediction {
            section(&mut out, "predictions", emit_tensor(p.predictions.as_tensor(), format));
        }
        if let Some(s) = &run.features {
            let dirs = (format == OutputFormat::Table).then_some(&cfg.directions);
            section(&mut out, "features", emit_features(s, dirs, format));
        }
        if let Some(pi) = &run.preference {
            section(&mut out, "preference", emit_preference(pi, &run.ranking.alternatives, format));
        }
        if format == OutputFormat::Table {
            let _ = writeln!(out, "# ranking ({method}, {source})");
        }
    }
    out.push_str(&emit_ranking(&run.ranking, format));
    print!("{out}");
    if let Some(p) = plot {
        fs::write(p, score_svg(&format!("{method}, {source}"), &run.ranking))?;
    }
    Ok(())
}

fn cmd_reproduce(data: Option<&Path>, out_dir: &Path, plot: bool) -> Result<()> {
    let (tensor, text) = match data {
        Some(p) => {
            let text = fs::read_to_string(p)?;
            (tensor_mcda::ingest::parse_timeseries_csv(text.as_bytes())?, Some(text))
        }
        None => (experiments::imf_dataset()?, None),
    };
    let repro = experiments::reproduce(&tensor, text.as_deref())?;
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("report.md"), &repro.report)?;
    for (name, body) in &repro.artifacts {
        fs::write(out_dir.join(name), body)?;
    }

    let mut rows = String::from("case,policy,expected,observed,match,tau\n");
    for o in &repro.outcomes {
        let policy = match o.case.policy {
            MatchPolicy::Exact => "exact",
            MatchPolicy::ReportOnly => "report-only",
        };
        let _ = writeln!(
            rows,
            "{},{policy},{},{},{},{}",
            o.case.name,
            o.case.expected.join(" "),
            o.observed.join(" "),
            o.matches(),
            o.tau
        );
    }
    fs::write(out_dir.join("rankings.csv"), rows)?;

    if plot {
        let cfg = RunConfig::reference().resolve(&tensor)?;
        for (file, source, method) in [
            ("scores_predicted.svg", Source::Predicted, Method::PrometheeTensor),
            ("scores_actual.svg", Source::Actual, Method::PrometheeTensor),
            ("scores_past_window.svg", Source::PastWindow, Method::PrometheeTensor),
        ] {
            let r = pipeline::rank(&tensor, &cfg, source, method)?;
            fs::write(out_dir.join(file), score_svg(&format!("{method}, {source}"), &r.ranking))?;
        }
    }

    let matched = repro.outcomes.iter().filter(|o| o.matches()).count();
    let failing = repro.outcomes.iter().filter(|o| !o.passes()).count();
    println!(
        "{matched}/{} orderings match; {failing} exact-policy mismatches; report in {}",
        repro.outcomes.len(),
        out_dir.join("report.md").display()
    );
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Horizontal bars, best first, scaled to the largest |score|.
fn score_svg(title: &str, r: &RankResult) -> String {
    let (bar_h, left, width) = (24.0, 80.0, 320.0);
    let height = 40.0 + bar_h * r.ordering.len() as f64;
    let scale = r.scores.iter().fold(0.0f64, |m, s| m.max(s.abs())).max(1e-12);
    let mid = left + width / 2.0;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{height}\" font-family=\"sans-serif\" font-size=\"12\">\n",
        left + width + 80.0
    );
    let _ = writeln!(svg, "<text x=\"8\" y=\"18\">{}</text>", escape(title));
    let _ = writeln!(svg, "<line x1=\"{mid}\" y1=\"28\" x2=\"{mid}\" y2=\"{height}\" stroke=\"#888\"/>");
    for (pos, &k) in r.ordering.iter().enumerate() {
        let y = 32.0 + bar_h * pos as f64;
        let s = r.scores[k];
        let len = s.abs() / scale * width / 2.0;
        let x = if s >= 0.0 { mid } else { mid - len };
        let _ = writeln!(svg, "<text x=\"8\" y=\"{}\">{}</text>", y + 14.0, escape(&r.alternatives[k]));
        let _ = writeln!(
            svg,
            "<rect x=\"{x:.2}\" y=\"{y}\" width=\"{len:.2}\" height=\"{}\" fill=\"#4878a8\"/>",
            bar_h - 6.0
        );
        let _ = writeln!(svg, "<text x=\"{}\" y=\"{}\">{s:.3}</text>", left + width + 8.0, y + 14.0);
    }
    svg.push_str("</svg>\n");
    svg
}

/// One small panel per (alternative, criterion): observed history solid,
/// predictions dashed.
fn overlay_svg(history: &DecisionTensor, predicted: &DecisionTensor) -> String {
    let (pw, ph, pad) = (180.0, 110.0, 24.0);
    let [n, m, _] = history.shape();
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" font-size=\"10\">\n",
        m as f64 * (pw + pad) + pad,
        n as f64 * (ph + pad) + pad
    );
    let times: Vec<i64> = history.times().iter().chain(predicted.times()).copied().collect();
    let (t0, t1) = (times[0] as f64, *times.last().unwrap() as f64);
    for i in 0..n {
        for j in 0..m {
            let past = history.fiber(i, j).expect("in range");
            let future = predicted.fiber(i, j).expect("in range");
            let lo = past.iter().chain(future).fold(f64::INFINITY, |a, b| a.min(*b));
            let hi = past.iter().chain(future).fold(f64::NEG_INFINITY, |a, b| a.max(*b));
            let span = if hi > lo { hi - lo } else { 1.0 };
            let (ox, oy) = (pad + j as f64 * (pw + pad), pad + i as f64 * (ph + pad));
            let px = |t: i64| ox + (t as f64 - t0) / (t1 - t0).max(1.0) * pw;
            let py = |v: f64| oy + ph - (v - lo) / span * ph;
            let path = |labels: &[i64], vals: &[f64]| {
                labels
                    .iter()
                    .zip(vals)
                    .map(|(t, v)| format!("{:.2},{:.2}", px(*t), py(*v)))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let _ = writeln!(
                svg,
                "<rect x=\"{ox}\" y=\"{oy}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"#ccc\"/>"
            );
            let _ = writeln!(
                svg,
                "<text x=\"{ox}\" y=\"{}\">{} {}</text>",
                oy - 4.0,
                escape(&history.alternatives()[i]),
                escape(&history.criteria()[j])
            );
            let _ = writeln!(
                svg,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"#333\"/>",
                path(history.times(), past)
            );
            let joined_t: Vec<i64> = history.times().last().into_iter().chain(predicted.times()).copied().collect();
            let joined_v: Vec<f64> = past.last().into_iter().chain(future).copied().collect();
            let _ = writeln!(
                svg,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-dasharray=\"4 3\"/>",
                path(&joined_t, &joined_v)
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Predict {
            data,
            config,
            out,
            traces,
            format,
            plot,
        } => cmd_predict(&data, config.as_deref(), out.as_deref(), traces.as_deref(), format, plot.as_deref()),
        Command::Rank {
            data,
            config,
            method,
            source,
            emit_intermediates,
            format,
            plot,
        } => cmd_rank(&data, config.as_deref(), method, source, emit_intermediates, format, plot.as_deref()),
        Command::Reproduce { data, out_dir, plot } => cmd_reproduce(data.as_deref(), &out_dir, plot),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tmcda: {} error: {e}", e.module());
            if e.is_validation() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

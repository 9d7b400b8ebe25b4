//! Long-format (tidy) CSV: one `alternative,criterion,time,value` row per cell.

use std::collections::HashMap;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::tensor::DecisionTensor;

pub const HEADER: [&str; 4] = ["alternative", "criterion", "time", "value"];

const MAX_LISTED_MISSING: usize = 50;

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(input)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn intern(labels: &mut Vec<String>, index: &mut HashMap<String, usize>, label: &str) -> usize {
    if let Some(&k) = index.get(label) {
        return k;
    }
    labels.push(label.to_string());
    index.insert(label.to_string(), labels.len() - 1);
    labels.len() - 1
}

/// Reads a complete decision tensor.
///
/// Alternatives and criteria keep their order of first appearance; times are
/// sorted ascending. Every combination must appear exactly once.
pub fn parse_timeseries_csv<R: Read>(input: R) -> Result<DecisionTensor> {
    let mut rdr = reader(input);
    let mut records = rdr.records();

    let header = match records.next() {
        Some(r) => r.map_err(csv_error)?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty input".into(),
            })
        }
    };
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(Error::Parse {
            line: 1,
            message: format!("header must be exactly '{}'", HEADER.join(",")),
        });
    }

    let (mut alts, mut alt_ix) = (Vec::new(), HashMap::new());
    let (mut crits, mut crit_ix) = (Vec::new(), HashMap::new());
    let mut cells: HashMap<(usize, usize, i64), (f64, u64)> = HashMap::new();
    let mut times: Vec<i64> = Vec::new();

    for rec in records {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != 4 {
            return Err(Error::Parse {
                line,
                message: format!("expected 4 fields, found {}", rec.len()),
            });
        }
        let (alt, crit) = (&rec[0], &rec[1]);
        if alt.is_empty() || crit.is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty alternative or criterion label".into(),
            });
        }
        let time: i64 = rec[2].parse().map_err(|_| Error::Parse {
            line,
            message: format!("time '{}' is not an integer", &rec[2]),
        })?;
        let value: f64 = rec[3].parse().map_err(|_| Error::Parse {
            line,
            message: format!("value '{}' is not a number", &rec[3]),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("value '{}' is not finite", &rec[3]),
            });
        }
        let i = intern(&mut alts, &mut alt_ix, alt);
        let j = intern(&mut crits, &mut crit_ix, crit);
        if let Some(&(_, first_line)) = cells.get(&(i, j, time)) {
            return Err(Error::Duplicate {
                line,
                first_line,
                alternative: alt.to_string(),
                criterion: crit.to_string(),
                time,
            });
        }
        cells.insert((i, j, time), (value, line));
        times.push(time);
    }

    times.sort_unstable();
    times.dedup();
    if cells.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no data rows".into(),
        });
    }

    let mut values = Vec::with_capacity(alts.len() * crits.len() * times.len());
    let mut missing = Vec::new();
    let mut n_missing = 0usize;
    for (i, a) in alts.iter().enumerate() {
        for (j, c) in crits.iter().enumerate() {
            for &t in &times {
                match cells.get(&(i, j, t)) {
                    Some(&(v, _)) => values.push(v),
                    None => {
                        n_missing += 1;
                        if missing.len() < MAX_LISTED_MISSING {
                            missing.push(format!("({a}, {c}, {t})"));
                        }
                    }
                }
            }
        }
    }
    if n_missing > 0 {
        if n_missing > missing.len() {
            missing.push(format!("... {} more", n_missing - missing.len()));
        }
        return Err(Error::Incomplete { missing });
    }
    DecisionTensor::new(alts, crits, times, values)
}

pub fn read_timeseries_file(path: impl AsRef<Path>) -> Result<DecisionTensor> {
    parse_timeseries_csv(File::open(path)?)
}

/// Converts a wide table (`alternative,criterion,<time>,<time>,...`, one row
/// per fiber) into a tensor.
pub fn parse_wide_csv<R: Read>(input: R) -> Result<DecisionTensor> {
    let mut rdr = reader(input);
    let mut records = rdr.records();
    let header = records
        .next()
        .ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?
        .map_err(csv_error)?;
    if header.len() < 3 || &header[0] != "alternative" || &header[1] != "criterion" {
        return Err(Error::Parse {
            line: 1,
            message: "wide header must start with 'alternative,criterion' followed by time labels".into(),
        });
    }
    let times: Vec<i64> = header
        .iter()
        .skip(2)
        .map(|h| {
            h.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("time label '{h}' is not an integer"),
            })
        })
        .collect::<Result<_>>()?;

    let mut long = String::from("alternative,criterion,time,value\n");
    for rec in records {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != times.len() + 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", times.len() + 2, rec.len()),
            });
        }
        for (t, v) in times.iter().zip(rec.iter().skip(2)) {
            long.push_str(&format!("{},{},{t},{v}\n", &rec[0], &rec[1]));
        }
    }
    parse_timeseries_csv(long.as_bytes())
}

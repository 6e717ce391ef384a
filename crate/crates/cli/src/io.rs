use std::fs;
use std::path::Path;

use pseudonull::numerics::{FrameState, SampledField};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::json::{format_float, to_canonical_string};

/// Relative tolerance on the spacing of samples read from CSV.
const SPACING_TOLERANCE: f64 = 1e-9;

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn write_json(path: &Path, value: &Value) -> Result<(), CliError> {
    fs::write(path, to_canonical_string(value)).map_err(|e| CliError::io(path, e))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, CliError> {
    csv::Writer::from_path(path).map_err(|source| CliError::Csv {
        path: path.into(),
        source,
    })
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |source| CliError::Csv {
        path: path.into(),
        source,
    }
}

/// Columns `s, value`.
pub fn write_grid_csv(path: &Path, field: &SampledField) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(["s", "value"]).map_err(csv_err(path))?;
    for (i, v) in field.values().iter().enumerate() {
        w.write_record([format_float(field.s(i)), format_float(*v)])
            .map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Columns `s`, then the first `dim` ambient coordinates of `γ, T, N, B`.
pub fn write_curve_csv(path: &Path, grid: &SampledField, curve: &[FrameState], dim: usize) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    let mut header = vec!["s".to_string()];
    for name in ["gamma", "t", "n", "b"] {
        header.extend((0..dim).map(|c| format!("{name}{c}")));
    }
    w.write_record(&header).map_err(csv_err(path))?;
    for (i, frame) in curve.iter().enumerate() {
        let mut row = vec![format_float(grid.s(i))];
        for v in frame.to_array() {
            row.extend(v.iter().take(dim).map(|x| format_float(*x)));
        }
        w.write_record(&row).map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Reads an evenly spaced `s, value` grid. For periodic grids the last
/// sample is the one just before the period closes.
pub fn read_grid_csv(path: &Path, periodic: bool) -> Result<SampledField, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let mut s = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err(path))?;
        let cell = |j: usize| -> Result<f64, CliError> {
            let text = record.get(j).unwrap_or("").trim();
            text.parse()
                .map_err(|_| CliError::Usage(format!("{}: bad number `{text}`", path.display())))
        };
        s.push(cell(0)?);
        values.push(cell(1)?);
    }
    if s.len() < 2 {
        return Err(CliError::Usage(format!("{}: need at least two samples", path.display())));
    }
    let step = s[1] - s[0];
    for (i, w) in s.windows(2).enumerate() {
        if ((w[1] - w[0]) - step).abs() > SPACING_TOLERANCE * step.abs().max(1.0) {
            return Err(CliError::Usage(format!(
                "{}: samples are not evenly spaced at row {}",
                path.display(),
                i + 2
            )));
        }
    }
    Ok(SampledField::new(s[0], step, values, periodic)?)
}

pub fn run_json(dt: f64, ds: f64, times: &[f64], fields: &[SampledField]) -> Value {
    json!({
        "dt": dt,
        "ds": ds,
        "times": times,
        "fields": fields.iter().map(|f| f.values().to_vec()).collect::<Vec<_>>(),
    })
}

//! Sampling geodesic curves into CSV or JSON artifacts.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::geodesic::{CurveKind, GeodesicCurve};
use crate::measure::DiscreteMeasure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => usage(format!("unknown export format `{other}`, expected csv or json")),
        }
    }
}

#[derive(Serialize)]
struct Slice {
    t: f64,
    measure: DiscreteMeasure,
}

#[derive(Serialize)]
struct CurveExport {
    kind: CurveKind,
    p: f64,
    speed: f64,
    slices: Vec<Slice>,
}

/// The `steps` equally spaced parameters from `t0` to `t1`, both ends exact.
pub fn sample_times(t0: f64, t1: f64, steps: usize) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == last {
                t1
            } else {
                t0 + (t1 - t0) * i as f64 / last as f64
            }
        })
        .collect()
}

/// Evaluates `curve` at `steps` equally spaced times in `[t0, t1]` and renders them.
///
/// CSV has one row per atom: `t,atom,w,x1..xn,y1..yn,z`. JSON is
/// `{"kind","p","speed","slices":[{"t","measure"}]}` with measures in their
/// canonical form. Output is a pure function of the inputs.
pub fn export_curve(curve: &GeodesicCurve, t0: f64, t1: f64, steps: usize, format: ExportFormat) -> Result<String> {
    if steps < 2 {
        return usage(format!("export needs at least 2 steps, got {steps}"));
    }
    if !(t0.is_finite() && t1.is_finite()) || t0 > t1 || !curve.contains(t0) || !curve.contains(t1) {
        return Err(Error::OutOfDomain { t0, t1 });
    }
    let slices = sample_times(t0, t1, steps)
        .into_iter()
        .map(|t| {
            Ok(Slice {
                t,
                measure: curve.evaluate(t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match format {
        ExportFormat::Json => serde_json::to_string_pretty(&CurveExport {
            kind: curve.kind(),
            p: curve.exponent(),
            speed: curve.speed(),
            slices,
        })?,
        ExportFormat::Csv => to_csv(&slices),
    })
}

fn to_csv(slices: &[Slice]) -> String {
    let n = slices[0].measure.dim();
    let mut out = String::from("t,atom,w");
    for axis in ["x", "y"] {
        for i in 1..=n {
            write!(out, ",{axis}{i}").unwrap();
        }
    }
    out.push_str(",z\n");
    for slice in slices {
        for (k, atom) in slice.measure.atoms().iter().enumerate() {
            write!(out, "{},{k},{}", slice.t, atom.weight).unwrap();
            for c in atom.point.x.iter().chain(&atom.point.y) {
                write!(out, ",{c}").unwrap();
            }
            writeln!(out, ",{}", atom.point.z).unwrap();
        }
    }
    out
}

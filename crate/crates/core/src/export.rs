//! Plot-ready geometry export: sample every circle (or theta arc) at a
//! fixed number of parameter values and write the polylines as OFF, CSV,
//! or JSON. No rendering; the output feeds external plotting tools.
//!
//! OFF output encodes each closed polyline as one polygonal face and uses
//! the `nOFF` dialect whenever the ambient dimension is not 3. Theta arcs
//! are open (pole to pole), which OFF faces cannot represent, so OFF
//! export of a theta document is a domain error; CSV and JSON handle it.

use std::fmt::Write as _;

use nalgebra::DVector;
use serde::Serialize;

use crate::constructions::theta::{ThetaGraph, MERIDIANS};
use crate::constructions::EmbeddedBouquet;
use crate::error::{Error, Result};
use crate::io::Document;
use crate::symgroup::GraphPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Off,
    Csv,
    Json,
}

struct Polyline {
    /// 1-based index in the document's own numbering (circle or arc).
    index: usize,
    closed: bool,
    /// Parameter value for each sample (angle in radians, or t ∈ [0,1]).
    params: Vec<f64>,
    points: Vec<DVector<f64>>,
}

fn bouquet_polylines(e: &EmbeddedBouquet, samples: usize) -> Vec<Polyline> {
    (0..e.genus())
        .map(|i| {
            let params: Vec<f64> = (0..samples)
                .map(|k| std::f64::consts::TAU * k as f64 / samples as f64)
                .collect();
            let points = params
                .iter()
                .map(|&angle| e.eval(GraphPoint::OnCircle { circle: i, angle }))
                .collect();
            Polyline { index: i + 1, closed: true, params, points }
        })
        .collect()
}

fn theta_polylines(t: &ThetaGraph, samples: usize) -> Vec<Polyline> {
    (0..MERIDIANS)
        .map(|arc| {
            let params: Vec<f64> = (0..samples)
                .map(|k| k as f64 / (samples - 1) as f64)
                .collect();
            let points = params
                .iter()
                .map(|&s| t.eval(crate::constructions::theta::ThetaPoint::OnArc { arc, t: s }))
                .collect();
            Polyline { index: arc + 1, closed: false, params, points }
        })
        .collect()
}

fn document_polylines(doc: &Document, samples: usize) -> Result<(usize, Vec<Polyline>)> {
    if samples < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 samples per curve, got {samples}"
        )));
    }
    Ok(match doc {
        Document::Bouquet(e) => (e.ambient_dim(), bouquet_polylines(e, samples)),
        Document::Theta(t) => (3, theta_polylines(t, samples)),
    })
}

fn write_off(dim: usize, lines: &[Polyline]) -> Result<String> {
    if let Some(open) = lines.iter().find(|l| !l.closed) {
        return Err(Error::Domain(format!(
            "curve {} is open; OFF stores closed polylines only, use csv or json",
            open.index
        )));
    }
    let mut out = String::new();
    if dim == 3 {
        out.push_str("OFF\n");
    } else {
        let _ = writeln!(out, "nOFF\n{dim}");
    }
    let total: usize = lines.iter().map(|l| l.points.len()).sum();
    let _ = writeln!(out, "{total} {} 0", lines.len());
    for line in lines {
        for p in &line.points {
            let coords: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
            let _ = writeln!(out, "{}", coords.join(" "));
        }
    }
    let mut offset = 0;
    for line in lines {
        let n = line.points.len();
        let _ = write!(out, "{n}");
        for k in 0..n {
            let _ = write!(out, " {}", offset + k);
        }
        out.push('\n');
        offset += n;
    }
    Ok(out)
}

fn write_csv(dim: usize, lines: &[Polyline]) -> String {
    let mut out = String::from("curve,param");
    for c in 1..=dim {
        let _ = write!(out, ",x{c}");
    }
    out.push('\n');
    for line in lines {
        for (param, p) in line.params.iter().zip(&line.points) {
            let _ = write!(out, "{},{param}", line.index);
            for x in p.iter() {
                let _ = write!(out, ",{x}");
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize)]
struct PolylineDto {
    curve: usize,
    closed: bool,
    params: Vec<f64>,
    samples: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct ExportDto {
    ambient_dim: usize,
    polylines: Vec<PolylineDto>,
}

fn write_json(dim: usize, lines: &[Polyline]) -> Result<String> {
    let dto = ExportDto {
        ambient_dim: dim,
        polylines: lines
            .iter()
            .map(|l| PolylineDto {
                curve: l.index,
                closed: l.closed,
                params: l.params.clone(),
                samples: l.points.iter().map(|p| p.iter().copied().collect()).collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string(&dto)?)
}

/// Sample the document's curves at `samples` parameter values each and
/// render them in the requested format.
pub fn export_document(doc: &Document, format: ExportFormat, samples: usize) -> Result<String> {
    let (dim, lines) = document_polylines(doc, samples)?;
    match format {
        ExportFormat::Off => write_off(dim, &lines),
        ExportFormat::Csv => Ok(write_csv(dim, &lines)),
        ExportFormat::Json => write_json(dim, &lines),
    }
}

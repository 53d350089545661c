//! JSON documents for embeddings: schema types, full-precision float
//! output, and validated parsing back into the geometry types.
//!
//! Two document kinds share one reader: bouquet embeddings carry `genus`,
//! `ambient_dim`, `post_map`, `circles`, and `representation`; theta-graph
//! documents are marked by `"graph": "theta"` and carry the meridian
//! longitudes plus all twelve symmetry matrices. Matrices are flat
//! row-major arrays; floats are written with 17 significant digits, which
//! reproduces every f64 bit-for-bit on re-read.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::constructions::theta::{ThetaElement, ThetaGraph, MERIDIANS};
use crate::constructions::{EmbeddedBouquet, ParametricCircle, PostMap, Representation};
use crate::error::{Error, Result};
use crate::symgroup::Permutation;

/// serde_json formatter writing every float as `d.dddddddddddddddde±x`
/// (17 significant digits).
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn to_json_full_precision<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serializer emits UTF-8"))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleDto {
    center: Vec<f64>,
    axis_u: Vec<f64>,
    axis_w: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationDto {
    rho: Vec<Vec<f64>>,
    tau_generators: BTreeMap<String, Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BouquetDto {
    genus: usize,
    ambient_dim: usize,
    post_map: PostMap,
    circles: Vec<CircleDto>,
    representation: RepresentationDto,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaElementDto {
    /// 1-based images of the meridian permutation.
    perm: Vec<usize>,
    flip: bool,
    /// 3×3 row-major.
    matrix: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaDto {
    graph: String,
    longitudes: Vec<f64>,
    /// In the canonical enumeration order of the symmetry group.
    elements: Vec<ThetaElementDto>,
}

fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<f64> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out.push(m[(r, c)]);
        }
    }
    out
}

fn matrix_from_rows(dim: usize, data: &[f64], what: &str) -> Result<DMatrix<f64>> {
    if data.len() != dim * dim {
        return Err(Error::Domain(format!(
            "{what}: expected {dim}×{dim} = {} entries, got {}",
            dim * dim,
            data.len()
        )));
    }
    Ok(DMatrix::from_row_slice(dim, dim, data))
}

/// Key naming the adjacent relabeling generator for 0-based index `j`.
fn tau_key(j: usize) -> String {
    format!("({} {})", j + 1, j + 2)
}

/// Inverse of [`tau_key`]: accepts only `"(a a+1)"` with `1 ≤ a < genus`.
fn parse_tau_key(key: &str, genus: usize) -> Result<usize> {
    let bad = || Error::Domain(format!("tau_generators key {key:?} is not of the form \"(i i+1)\""));
    let inner = key.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let mut parts = inner.split_whitespace();
    let a: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if parts.next().is_some() || b != a + 1 {
        return Err(bad());
    }
    if a < 1 || b > genus {
        return Err(Error::Domain(format!(
            "tau_generators key {key:?} out of range for genus {genus}"
        )));
    }
    Ok(a - 1)
}

fn bouquet_to_dto(e: &EmbeddedBouquet) -> BouquetDto {
    let rep = e.representation();
    let mut tau_generators = BTreeMap::new();
    for (j, m) in rep.tau_adjacent_all().iter().enumerate() {
        tau_generators.insert(tau_key(j), matrix_to_rows(m));
    }
    BouquetDto {
        genus: e.genus(),
        ambient_dim: e.ambient_dim(),
        post_map: e.post_map(),
        circles: e
            .circles()
            .iter()
            .map(|c| CircleDto {
                center: c.center.iter().copied().collect(),
                axis_u: c.axis_u.iter().copied().collect(),
                axis_w: c.axis_w.iter().copied().collect(),
            })
            .collect(),
        representation: RepresentationDto {
            rho: rep.rho_all().iter().map(matrix_to_rows).collect(),
            tau_generators,
        },
    }
}

fn bouquet_from_dto(dto: BouquetDto) -> Result<EmbeddedBouquet> {
    let genus = dto.genus;
    if genus == 0 {
        return Err(Error::Domain("genus must be at least 1".into()));
    }
    if dto.circles.len() != genus {
        return Err(Error::Domain(format!(
            "genus {genus} but {} circles",
            dto.circles.len()
        )));
    }
    let mut circles = Vec::with_capacity(genus);
    for (i, c) in dto.circles.into_iter().enumerate() {
        if c.center.is_empty() || c.center.len() != c.axis_u.len() || c.center.len() != c.axis_w.len() {
            return Err(Error::Domain(format!(
                "circle {}: center/axis_u/axis_w lengths {}/{}/{} disagree or are zero",
                i + 1,
                c.center.len(),
                c.axis_u.len(),
                c.axis_w.len()
            )));
        }
        circles.push(ParametricCircle {
            center: DVector::from_vec(c.center),
            axis_u: DVector::from_vec(c.axis_u),
            axis_w: DVector::from_vec(c.axis_w),
        });
    }
    let dim = dto.ambient_dim;
    if dto.representation.rho.len() != genus {
        return Err(Error::Domain(format!(
            "genus {genus} but {} rho matrices",
            dto.representation.rho.len()
        )));
    }
    let rho = dto
        .representation
        .rho
        .iter()
        .enumerate()
        .map(|(i, rows)| matrix_from_rows(dim, rows, &format!("rho[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let mut tau: Vec<Option<DMatrix<f64>>> = vec![None; genus - 1];
    for (key, rows) in &dto.representation.tau_generators {
        let j = parse_tau_key(key, genus)?;
        tau[j] = Some(matrix_from_rows(dim, rows, &format!("tau_generators[{key:?}]"))?);
    }
    let tau = tau
        .into_iter()
        .enumerate()
        .map(|(j, m)| {
            m.ok_or_else(|| Error::Domain(format!("missing tau_generators key {:?}", tau_key(j))))
        })
        .collect::<Result<Vec<_>>>()?;
    EmbeddedBouquet::new(circles, Representation::new(rho, tau)?, dto.post_map)
}

fn theta_to_dto(t: &ThetaGraph) -> ThetaDto {
    let elements = ThetaElement::enumerate()
        .iter()
        .zip(t.matrices())
        .map(|(el, m)| ThetaElementDto {
            perm: el.perm.images().iter().map(|k| k + 1).collect(),
            flip: el.flip,
            matrix: matrix_to_rows(m),
        })
        .collect();
    ThetaDto {
        graph: "theta".into(),
        longitudes: t.longitudes().to_vec(),
        elements,
    }
}

fn theta_from_dto(dto: ThetaDto) -> Result<ThetaGraph> {
    if dto.graph != "theta" {
        return Err(Error::Domain(format!("unknown graph kind {:?}", dto.graph)));
    }
    if dto.longitudes.len() != MERIDIANS {
        return Err(Error::Domain(format!(
            "expected {MERIDIANS} longitudes, got {}",
            dto.longitudes.len()
        )));
    }
    let canonical = ThetaElement::enumerate();
    if dto.elements.len() != canonical.len() {
        return Err(Error::Domain(format!(
            "expected {} elements, got {}",
            canonical.len(),
            dto.elements.len()
        )));
    }
    let mut matrices = Vec::with_capacity(canonical.len());
    for (k, (el, expected)) in dto.elements.iter().zip(&canonical).enumerate() {
        let zero_based: Vec<usize> = el
            .perm
            .iter()
            .map(|&i| i.checked_sub(1).ok_or_else(|| {
                Error::Domain(format!("element {k}: permutation images are 1-based"))
            }))
            .collect::<Result<Vec<_>>>()?;
        let parsed = ThetaElement {
            perm: Permutation::from_images(zero_based)?,
            flip: el.flip,
        };
        if parsed != *expected {
            return Err(Error::Domain(format!(
                "element {k} is {parsed}, expected {expected} (canonical enumeration order)"
            )));
        }
        matrices.push(matrix_from_rows(3, &el.matrix, &format!("element {k} matrix"))?);
    }
    let longitudes = [dto.longitudes[0], dto.longitudes[1], dto.longitudes[2]];
    ThetaGraph::from_parts(longitudes, matrices)
}

/// A parsed embedding file: either a bouquet or the theta-graph demo.
#[derive(Debug, Clone)]
pub enum Document {
    Bouquet(EmbeddedBouquet),
    Theta(ThetaGraph),
}

impl Document {
    pub fn to_json(&self) -> Result<String> {
        match self {
            Document::Bouquet(e) => bouquet_to_json(e),
            Document::Theta(t) => theta_to_json(t),
        }
    }
}

pub fn bouquet_to_json(e: &EmbeddedBouquet) -> Result<String> {
    to_json_full_precision(&bouquet_to_dto(e))
}

pub fn bouquet_from_json(text: &str) -> Result<EmbeddedBouquet> {
    bouquet_from_dto(serde_json::from_str(text)?)
}

pub fn theta_to_json(t: &ThetaGraph) -> Result<String> {
    to_json_full_precision(&theta_to_dto(t))
}

pub fn theta_from_json(text: &str) -> Result<ThetaGraph> {
    theta_from_dto(serde_json::from_str(text)?)
}

/// Parse either document kind, dispatching on the `"graph"` marker.
pub fn document_from_json(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("graph").and_then(|v| v.as_str()) == Some("theta") {
        Ok(Document::Theta(theta_from_dto(serde_json::from_value(
            value,
        )?)?))
    } else {
        Ok(Document::Bouquet(bouquet_from_dto(serde_json::from_value(
            value,
        )?)?))
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    document_from_json(&fs::read_to_string(path)?)
}

pub fn write_document(path: &Path, doc: &Document) -> Result<()> {
    fs::write(path, doc.to_json()?)?;
    Ok(())
}

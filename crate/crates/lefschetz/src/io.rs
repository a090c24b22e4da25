//! JSON file formats for models, sections and pencils. Rationals are written
//! as `"p/q"` strings (integers without a denominator).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixtures::{builtin_model, builtin_pencil};
use crate::graded::GradedOperator;
use crate::linalg::{fmt_q, parse_q, Matrix, Q};
use crate::model::{PoincareModel, Product};
use crate::section::{PencilDatum, SectionDatum};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{location}: cannot read file: {source}")]
    Read { location: String, source: std::io::Error },
    #[error("{location}: malformed document: {message}")]
    Syntax { location: String, message: String },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Invalid { location: location.into(), message: message.into() }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProductFile {
    pub i: usize,
    pub a: usize,
    pub j: usize,
    pub b: usize,
    pub result: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub n: usize,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub mult: Vec<ProductFile>,
    pub trace: Vec<String>,
    pub xi: Vec<String>,
}

/// A model given inline, by path (relative to the referring file), or as
/// `builtin:<name>`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ModelRef {
    Reference(String),
    Inline(Box<ModelFile>),
}

/// One block of a degree-0 map: rows of rationals for source degree `degree`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BlockFile {
    pub degree: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SectionFile {
    pub x: ModelRef,
    pub y: ModelRef,
    pub restrict: Vec<BlockFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PencilFile {
    pub name: String,
    pub x: ModelRef,
    pub y: ModelRef,
    pub delta: ModelRef,
    pub iota: Vec<BlockFile>,
    pub h: Vec<BlockFile>,
    pub m: i64,
}

fn write_q(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn read_q(v: &[String], location: &str) -> Result<Vec<Q>, IoError> {
    v.iter()
        .enumerate()
        .map(|(k, s)| parse_q(s).ok_or_else(|| invalid(format!("{location}[{k}]"), format!("`{s}` is not a rational"))))
        .collect()
}

impl ModelFile {
    pub fn from_model(m: &PoincareModel) -> Self {
        ModelFile {
            n: m.n(),
            dims: m.dims().to_vec(),
            labels: m.labels().to_vec(),
            mult: m
                .products()
                .into_iter()
                .map(|p| ProductFile { i: p.i, a: p.a, j: p.j, b: p.b, result: write_q(&p.result) })
                .collect(),
            trace: write_q(m.trace()),
            xi: write_q(m.xi()),
        }
    }

    pub fn to_model(&self, location: &str) -> Result<PoincareModel, IoError> {
        let mut products = Vec::with_capacity(self.mult.len());
        for (k, p) in self.mult.iter().enumerate() {
            let loc = format!("{location}.mult[{k}]");
            let ok = p.i < self.dims.len()
                && p.j < self.dims.len()
                && p.a < self.dims[p.i]
                && p.b < self.dims[p.j]
                && p.i + p.j < self.dims.len()
                && p.result.len() == self.dims[p.i + p.j];
            if !ok {
                return Err(invalid(loc, "product indices or result length out of range"));
            }
            products.push(Product { i: p.i, a: p.a, j: p.j, b: p.b, result: read_q(&p.result, &format!("{loc}.result"))? });
        }
        let trace = read_q(&self.trace, &format!("{location}.trace"))?;
        let xi = read_q(&self.xi, &format!("{location}.xi"))?;
        PoincareModel::new(self.n, self.dims.clone(), self.labels.clone(), &products, trace, xi)
            .map_err(|e| invalid(location, e.to_string()))
    }
}

fn write_blocks(op: &GradedOperator) -> Vec<BlockFile> {
    (0..op.src_dims().len())
        .filter(|&k| op.target_of(k).is_some())
        .map(|k| BlockFile { degree: k, matrix: op.block(k).to_rows().iter().map(|r| write_q(r)).collect() })
        .collect()
}

fn read_blocks(blocks: &[BlockFile], src: &PoincareModel, tgt: &PoincareModel, location: &str) -> Result<GradedOperator, IoError> {
    let mut op = GradedOperator::zero(src.dims(), tgt.dims(), 0);
    for (k, b) in blocks.iter().enumerate() {
        let loc = format!("{location}[{k}]");
        let d = b.degree;
        if d >= src.dims().len() || op.target_of(d).is_none() {
            return Err(invalid(loc, format!("degree {d} has no target")));
        }
        let (rows, cols) = (tgt.dims()[d], src.dims()[d]);
        if b.matrix.len() != rows || b.matrix.iter().any(|r| r.len() != cols) {
            return Err(invalid(loc, format!("expected a {rows}x{cols} matrix")));
        }
        let data: Vec<Vec<Q>> =
            b.matrix.iter().enumerate().map(|(r, row)| read_q(row, &format!("{loc}.matrix[{r}]"))).collect::<Result<_, _>>()?;
        op.set_block(d, Matrix::from_rows(data, cols));
    }
    Ok(op)
}

impl SectionFile {
    pub fn from_section(s: &SectionDatum) -> Self {
        SectionFile {
            x: ModelRef::Inline(Box::new(ModelFile::from_model(&s.x))),
            y: ModelRef::Inline(Box::new(ModelFile::from_model(&s.y))),
            restrict: write_blocks(&s.restrict),
        }
    }
}

impl PencilFile {
    pub fn from_pencil(p: &PencilDatum) -> Self {
        PencilFile {
            name: p.name.clone(),
            x: ModelRef::Inline(Box::new(ModelFile::from_model(&p.x))),
            y: ModelRef::Inline(Box::new(ModelFile::from_model(&p.y))),
            delta: ModelRef::Inline(Box::new(ModelFile::from_model(&p.delta))),
            iota: write_blocks(&p.iota),
            h: write_blocks(&p.h),
            m: p.m,
        }
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, location: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Syntax { location: format!("{location}:{}:{}", e.line(), e.column()), message: e.to_string() })
}

fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { location: path.display().to_string(), source })
}

fn resolve(r: &ModelRef, base: Option<&Path>, location: &str) -> Result<PoincareModel, IoError> {
    match r {
        ModelRef::Inline(m) => m.to_model(location),
        ModelRef::Reference(s) => {
            if let Some(name) = s.strip_prefix("builtin:") {
                return builtin_model(name).ok_or_else(|| IoError::UnknownBuiltin(name.to_string()));
            }
            let path: PathBuf = base.map_or_else(|| PathBuf::from(s), |b| b.join(s));
            load_model(&path)
        }
    }
}

pub fn model_to_json(m: &PoincareModel) -> String {
    serde_json::to_string_pretty(&ModelFile::from_model(m)).expect("serializable")
}

pub fn model_from_json(text: &str, location: &str) -> Result<PoincareModel, IoError> {
    parse_json::<ModelFile>(text, location)?.to_model(location)
}

pub fn section_to_json(s: &SectionDatum) -> String {
    serde_json::to_string_pretty(&SectionFile::from_section(s)).expect("serializable")
}

pub fn section_from_json(text: &str, location: &str, base: Option<&Path>) -> Result<SectionDatum, IoError> {
    let f: SectionFile = parse_json(text, location)?;
    let x = resolve(&f.x, base, &format!("{location}.x"))?;
    let y = resolve(&f.y, base, &format!("{location}.y"))?;
    let restrict = read_blocks(&f.restrict, &x, &y, &format!("{location}.restrict"))?;
    SectionDatum::new(x, y, restrict).map_err(|e| invalid(location, e.to_string()))
}

pub fn pencil_to_json(p: &PencilDatum) -> String {
    serde_json::to_string_pretty(&PencilFile::from_pencil(p)).expect("serializable")
}

pub fn pencil_from_json(text: &str, location: &str, base: Option<&Path>) -> Result<PencilDatum, IoError> {
    let f: PencilFile = parse_json(text, location)?;
    let x = resolve(&f.x, base, &format!("{location}.x"))?;
    let y = resolve(&f.y, base, &format!("{location}.y"))?;
    let delta = resolve(&f.delta, base, &format!("{location}.delta"))?;
    let iota = read_blocks(&f.iota, &x, &y, &format!("{location}.iota"))?;
    let h = read_blocks(&f.h, &y, &delta, &format!("{location}.h"))?;
    PencilDatum::new(&f.name, x, y, delta, iota, h, f.m).map_err(|e| invalid(location, e.to_string()))
}

fn base_dir(path: &Path) -> Option<&Path> {
    path.parent()
}

/// A model file path or `builtin:<name>`.
pub fn load_model(source: impl AsRef<Path>) -> Result<PoincareModel, IoError> {
    let path = source.as_ref();
    if let Some(name) = path.to_str().and_then(|s| s.strip_prefix("builtin:")) {
        return builtin_model(name).ok_or_else(|| IoError::UnknownBuiltin(name.to_string()));
    }
    model_from_json(&read_text(path)?, &path.display().to_string())
}

pub fn load_section(path: impl AsRef<Path>) -> Result<SectionDatum, IoError> {
    let path = path.as_ref();
    section_from_json(&read_text(path)?, &path.display().to_string(), base_dir(path))
}

/// A pencil file path or `builtin:<name>`.
pub fn load_pencil(source: impl AsRef<Path>) -> Result<PencilDatum, IoError> {
    let path = source.as_ref();
    if let Some(name) = path.to_str().and_then(|s| s.strip_prefix("builtin:")) {
        return builtin_pencil(name).ok_or_else(|| IoError::UnknownBuiltin(name.to_string()));
    }
    pencil_from_json(&read_text(path)?, &path.display().to_string(), base_dir(path))
}

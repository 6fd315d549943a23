//! Versioned JSON documents for modules, complexes and chain maps.
//!
//! Degrees are always explicit map keys. Integers are written as decimal
//! strings; plain JSON integers are accepted on input.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::{ChainComplex, Element};
use crate::error::{Error, Result};
use crate::fgmod::{Presentation, Ring};
use crate::linalg::{Int, IntMatrix};
use crate::maps::ChainMap;

pub const FORMAT_VERSION: u32 = 1;

/// One integer entry: a decimal string, or a JSON integer on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Number(i64),
}

impl Entry {
    fn of(v: &Int) -> Self {
        Entry::Text(v.to_string())
    }

    fn value(&self) -> Result<Int> {
        match self {
            Entry::Text(s) => Int::from_str(s.trim()).map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
            Entry::Number(n) => Ok(crate::linalg::int(*n)),
        }
    }
}

pub type Rows = Vec<Vec<Entry>>;

pub fn matrix_rows(m: &IntMatrix) -> Rows {
    m.row_vecs().iter().map(|r| r.iter().map(Entry::of).collect()).collect()
}

/// Rebuilds a matrix whose shape is known from context.
pub fn rows_matrix(rows: &Rows, shape: (usize, usize), what: &str) -> Result<IntMatrix> {
    if rows.len() != shape.0 {
        return Err(Error::Parse(format!("{what}: {} rows, expected {}", rows.len(), shape.0)));
    }
    let rows: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| r.iter().map(Entry::value).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    IntMatrix::from_rows(shape.1, &rows).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn relation_rows(rows: &Rows, gens: usize, what: &str) -> Result<IntMatrix> {
    rows_matrix(rows, (rows.len(), gens), what)
}

fn check_header(format: u32, kind: &str, expected: &str) -> Result<()> {
    if format != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format version {format}")));
    }
    if kind != expected {
        return Err(Error::Parse(format!("expected a {expected} document, found {kind:?}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub gens: usize,
    #[serde(default)]
    pub relations: Rows,
}

impl ComponentDoc {
    fn of(p: &Presentation) -> Self {
        ComponentDoc {
            gens: p.gens(),
            relations: matrix_rows(p.relations()),
        }
    }

    fn presentation(&self, ring: Ring, what: &str) -> Result<Presentation> {
        Presentation::new(ring, self.gens, relation_rows(&self.relations, self.gens, what)?)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub degree: i64,
    pub coords: Vec<Entry>,
}

/// A module file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub format: u32,
    pub kind: String,
    pub ring: String,
    pub gens: usize,
    #[serde(default)]
    pub relations: Rows,
}

impl ModuleDoc {
    pub fn of(p: &Presentation) -> Self {
        ModuleDoc {
            format: FORMAT_VERSION,
            kind: "module".into(),
            ring: p.ring().to_string(),
            gens: p.gens(),
            relations: matrix_rows(p.relations()),
        }
    }

    pub fn presentation(&self) -> Result<Presentation> {
        check_header(self.format, &self.kind, "module")?;
        let ring = Ring::parse(&self.ring)?;
        ComponentDoc {
            gens: self.gens,
            relations: self.relations.clone(),
        }
        .presentation(ring, "relations")
    }
}

/// A complex file. `boundaries[d]` is `∂_d : X_d -> X_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub format: u32,
    pub kind: String,
    pub ring: String,
    pub min_degree: i64,
    pub max_degree: i64,
    pub components: BTreeMap<i64, ComponentDoc>,
    #[serde(default)]
    pub boundaries: BTreeMap<i64, Rows>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, ElementDoc>,
}

impl ComplexDoc {
    pub fn of(x: &ChainComplex) -> Self {
        ComplexDoc {
            format: FORMAT_VERSION,
            kind: "complex".into(),
            ring: x.ring().to_string(),
            min_degree: x.min_deg(),
            max_degree: x.max_deg(),
            components: x.degrees().map(|d| (d, ComponentDoc::of(x.component(d)))).collect(),
            boundaries: (x.min_deg() + 1..=x.max_deg())
                .map(|d| (d, matrix_rows(&x.boundary_matrix(d))))
                .collect(),
            elements: BTreeMap::new(),
        }
    }

    pub fn with_element(mut self, name: &str, e: &Element) -> Self {
        self.elements.insert(
            name.to_string(),
            ElementDoc {
                degree: e.degree,
                coords: e.coords.iter().map(Entry::of).collect(),
            },
        );
        self
    }

    /// Builds the complex with shape checks only; `∂∂ = 0` and
    /// well-definedness are left to `ChainComplex::validate`.
    pub fn complex_unchecked(&self) -> Result<ChainComplex> {
        check_header(self.format, &self.kind, "complex")?;
        let ring = Ring::parse(&self.ring)?;
        let (lo, hi) = (self.min_degree, self.max_degree);
        if let Some(&d) = self.components.keys().find(|&&d| d < lo || d > hi) {
            return Err(Error::Parse(format!("component at degree {d} lies outside {lo}..{hi}")));
        }
        if let Some(&d) = self.boundaries.keys().find(|&&d| d <= lo || d > hi) {
            return Err(Error::Parse(format!("boundary at degree {d} lies outside {}..{hi}", lo + 1)));
        }
        let comps: Vec<Presentation> = (lo..=hi)
            .map(|d| match self.components.get(&d) {
                Some(c) => c.presentation(ring, &format!("relations at degree {d}")),
                None => Ok(Presentation::zero(ring)),
            })
            .collect::<Result<_>>()?;
        let gens = |d: i64| comps[(d - lo) as usize].gens();
        let bds: Vec<IntMatrix> = (lo + 1..=hi)
            .map(|d| match self.boundaries.get(&d) {
                Some(rows) => rows_matrix(rows, (gens(d - 1), gens(d)), &format!("boundary at degree {d}")),
                None => Ok(IntMatrix::zeros(gens(d - 1), gens(d))),
            })
            .collect::<Result<_>>()?;
        ChainComplex::unchecked(ring, lo, comps, bds)
    }

    pub fn complex(&self) -> Result<ChainComplex> {
        let x = self.complex_unchecked()?;
        let report = x.validate();
        if !report.valid {
            return Err(Error::InvalidComplex(report.failures.join("; ")));
        }
        Ok(x)
    }

    pub fn element(&self, x: &ChainComplex, name: &str) -> Result<Element> {
        let e = self
            .elements
            .get(name)
            .ok_or_else(|| Error::Parse(format!("no element named {name:?}")))?;
        let coords = e.coords.iter().map(Entry::value).collect::<Result<Vec<_>>>()?;
        x.element(e.degree, coords).map_err(|err| Error::Parse(err.to_string()))
    }
}

/// A chain map file; both ends are embedded complex documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub format: u32,
    pub kind: String,
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub components: BTreeMap<i64, Rows>,
}

impl MapDoc {
    pub fn of(f: &ChainMap) -> Self {
        MapDoc {
            format: FORMAT_VERSION,
            kind: "map".into(),
            source: ComplexDoc::of(f.source()),
            target: ComplexDoc::of(f.target()),
            components: f
                .degrees()
                .into_iter()
                .map(|d| (d, matrix_rows(&f.component_matrix(d))))
                .collect(),
        }
    }

    pub fn map(&self) -> Result<ChainMap> {
        check_header(self.format, &self.kind, "map")?;
        let (x, y) = (self.source.complex()?, self.target.complex()?);
        let comps = self
            .components
            .iter()
            .map(|(&d, rows)| Ok((d, rows_matrix(rows, (y.gens(d), x.gens(d)), &format!("component at degree {d}"))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ChainMap::new(x, y, comps)
    }
}

/// Pretty JSON with a trailing newline; output is deterministic.
pub fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn to_value<T: Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

pub fn from_text<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// The `kind` field of a document, read before committing to a type.
pub fn kind_of(text: &str) -> Result<String> {
    let v: Value = from_text(text)?;
    v.get("kind")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| Error::Parse("document has no \"kind\"".into()))
}

pub fn complex_to_text(x: &ChainComplex) -> String {
    to_text(&ComplexDoc::of(x))
}

pub fn complex_from_text(text: &str) -> Result<ChainComplex> {
    from_text::<ComplexDoc>(text)?.complex()
}

pub fn map_to_text(f: &ChainMap) -> String {
    to_text(&MapDoc::of(f))
}

pub fn map_from_text(text: &str) -> Result<ChainMap> {
    from_text::<MapDoc>(text)?.map()
}

pub fn module_to_text(p: &Presentation) -> String {
    to_text(&ModuleDoc::of(p))
}

pub fn module_from_text(text: &str) -> Result<Presentation> {
    from_text::<ModuleDoc>(text)?.presentation()
}

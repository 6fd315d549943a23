//! JSON fragments shared by the commands.

use std::collections::BTreeMap;

use chainlab::complex::{ChainComplex, Subcomplex};
use chainlab::fgmod::FgAbInvariants;
use chainlab::format::{self, ComplexDoc, MapDoc};
use chainlab::linalg::IntMatrix;
use chainlab::maps::ChainMap;
use chainlab::resolve::ResolutionTower;
use chainlab::zigzag::SweepRecord;
use serde_json::{json, Value};

pub fn complex(x: &ChainComplex) -> Value {
    format::to_value(&ComplexDoc::of(x))
}

pub fn map(f: &ChainMap) -> Value {
    format::to_value(&MapDoc::of(f))
}

pub fn matrix(m: &IntMatrix) -> Value {
    format::to_value(&format::matrix_rows(m))
}

pub fn groups(entries: &[(i64, FgAbInvariants)]) -> Value {
    let m: BTreeMap<String, String> = entries.iter().map(|(d, g)| (d.to_string(), g.to_string())).collect();
    json!(m)
}

pub fn homology(x: &ChainComplex) -> Value {
    groups(&x.homology_all())
}

pub fn tower(t: &ResolutionTower) -> Value {
    let stages: Vec<Value> = t
        .stages
        .iter()
        .enumerate()
        .map(|(j, s)| {
            json!({
                "stage": j,
                "disk_tops": s.disks.tops(),
                "complex": complex(&s.complex),
                "map": map(&s.map),
            })
        })
        .collect();
    json!({ "length": t.length(), "verified": t.verify(), "stages": stages })
}

/// Generator matrices per degree: columns are the chosen elements.
pub fn subcomplex(s: &Subcomplex) -> Value {
    let x = s.ambient();
    let gens: BTreeMap<String, Value> = x
        .degrees()
        .map(|d| (d.to_string(), matrix(&s.generators(d))))
        .collect();
    json!({ "size": s.size(), "generators": gens, "complex": complex(s.complex()) })
}

pub fn history(h: &[SweepRecord]) -> Value {
    h.iter()
        .map(|r| json!({ "round": r.round, "direction": r.direction.to_string(), "stage": r.stage, "added": r.added }))
        .collect()
}

//! Zig-zag extraction of small n-projective subobjects.
//!
//! Given a resolution by free (disk-sum) objects, the sweeper grows subsets
//! of the basis units in every stage until two closure conditions hold:
//! images of selected units stay inside the selected span one stage down
//! (backward), and kernels of the restricted maps are covered by the
//! selected span one stage up (forward). The restricted tower then resolves
//! the extracted subobject and the complementary units resolve the quotient.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::{ChainComplex, DiskSum, Element, Subcomplex};
use crate::error::{Error, Result};
use crate::fgmod::{self, ModuleMap, Presentation, Ring};
use crate::linalg::{self, Int, IntMatrix};
use crate::maps::ChainMap;
use crate::resolve::{self, ResolutionTower, ResolveOutcome, Stage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Seed,
    Backward,
    Forward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Seed => "seed",
            Direction::Backward => "backward",
            Direction::Forward => "forward",
        })
    }
}

/// Units added to one stage during one sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRecord {
    pub round: usize,
    pub direction: Direction,
    pub stage: usize,
    pub added: Vec<usize>,
}

/// Basis units of one stage: `owners[d][k]` is the unit owning coordinate
/// `k` in degree `d`.
struct Level {
    owners: BTreeMap<i64, Vec<usize>>,
}

impl Level {
    fn from_disks(p: &DiskSum) -> Self {
        let mut owners = BTreeMap::new();
        if let Some((lo, hi)) = p.window() {
            for d in lo..=hi {
                owners.insert(d, p.slots(d).into_iter().map(|(i, _)| i).collect());
            }
        }
        Level { owners }
    }

    fn columns(&self, d: i64, sel: &BTreeSet<usize>) -> Vec<usize> {
        self.owners
            .get(&d)
            .map(|o| (0..o.len()).filter(|&k| sel.contains(&o[k])).collect())
            .unwrap_or_default()
    }

    fn owner(&self, d: i64, k: usize) -> usize {
        self.owners[&d][k]
    }

    fn width(&self, d: i64) -> usize {
        self.owners.get(&d).map_or(0, Vec::len)
    }
}

/// `maps[j]` goes from stage `j` to stage `j - 1`; `maps[0]` goes to the
/// target, whose relation lattices are `target_rel`.
struct Sweeper {
    levels: Vec<Level>,
    maps: Vec<BTreeMap<i64, IntMatrix>>,
    target_rel: BTreeMap<i64, IntMatrix>,
    degrees: Vec<i64>,
    history: Vec<SweepRecord>,
}

impl Sweeper {
    fn rel(&self, stage: usize, d: i64, rows: usize) -> IntMatrix {
        if stage == 0 {
            self.target_rel.get(&d).cloned().unwrap_or_else(|| IntMatrix::zeros(rows, 0))
        } else {
            IntMatrix::zeros(rows, 0)
        }
    }

    fn map(&self, stage: usize, d: i64) -> Option<&IntMatrix> {
        self.maps[stage].get(&d)
    }

    /// Coefficients (on the selected columns) solving `map · c ≡ req`.
    fn solve_with(&self, stage: usize, sel: &BTreeSet<usize>, d: i64, req: &IntMatrix) -> Option<(Vec<usize>, IntMatrix)> {
        let cols = self.levels[stage].columns(d, sel);
        if req.cols() == 0 {
            return Some((cols.clone(), IntMatrix::zeros(cols.len(), 0)));
        }
        let Some(m) = self.map(stage, d) else {
            return req.is_zero().then(|| (cols.clone(), IntMatrix::zeros(cols.len(), req.cols())));
        };
        let a = m.select_cols(&cols);
        let rel = self.rel(stage, d, m.rows());
        let aug = IntMatrix::hstack(&[&a, &rel]).expect("rows");
        let sol = linalg::solve_matrix(&aug, req, None).expect("rows")?;
        Some((cols.clone(), sol.block(0, 0, cols.len(), req.cols())))
    }

    fn covers(&self, stage: usize, sel: &BTreeSet<usize>, reqs: &BTreeMap<i64, IntMatrix>) -> bool {
        reqs.iter().all(|(&d, r)| self.solve_with(stage, sel, d, r).is_some())
    }

    /// Adds units of `stage` until every requirement vector lies in the image
    /// of the selected span: shortest prefix of unselected units (by index)
    /// that suffices, then the support of a solution, then reverse pruning.
    fn cover(&mut self, stage: usize, sel: &mut BTreeSet<usize>, reqs: &BTreeMap<i64, IntMatrix>) -> Result<Vec<usize>> {
        if self.covers(stage, sel, reqs) {
            return Ok(Vec::new());
        }
        let units: BTreeSet<usize> = self.levels[stage].owners.values().flatten().copied().collect();
        let cands: Vec<usize> = units.difference(sel).copied().collect();
        let with = |k: usize| -> BTreeSet<usize> { sel.iter().copied().chain(cands[..k].iter().copied()).collect() };
        if !self.covers(stage, &with(cands.len()), reqs) {
            return Err(Error::Precondition(format!("stage {stage} does not cover the required kernel")));
        }
        let (mut lo, mut hi) = (1, cands.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.covers(stage, &with(mid), reqs) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let trial = with(lo);
        let prefix: BTreeSet<usize> = cands[..lo].iter().copied().collect();
        let mut support = BTreeSet::new();
        for (&d, r) in reqs {
            let (cols, sol) = self.solve_with(stage, &trial, d, r).expect("prefix covers");
            for (i, &c) in cols.iter().enumerate() {
                let u = self.levels[stage].owner(d, c);
                if prefix.contains(&u) && sol.row(i).iter().any(|v| !v.is_zero()) {
                    support.insert(u);
                }
            }
        }
        for u in support.clone().into_iter().rev() {
            let mut without: BTreeSet<usize> = sel.union(&support).copied().collect();
            without.remove(&u);
            if self.covers(stage, &without, reqs) {
                support.remove(&u);
            }
        }
        sel.extend(support.iter().copied());
        Ok(support.into_iter().collect())
    }

    /// Kernel of the map out of `stage` restricted to the selected span, as
    /// full-coordinate columns per degree.
    fn restricted_kernel(&self, stage: usize, sel: &BTreeSet<usize>) -> BTreeMap<i64, IntMatrix> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            let width = self.levels[stage].width(d);
            let cols = self.levels[stage].columns(d, sel);
            if cols.is_empty() {
                continue;
            }
            let k = match self.map(stage, d) {
                Some(m) => {
                    let a = m.select_cols(&cols);
                    let rel = self.rel(stage, d, m.rows());
                    linalg::preimage_lattice(&a, &rel).expect("rows")
                }
                None => IntMatrix::identity(cols.len()),
            };
            if k.cols() == 0 {
                continue;
            }
            let mut full = IntMatrix::zeros(width, k.cols());
            for (i, &c) in cols.iter().enumerate() {
                for j in 0..k.cols() {
                    full.set(c, j, k.get(i, j).clone());
                }
            }
            out.insert(d, full);
        }
        out
    }

    /// Units one stage down touched by the images of the selected units.
    fn image_support(&self, stage: usize, sel: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &d in &self.degrees {
            let Some(m) = self.map(stage, d) else { continue };
            for c in self.levels[stage].columns(d, sel) {
                for r in 0..m.rows() {
                    if !m.get(r, c).is_zero() {
                        out.insert(self.levels[stage - 1].owner(d, r));
                    }
                }
            }
        }
        out
    }

    fn run(&mut self, seed: &BTreeMap<i64, IntMatrix>) -> Result<Vec<BTreeSet<usize>>> {
        let top = self.levels.len() - 1;
        let mut sel: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); top + 1];
        let added = self.cover(0, &mut sel[0], seed)?;
        self.history.push(SweepRecord { round: 0, direction: Direction::Seed, stage: 0, added });
        let mut round = 0;
        loop {
            round += 1;
            let mut changed = false;
            for j in (1..=top).rev() {
                let sup = self.image_support(j, &sel[j]);
                let added: Vec<usize> = sup.difference(&sel[j - 1]).copied().collect();
                if !added.is_empty() {
                    changed = true;
                    sel[j - 1].extend(added.iter().copied());
                    self.history.push(SweepRecord { round, direction: Direction::Backward, stage: j - 1, added });
                }
            }
            for j in 0..top {
                let reqs = self.restricted_kernel(j, &sel[j]);
                let added = self.cover(j + 1, &mut sel[j + 1], &reqs)?;
                if !added.is_empty() {
                    changed = true;
                    self.history.push(SweepRecord { round, direction: Direction::Forward, stage: j + 1, added });
                }
            }
            if !changed {
                return Ok(sel);
            }
        }
    }
}

/// Outcome of re-checking a certificate from scratch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub element_in_sub: bool,
    pub bases_closed: bool,
    pub sub_tower_exact: bool,
    pub quotient_tower_exact: bool,
    pub sub_in_class: bool,
    pub quotient_in_class: bool,
}

impl CertificateCheck {
    pub fn all_ok(&self) -> bool {
        self.element_in_sub
            && self.bases_closed
            && self.sub_tower_exact
            && self.quotient_tower_exact
            && self.sub_in_class
            && self.quotient_in_class
    }
}

/// Result of a complex-level extraction.
#[derive(Clone, Debug)]
pub struct ZigzagCertificate {
    pub ambient: ChainComplex,
    pub element: Element,
    pub n: usize,
    pub budget: usize,
    /// Resolution of the ambient complex whose disks are selected.
    pub tower: ResolutionTower,
    /// Selected disk indices per stage.
    pub selected: Vec<Vec<usize>>,
    pub extracted: Subcomplex,
    pub sub_resolution: ResolutionTower,
    pub quotient: ChainComplex,
    pub projection: ChainMap,
    pub quotient_resolution: ResolutionTower,
    pub size: usize,
    pub over_budget: bool,
    pub history: Vec<SweepRecord>,
}

impl ZigzagCertificate {
    /// Selected basis elements per stage and degree, as slot indices of the
    /// ambient disk bases.
    pub fn selected_bases(&self) -> Vec<BTreeMap<i64, Vec<usize>>> {
        self.tower
            .stages
            .iter()
            .zip(&self.selected)
            .map(|(st, sel)| {
                let sel: BTreeSet<usize> = sel.iter().copied().collect();
                let lvl = Level::from_disks(&st.disks);
                lvl.owners.keys().map(|&d| (d, lvl.columns(d, &sel))).collect()
            })
            .collect()
    }

    pub fn verify(&self) -> CertificateCheck {
        let bases_closed = self.tower.stages.iter().enumerate().skip(1).all(|(j, st)| {
            let lvl = Level::from_disks(&st.disks);
            let below = Level::from_disks(&self.tower.stages[j - 1].disks);
            let sel: BTreeSet<usize> = self.selected[j].iter().copied().collect();
            let keep: BTreeSet<usize> = self.selected[j - 1].iter().copied().collect();
            lvl.owners.keys().all(|&d| {
                let m = st.map.component_matrix(d);
                lvl.columns(d, &sel)
                    .into_iter()
                    .all(|c| (0..m.rows()).all(|r| m.get(r, c).is_zero() || keep.contains(&below.owner(d, r))))
            })
        });
        CertificateCheck {
            element_in_sub: self.extracted.contains(&self.element),
            bases_closed,
            sub_tower_exact: self.sub_resolution.verify(),
            quotient_tower_exact: self.quotient_resolution.verify(),
            sub_in_class: resolve::in_tilde_pn(self.extracted.complex(), self.n),
            quotient_in_class: resolve::in_tilde_pn(&self.quotient, self.n),
        }
    }
}

fn restricted_stages(
    tower: &ResolutionTower,
    keep: &[Vec<usize>],
    target: &ChainComplex,
    stage0: impl Fn(i64, &IntMatrix) -> Result<IntMatrix>,
) -> Result<Vec<Stage>> {
    let mut stages: Vec<Stage> = Vec::new();
    let mut embs: Vec<BTreeMap<i64, IntMatrix>> = Vec::new();
    for (j, st) in tower.stages.iter().enumerate() {
        let (ds, emb) = st.disks.restrict(&keep[j]);
        let p = ds.to_complex();
        let mut comps = BTreeMap::new();
        for (&d, e) in &emb {
            let full = st.map.component_matrix(d).mul(e);
            let m = if j == 0 {
                stage0(d, &full)?
            } else {
                match embs[j - 1].get(&d) {
                    Some(below) => below.transpose().mul(&full),
                    None => continue,
                }
            };
            comps.insert(d, m);
        }
        let tgt = if j == 0 { target.clone() } else { stages[j - 1].complex.clone() };
        let map = ChainMap::new(p.clone(), tgt, comps)?;
        stages.push(Stage { disks: ds, complex: p, map });
        embs.push(emb);
    }
    Ok(stages)
}

/// Extracts a subcomplex `X' ∋ x` with `X'` and `X / X'` both in the class
/// of n-projective complexes. The budget is soft: if the stabilized closure
/// is larger, it is returned with `over_budget` set.
pub fn zigzag_complex(x: &ChainComplex, element: &Element, n: usize, budget: usize) -> Result<ZigzagCertificate> {
    if x.ring() != Ring::Z {
        return Err(Error::Precondition("zig-zag extraction is implemented over Z".into()));
    }
    if !resolve::in_tilde_pn(x, n) {
        return Err(Error::Precondition(format!("complex is not {n}-projective")));
    }
    if x.in_window(element.degree) && element.coords.len() != x.gens(element.degree) {
        return Err(Error::Dimension("element has the wrong number of coordinates".into()));
    }
    let tower = match resolve::resolve_complex(x, n) {
        ResolveOutcome::Tower(t) => t,
        ResolveOutcome::Exceeded { .. } => {
            return Err(Error::Precondition(format!("no resolution of length {n}")));
        }
    };
    let mut degrees: Vec<i64> = x.degrees().collect();
    for st in &tower.stages {
        degrees.extend(st.complex.degrees());
    }
    degrees.sort_unstable();
    degrees.dedup();
    let mut sw = Sweeper {
        levels: tower.stages.iter().map(|s| Level::from_disks(&s.disks)).collect(),
        maps: tower
            .stages
            .iter()
            .map(|s| s.complex.degrees().map(|d| (d, s.map.component_matrix(d))).collect())
            .collect(),
        target_rel: x.degrees().map(|d| (d, x.component(d).relation_lattice().clone())).collect(),
        degrees,
        history: Vec::new(),
    };
    let mut seed = BTreeMap::new();
    if x.in_window(element.degree) {
        seed.insert(element.degree, IntMatrix::column_vector(&element.coords));
    }
    let sel = sw.run(&seed)?;
    let selected: Vec<Vec<usize>> = sel.iter().map(|s| s.iter().copied().collect()).collect();
    let complement: Vec<Vec<usize>> = tower
        .stages
        .iter()
        .zip(&sel)
        .map(|(st, s)| (0..st.disks.len()).filter(|i| !s.contains(i)).collect())
        .collect();

    let (_, emb0) = tower.stages[0].disks.restrict(&selected[0]);
    let gens: BTreeMap<i64, IntMatrix> = x
        .degrees()
        .map(|d| {
            let g = match emb0.get(&d) {
                Some(e) => tower.stages[0].map.component_matrix(d).mul(e),
                None => IntMatrix::zeros(x.gens(d), 0),
            };
            (d, g)
        })
        .collect();
    let extracted = Subcomplex::from_closed_generators(x, &gens)?;
    let sub = extracted.complex().clone();
    let sub_stages = restricted_stages(&tower, &selected, &sub, |d, full| {
        let f = ModuleMap::raw(Presentation::free(Ring::Z, full.cols()), x.component(d).clone(), full.clone());
        f.lift_through(&extracted.inclusion().component(d))
            .map(|h| h.matrix().clone())
            .ok_or_else(|| Error::Precondition("restricted cover leaves the extracted subcomplex".into()))
    })?;
    let (quotient, projection) = extracted.quotient();
    let quot_stages = restricted_stages(&tower, &complement, &quotient, |d, full| {
        Ok(projection.component_matrix(d).mul(full))
    })?;
    let size = extracted.size();
    Ok(ZigzagCertificate {
        ambient: x.clone(),
        element: element.clone(),
        n,
        budget,
        tower,
        selected,
        extracted,
        sub_resolution: ResolutionTower { target: sub, stages: sub_stages },
        quotient: quotient.clone(),
        projection,
        quotient_resolution: ResolutionTower { target: quotient, stages: quot_stages },
        size,
        over_budget: size > budget,
        history: sw.history,
    })
}

/// Result of a module-level extraction from `0 -> F1 -> F0 -> X -> 0`.
#[derive(Clone, Debug)]
pub struct ModuleCertificate {
    pub ambient: Presentation,
    pub element: Vec<Int>,
    /// Boundary `F1 -> F0` of the resolution used.
    pub boundary: IntMatrix,
    pub b0: Vec<usize>,
    pub b1: Vec<usize>,
    pub sub: Presentation,
    pub inclusion: ModuleMap,
    pub quotient: Presentation,
    pub projection: ModuleMap,
    pub size: usize,
    pub over_budget: bool,
    pub history: Vec<SweepRecord>,
}

impl ModuleCertificate {
    /// `x ∈ X'`, `0 -> <B1> -> <B0> -> X' -> 0` and
    /// `0 -> F1/<B1> -> F0/<B0> -> X/X' -> 0` exact.
    pub fn verify(&self) -> bool {
        let x = &self.ambient;
        let g = x.gens();
        let c0: Vec<usize> = (0..g).filter(|i| !self.b0.contains(i)).collect();
        let c1: Vec<usize> = (0..self.boundary.cols()).filter(|i| !self.b1.contains(i)).collect();
        let free = |k: usize| Presentation::free(Ring::Z, k);
        let sub_exact = {
            let d = self.boundary.select_cols(&self.b1).select_rows(&self.b0);
            let f = ModuleMap::raw(free(self.b1.len()), free(self.b0.len()), d);
            let e = ModuleMap::raw(free(self.b0.len()), self.sub.clone(), IntMatrix::identity(self.b0.len()));
            fgmod::is_short_exact(&f, &e)
        };
        let quot_exact = {
            let d = self.boundary.select_cols(&c1).select_rows(&c0);
            let f = ModuleMap::raw(free(c1.len()), free(c0.len()), d);
            let e = ModuleMap::raw(free(c0.len()), self.quotient.clone(), IntMatrix::identity(g).select_cols(&c0));
            fgmod::is_short_exact(&f, &e)
        };
        let back_closed = self
            .b1
            .iter()
            .all(|&c| (0..g).all(|r| self.boundary.get(r, c).is_zero() || self.b0.contains(&r)));
        back_closed && sub_exact && quot_exact && self.inclusion.image_contains(&self.element) && self.inclusion.is_injective()
    }
}

/// Module-level extraction over `Z`: `X' ∋ x` with `X'` and `X / X'`
/// resolved by the selected and complementary basis elements.
pub fn zigzag_module(x: &Presentation, element: &[Int], budget: usize) -> Result<ModuleCertificate> {
    if x.ring() != Ring::Z {
        return Err(Error::Precondition("zig-zag extraction is implemented over Z".into()));
    }
    if element.len() != x.gens() {
        return Err(Error::Dimension("element has the wrong number of coordinates".into()));
    }
    let res = fgmod::free_resolution(x)?;
    let g = x.gens();
    let r = res.boundary.cols();
    let one = |k: usize| Level {
        owners: BTreeMap::from([(0, (0..k).collect())]),
    };
    let mut sw = Sweeper {
        levels: vec![one(g), one(r)],
        maps: vec![
            BTreeMap::from([(0, IntMatrix::identity(g))]),
            BTreeMap::from([(0, res.boundary.clone())]),
        ],
        target_rel: BTreeMap::from([(0, x.relation_lattice().clone())]),
        degrees: vec![0],
        history: Vec::new(),
    };
    let sel = sw.run(&BTreeMap::from([(0, IntMatrix::column_vector(element))]))?;
    let b0: Vec<usize> = sel[0].iter().copied().collect();
    let b1: Vec<usize> = sel[1].iter().copied().collect();
    let into = ModuleMap::raw(Presentation::free(Ring::Z, b0.len()), x.clone(), IntMatrix::identity(g).select_cols(&b0));
    let (sub, inclusion) = into.image();
    let quotient = x.with_relations(&IntMatrix::identity(g).select_cols(&b0))?;
    let projection = ModuleMap::raw(x.clone(), quotient.clone(), IntMatrix::identity(g));
    let size = sub.simplify().module.gens();
    Ok(ModuleCertificate {
        ambient: x.clone(),
        element: element.to_vec(),
        boundary: res.boundary,
        b0,
        b1,
        sub,
        inclusion,
        quotient,
        projection,
        size,
        over_budget: size > budget,
        history: sw.history,
    })
}

/// `0 = X_0 ⊂ X_1 ⊂ ... ⊂ X_t = X`, each step a zig-zag extraction from the
/// running quotient.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub ambient: ChainComplex,
    pub n: usize,
    pub budget: usize,
    pub stages: Vec<Subcomplex>,
    pub certificates: Vec<ZigzagCertificate>,
}

impl Filtration {
    pub fn len(&self) -> usize {
        self.certificates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.certificates.is_empty()
    }

    pub fn factor_sizes(&self) -> Vec<usize> {
        self.certificates.iter().map(|c| c.size).collect()
    }

    pub fn over_budget(&self) -> bool {
        self.certificates.iter().any(|c| c.over_budget)
    }

    /// Nesting, exhaustion and every factor certificate, checked again.
    pub fn verify(&self) -> bool {
        let Some(last) = self.stages.last() else { return false };
        let nested = self.stages.windows(2).all(|w| w[0].is_contained_in(&w[1]));
        let whole = Subcomplex::whole(&self.ambient);
        let exhausts = whole.is_contained_in(last);
        let starts_at_zero = self.stages[0].size() == 0;
        nested && exhausts && starts_at_zero && self.certificates.iter().all(|c| c.verify().all_ok())
    }
}

/// Lowest `(degree, index)` generator that is nonzero in `q`.
fn first_unconsumed(q: &ChainComplex) -> Option<Element> {
    for d in q.degrees() {
        for i in 0..q.gens(d) {
            let e = q.generator(d, i);
            if !e.is_zero_in(q) {
                return Some(e);
            }
        }
    }
    None
}

pub fn build_filtration(x: &ChainComplex, n: usize, budget: usize) -> Result<Filtration> {
    if !resolve::in_tilde_pn(x, n) {
        return Err(Error::Precondition(format!("complex is not {n}-projective")));
    }
    let mut current: BTreeMap<i64, IntMatrix> = x.degrees().map(|d| (d, IntMatrix::zeros(x.gens(d), 0))).collect();
    let mut stages = vec![Subcomplex::from_closed_generators(x, &current)?];
    let mut certificates = Vec::new();
    loop {
        let (q, _) = stages.last().expect("nonempty").quotient();
        let Some(e) = first_unconsumed(&q) else { break };
        if certificates.len() > x.size() {
            return Err(Error::Precondition("filtration failed to make progress".into()));
        }
        let cert = zigzag_complex(&q, &e, n, budget)?;
        for d in x.degrees() {
            let g = IntMatrix::hstack(&[&current[&d], &cert.extracted.generators(d)])?;
            current.insert(d, g);
        }
        stages.push(Subcomplex::from_closed_generators(x, &current)?);
        certificates.push(cert);
    }
    Ok(Filtration {
        ambient: x.clone(),
        n,
        budget,
        stages,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::samples::{self, Piece};

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn module_examples() {
        let x = Presentation::from_orders(Ring::Z, &v(&[2, 2]));
        let c = zigzag_module(&x, &v(&[1, 0]), 1).unwrap();
        assert!(c.verify());
        assert_eq!(c.sub.invariants().torsion, v(&[2]));
        assert_eq!(c.quotient.invariants().torsion, v(&[2]));
        assert!(!c.over_budget);

        let x = Presentation::cyclic(Ring::Z, 2);
        let c = zigzag_module(&x, &v(&[1]), 1).unwrap();
        assert!(c.verify());
        assert!(c.quotient.is_zero_module());

        let x = Presentation::from_orders(Ring::Z, &v(&[0, 2]));
        let c = zigzag_module(&x, &v(&[0, 1]), 1).unwrap();
        assert!(c.verify());
        assert_eq!(c.sub.invariants().to_string(), "Z/2");
        assert_eq!(c.quotient.invariants().to_string(), "Z");
    }

    #[test]
    fn splits_a_sum_of_resolution_pieces() {
        let t = samples::resolution_complex(0, 2);
        let x = ChainComplex::direct_sum(&[&t, &t]).unwrap();
        let e = x.generator(-1, 0);
        let c = zigzag_complex(&x, &e, 1, 3).unwrap();
        assert!(c.verify().all_ok());
        assert_eq!(c.size, 3);
        assert!(!c.over_budget);
        assert_eq!(c.quotient.simplified_size(), 3);
        assert!(c.extracted.contains(&x.generator(1, 0)));
        assert!(!c.extracted.contains(&x.generator(1, 1)));
    }

    #[test]
    fn extraction_from_one_piece() {
        let t = samples::resolution_complex(0, 2);
        for d in [-1, 0] {
            let c = zigzag_complex(&t, &t.generator(d, 0), 1, 3).unwrap();
            assert!(c.verify().all_ok());
            assert!(c.quotient.is_exact() && c.quotient.simplified_size() == 0);
        }
        // The top generator only needs Z --> 2Z; the quotient is D⁰(Z/2).
        let c = zigzag_complex(&t, &t.generator(1, 0), 1, 3).unwrap();
        assert!(c.verify().all_ok());
        assert_eq!(c.size, 2);
        assert!(c.extracted.complex().is_free_complex());
        assert_eq!(c.quotient.simplified_size(), 2);
    }

    #[test]
    fn disks_are_independent() {
        let z = Presentation::free(Ring::Z, 1);
        let x = ChainComplex::direct_sum(&[&ChainComplex::disk(1, &z), &ChainComplex::disk(0, &z)]).unwrap();
        // Degree 0 holds the bottom of D¹ then the top of D⁰.
        let e = x.generator(0, 1);
        let c = zigzag_complex(&x, &e, 0, 2).unwrap();
        assert!(c.verify().all_ok());
        assert_eq!(c.size, 2);
        assert!(!c.extracted.contains(&x.generator(1, 0)));
    }

    #[test]
    fn rejects_out_of_class() {
        let s = ChainComplex::sphere(0, &Presentation::free(Ring::Z, 1));
        assert!(zigzag_complex(&s, &s.generator(0, 0), 1, 5).is_err());
        let t = samples::resolution_complex(0, 2);
        assert!(zigzag_complex(&t, &t.generator(0, 0), 0, 5).is_err());
    }

    #[test]
    fn filtrations() {
        let x = samples::assemble(&[Piece::Resolution { top: 1, d: 2 }; 3]);
        let f = build_filtration(&x, 1, 3).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.factor_sizes(), vec![3, 3, 3]);
        assert!(f.verify());

        let f = build_filtration(&ChainComplex::zero(Ring::Z), 1, 3).unwrap();
        assert_eq!(f.len(), 0);

        let x = ChainComplex::disk(1, &Presentation::free(Ring::Z, 4));
        let f = build_filtration(&x, 0, 2).unwrap();
        assert_eq!(f.factor_sizes(), vec![2, 2, 2, 2]);
        assert!(f.verify() && !f.over_budget());
    }

    #[test]
    fn twisted_inputs_still_certify() {
        let mut r = samples::rng(5);
        for _ in 0..4 {
            let x = samples::random_in_class(&mut r, 1, 10, (-1, 1));
            let d = x.degrees().find(|&d| x.gens(d) > 0).unwrap();
            let c = zigzag_complex(&x, &x.generator(d, 0), 1, 3).unwrap();
            assert!(c.verify().all_ok());
        }
    }
}

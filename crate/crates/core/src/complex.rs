//! Bounded chain complexes of finitely presented modules.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::fgmod::{self, FgAbInvariants, ModuleMap, Presentation, Ring};
use crate::linalg::{self, Int, IntMatrix};
use crate::maps::{self, ChainMap};

/// A complex `X_max -> ... -> X_min` with explicit finite support.
/// Components outside `[min_deg, max_deg]` are zero.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Ring,
    min_deg: i64,
    components: Vec<Presentation>,
    /// `boundaries[k]` is the boundary out of degree `min_deg + k + 1`.
    boundaries: Vec<IntMatrix>,
    zero: Presentation,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.min_deg == other.min_deg
            && self.components == other.components
            && self.boundaries == other.boundaries
    }
}

/// Outcome of a structural check; lists every failure found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub failures: Vec<String>,
}

impl ChainComplex {
    /// Builds and validates a complex. `boundaries[k]` maps degree
    /// `min_deg + k + 1` to `min_deg + k`, so there is one fewer boundary
    /// than components.
    pub fn new(
        ring: Ring,
        min_deg: i64,
        components: Vec<Presentation>,
        boundaries: Vec<IntMatrix>,
    ) -> Result<Self> {
        let x = Self::unchecked(ring, min_deg, components, boundaries)?;
        let report = x.validate();
        if !report.valid {
            return Err(Error::InvalidComplex(report.failures.join("; ")));
        }
        Ok(x)
    }

    /// Builds without the module-theoretic checks; only the boundary count is
    /// enforced. Use `validate` before trusting the result.
    pub fn unchecked(
        ring: Ring,
        min_deg: i64,
        components: Vec<Presentation>,
        boundaries: Vec<IntMatrix>,
    ) -> Result<Self> {
        ring.check()?;
        if boundaries.len() != components.len().saturating_sub(1) {
            return Err(Error::InvalidComplex(format!(
                "{} components need {} boundaries, got {}",
                components.len(),
                components.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        Ok(ChainComplex {
            ring,
            min_deg,
            components,
            boundaries,
            zero: Presentation::zero(ring),
        })
    }

    pub(crate) fn raw(ring: Ring, min_deg: i64, components: Vec<Presentation>, boundaries: Vec<IntMatrix>) -> Self {
        debug_assert_eq!(boundaries.len(), components.len().saturating_sub(1));
        ChainComplex {
            ring,
            min_deg,
            components,
            boundaries,
            zero: Presentation::zero(ring),
        }
    }

    /// Builds from per-degree data; degrees absent from `components` are zero.
    pub fn from_degree_maps(
        ring: Ring,
        components: &BTreeMap<i64, Presentation>,
        boundaries: &BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (components.keys().next(), components.keys().next_back()) else {
            if boundaries.values().any(|b| !b.is_zero() || b.rows() + b.cols() > 0) {
                return Err(Error::InvalidComplex("boundaries given for an empty complex".into()));
            }
            return Ok(Self::zero(ring));
        };
        for &d in boundaries.keys() {
            if d <= lo || d > hi {
                return Err(Error::InvalidComplex(format!("boundary at degree {d} leaves the window")));
            }
        }
        let comps: Vec<Presentation> = (lo..=hi)
            .map(|d| components.get(&d).cloned().unwrap_or_else(|| Presentation::zero(ring)))
            .collect();
        let bds: Vec<IntMatrix> = (lo + 1..=hi)
            .map(|d| {
                boundaries.get(&d).cloned().unwrap_or_else(|| {
                    IntMatrix::zeros(comps[(d - 1 - lo) as usize].gens(), comps[(d - lo) as usize].gens())
                })
            })
            .collect();
        Self::new(ring, lo, comps, bds)
    }

    pub fn zero(ring: Ring) -> Self {
        Self::raw(ring, 0, Vec::new(), Vec::new())
    }

    /// `D^n(M)`: `M` in degrees `n` and `n-1` joined by the identity.
    pub fn disk(n: i64, m: &Presentation) -> Self {
        Self::raw(
            m.ring(),
            n - 1,
            vec![m.clone(), m.clone()],
            vec![IntMatrix::identity(m.gens())],
        )
    }

    /// `S^n(M)`: `M` in degree `n` only.
    pub fn sphere(n: i64, m: &Presentation) -> Self {
        Self::raw(m.ring(), n, vec![m.clone()], Vec::new())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    /// `min_deg - 1` for the empty complex.
    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.components.len() as i64 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.min_deg()..=self.max_deg()
    }

    pub fn in_window(&self, d: i64) -> bool {
        d >= self.min_deg && d <= self.max_deg()
    }

    pub fn component(&self, d: i64) -> &Presentation {
        if self.in_window(d) {
            &self.components[(d - self.min_deg) as usize]
        } else {
            &self.zero
        }
    }

    pub fn gens(&self, d: i64) -> usize {
        self.component(d).gens()
    }

    /// Matrix of `∂_d : X_d -> X_{d-1}`.
    pub fn boundary_matrix(&self, d: i64) -> IntMatrix {
        if self.in_window(d) && self.in_window(d - 1) {
            self.boundaries[(d - self.min_deg - 1) as usize].clone()
        } else {
            IntMatrix::zeros(self.gens(d - 1), self.gens(d))
        }
    }

    pub fn boundary(&self, d: i64) -> ModuleMap {
        ModuleMap::raw(
            self.component(d).clone(),
            self.component(d - 1).clone(),
            self.boundary_matrix(d),
        )
    }

    /// Structural checks: rings, shapes, well-defined boundaries, `∂∂ = 0`.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        for d in self.degrees() {
            if self.component(d).ring() != self.ring {
                failures.push(format!("component at degree {d} is over {}", self.component(d).ring()));
            }
        }
        for d in self.min_deg + 1..=self.max_deg() {
            let b = self.boundary_matrix(d);
            let expect = (self.gens(d - 1), self.gens(d));
            if b.shape() != expect {
                failures.push(format!(
                    "boundary at degree {d} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    expect.0,
                    expect.1
                ));
                continue;
            }
            if let Err(e) = ModuleMap::new(self.component(d).clone(), self.component(d - 1).clone(), b) {
                failures.push(format!("boundary at degree {d}: {e}"));
            }
        }
        if failures.is_empty() {
            for d in self.min_deg + 2..=self.max_deg() {
                let dd = self.boundary_matrix(d - 1).mul(&self.boundary_matrix(d));
                if !self.component(d - 2).columns_zero(&dd) {
                    failures.push(format!("∂∘∂ ≠ 0 at degree {d}"));
                }
            }
        }
        ValidationReport {
            valid: failures.is_empty(),
            failures,
        }
    }

    /// Same complex on a window enlarged to contain `[lo, hi]`.
    pub fn widened(&self, lo: i64, hi: i64) -> ChainComplex {
        let (lo, hi) = if self.components.is_empty() {
            (lo, hi)
        } else {
            (lo.min(self.min_deg), hi.max(self.max_deg()))
        };
        if hi < lo {
            return self.clone();
        }
        let comps: Vec<Presentation> = (lo..=hi).map(|d| self.component(d).clone()).collect();
        let bds: Vec<IntMatrix> = (lo + 1..=hi).map(|d| self.boundary_matrix(d)).collect();
        Self::raw(self.ring, lo, comps, bds)
    }

    /// Drops zero-generator components at both ends of the window.
    pub fn trimmed(&self) -> ChainComplex {
        let nz: Vec<i64> = self.degrees().filter(|&d| self.gens(d) > 0).collect();
        let (Some(&lo), Some(&hi)) = (nz.first(), nz.last()) else {
            return Self::zero(self.ring);
        };
        let comps: Vec<Presentation> = (lo..=hi).map(|d| self.component(d).clone()).collect();
        let bds: Vec<IntMatrix> = (lo + 1..=hi).map(|d| self.boundary_matrix(d)).collect();
        Self::raw(self.ring, lo, comps, bds)
    }

    pub fn direct_sum(parts: &[&ChainComplex]) -> Result<ChainComplex> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidComplex("empty direct sum".into()));
        };
        let ring = first.ring;
        if parts.iter().any(|p| p.ring != ring) {
            return Err(Error::RingMismatch("direct sum over different rings".into()));
        }
        let nonempty: Vec<&&ChainComplex> = parts.iter().filter(|p| !p.components.is_empty()).collect();
        if nonempty.is_empty() {
            return Ok(Self::zero(ring));
        }
        let lo = nonempty.iter().map(|p| p.min_deg).min().expect("nonempty");
        let hi = nonempty.iter().map(|p| p.max_deg()).max().expect("nonempty");
        let comps: Vec<Presentation> = (lo..=hi)
            .map(|d| {
                let cs: Vec<&Presentation> = parts.iter().map(|p| p.component(d)).collect();
                Presentation::direct_sum_many(ring, &cs).expect("same ring")
            })
            .collect();
        let bds: Vec<IntMatrix> = (lo + 1..=hi)
            .map(|d| {
                let bs: Vec<IntMatrix> = parts.iter().map(|p| p.boundary_matrix(d)).collect();
                let refs: Vec<&IntMatrix> = bs.iter().collect();
                IntMatrix::block_diag(&refs)
            })
            .collect();
        Ok(Self::raw(ring, lo, comps, bds))
    }

    /// `Z_d(X)` with its inclusion.
    pub fn cycles(&self, d: i64) -> (Presentation, ModuleMap) {
        self.boundary(d).kernel()
    }

    /// `B_d(X)` with its inclusion.
    pub fn boundaries(&self, d: i64) -> (Presentation, ModuleMap) {
        self.boundary(d + 1).image()
    }

    pub fn homology_presentation(&self, d: i64) -> Presentation {
        fgmod::homology_at(&self.boundary(d + 1), &self.boundary(d)).expect("∂∂ = 0")
    }

    pub fn homology(&self, d: i64) -> FgAbInvariants {
        self.homology_presentation(d).invariants()
    }

    /// Homology in every degree of the window.
    pub fn homology_all(&self) -> Vec<(i64, FgAbInvariants)> {
        self.degrees().map(|d| (d, self.homology(d))).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.degrees().all(|d| self.homology_presentation(d).is_zero_module())
    }

    /// Total number of generators.
    pub fn size(&self) -> usize {
        self.components.iter().map(|c| c.gens()).sum()
    }

    /// Size after replacing every component by its invariant-factor form.
    pub fn simplified_size(&self) -> usize {
        self.components.iter().map(|c| c.simplify().module.gens()).sum()
    }

    /// Exact with every cycle module free.
    pub fn is_free_complex(&self) -> bool {
        self.is_exact() && self.degrees().all(|d| self.cycles(d).0.is_free())
    }

    pub fn disk_decomposition(&self) -> Result<DiskDecomposition> {
        decompose(self)
    }

    /// Identity is nullhomotopic.
    pub fn is_contractible(&self) -> bool {
        maps::is_nullhomotopic(&ChainMap::identity(self)).is_some()
    }

    pub fn quotient(&self, sub: &Subcomplex) -> Result<(ChainComplex, ChainMap)> {
        if sub.ambient() != self {
            return Err(Error::Precondition("subcomplex of a different complex".into()));
        }
        Ok(sub.quotient())
    }

    /// Element from raw coordinates, checked against the window.
    pub fn element(&self, degree: i64, coords: Vec<Int>) -> Result<Element> {
        if !self.in_window(degree) {
            return Err(Error::Precondition(format!("degree {degree} is outside the window")));
        }
        if coords.len() != self.gens(degree) {
            return Err(Error::Dimension(format!(
                "{} coordinates for {} generators",
                coords.len(),
                self.gens(degree)
            )));
        }
        Ok(Element { degree, coords })
    }

    /// The generator `e_index` in degree `degree`.
    pub fn generator(&self, degree: i64, index: usize) -> Element {
        let mut coords = vec![Int::ZERO; self.gens(degree)];
        coords[index] = linalg::int(1);
        Element { degree, coords }
    }
}

/// Free functions mirroring the methods.
pub fn cycles(x: &ChainComplex, m: i64) -> Presentation {
    x.cycles(m).0
}

pub fn boundaries(x: &ChainComplex, m: i64) -> Presentation {
    x.boundaries(m).0
}

pub fn homology(x: &ChainComplex, m: i64) -> FgAbInvariants {
    x.homology(m)
}

pub fn is_exact(x: &ChainComplex) -> bool {
    x.is_exact()
}

pub fn disk(n: i64, m: &Presentation) -> ChainComplex {
    ChainComplex::disk(n, m)
}

pub fn sphere(n: i64, m: &Presentation) -> ChainComplex {
    ChainComplex::sphere(n, m)
}

pub fn size(x: &ChainComplex) -> usize {
    x.size()
}

/// A homogeneous element of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub degree: i64,
    pub coords: Vec<Int>,
}

impl Element {
    /// Coordinates reduced to the invariant-factor normal form of the component.
    pub fn normalized(&self, x: &ChainComplex) -> Vec<Int> {
        x.component(self.degree).normal_form(&self.coords)
    }

    pub fn is_zero_in(&self, x: &ChainComplex) -> bool {
        x.component(self.degree).is_zero_vector(&self.coords)
    }
}

/// A direct sum of rank-one free disks `D^t(R)`, listed by top degree in
/// descending order. In degree `d` the basis is: the top copies of the
/// disks with top `d` (in order), then the bottom copies of the disks with
/// top `d + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskSum {
    ring: Ring,
    tops: Vec<i64>,
}

impl DiskSum {
    pub fn new(ring: Ring, mut tops: Vec<i64>) -> Self {
        tops.sort_by(|a, b| b.cmp(a));
        DiskSum { ring, tops }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn tops(&self) -> &[i64] {
        &self.tops
    }

    pub fn len(&self) -> usize {
        self.tops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tops.is_empty()
    }

    /// Indices of disks with the given top degree.
    pub fn with_top(&self, t: i64) -> Vec<usize> {
        (0..self.tops.len()).filter(|&i| self.tops[i] == t).collect()
    }

    /// Basis of degree `d`: `(disk, is_top)` pairs in slot order.
    pub fn slots(&self, d: i64) -> Vec<(usize, bool)> {
        let mut out: Vec<(usize, bool)> = self.with_top(d).into_iter().map(|i| (i, true)).collect();
        out.extend(self.with_top(d + 1).into_iter().map(|i| (i, false)));
        out
    }

    pub fn rank_at(&self, d: i64) -> usize {
        self.tops.iter().filter(|&&t| t == d || t == d + 1).count()
    }

    /// Slot index of the top (or bottom) copy of a disk.
    pub fn slot(&self, disk: usize, top: bool) -> (i64, usize) {
        let t = self.tops[disk];
        if top {
            let k = self.with_top(t).iter().position(|&i| i == disk).expect("disk");
            (t, k)
        } else {
            let k = self.with_top(t).iter().position(|&i| i == disk).expect("disk");
            (t - 1, self.with_top(t - 1).len() + k)
        }
    }

    /// `(top degree, count)` in descending degree order.
    pub fn summary(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &t in &self.tops {
            match out.last_mut() {
                Some((d, c)) if *d == t => *c += 1,
                _ => out.push((t, 1)),
            }
        }
        out
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        Some((*self.tops.last()? - 1, *self.tops.first()?))
    }

    pub fn to_complex(&self) -> ChainComplex {
        let Some((lo, hi)) = self.window() else {
            return ChainComplex::zero(self.ring);
        };
        let comps: Vec<Presentation> = (lo..=hi)
            .map(|d| Presentation::free(self.ring, self.rank_at(d)))
            .collect();
        let bds: Vec<IntMatrix> = (lo + 1..=hi)
            .map(|d| {
                let src = self.slots(d);
                let tgt = self.slots(d - 1);
                let mut m = IntMatrix::zeros(tgt.len(), src.len());
                for (j, &(disk, top)) in src.iter().enumerate() {
                    if top {
                        let i = tgt.iter().position(|&s| s == (disk, false)).expect("bottom slot");
                        m.set(i, j, linalg::int(1));
                    }
                }
                m
            })
            .collect();
        ChainComplex::raw(self.ring, lo, comps, bds)
    }

    /// Restriction to a subset of disks, returned with the slot embedding
    /// matrices (ambient slots × sub slots) per degree.
    pub fn restrict(&self, keep: &[usize]) -> (DiskSum, BTreeMap<i64, IntMatrix>) {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let sub = DiskSum {
            ring: self.ring,
            tops: sorted.iter().map(|&i| self.tops[i]).collect(),
        };
        let mut emb = BTreeMap::new();
        if let Some((lo, hi)) = self.window() {
            for d in lo..=hi {
                let amb = self.slots(d);
                let s = sub.slots(d);
                let mut m = IntMatrix::zeros(amb.len(), s.len());
                for (j, &(k, top)) in s.iter().enumerate() {
                    let i = amb.iter().position(|&a| a == (sorted[k], top)).expect("slot");
                    m.set(i, j, linalg::int(1));
                }
                emb.insert(d, m);
            }
        }
        (sub, emb)
    }
}

/// `X ≅ ⊕ D^t(R)` with the isomorphism and its inverse as chain maps.
#[derive(Clone, Debug)]
pub struct DiskDecomposition {
    pub disks: DiskSum,
    /// Disk complex → X.
    pub iso: ChainMap,
    /// X → disk complex.
    pub inverse: ChainMap,
}

impl DiskDecomposition {
    pub fn summary(&self) -> Vec<(i64, usize)> {
        self.disks.summary()
    }
}

/// Free basis of a free module, as columns in the coordinates of `incl`'s target.
fn free_basis(module: &Presentation, incl: &IntMatrix) -> IntMatrix {
    let s = module.simplify();
    incl.mul(&s.to_original)
}

fn decompose(x: &ChainComplex) -> Result<DiskDecomposition> {
    if !x.is_free_complex() {
        return Err(Error::Precondition("complex is not exact with free cycles".into()));
    }
    let ring = x.ring();
    let mut cycle_basis: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    for d in x.degrees() {
        let (z, incl) = x.cycles(d);
        cycle_basis.insert(d, free_basis(&z, incl.matrix()));
    }
    // Disks with top t correspond to the basis of Z_{t-1}; their top copies
    // are lifts of that basis along ∂_t.
    let mut lifts: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    let mut tops = Vec::new();
    for t in x.degrees().rev() {
        let Some(zb) = cycle_basis.get(&(t - 1)) else { continue };
        if zb.cols() == 0 {
            continue;
        }
        let lat = x.component(t - 1).relation_lattice();
        let aug = IntMatrix::hstack(&[&x.boundary_matrix(t), lat])?;
        let sol = linalg::solve_matrix(&aug, zb, None)?
            .ok_or_else(|| Error::Precondition(format!("cycles in degree {} are not boundaries", t - 1)))?;
        lifts.insert(t, sol.block(0, 0, x.gens(t), zb.cols()));
        tops.extend(std::iter::repeat(t).take(zb.cols()));
    }
    let disks = DiskSum::new(ring, tops);
    let p = disks.to_complex();
    let mut comps = BTreeMap::new();
    for d in x.degrees() {
        let top = lifts.get(&d).cloned().unwrap_or_else(|| IntMatrix::zeros(x.gens(d), 0));
        let bottom = cycle_basis
            .get(&d)
            .filter(|_| lifts.contains_key(&(d + 1)))
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(x.gens(d), 0));
        comps.insert(d, IntMatrix::hstack(&[&top, &bottom])?);
    }
    let iso = ChainMap::new(p.clone(), x.clone(), comps)?;
    let mut inv = BTreeMap::new();
    for d in x.degrees() {
        let m = iso.component_matrix(d);
        let lat = x.component(d).relation_lattice();
        let aug = IntMatrix::hstack(&[&m, lat])?;
        let sol = linalg::solve_matrix(&aug, &IntMatrix::identity(x.gens(d)), None)?
            .ok_or_else(|| Error::Precondition("decomposition map is not surjective".into()))?;
        inv.insert(d, sol.block(0, 0, m.cols(), x.gens(d)));
    }
    let inverse = ChainMap::new(x.clone(), p, inv)?;
    Ok(DiskDecomposition { disks, iso, inverse })
}

/// A subcomplex, recorded by its own complex and a monic inclusion.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    inclusion: ChainMap,
}

impl Subcomplex {
    pub fn from_inclusion(f: ChainMap) -> Result<Self> {
        if !f.is_mono() {
            return Err(Error::Precondition("inclusion of a subcomplex must be a monomorphism".into()));
        }
        Ok(Subcomplex { inclusion: f })
    }

    /// The smallest subcomplex containing the given vectors (columns of
    /// `gens[d]`, in the coordinates of `X_d`). Components are returned in
    /// invariant-factor form.
    pub fn generated_by(x: &ChainComplex, gens: &BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let mut closed: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for d in x.degrees().rev() {
            let mut parts: Vec<IntMatrix> = Vec::new();
            if let Some(g) = gens.get(&d) {
                if g.rows() != x.gens(d) {
                    return Err(Error::Dimension(format!("generators in degree {d} have wrong length")));
                }
                parts.push(g.clone());
            }
            if let Some(above) = closed.get(&(d + 1)) {
                parts.push(x.boundary_matrix(d + 1).mul(above));
            }
            let refs: Vec<&IntMatrix> = parts.iter().collect();
            let g = if refs.is_empty() {
                IntMatrix::zeros(x.gens(d), 0)
            } else {
                IntMatrix::hstack(&refs)?
            };
            closed.insert(d, g);
        }
        Self::from_closed_generators(x, &closed)
    }

    /// Like `generated_by`, but the generators must already be closed under ∂.
    pub fn from_closed_generators(x: &ChainComplex, gens: &BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let ring = x.ring();
        let mut incl: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        let mut comps: BTreeMap<i64, Presentation> = BTreeMap::new();
        for d in x.degrees() {
            let g = gens.get(&d).cloned().unwrap_or_else(|| IntMatrix::zeros(x.gens(d), 0));
            let f = ModuleMap::raw(Presentation::free(ring, g.cols()), x.component(d).clone(), g.clone());
            let (im, _) = f.image();
            let s = im.simplify();
            incl.insert(d, g.mul(&s.to_original));
            comps.insert(d, s.module);
        }
        let mut bds = Vec::new();
        for d in x.min_deg() + 1..=x.max_deg() {
            let push = x.boundary_matrix(d).mul(&incl[&d]);
            let lat = x.component(d - 1).relation_lattice();
            let aug = IntMatrix::hstack(&[&incl[&(d - 1)], lat])?;
            let sol = linalg::solve_matrix(&aug, &push, None)?
                .ok_or_else(|| Error::Precondition(format!("generators are not closed under ∂ at degree {d}")))?;
            bds.push(sol.block(0, 0, incl[&(d - 1)].cols(), push.cols()));
        }
        let sub = if x.degrees().is_empty() {
            ChainComplex::zero(ring)
        } else {
            ChainComplex::raw(ring, x.min_deg(), x.degrees().map(|d| comps[&d].clone()).collect(), bds)
        };
        let inclusion = ChainMap::raw(sub, x.clone(), incl);
        Ok(Subcomplex { inclusion })
    }

    pub fn whole(x: &ChainComplex) -> Self {
        Subcomplex {
            inclusion: ChainMap::identity(x),
        }
    }

    pub fn ambient(&self) -> &ChainComplex {
        self.inclusion.target()
    }

    pub fn complex(&self) -> &ChainComplex {
        self.inclusion.source()
    }

    pub fn inclusion(&self) -> &ChainMap {
        &self.inclusion
    }

    /// Generators of the subcomplex in degree `d`, as ambient coordinates.
    pub fn generators(&self, d: i64) -> IntMatrix {
        self.inclusion.component_matrix(d)
    }

    pub fn size(&self) -> usize {
        self.complex().size()
    }

    pub fn contains(&self, e: &Element) -> bool {
        if !self.ambient().in_window(e.degree) {
            return e.coords.iter().all(|c| c.is_zero());
        }
        self.inclusion.component(e.degree).image_contains(&e.coords)
    }

    /// Whether `self ⊆ other` inside the same ambient complex.
    pub fn is_contained_in(&self, other: &Subcomplex) -> bool {
        self.ambient().degrees().all(|d| {
            let g = self.generators(d);
            let f = other.inclusion.component(d);
            (0..g.cols()).all(|j| f.image_contains(&g.col(j)))
        })
    }

    /// `X / S` with the projection.
    pub fn quotient(&self) -> (ChainComplex, ChainMap) {
        let x = self.ambient();
        let ring = x.ring();
        if x.degrees().is_empty() {
            return (x.clone(), ChainMap::identity(x));
        }
        let comps: Vec<Presentation> = x
            .degrees()
            .map(|d| x.component(d).with_relations(&self.generators(d)).expect("rows"))
            .collect();
        let bds: Vec<IntMatrix> = (x.min_deg() + 1..=x.max_deg()).map(|d| x.boundary_matrix(d)).collect();
        let q = ChainComplex::raw(ring, x.min_deg(), comps, bds);
        let proj: BTreeMap<i64, IntMatrix> = x.degrees().map(|d| (d, IntMatrix::identity(x.gens(d)))).collect();
        let p = ChainMap::raw(x.clone(), q.clone(), proj);
        (q, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn z() -> Presentation {
        Presentation::free(Ring::Z, 1)
    }

    fn z2() -> Presentation {
        Presentation::cyclic(Ring::Z, 2)
    }

    /// ℤ --×2--> ℤ --π--> ℤ/2 in degrees 1, 0, -1.
    fn resolution_complex() -> ChainComplex {
        ChainComplex::new(
            Ring::Z,
            -1,
            vec![z2(), z(), z()],
            vec![IntMatrix::from_i64(1, 1, &[1]), IntMatrix::from_i64(1, 1, &[2])],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(resolution_complex().validate().valid);
        let bad = ChainComplex::new(
            Ring::Z,
            -1,
            vec![z2(), z(), z()],
            vec![IntMatrix::from_i64(1, 1, &[1]), IntMatrix::from_i64(1, 1, &[3])],
        );
        assert!(matches!(bad, Err(Error::InvalidComplex(msg)) if msg.contains("degree 1")));
        assert!(ChainComplex::zero(Ring::Z).validate().valid);
    }

    #[test]
    fn homology_and_cycles() {
        let x = resolution_complex();
        assert!(x.is_exact());
        let (z0, incl) = x.cycles(0);
        assert_eq!(z0.invariants().free_rank, 1);
        assert_eq!(incl.matrix(), &IntMatrix::from_i64(1, 1, &[2]));
        let s = ChainComplex::sphere(0, &z2());
        assert_eq!(s.homology(0).torsion, vec![int(2)]);
        assert!(!ChainComplex::sphere(0, &z()).is_exact());
        assert!(ChainComplex::disk(1, &z()).is_exact());
    }

    #[test]
    fn disks_and_spheres() {
        let d = ChainComplex::disk(0, &z2());
        assert_eq!((d.min_deg(), d.max_deg()), (-1, 0));
        assert_eq!(ChainComplex::disk(1, &z().power(2)).size(), 4);
        assert_eq!(resolution_complex().size(), 3);
        assert_eq!(ChainComplex::zero(Ring::Z).size(), 0);
    }

    #[test]
    fn boundaries_lie_in_cycles() {
        let x = resolution_complex();
        for d in -2..=2 {
            let (_, b) = x.boundaries(d);
            let (_, zc) = x.cycles(d);
            assert!(b.lift_through(&zc).is_some());
        }
    }

    #[test]
    fn decomposition_of_disk_sum() {
        let x = ChainComplex::direct_sum(&[&ChainComplex::disk(2, &z()), &ChainComplex::disk(0, &z())]).unwrap();
        assert!(x.is_free_complex());
        let dec = x.disk_decomposition().unwrap();
        assert_eq!(dec.summary(), vec![(2, 1), (0, 1)]);
        assert!(dec.iso.is_iso());
        assert!(dec.iso.compose(&dec.inverse).unwrap().equals(&ChainMap::identity(&dec.disks.to_complex())));
        assert!(!resolution_complex().is_free_complex());
        assert!(resolution_complex().disk_decomposition().is_err());
        assert!(ChainComplex::zero(Ring::Z).disk_decomposition().unwrap().disks.is_empty());
    }

    #[test]
    fn quotients() {
        let x = resolution_complex();
        let whole = Subcomplex::whole(&x);
        let (q, p) = whole.quotient();
        assert_eq!(q.size(), 3);
        assert!(q.degrees().all(|d| q.component(d).is_zero_module()));
        assert!(p.is_epi());
        // Subcomplex generated by 2 in degree 1: 2ℤ --> 4ℤ.
        let mut g = BTreeMap::new();
        g.insert(1, IntMatrix::from_i64(1, 1, &[2]));
        let s = Subcomplex::generated_by(&x, &g).unwrap();
        let (q, _) = s.quotient();
        assert!(q.validate().valid);
        assert_eq!(q.homology(1).torsion, Vec::<Int>::new());
        assert!(q.is_exact());
        assert_eq!(q.component(1).invariants().torsion, vec![int(2)]);
        assert_eq!(q.component(0).invariants().torsion, vec![int(4)]);
    }

    #[test]
    fn split_quotient() {
        let x = ChainComplex::disk(1, &z());
        let y = ChainComplex::sphere(0, &z2());
        let sum = ChainComplex::direct_sum(&[&x, &y]).unwrap();
        let mut g = BTreeMap::new();
        g.insert(1, IntMatrix::from_i64(1, 1, &[1]));
        let s = Subcomplex::generated_by(&sum, &g).unwrap();
        let (q, _) = s.quotient();
        assert_eq!(q.homology(0), y.homology(0));
        assert!(q.homology(1).is_zero());
    }

    #[test]
    fn membership() {
        let x = resolution_complex();
        let mut g = BTreeMap::new();
        g.insert(1, IntMatrix::from_i64(1, 1, &[2]));
        let s = Subcomplex::generated_by(&x, &g).unwrap();
        assert!(s.contains(&Element { degree: 0, coords: vec![int(4)] }));
        assert!(!s.contains(&Element { degree: 0, coords: vec![int(2)] }));
        assert!(s.contains(&Element { degree: -1, coords: vec![int(0)] }));
    }

    #[test]
    fn disk_sum_slots() {
        let ds = DiskSum::new(Ring::Z, vec![0, 1, 0]);
        assert_eq!(ds.tops(), &[1, 0, 0]);
        assert_eq!(ds.slots(0), vec![(1, true), (2, true), (0, false)]);
        assert_eq!(ds.slot(0, false), (0, 2));
        let c = ds.to_complex();
        assert!(c.validate().valid);
        assert!(c.is_free_complex());
        assert_eq!(c.disk_decomposition().unwrap().summary(), vec![(1, 1), (0, 2)]);
    }
}

//! Chain maps: composition, kernels and cokernels, homology, cones and
//! nullhomotopies.

use std::collections::BTreeMap;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::fgmod::{ModuleMap, Presentation};
use crate::linalg::{self, IntMatrix, MatrixSystem};

/// A degree-zero chain map. Components are stored for every degree in the
/// union of the two windows; outside that range they are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i64, IntMatrix>,
}

fn union_window(a: &ChainComplex, b: &ChainComplex) -> Vec<i64> {
    let mut ds: Vec<i64> = a.degrees().chain(b.degrees()).collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

impl ChainMap {
    /// Validates shapes, well-definedness and `∂ f = f ∂`. Missing degrees
    /// are zero.
    pub fn new(source: ChainComplex, target: ChainComplex, components: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch("chain map between complexes over different rings".into()));
        }
        for &d in components.keys() {
            if !source.in_window(d) && !target.in_window(d) {
                let m = &components[&d];
                if m.rows() + m.cols() > 0 {
                    return Err(Error::InvalidChainMap(format!("component at degree {d} is outside both windows")));
                }
            }
        }
        let f = Self::raw(source, target, components);
        let failures = f.validate();
        if !failures.is_empty() {
            return Err(Error::InvalidChainMap(failures.join("; ")));
        }
        Ok(f)
    }

    /// No checks beyond filling absent degrees with zero matrices.
    pub(crate) fn raw(source: ChainComplex, target: ChainComplex, mut components: BTreeMap<i64, IntMatrix>) -> Self {
        let window = union_window(&source, &target);
        components.retain(|d, _| window.contains(d));
        for &d in &window {
            components
                .entry(d)
                .or_insert_with(|| IntMatrix::zeros(target.gens(d), source.gens(d)));
        }
        ChainMap {
            source,
            target,
            components,
        }
    }

    /// Lists every violated condition.
    pub fn validate(&self) -> Vec<String> {
        let mut failures = Vec::new();
        for (&d, m) in &self.components {
            if m.shape() != (self.target.gens(d), self.source.gens(d)) {
                failures.push(format!(
                    "component at degree {d} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.target.gens(d),
                    self.source.gens(d)
                ));
            }
        }
        if !failures.is_empty() {
            return failures;
        }
        for &d in self.components.keys() {
            if let Err(e) = ModuleMap::new(
                self.source.component(d).clone(),
                self.target.component(d).clone(),
                self.components[&d].clone(),
            ) {
                failures.push(format!("degree {d}: {e}"));
            }
        }
        for &d in self.components.keys() {
            let lhs = self.target.boundary_matrix(d).mul(&self.components[&d]);
            let rhs = self.component_matrix(d - 1).mul(&self.source.boundary_matrix(d));
            if !self.target.component(d - 1).columns_zero(&lhs.sub(&rhs)) {
                failures.push(format!("map does not commute with ∂ at degree {d}"));
            }
        }
        failures
    }

    pub fn identity(x: &ChainComplex) -> Self {
        let comps = x.degrees().map(|d| (d, IntMatrix::identity(x.gens(d)))).collect();
        Self::raw(x.clone(), x.clone(), comps)
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self::raw(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn component_matrix(&self, d: i64) -> IntMatrix {
        self.components
            .get(&d)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.gens(d), self.source.gens(d)))
    }

    pub fn component(&self, d: i64) -> ModuleMap {
        ModuleMap::raw(
            self.source.component(d).clone(),
            self.target.component(d).clone(),
            self.component_matrix(d),
        )
    }

    /// `other ∘ self`.
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        let window = union_window(&self.source, &other.target);
        for d in union_window(&self.target, &other.source) {
            if self.target.gens(d) != other.source.gens(d) {
                return Err(Error::InvalidChainMap(format!("maps are not composable at degree {d}")));
            }
        }
        let comps = window
            .into_iter()
            .map(|d| (d, other.component_matrix(d).mul(&self.component_matrix(d))))
            .collect();
        Ok(Self::raw(self.source.clone(), other.target.clone(), comps))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let comps = self
            .components
            .iter()
            .map(|(&d, m)| (d, m.add(&other.component_matrix(d))))
            .collect();
        Self::raw(self.source.clone(), self.target.clone(), comps)
    }

    pub fn neg(&self) -> ChainMap {
        let comps = self.components.iter().map(|(&d, m)| (d, m.neg())).collect();
        Self::raw(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, c: i64) -> ChainMap {
        let c = linalg::int(c);
        let comps = self.components.iter().map(|(&d, m)| (d, m.scale(&c))).collect();
        Self::raw(self.source.clone(), self.target.clone(), comps)
    }

    /// Equality modulo target relations, degree by degree.
    pub fn equals(&self, other: &ChainMap) -> bool {
        union_window(&self.source, &self.target)
            .into_iter()
            .all(|d| self.component(d).equals(&other.component(d)))
    }

    pub fn is_mono(&self) -> bool {
        self.components.keys().all(|&d| self.component(d).is_injective())
    }

    pub fn is_epi(&self) -> bool {
        self.components.keys().all(|&d| self.component(d).is_surjective())
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Kernel complex with its inclusion into the source.
    pub fn kernel_complex(&self) -> (ChainComplex, ChainMap) {
        let x = &self.source;
        if x.degrees().is_empty() {
            return (x.clone(), ChainMap::identity(x));
        }
        let mut comps = Vec::new();
        let mut incl = BTreeMap::new();
        for d in x.degrees() {
            let (k, i) = self.component(d).kernel();
            comps.push(k);
            incl.insert(d, i.matrix().clone());
        }
        let bds = induced_boundaries(x, &incl);
        let k = ChainComplex::raw(x.ring(), x.min_deg(), comps, bds);
        let inc = ChainMap::raw(k.clone(), x.clone(), incl);
        (k, inc)
    }

    /// Image complex with its inclusion into the target.
    pub fn image_complex(&self) -> (ChainComplex, ChainMap) {
        let x = &self.source;
        if x.degrees().is_empty() {
            let z = ChainComplex::zero(x.ring());
            let inc = ChainMap::zero(&z, &self.target);
            return (z, inc);
        }
        let mut comps = Vec::new();
        for d in x.degrees() {
            comps.push(self.component(d).image().0);
        }
        let bds = (x.min_deg() + 1..=x.max_deg()).map(|d| x.boundary_matrix(d)).collect();
        let im = ChainComplex::raw(x.ring(), x.min_deg(), comps, bds);
        let inc = ChainMap::raw(im.clone(), self.target.clone(), self.components.clone());
        (im, inc)
    }

    /// Cokernel complex with the projection from the target.
    pub fn cokernel_complex(&self) -> (ChainComplex, ChainMap) {
        let y = &self.target;
        if y.degrees().is_empty() {
            return (y.clone(), ChainMap::identity(y));
        }
        let comps = y
            .degrees()
            .map(|d| y.component(d).with_relations(&self.component_matrix(d)).expect("rows"))
            .collect();
        let bds = (y.min_deg() + 1..=y.max_deg()).map(|d| y.boundary_matrix(d)).collect();
        let c = ChainComplex::raw(y.ring(), y.min_deg(), comps, bds);
        let proj = y.degrees().map(|d| (d, IntMatrix::identity(y.gens(d)))).collect();
        let p = ChainMap::raw(y.clone(), c.clone(), proj);
        (c, p)
    }

    /// `H_d(f) : H_d(X) -> H_d(Y)`, with homology presented on cycle generators.
    pub fn homology_map(&self, d: i64) -> ModuleMap {
        let hx = self.source.homology_presentation(d);
        let hy = self.target.homology_presentation(d);
        let (_, zx) = self.source.cycles(d);
        let (_, zy) = self.target.cycles(d);
        let push = zx.then(&self.component(d)).expect("composable");
        let lifted = push.lift_through(&zy).expect("cycles map to cycles");
        ModuleMap::raw(hx, hy, lifted.matrix().clone())
    }

    pub fn is_quasi_iso(&self) -> bool {
        union_window(&self.source, &self.target)
            .into_iter()
            .all(|d| self.homology_map(d).is_iso())
    }
}

/// Boundaries of a subobject given by per-degree inclusion matrices:
/// `∂^X ∘ incl` lifted through the inclusion one degree down.
fn induced_boundaries(x: &ChainComplex, incl: &BTreeMap<i64, IntMatrix>) -> Vec<IntMatrix> {
    (x.min_deg() + 1..=x.max_deg())
        .map(|d| {
            let push = x.boundary_matrix(d).mul(&incl[&d]);
            let lat = x.component(d - 1).relation_lattice();
            let aug = IntMatrix::hstack(&[&incl[&(d - 1)], lat]).expect("rows");
            let sol = linalg::solve_matrix(&aug, &push, None)
                .expect("rows")
                .expect("boundary of a kernel element lies in the kernel");
            sol.block(0, 0, incl[&(d - 1)].cols(), push.cols())
        })
        .collect()
}

pub fn kernel_complex(f: &ChainMap) -> ChainComplex {
    f.kernel_complex().0
}

pub fn image_complex(f: &ChainMap) -> ChainComplex {
    f.image_complex().0
}

pub fn cokernel_complex(f: &ChainMap) -> ChainComplex {
    f.cokernel_complex().0
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    f.is_quasi_iso()
}

pub fn is_mono(f: &ChainMap) -> bool {
    f.is_mono()
}

pub fn is_epi(f: &ChainMap) -> bool {
    f.is_epi()
}

/// `cone(f)_d = X_{d-1} ⊕ Y_d`, differential `(x, y) ↦ (−∂x, f(x) + ∂y)`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let x = &f.source;
    let y = &f.target;
    let ring = x.ring();
    let mut ds: Vec<i64> = x.degrees().map(|d| d + 1).chain(y.degrees()).collect();
    ds.sort_unstable();
    let (Some(&lo), Some(&hi)) = (ds.first(), ds.last()) else {
        return ChainComplex::zero(ring);
    };
    let comps: Vec<Presentation> = (lo..=hi)
        .map(|d| x.component(d - 1).direct_sum(y.component(d)).expect("same ring"))
        .collect();
    let bds = (lo + 1..=hi)
        .map(|d| {
            let (xa, ya) = (x.gens(d - 1), y.gens(d));
            let (xb, yb) = (x.gens(d - 2), y.gens(d - 1));
            let mut m = IntMatrix::zeros(xb + yb, xa + ya);
            m.set_block(0, 0, &x.boundary_matrix(d - 1).neg());
            m.set_block(xb, 0, &f.component_matrix(d - 1));
            m.set_block(xb, xa, &y.boundary_matrix(d));
            m
        })
        .collect();
    ChainComplex::raw(ring, lo, comps, bds)
}

/// `s_d : X_d -> Y_{d+1}` witnessing `f = ∂s + s∂`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub components: BTreeMap<i64, IntMatrix>,
}

impl Homotopy {
    pub fn component(&self, x: &ChainComplex, y: &ChainComplex, d: i64) -> IntMatrix {
        self.components
            .get(&d)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(y.gens(d + 1), x.gens(d)))
    }
}

/// Checks `f = ∂s + s∂` exactly and that every `s_d` is a homomorphism.
pub fn verify_homotopy(f: &ChainMap, h: &Homotopy) -> bool {
    let (x, y) = (&f.source, &f.target);
    for (&d, s) in &h.components {
        if s.shape() != (y.gens(d + 1), x.gens(d)) {
            return false;
        }
        if ModuleMap::new(x.component(d).clone(), y.component(d + 1).clone(), s.clone()).is_err() {
            return false;
        }
    }
    union_window(x, y).into_iter().all(|d| {
        let ds = y.boundary_matrix(d + 1).mul(&h.component(x, y, d));
        let sd = h.component(x, y, d - 1).mul(&x.boundary_matrix(d));
        let resid = f.component_matrix(d).sub(&ds.add(&sd));
        y.component(d).columns_zero(&resid)
    })
}

/// Decides nullhomotopy with one linear system over all degrees at once.
pub fn is_nullhomotopic(f: &ChainMap) -> Option<Homotopy> {
    let (x, y) = (&f.source, &f.target);
    let window = union_window(x, y);
    let mut sys = MatrixSystem::new();
    let mut vars: BTreeMap<i64, usize> = BTreeMap::new();
    for &d in &window {
        if x.gens(d) > 0 && y.gens(d + 1) > 0 {
            vars.insert(d, sys.var(y.gens(d + 1), x.gens(d)));
        }
    }
    for &d in &window {
        let (gy, gx) = (y.gens(d), x.gens(d));
        if gy == 0 || gx == 0 {
            continue;
        }
        let mut terms = Vec::new();
        if let Some(&v) = vars.get(&d) {
            terms.push((v, y.boundary_matrix(d + 1), IntMatrix::identity(gx)));
        }
        if let Some(&v) = vars.get(&(d - 1)) {
            terms.push((v, IntMatrix::identity(gy), x.boundary_matrix(d)));
        }
        sys.equation(terms, f.component_matrix(d), Some(y.component(d).relation_lattice().clone()));
    }
    for (&d, &v) in &vars {
        let rels = x.component(d).without_zero_relations();
        if rels.relations().rows() == 0 {
            continue;
        }
        let gy = y.gens(d + 1);
        sys.equation(
            vec![(v, IntMatrix::identity(gy), rels.relations().transpose())],
            IntMatrix::zeros(gy, rels.relations().rows()),
            Some(y.component(d + 1).relation_lattice().clone()),
        );
    }
    let sol = sys.solve()?;
    let components = vars.iter().map(|(&d, &v)| (d, sol[v].clone())).collect();
    let h = Homotopy { components };
    assert!(verify_homotopy(f, &h), "homotopy failed exact re-verification");
    Some(h)
}

/// Generators of the group of chain maps `X -> Y` (as coordinate matrices,
/// including maps that vanish modulo relations).
pub fn chain_map_generators(x: &ChainComplex, y: &ChainComplex) -> Vec<ChainMap> {
    let window = union_window(x, y);
    let mut sys = MatrixSystem::new();
    let mut vars: BTreeMap<i64, usize> = BTreeMap::new();
    for &d in &window {
        if x.gens(d) > 0 && y.gens(d) > 0 {
            vars.insert(d, sys.var(y.gens(d), x.gens(d)));
        }
    }
    for &d in &window {
        // ∂^Y f_d − f_{d−1} ∂^X ≡ 0 in Y_{d−1}.
        let (gy, gx) = (y.gens(d - 1), x.gens(d));
        if gy == 0 || gx == 0 {
            continue;
        }
        let mut terms = Vec::new();
        if let Some(&v) = vars.get(&d) {
            terms.push((v, y.boundary_matrix(d), IntMatrix::identity(gx)));
        }
        if let Some(&v) = vars.get(&(d - 1)) {
            terms.push((v, IntMatrix::identity(gy).neg(), x.boundary_matrix(d)));
        }
        if terms.is_empty() {
            continue;
        }
        sys.equation(terms, IntMatrix::zeros(gy, gx), Some(y.component(d - 1).relation_lattice().clone()));
    }
    for (&d, &v) in &vars {
        let rels = x.component(d).without_zero_relations();
        if rels.relations().rows() == 0 {
            continue;
        }
        let gy = y.gens(d);
        sys.equation(
            vec![(v, IntMatrix::identity(gy), rels.relations().transpose())],
            IntMatrix::zeros(gy, rels.relations().rows()),
            Some(y.component(d).relation_lattice().clone()),
        );
    }
    sys.homogeneous_generators()
        .into_iter()
        .map(|vals| {
            let comps = vars.iter().map(|(&d, &v)| (d, vals[v].clone())).collect();
            ChainMap::raw(x.clone(), y.clone(), comps)
        })
        .collect()
}

/// `0 -> C_0 -> C_1 -> ... -> C_k -> 0` is exact in every degree, where
/// `maps[i] : C_i -> C_{i+1}`.
pub fn sequence_is_exact(maps: &[ChainMap]) -> bool {
    let (Some(first), Some(last)) = (maps.first(), maps.last()) else {
        return true;
    };
    if maps.windows(2).any(|w| w[0].target.degrees() != w[1].source.degrees() && {
        union_window(&w[0].target, &w[1].source)
            .into_iter()
            .any(|d| w[0].target.gens(d) != w[1].source.gens(d))
    }) {
        return false;
    }
    let mut ds: Vec<i64> = maps.iter().flat_map(|m| union_window(&m.source, &m.target)).collect();
    ds.sort_unstable();
    ds.dedup();
    ds.into_iter().all(|d| {
        let comps: Vec<ModuleMap> = maps.iter().map(|m| m.component(d)).collect();
        first.component(d).is_injective()
            && last.component(d).is_surjective()
            && crate::fgmod::is_exact_sequence(&comps)
    })
}

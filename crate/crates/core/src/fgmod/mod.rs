//! Finitely generated modules over Z or Z/m, given by generators and
//! relations, with morphisms and the basic constructions.

mod homological;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, int, solve_matrix, smith_diagonal, snf, Int, IntMatrix};

pub use homological::{
    ext1, ext1_presentation, free_resolution, hom, hom_presentation, homology_at, is_exact_sequence,
    is_projective, is_short_exact, pd, pd_report, syzygy, tor1, FreeResolution, Pd, PdReport,
};

/// Base ring: the integers or a quotient Z/m with m >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Zmod(u64),
}

impl Ring {
    pub fn zmod(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(Error::InvalidPresentation(format!("modulus {m} must be at least 2")));
        }
        Ok(Ring::Zmod(m))
    }

    pub fn modulus(&self) -> Option<Int> {
        match self {
            Ring::Z => None,
            Ring::Zmod(m) => Some(Int::from(*m)),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self {
            Ring::Zmod(m) if *m < 2 => Err(Error::InvalidPresentation(format!(
                "modulus {m} must be at least 2"
            ))),
            _ => Ok(()),
        }
    }

    pub fn parse(s: &str) -> Result<Ring> {
        let t = s.trim();
        if t == "Z" {
            return Ok(Ring::Z);
        }
        if let Some(rest) = t.strip_prefix("Z/") {
            let m: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad ring modulus in {s:?}")))?;
            return Ring::zmod(m).map_err(|e| Error::Parse(e.to_string()));
        }
        Err(Error::Parse(format!("unknown ring {s:?}")))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Zmod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_1 | t_2 | ...`, `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbInvariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl FgAbInvariants {
    pub fn zero() -> Self {
        FgAbInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// Normalises an arbitrary list of cyclic orders (0 meaning Z, 1 trivial).
    pub fn from_cyclic(orders: &[Int]) -> Self {
        let n = orders.len();
        let d = smith_diagonal(&IntMatrix::diagonal(n, n, orders));
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for v in d {
            if v.is_zero() {
                free_rank += 1;
            } else if v > int(1) {
                torsion.push(v);
            }
        }
        FgAbInvariants { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(int(1), |acc, t| acc * t))
    }
}

impl fmt::Display for FgAbInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// A module `R^gens / (row space of relations)`. Over Z/m the relations
/// `m·e_i` are implicit.
#[derive(Clone, Debug)]
pub struct Presentation {
    ring: Ring,
    gens: usize,
    relations: IntMatrix,
    lattice: OnceLock<IntMatrix>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.relations == other.relations
    }
}

impl Eq for Presentation {}

/// Result of `Presentation::simplify`: an isomorphic presentation in
/// invariant-factor form with the coordinate changes in both directions.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub module: Presentation,
    /// original-gens × new-gens: image of each new generator.
    pub to_original: IntMatrix,
    /// new-gens × original-gens: coordinates of each original generator.
    pub from_original: IntMatrix,
}

impl Presentation {
    pub fn new(ring: Ring, gens: usize, relations: IntMatrix) -> Result<Self> {
        ring.check()?;
        if relations.cols() != gens {
            return Err(Error::InvalidPresentation(format!(
                "relation matrix has {} columns but there are {} generators",
                relations.cols(),
                gens
            )));
        }
        Ok(Self::raw(ring, gens, relations))
    }

    pub(crate) fn raw(ring: Ring, gens: usize, relations: IntMatrix) -> Self {
        Presentation {
            ring,
            gens,
            relations,
            lattice: OnceLock::new(),
        }
    }

    pub fn free(ring: Ring, n: usize) -> Self {
        Self::raw(ring, n, IntMatrix::zeros(0, n))
    }

    pub fn zero(ring: Ring) -> Self {
        Self::free(ring, 0)
    }

    /// `R / d`, one generator.
    pub fn cyclic(ring: Ring, d: i64) -> Self {
        Self::raw(ring, 1, IntMatrix::from_i64(1, 1, &[d]))
    }

    /// Diagonal presentation with one generator per order (0 means free).
    pub fn from_orders(ring: Ring, orders: &[Int]) -> Self {
        let n = orders.len();
        let rows: Vec<Vec<Int>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut r = vec![Int::ZERO; n];
                r[i] = d.clone();
                r
            })
            .collect();
        Self::raw(ring, n, IntMatrix::from_rows(n, &rows).expect("row widths"))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Canonical basis (columns) of the full relation lattice, including
    /// `m·e_i` over Z/m.
    pub fn relation_lattice(&self) -> &IntMatrix {
        self.lattice.get_or_init(|| {
            let rt = self.relations.transpose();
            let gens = match self.ring.modulus() {
                Some(m) => IntMatrix::hstack(&[&rt, &IntMatrix::scalar(self.gens, &m)]).expect("rows"),
                None => rt,
            };
            linalg::lattice_basis(&gens)
        })
    }

    pub fn invariants(&self) -> FgAbInvariants {
        let l = self.relation_lattice();
        let d = smith_diagonal(l);
        let nonzero = d.iter().filter(|v| !v.is_zero()).count();
        FgAbInvariants {
            free_rank: self.gens - nonzero,
            torsion: d.into_iter().filter(|v| *v > int(1)).collect(),
        }
    }

    pub fn is_zero_module(&self) -> bool {
        self.invariants().is_zero()
    }

    /// Free over the ring: torsion-free over Z, `(Z/m)^r` over Z/m.
    pub fn is_free(&self) -> bool {
        let inv = self.invariants();
        match self.ring.modulus() {
            None => inv.torsion.is_empty(),
            Some(m) => inv.torsion.iter().all(|t| *t == m),
        }
    }

    /// Rank over the ring when free.
    pub fn free_rank_over_ring(&self) -> Option<usize> {
        if !self.is_free() {
            return None;
        }
        let inv = self.invariants();
        Some(match self.ring {
            Ring::Z => inv.free_rank,
            Ring::Zmod(_) => inv.torsion.len(),
        })
    }

    /// Whether a coordinate vector represents zero.
    pub fn is_zero_vector(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.gens, "coordinate length");
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let l = self.relation_lattice();
        solve_matrix(l, &IntMatrix::column_vector(v), None)
            .expect("shapes")
            .is_some()
    }

    /// Whether every column of `m` represents zero.
    pub fn columns_zero(&self, m: &IntMatrix) -> bool {
        assert_eq!(m.rows(), self.gens, "coordinate length");
        if m.is_zero() {
            return true;
        }
        solve_matrix(self.relation_lattice(), m, None).expect("shapes").is_some()
    }

    /// Invariant-factor presentation with explicit isomorphisms.
    pub fn simplify(&self) -> Simplified {
        let l = self.relation_lattice();
        let g = self.gens;
        let s = snf(l);
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..g {
            let d = if i < s.d.len() { s.d[i].clone() } else { Int::ZERO };
            if d == int(1) {
                continue;
            }
            kept.push(i);
            let drop_rel = match self.ring.modulus() {
                Some(m) => d == m,
                None => false,
            };
            orders.push(if drop_rel { Int::ZERO } else { d });
        }
        let module = Self::from_orders(self.ring, &orders);
        let to_original = s.u.select_cols(&kept);
        let mut from_original = s.u_inv.select_rows(&kept);
        for (k, d) in orders.iter().enumerate() {
            let modulus = if d.is_zero() { self.ring.modulus() } else { Some(d.clone()) };
            if let Some(m) = modulus {
                for j in 0..g {
                    let v = linalg::reduce(from_original.get(k, j), &m);
                    from_original.set(k, j, v);
                }
            }
        }
        Simplified {
            module,
            to_original,
            from_original,
        }
    }

    /// Coordinates in the invariant-factor presentation, reduced modulo each
    /// factor; equal for two vectors exactly when they represent the same element.
    pub fn normal_form(&self, v: &[Int]) -> Vec<Int> {
        let s = self.simplify();
        let w = s.from_original.mul_vec(v);
        reduce_by_orders(&s.module, w)
    }

    pub fn direct_sum(&self, other: &Presentation) -> Result<Presentation> {
        Presentation::direct_sum_many(self.ring, &[self, other])
    }

    pub fn direct_sum_many(ring: Ring, parts: &[&Presentation]) -> Result<Presentation> {
        for p in parts {
            if p.ring != ring {
                return Err(Error::RingMismatch(format!("{} vs {}", p.ring, ring)));
            }
        }
        let rels: Vec<&IntMatrix> = parts.iter().map(|p| &p.relations).collect();
        let relations = IntMatrix::block_diag(&rels);
        Ok(Self::raw(ring, relations.cols(), relations))
    }

    /// `self^k`.
    pub fn power(&self, k: usize) -> Presentation {
        let parts: Vec<&Presentation> = std::iter::repeat(self).take(k).collect();
        Self::direct_sum_many(self.ring, &parts).expect("same ring")
    }

    /// Standard presentation of `M ⊗ N`: generators `e_i ⊗ f_j` indexed by
    /// `i * gens(N) + j`.
    pub fn tensor(&self, other: &Presentation) -> Result<Presentation> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        let (gm, gn) = (self.gens, other.gens);
        let a = self.relations.kron(&IntMatrix::identity(gn));
        let b = IntMatrix::identity(gm).kron(&other.relations);
        let relations = IntMatrix::vstack(&[&a, &b])?;
        Ok(Self::raw(self.ring, gm * gn, relations))
    }

    /// Drops zero relation rows; leaves the module unchanged.
    pub fn without_zero_relations(&self) -> Presentation {
        let keep: Vec<usize> = (0..self.relations.rows())
            .filter(|&r| self.relations.row(r).iter().any(|v| !v.is_zero()))
            .collect();
        Self::raw(self.ring, self.gens, self.relations.select_rows(&keep))
    }

    /// The same generators with the columns of `extra` added as relations.
    pub fn with_relations(&self, extra: &IntMatrix) -> Result<Presentation> {
        if extra.rows() != self.gens {
            return Err(Error::Dimension("extra relations have the wrong length".into()));
        }
        let relations = IntMatrix::vstack(&[&self.relations, &extra.transpose()])?;
        Ok(Self::raw(self.ring, self.gens, relations).without_zero_relations())
    }
}

fn reduce_by_orders(module: &Presentation, mut w: Vec<Int>) -> Vec<Int> {
    let lat = module.relation_lattice();
    // Diagonal presentations: each generator has at most one relation.
    for (i, wi) in w.iter_mut().enumerate() {
        let mut order = Int::ZERO;
        for c in 0..lat.cols() {
            let v = lat.get(i, c);
            if !v.is_zero() {
                order = linalg::gcd(&order, v);
            }
        }
        if !order.is_zero() {
            *wi = linalg::reduce(wi, &order);
        }
    }
    w
}

/// A homomorphism given by a matrix of shape target-gens × source-gens.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Presentation,
    target: Presentation,
    matrix: IntMatrix,
}

impl ModuleMap {
    /// Checks shapes, rings and that relations are sent into the target's
    /// relation lattice.
    pub fn new(source: Presentation, target: Presentation, matrix: IntMatrix) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", source.ring, target.ring)));
        }
        if matrix.shape() != (target.gens, source.gens) {
            return Err(Error::InvalidMap(format!(
                "matrix is {}x{} but the map needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens,
                source.gens
            )));
        }
        let pushed = matrix.mul(&source.relations.transpose());
        if !target.columns_zero(&pushed) {
            return Err(Error::InvalidMap(
                "a source relation is not sent to zero in the target".into(),
            ));
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    /// Caller guarantees well-definedness.
    pub(crate) fn raw(source: Presentation, target: Presentation, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (target.gens, source.gens));
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(m: &Presentation) -> Self {
        Self::raw(m.clone(), m.clone(), IntMatrix::identity(m.gens))
    }

    pub fn zero(source: &Presentation, target: &Presentation) -> Self {
        Self::raw(source.clone(), target.clone(), IntMatrix::zeros(target.gens, source.gens))
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target.gens != other.source.gens || self.target.ring != other.source.ring {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        Ok(Self::raw(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        ))
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        Self::raw(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn neg(&self) -> ModuleMap {
        Self::raw(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    /// Equality as homomorphisms: matrices agree modulo target relations.
    pub fn equals(&self, other: &ModuleMap) -> bool {
        self.matrix.shape() == other.matrix.shape()
            && self.target.columns_zero(&self.matrix.sub(&other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.target.columns_zero(&self.matrix)
    }

    /// Lattice of source coordinate vectors sent into the target relations.
    fn kernel_lattice(&self) -> IntMatrix {
        linalg::preimage_lattice(&self.matrix, self.target.relation_lattice()).expect("rows")
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (Presentation, ModuleMap) {
        let basis = self.kernel_lattice();
        let src_lat = self.source.relation_lattice();
        // Source relations lie in the kernel lattice; express them there.
        let coords = solve_matrix(&basis, src_lat, None)
            .expect("rows")
            .expect("relations lie in the kernel");
        let ring = self.source.ring;
        let k = Presentation::raw(ring, basis.cols(), coords.transpose()).without_zero_relations();
        let incl = ModuleMap::raw(k.clone(), self.source.clone(), basis);
        (k, incl)
    }

    /// Image as a quotient of the source, with its inclusion into the target.
    pub fn image(&self) -> (Presentation, ModuleMap) {
        let basis = self.kernel_lattice();
        let im = Presentation::raw(self.source.ring, self.source.gens, basis.transpose());
        let incl = ModuleMap::raw(im.clone(), self.target.clone(), self.matrix.clone());
        (im, incl)
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (Presentation, ModuleMap) {
        let c = self.target.with_relations(&self.matrix).expect("rows");
        let proj = ModuleMap::raw(self.target.clone(), c.clone(), IntMatrix::identity(self.target.gens));
        (c, proj)
    }

    pub fn is_injective(&self) -> bool {
        let basis = self.kernel_lattice();
        self.source.columns_zero(&basis)
    }

    pub fn is_surjective(&self) -> bool {
        let (c, _) = self.cokernel();
        c.is_zero_module()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `h` with `incl ∘ h = self`, if one exists.
    pub fn lift_through(&self, incl: &ModuleMap) -> Option<ModuleMap> {
        let t = &incl.target;
        let lat = t.relation_lattice();
        let aug = IntMatrix::hstack(&[&incl.matrix, lat]).expect("rows");
        let sol = solve_matrix(&aug, &self.matrix, None).expect("rows")?;
        let h = sol.block(0, 0, incl.source.gens, self.source.gens);
        Some(ModuleMap::raw(self.source.clone(), incl.source.clone(), h))
    }

    /// Whether a target vector lies in the image.
    pub fn image_contains(&self, v: &[Int]) -> bool {
        let lat = self.target.relation_lattice();
        let aug = IntMatrix::hstack(&[&self.matrix, lat]).expect("rows");
        linalg::solve(&aug, v, None).expect("rows").is_some()
    }

    /// Block diagonal sum of maps.
    pub fn direct_sum(maps: &[&ModuleMap]) -> Result<ModuleMap> {
        let ring = maps
            .first()
            .map(|m| m.source.ring)
            .ok_or_else(|| Error::InvalidMap("empty direct sum of maps".into()))?;
        let src: Vec<&Presentation> = maps.iter().map(|m| &m.source).collect();
        let tgt: Vec<&Presentation> = maps.iter().map(|m| &m.target).collect();
        let mats: Vec<&IntMatrix> = maps.iter().map(|m| &m.matrix).collect();
        Ok(ModuleMap::raw(
            Presentation::direct_sum_many(ring, &src)?,
            Presentation::direct_sum_many(ring, &tgt)?,
            IntMatrix::block_diag(&mats),
        ))
    }
}

/// Kernel, image and cokernel helpers in free-function form.
pub fn kernel(f: &ModuleMap) -> (Presentation, ModuleMap) {
    f.kernel()
}

pub fn image(f: &ModuleMap) -> (Presentation, ModuleMap) {
    f.image()
}

pub fn cokernel(f: &ModuleMap) -> (Presentation, ModuleMap) {
    f.cokernel()
}

pub fn direct_sum(m: &Presentation, n: &Presentation) -> Result<Presentation> {
    m.direct_sum(n)
}

pub fn tensor_mod(m: &Presentation, n: &Presentation) -> Result<Presentation> {
    m.tensor(n)
}

pub fn invariants(m: &Presentation) -> FgAbInvariants {
    m.invariants()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zc(d: i64) -> Presentation {
        Presentation::cyclic(Ring::Z, d)
    }

    fn inv(free: usize, t: &[i64]) -> FgAbInvariants {
        FgAbInvariants {
            free_rank: free,
            torsion: t.iter().map(|&x| int(x)).collect(),
        }
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(zc(2).invariants(), inv(0, &[2]));
        assert_eq!(Presentation::free(Ring::Z, 1).invariants(), inv(1, &[]));
        let m = Presentation::new(Ring::Z, 2, IntMatrix::from_i64(2, 2, &[2, 4, 6, 8])).unwrap();
        assert_eq!(m.invariants(), inv(0, &[2, 4]));
        let z4 = Presentation::free(Ring::Zmod(4), 2);
        assert_eq!(z4.invariants(), inv(0, &[4, 4]));
    }

    #[test]
    fn times_two_on_z() {
        let z = Presentation::free(Ring::Z, 1);
        let f = ModuleMap::new(z.clone(), z, IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert!(f.kernel().0.is_zero_module());
        assert_eq!(f.cokernel().0.invariants(), inv(0, &[2]));
        assert!(f.is_injective() && !f.is_surjective());
    }

    #[test]
    fn identity_has_trivial_kernel_and_cokernel() {
        let m = zc(6).direct_sum(&Presentation::free(Ring::Z, 2)).unwrap();
        let id = ModuleMap::identity(&m);
        assert!(id.kernel().0.is_zero_module());
        assert!(id.cokernel().0.is_zero_module());
    }

    #[test]
    fn times_two_on_z4() {
        let z4 = Presentation::free(Ring::Zmod(4), 1);
        let f = ModuleMap::new(z4.clone(), z4, IntMatrix::from_i64(1, 1, &[2])).unwrap();
        assert_eq!(f.kernel().0.invariants(), inv(0, &[2]));
        assert_eq!(f.image().0.invariants(), inv(0, &[2]));
    }

    #[test]
    fn rejects_ill_defined_map() {
        // Z/2 → Z, 1 ↦ 1 does not respect 2·1 = 0.
        let err = ModuleMap::new(zc(2), Presentation::free(Ring::Z, 1), IntMatrix::from_i64(1, 1, &[1]));
        assert!(err.is_err());
    }

    #[test]
    fn tensor_examples() {
        let z = Presentation::free(Ring::Z, 1);
        assert_eq!(zc(2).tensor(&z).unwrap().invariants(), inv(0, &[2]));
        assert!(zc(2).tensor(&zc(3)).unwrap().is_zero_module());
    }

    #[test]
    fn simplify_round_trip() {
        let m = Presentation::new(Ring::Z, 3, IntMatrix::from_i64(2, 3, &[2, 4, 0, 6, 8, 0])).unwrap();
        let s = m.simplify();
        assert_eq!(s.module.invariants(), m.invariants());
        // to ∘ from is the identity on M.
        let back = s.to_original.mul(&s.from_original);
        assert!(m.columns_zero(&back.sub(&IntMatrix::identity(3))));
        let v = vec![int(3), int(5), int(7)];
        let w = vec![int(3) + int(2), int(5) + int(4), int(7)];
        assert_eq!(m.normal_form(&v), m.normal_form(&w));
    }

    #[test]
    fn ring_parse_and_display() {
        assert_eq!(Ring::parse("Z/12").unwrap(), Ring::Zmod(12));
        assert_eq!(Ring::parse("Z").unwrap().to_string(), "Z");
        assert!(Ring::parse("Z/1").is_err());
        assert!(Ring::parse("Q").is_err());
    }

    #[test]
    fn invariants_display() {
        assert_eq!(inv(2, &[2, 4]).to_string(), "Z^2 ⊕ Z/2 ⊕ Z/4");
        assert_eq!(FgAbInvariants::zero().to_string(), "0");
        assert_eq!(FgAbInvariants::from_cyclic(&[int(2), int(3), int(0), int(1)]), inv(1, &[6]));
    }
}

//! Standard small complexes and seeded random generators used by the tests,
//! the acceptance run and the CLI demos.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::ChainComplex;
use crate::fgmod::{Presentation, Ring};
use crate::linalg::{int, Int, IntMatrix};
use crate::maps::{self, ChainMap};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Z --d--> Z --> Z/d` in degrees `k+1, k, k-1`.
pub fn resolution_complex(k: i64, d: i64) -> ChainComplex {
    let z = Presentation::free(Ring::Z, 1);
    ChainComplex::new(
        Ring::Z,
        k - 1,
        vec![Presentation::cyclic(Ring::Z, d), z.clone(), z],
        vec![IntMatrix::identity(1), IntMatrix::from_i64(1, 1, &[d])],
    )
    .expect("resolution complex")
}

/// `Z --d--> Z` in degrees `k, k-1`; not exact for `d != ±1`.
pub fn perturbed_disk(k: i64, d: i64) -> ChainComplex {
    let z = Presentation::free(Ring::Z, 1);
    ChainComplex::new(Ring::Z, k - 1, vec![z.clone(), z], vec![IntMatrix::from_i64(1, 1, &[d])])
        .expect("perturbed disk")
}

/// Indecomposable building blocks over `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// `D^top(Z)`.
    FreeDisk { top: i64 },
    /// `D^top(Z/d)`.
    TorsionDisk { top: i64, d: i64 },
    /// `resolution_complex(top - 1, d)`, occupying degrees `top..top-2`.
    Resolution { top: i64, d: i64 },
    /// `S^k(Z/d)`, or `S^k(Z)` for `d = 0`.
    Sphere { k: i64, d: i64 },
    /// `perturbed_disk(top, d)`.
    Perturbed { top: i64, d: i64 },
}

impl Piece {
    pub fn complex(&self) -> ChainComplex {
        match *self {
            Piece::FreeDisk { top } => ChainComplex::disk(top, &Presentation::free(Ring::Z, 1)),
            Piece::TorsionDisk { top, d } => ChainComplex::disk(top, &Presentation::cyclic(Ring::Z, d)),
            Piece::Resolution { top, d } => resolution_complex(top - 1, d),
            Piece::Sphere { k, d } => ChainComplex::sphere(k, &Presentation::cyclic(Ring::Z, d)),
            Piece::Perturbed { top, d } => perturbed_disk(top, d),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Piece::FreeDisk { top } => format!("D^{top}(Z)"),
            Piece::TorsionDisk { top, d } => format!("D^{top}(Z/{d})"),
            Piece::Resolution { top, d } => format!("T^{}({d})", top - 1),
            Piece::Sphere { k, d: 0 } => format!("S^{k}(Z)"),
            Piece::Sphere { k, d } => format!("S^{k}(Z/{d})"),
            Piece::Perturbed { top, d } => format!("D^{top}(Z, x{d})"),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Piece::Resolution { .. } => 3,
            Piece::Sphere { .. } => 1,
            _ => 2,
        }
    }

    /// Lies in the class of exact complexes with cycles of projective
    /// dimension at most `n`.
    pub fn in_class(&self, n: usize) -> bool {
        match self {
            Piece::FreeDisk { .. } => true,
            Piece::TorsionDisk { .. } | Piece::Resolution { .. } => n >= 1,
            Piece::Sphere { .. } | Piece::Perturbed { .. } => false,
        }
    }
}

const TORSION: [i64; 4] = [2, 3, 4, 6];

/// A random piece of the class for `n` with top degree in `window`.
pub fn random_piece(rng: &mut SampleRng, n: usize, window: (i64, i64)) -> Piece {
    let top = rng.gen_range(window.0..=window.1);
    let d = *TORSION.choose(rng).expect("nonempty");
    if n == 0 {
        return Piece::FreeDisk { top };
    }
    match rng.gen_range(0..3) {
        0 => Piece::FreeDisk { top },
        1 => Piece::TorsionDisk { top, d },
        _ => Piece::Resolution { top, d },
    }
}

/// Pieces of the class for `n` with total size at most `max_gens` (and at
/// least one piece).
pub fn random_pieces(rng: &mut SampleRng, n: usize, max_gens: usize, window: (i64, i64)) -> Vec<Piece> {
    let target = rng.gen_range(1..=max_gens.max(1));
    let mut out: Vec<Piece> = Vec::new();
    let mut size = 0;
    loop {
        let p = random_piece(rng, n, window);
        if !out.is_empty() && size + p.size() > target {
            break;
        }
        if out.is_empty() && p.size() > max_gens {
            continue;
        }
        size += p.size();
        out.push(p);
    }
    out
}

pub fn assemble(pieces: &[Piece]) -> ChainComplex {
    if pieces.is_empty() {
        return ChainComplex::zero(Ring::Z);
    }
    let cs: Vec<ChainComplex> = pieces.iter().map(Piece::complex).collect();
    let refs: Vec<&ChainComplex> = cs.iter().collect();
    ChainComplex::direct_sum(&refs).expect("same ring")
}

/// A random product of elementary matrices with entries in `{-1, 1}`,
/// returned with its inverse.
pub fn random_unimodular(rng: &mut SampleRng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);
    if n < 2 {
        return (u, v);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        // u <- E u with E = I + c e_ij ; v <- v E^{-1}.
        let mut e = IntMatrix::identity(n);
        e.set(i, j, int(c));
        let mut einv = IntMatrix::identity(n);
        einv.set(i, j, int(-c));
        u = e.mul(&u);
        v = v.mul(&einv);
    }
    (u, v)
}

/// An isomorphic copy of `x` under random unimodular changes of basis in
/// every degree, with the isomorphism `x -> copy`.
pub fn twist(rng: &mut SampleRng, x: &ChainComplex) -> (ChainComplex, ChainMap) {
    if x.size() == 0 {
        return (x.clone(), ChainMap::identity(x));
    }
    let mut us = BTreeMap::new();
    let mut vs = BTreeMap::new();
    for d in x.degrees() {
        let g = x.gens(d);
        let (u, v) = random_unimodular(rng, g, 2 * g);
        us.insert(d, u);
        vs.insert(d, v);
    }
    let comps: Vec<Presentation> = x
        .degrees()
        .map(|d| {
            let p = x.component(d);
            let rels = p.relations().mul(&us[&d].transpose());
            Presentation::new(Ring::Z, p.gens(), rels).expect("shape")
        })
        .collect();
    let bds: Vec<IntMatrix> = (x.min_deg() + 1..=x.max_deg())
        .map(|d| us[&(d - 1)].mul(&x.boundary_matrix(d)).mul(&vs[&d]))
        .collect();
    let y = ChainComplex::new(x.ring(), x.min_deg(), comps, bds).expect("twisted complex");
    let iso = ChainMap::new(x.clone(), y.clone(), us).expect("twist is a chain map");
    (y, iso)
}

/// Random member of the class for `n` with at most `max_gens` generators,
/// under a random change of basis.
pub fn random_in_class(rng: &mut SampleRng, n: usize, max_gens: usize, window: (i64, i64)) -> ChainComplex {
    let pieces = random_pieces(rng, n, max_gens, window);
    twist(rng, &assemble(&pieces)).0
}

/// Random complex outside the class for `n`: a sphere or a perturbed disk
/// (or, for `n = 0`, possibly a torsion piece) plus in-class padding.
pub fn random_out_of_class(rng: &mut SampleRng, n: usize, max_gens: usize, window: (i64, i64)) -> ChainComplex {
    let top = rng.gen_range(window.0..=window.1);
    let d = *TORSION.choose(rng).expect("nonempty");
    let bad = match (n, rng.gen_range(0..4)) {
        (_, 0) => Piece::Sphere { k: top, d: 0 },
        (_, 1) => Piece::Sphere { k: top, d },
        (0, 2) => Piece::Resolution { top, d },
        _ => Piece::Perturbed { top, d },
    };
    let mut pieces = vec![bad];
    if max_gens > bad.size() + 1 {
        pieces.extend(random_pieces(rng, n, max_gens - bad.size(), window));
    }
    pieces.shuffle(rng);
    twist(rng, &assemble(&pieces)).0
}

/// Any bounded complex built from pieces, spheres and perturbed disks.
pub fn random_bounded(rng: &mut SampleRng, max_gens: usize, window: (i64, i64)) -> ChainComplex {
    let target = rng.gen_range(1..=max_gens.max(1));
    let mut pieces = Vec::new();
    let mut size = 0;
    while size < target {
        let top = rng.gen_range(window.0..=window.1);
        let d = *TORSION.choose(rng).expect("nonempty");
        let p = match rng.gen_range(0..5) {
            0 => Piece::FreeDisk { top },
            1 => Piece::TorsionDisk { top, d },
            2 => Piece::Resolution { top, d },
            3 => Piece::Sphere { k: top, d: if rng.gen_bool(0.5) { 0 } else { d } },
            _ => Piece::Perturbed { top, d },
        };
        size += p.size();
        pieces.push(p);
    }
    twist(rng, &assemble(&pieces)).0
}

/// A bounded exact complex: disks and resolution pieces only.
pub fn random_exact(rng: &mut SampleRng, max_gens: usize, window: (i64, i64)) -> ChainComplex {
    random_in_class(rng, 1, max_gens, window)
}

/// Random finitely generated abelian group, with a twisted presentation.
pub fn random_module(rng: &mut SampleRng, max_gens: usize) -> Presentation {
    let g = rng.gen_range(1..=max_gens.max(1));
    let orders: Vec<Int> = (0..g)
        .map(|_| int(*[0, 1, 2, 3, 4, 6].choose(rng).expect("nonempty")))
        .collect();
    let p = Presentation::from_orders(Ring::Z, &orders);
    let (u, _) = random_unimodular(rng, g, g);
    Presentation::new(Ring::Z, g, p.relations().mul(&u.transpose())).expect("shape")
}

/// Random integer combination (coefficients in `-2..=2`) of generators of
/// the chain maps `x -> y`.
pub fn random_chain_map(rng: &mut SampleRng, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let gens = maps::chain_map_generators(x, y);
    let mut f = ChainMap::zero(x, y);
    for g in gens {
        let c = rng.gen_range(-2..=2);
        if c != 0 {
            f = f.add(&g.scale(c));
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_complexes() {
        let t = resolution_complex(0, 2);
        assert_eq!((t.min_deg(), t.max_deg()), (-1, 1));
        assert!(t.is_exact());
        assert!(!perturbed_disk(1, 2).is_exact());
        assert_eq!(Piece::Resolution { top: 1, d: 2 }.label(), "T^0(2)");
    }

    #[test]
    fn twists_are_isomorphisms() {
        let mut r = rng(7);
        for _ in 0..10 {
            let x = assemble(&random_pieces(&mut r, 1, 12, (-1, 2)));
            let (y, iso) = twist(&mut r, &x);
            assert!(iso.is_iso());
            assert_eq!(x.homology_all(), y.homology_all());
        }
    }

    #[test]
    fn class_generators() {
        let mut r = rng(11);
        for _ in 0..10 {
            let x = random_in_class(&mut r, 1, 15, (-1, 1));
            assert!(x.is_exact() && x.size() <= 15);
            let y = random_out_of_class(&mut r, 1, 10, (-1, 1));
            assert!(!y.is_exact());
        }
    }

    #[test]
    fn random_maps_are_chain_maps() {
        let mut r = rng(3);
        let x = random_bounded(&mut r, 5, (0, 1));
        let y = random_bounded(&mut r, 5, (0, 1));
        let f = random_chain_map(&mut r, &x, &y);
        assert!(f.validate().is_empty());
    }
}

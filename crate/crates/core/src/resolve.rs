//! Projective resolutions of complexes, membership in the classes of
//! n-projective complexes, Ext¹ in the category of complexes, and the
//! degreewise checks on exact sequences of exact complexes.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{ChainComplex, DiskSum};
use crate::error::{Error, Result};
use crate::fgmod::{self, FgAbInvariants, ModuleMap, Pd, Presentation, Ring};
use crate::linalg::{int, IntMatrix};
use crate::maps::{self, ChainMap};
use crate::samples;

/// A free disk-sum complex with its map to the previous stage.
#[derive(Clone, Debug)]
pub struct Stage {
    pub disks: DiskSum,
    pub complex: ChainComplex,
    /// `P^j -> P^{j-1}`, or `P^0 -> X` for the first stage.
    pub map: ChainMap,
}

/// `0 -> P^L -> ... -> P^0 -> X -> 0`.
#[derive(Clone, Debug)]
pub struct ResolutionTower {
    pub target: ChainComplex,
    pub stages: Vec<Stage>,
}

impl ResolutionTower {
    pub fn length(&self) -> usize {
        self.stages.len().saturating_sub(1)
    }

    /// Stages are free complexes and the assembled sequence is exact.
    pub fn verify(&self) -> bool {
        if self.stages.is_empty() {
            return false;
        }
        if !self.stages.iter().all(|s| s.complex.is_free_complex()) {
            return false;
        }
        let maps: Vec<ChainMap> = self.stages.iter().rev().map(|s| s.map.clone()).collect();
        maps::sequence_is_exact(&maps)
    }
}

/// Result of `resolve_complex`.
#[derive(Clone, Debug)]
pub enum ResolveOutcome {
    Tower(ResolutionTower),
    /// No tower of length at most `max_len`; `residual` is the last kernel,
    /// which is not a free complex.
    Exceeded {
        max_len: usize,
        residual: ChainComplex,
        partial: ResolutionTower,
    },
}

/// One disk `D^m(R)` per generator of `X_m`, ordered by degree descending
/// then generator index; the top of each disk maps to its generator.
pub fn projective_cover_complex(x: &ChainComplex) -> (DiskSum, ChainComplex, ChainMap) {
    let mut tops = Vec::new();
    let mut owner: Vec<(i64, usize)> = Vec::new();
    for d in x.degrees().rev() {
        for i in 0..x.gens(d) {
            tops.push(d);
            owner.push((d, i));
        }
    }
    let disks = DiskSum::new(x.ring(), tops);
    let p = disks.to_complex();
    let mut comps = BTreeMap::new();
    for d in p.degrees() {
        let slots = disks.slots(d);
        let mut m = IntMatrix::zeros(x.gens(d), slots.len());
        let bd = x.boundary_matrix(d + 1);
        for (j, &(disk, top)) in slots.iter().enumerate() {
            let (deg, idx) = owner[disk];
            if top {
                m.set(idx, j, int(1));
            } else {
                debug_assert_eq!(deg, d + 1);
                for r in 0..x.gens(d) {
                    m.set(r, j, bd.get(r, idx).clone());
                }
            }
        }
        comps.insert(d, m);
    }
    let eps = ChainMap::raw(p.clone(), x.clone(), comps);
    (disks, p, eps)
}

/// Iterated covers and kernels, stopping as soon as a kernel is itself a
/// free complex (which then becomes the last stage).
pub fn resolve_complex(x: &ChainComplex, max_len: usize) -> ResolveOutcome {
    let mut stages: Vec<Stage> = Vec::new();
    // Current complex to resolve, with its inclusion into the previous stage
    // (identity on X for the first step).
    let mut current = x.clone();
    let mut into_prev = ChainMap::identity(x);
    for j in 0..=max_len {
        if current.is_free_complex() {
            let dec = current.disk_decomposition().expect("free complex");
            let map = dec.iso.compose(&into_prev).expect("composable");
            stages.push(Stage {
                disks: dec.disks.clone(),
                complex: dec.disks.to_complex(),
                map,
            });
            return ResolveOutcome::Tower(ResolutionTower {
                target: x.clone(),
                stages,
            });
        }
        if j == max_len {
            break;
        }
        let (disks, p, eps) = projective_cover_complex(&current);
        let map = eps.compose(&into_prev).expect("composable");
        let (k, incl) = map.kernel_complex();
        stages.push(Stage {
            disks,
            complex: p,
            map,
        });
        current = k;
        into_prev = incl;
    }
    ResolveOutcome::Exceeded {
        max_len,
        residual: current,
        partial: ResolutionTower {
            target: x.clone(),
            stages,
        },
    }
}

/// Projective dimension of a complex, capped by `max_len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdComplex {
    Finite(usize),
    Exceeds(usize),
}

impl fmt::Display for PdComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdComplex::Finite(n) => write!(f, "{n}"),
            PdComplex::Exceeds(n) => write!(f, "exceeds {n}"),
        }
    }
}

/// Fast path: a complex has projective dimension ≤ n exactly when it is
/// exact with every cycle module of projective dimension ≤ n.
pub fn pd_complex(x: &ChainComplex, max_len: usize) -> PdComplex {
    if !x.is_exact() {
        return PdComplex::Exceeds(max_len);
    }
    let mut worst = 0;
    for d in x.degrees() {
        match fgmod::pd(&x.cycles(d).0) {
            Pd::Finite(k) => worst = worst.max(k),
            Pd::Infinite => return PdComplex::Exceeds(max_len),
        }
    }
    if worst <= max_len {
        PdComplex::Finite(worst)
    } else {
        PdComplex::Exceeds(max_len)
    }
}

/// Slow path: length of the tower built by `resolve_complex`.
pub fn pd_complex_by_tower(x: &ChainComplex, max_len: usize) -> PdComplex {
    match resolve_complex(x, max_len) {
        ResolveOutcome::Tower(t) => PdComplex::Finite(t.length()),
        ResolveOutcome::Exceeded { .. } => PdComplex::Exceeds(max_len),
    }
}

/// Exact with every `Z_m(X)` of projective dimension at most `n`.
pub fn in_tilde_pn(x: &ChainComplex, n: usize) -> bool {
    matches!(pd_complex(x, n), PdComplex::Finite(_))
}

/// `Hom_Ch(P, Y) ≅ ⊕_disks Y_top` for a disk sum `P`.
fn hom_disks(p: &DiskSum, y: &ChainComplex) -> Presentation {
    let parts: Vec<&Presentation> = p.tops().iter().map(|&t| y.component(t)).collect();
    Presentation::direct_sum_many(y.ring(), &parts).expect("same ring")
}

/// Matrix of `φ ↦ φ ∘ f` from `Hom(P0, Y)` to `Hom(P1, Y)` for a chain map
/// `f : P1 -> P0` between disk sums.
fn precompose(p1: &DiskSum, p0: &DiskSum, f: &ChainMap, y: &ChainComplex) -> IntMatrix {
    let off = |p: &DiskSum| {
        let mut o = Vec::with_capacity(p.len());
        let mut acc = 0;
        for &t in p.tops() {
            o.push(acc);
            acc += y.gens(t);
        }
        (o, acc)
    };
    let (o1, n1) = off(p1);
    let (o0, n0) = off(p0);
    let mut m = IntMatrix::zeros(n1, n0);
    for (j, &t) in p1.tops().iter().enumerate() {
        let (deg, slot) = p1.slot(j, true);
        debug_assert_eq!(deg, t);
        let col = f.component_matrix(t).col(slot);
        let gy = y.gens(t);
        for (k, &(i, top)) in p0.slots(t).iter().enumerate() {
            let a = &col[k];
            if a.is_zero() {
                continue;
            }
            let block = if top {
                IntMatrix::scalar(gy, a)
            } else {
                y.boundary_matrix(t + 1).scale(a)
            };
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        let cur = m.get(o1[j] + r, o0[i] + c) + v;
                        m.set(o1[j] + r, o0[i] + c, cur);
                    }
                }
            }
        }
    }
    m
}

/// Ext¹(X, Y) in the category of complexes, from a three-stage resolution
/// of `X` by disk sums.
pub fn ext1_complex(x: &ChainComplex, y: &ChainComplex) -> Result<FgAbInvariants> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch("complexes over different rings".into()));
    }
    let (d0, _, eps) = projective_cover_complex(x);
    let (k0, i0) = eps.kernel_complex();
    let (d1, _, e1) = projective_cover_complex(&k0);
    let f1 = e1.compose(&i0)?;
    let (k1, i1) = f1.kernel_complex();
    let (d2, _, e2) = projective_cover_complex(&k1);
    let f2 = e2.compose(&i1)?;
    let h0 = hom_disks(&d0, y);
    let h1 = hom_disks(&d1, y);
    let h2 = hom_disks(&d2, y);
    let a = ModuleMap::raw(h0, h1.clone(), precompose(&d1, &d0, &f1, y));
    let b = ModuleMap::raw(h1, h2, precompose(&d2, &d1, &f2, y));
    Ok(fgmod::homology_at(&a, &b)?.invariants())
}

/// Outcome of testing `Y` against a finite family of n-projective complexes.
#[derive(Clone, Debug)]
pub struct RightClassReport {
    pub n: usize,
    pub entries: Vec<(String, FgAbInvariants)>,
    pub consistent: bool,
    pub note: String,
}

/// Small members of the class of n-projective complexes placed in
/// `window`: disks on `Z`, and for `n >= 1` disks on `Z/2`, `Z/3` and the
/// three-term resolution complexes of `Z/2`.
pub fn default_family(n: usize, window: (i64, i64)) -> Vec<(String, ChainComplex)> {
    let z = Presentation::free(Ring::Z, 1);
    let mut out = Vec::new();
    for k in window.0..=window.1 + 1 {
        out.push((format!("D^{k}(Z)"), ChainComplex::disk(k, &z)));
    }
    if n >= 1 {
        for p in [2, 3] {
            let m = Presentation::cyclic(Ring::Z, p);
            for k in window.0..=window.1 + 1 {
                out.push((format!("D^{k}(Z/{p})"), ChainComplex::disk(k, &m)));
            }
        }
        for k in window.0..=window.1 {
            out.push((format!("T^{k}(2)"), samples::resolution_complex(k, 2)));
        }
    }
    out
}

/// Semi-decision for the right orthogonal class of the n-projective
/// complexes: reports `Ext¹(S, Y)` for each family member.
pub fn consistent_with_right_class(
    y: &ChainComplex,
    n: usize,
    family: &[(String, ChainComplex)],
) -> Result<RightClassReport> {
    let mut entries = Vec::new();
    for (label, s) in family {
        if !in_tilde_pn(s, n) {
            return Err(Error::Precondition(format!("family member {label} is not {n}-projective")));
        }
        entries.push((label.clone(), ext1_complex(s, y)?));
    }
    let consistent = entries.iter().all(|(_, e)| e.is_zero());
    Ok(RightClassReport {
        n,
        entries,
        consistent,
        note: "semi-decision: only the listed family was tested; the class quantifies over all n-projective complexes".into(),
    })
}

/// An exact sequence of complexes `0 -> C_0 -> C_1 -> ... -> C_k -> 0`,
/// `maps[i] : complexes[i] -> complexes[i + 1]`.
#[derive(Clone, Debug)]
pub struct ComplexSequence {
    pub complexes: Vec<ChainComplex>,
    pub maps: Vec<ChainMap>,
}

impl ComplexSequence {
    pub fn new(maps: Vec<ChainMap>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::Precondition("empty sequence".into()));
        };
        let mut complexes = vec![first.source().clone()];
        for m in &maps {
            complexes.push(m.target().clone());
        }
        Ok(ComplexSequence { complexes, maps })
    }

    pub fn is_exact(&self) -> bool {
        maps::sequence_is_exact(&self.maps)
    }
}

/// For an exact sequence whose terms except the last are exact complexes,
/// returns whether the last term is exact.
pub fn verify_lema1(seq: &ComplexSequence) -> Result<bool> {
    if !seq.is_exact() {
        return Err(Error::Precondition("sequence of complexes is not exact".into()));
    }
    let n = seq.complexes.len();
    if !seq.complexes[..n - 1].iter().all(|c| c.is_exact()) {
        return Err(Error::Precondition("a term other than the last is not exact".into()));
    }
    Ok(seq.complexes[n - 1].is_exact())
}

/// Degreewise cycle sequence of an exact sequence of exact complexes.
#[derive(Clone, Debug)]
pub struct CycleSequence {
    pub degree: i64,
    pub maps: Vec<ModuleMap>,
    pub exact: bool,
}

/// Restricts every map of the sequence to cycles and checks that
/// `0 -> Z_m(C_0) -> ... -> Z_m(C_k) -> 0` is exact in each degree.
pub fn verify_lema2(seq: &ComplexSequence) -> Result<Vec<CycleSequence>> {
    if !seq.is_exact() {
        return Err(Error::Precondition("sequence of complexes is not exact".into()));
    }
    if !seq.complexes.iter().all(|c| c.is_exact()) {
        return Err(Error::Precondition("every term must be an exact complex".into()));
    }
    let mut ds: Vec<i64> = seq.complexes.iter().flat_map(|c| c.degrees()).collect();
    ds.sort_unstable();
    ds.dedup();
    let mut out = Vec::new();
    for d in ds {
        let cyc: Vec<(Presentation, ModuleMap)> = seq.complexes.iter().map(|c| c.cycles(d)).collect();
        let mut restricted = Vec::new();
        for (i, f) in seq.maps.iter().enumerate() {
            let push = cyc[i].1.then(&f.component(d))?;
            let h = push
                .lift_through(&cyc[i + 1].1)
                .ok_or_else(|| Error::Precondition("chain map does not preserve cycles".into()))?;
            restricted.push(h);
        }
        let exact = match (restricted.first(), restricted.last()) {
            (Some(a), Some(b)) => a.is_injective() && b.is_surjective() && fgmod::is_exact_sequence(&restricted),
            _ => true,
        };
        out.push(CycleSequence {
            degree: d,
            maps: restricted,
            exact,
        });
    }
    Ok(out)
}

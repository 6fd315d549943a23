//! Hom, Ext¹, Tor₁, projectivity and projective dimension.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, int, Int, IntMatrix};

use super::{FgAbInvariants, ModuleMap, Presentation, Ring};

fn same_ring(m: &Presentation, n: &Presentation) -> Result<()> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", m.ring(), n.ring())));
    }
    Ok(())
}

/// `ker(alpha) / im(beta)` for `A --beta--> B --alpha--> C` with `alpha ∘ beta = 0`.
pub fn homology_at(beta: &ModuleMap, alpha: &ModuleMap) -> Result<Presentation> {
    if beta.target().gens() != alpha.source().gens() {
        return Err(Error::Dimension("maps are not composable".into()));
    }
    let comp = beta.then(alpha)?;
    if !comp.is_zero() {
        return Err(Error::Precondition("composite of consecutive maps is not zero".into()));
    }
    let (_, incl) = alpha.kernel();
    let lifted = beta
        .lift_through(&incl)
        .ok_or_else(|| Error::Precondition("image does not lie in the kernel".into()))?;
    Ok(lifted.cokernel().0)
}

/// Exactness of `M_0 -> M_1 -> ... -> M_k` at every interior term.
pub fn is_exact_sequence(maps: &[ModuleMap]) -> bool {
    maps.windows(2).all(|w| match homology_at(&w[0], &w[1]) {
        Ok(h) => h.is_zero_module(),
        Err(_) => false,
    })
}

/// `0 -> A --f--> B --g--> C -> 0` is exact.
pub fn is_short_exact(f: &ModuleMap, g: &ModuleMap) -> bool {
    f.is_injective() && g.is_surjective() && is_exact_sequence(&[f.clone(), g.clone()])
}

/// Hom(M, N) as the submodule of `N^gens(M)` of tuples killing every relation.
pub fn hom_presentation(m: &Presentation, n: &Presentation) -> Result<Presentation> {
    same_ring(m, n)?;
    let gn = n.gens();
    let src = n.power(m.gens());
    let rels = m.relations();
    let tgt = n.power(rels.rows());
    let phi = ModuleMap::raw(src, tgt, rels.kron(&IntMatrix::identity(gn)));
    Ok(phi.kernel().0)
}

pub fn hom(m: &Presentation, n: &Presentation) -> Result<FgAbInvariants> {
    Ok(hom_presentation(m, n)?.invariants())
}

/// Boundaries of a free resolution `F2 --d2--> F1 --d1--> F0 -> M`.
/// Over Z the resolution has length one and `d2` is empty.
fn resolution_maps(m: &Presentation) -> (IntMatrix, IntMatrix) {
    let rt = m.without_zero_relations().relations().transpose();
    match m.ring().modulus() {
        None => {
            let d1 = linalg::lattice_basis(&rt);
            let k = d1.cols();
            (d1, IntMatrix::zeros(k, 0))
        }
        Some(modulus) => {
            let d2 = linalg::kernel_basis(&rt, Some(&modulus)).expect("modulus");
            (rt, d2)
        }
    }
}

/// Ext¹(M, N) computed from a free resolution of `M`.
pub fn ext1_presentation(m: &Presentation, n: &Presentation) -> Result<Presentation> {
    same_ring(m, n)?;
    let (d1, d2) = resolution_maps(m);
    let gn = n.gens();
    let h0 = n.power(d1.rows());
    let h1 = n.power(d1.cols());
    let h2 = n.power(d2.cols());
    let delta0 = ModuleMap::raw(h0, h1.clone(), d1.transpose().kron(&IntMatrix::identity(gn)));
    let delta1 = ModuleMap::raw(h1, h2, d2.transpose().kron(&IntMatrix::identity(gn)));
    homology_at(&delta0, &delta1)
}

pub fn ext1(m: &Presentation, n: &Presentation) -> Result<FgAbInvariants> {
    Ok(ext1_presentation(m, n)?.invariants())
}

pub fn tor1(m: &Presentation, n: &Presentation) -> Result<FgAbInvariants> {
    same_ring(m, n)?;
    let (d1, d2) = resolution_maps(m);
    let gn = n.gens();
    let t2 = n.power(d2.cols());
    let t1 = n.power(d1.cols());
    let t0 = n.power(d1.rows());
    let a = ModuleMap::raw(t2, t1.clone(), d2.kron(&IntMatrix::identity(gn)));
    let b = ModuleMap::raw(t1, t0, d1.kron(&IntMatrix::identity(gn)));
    Ok(homology_at(&a, &b)?.invariants())
}

fn prime_powers(mut m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut q = 1;
            while m % p == 0 {
                m /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, m));
    }
    out
}

fn prime_part(d: &Int, p: u64) -> Int {
    let p = Int::from(p);
    let mut d = d.clone();
    let mut part = int(1);
    while !d.is_zero() && linalg::divides(&p, &d) {
        d = linalg::exact_div(&d, &p);
        part *= &p;
    }
    part
}

/// Over Z: free. Over Z/m: each p-primary part is free over Z/p^k, p^k ∥ m.
pub fn is_projective(m: &Presentation) -> bool {
    let inv = m.invariants();
    match m.ring() {
        Ring::Z => inv.torsion.is_empty(),
        Ring::Zmod(modulus) => prime_powers(modulus).into_iter().all(|(p, q)| {
            let full = Int::from(q);
            inv.torsion.iter().all(|t| {
                let part = prime_part(t, p);
                part == int(1) || part == full
            })
        }),
    }
}

/// Projective dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pd {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Pd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pd::Finite(n) => write!(f, "{n}"),
            Pd::Infinite => write!(f, "infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub pd: Pd,
    pub note: Option<String>,
}

/// Kernel of the free cover on the given generators.
pub fn syzygy(m: &Presentation) -> Presentation {
    let ring = m.ring();
    let rels = m.without_zero_relations();
    let r = rels.relations();
    let f1 = Presentation::free(ring, r.rows());
    let f0 = Presentation::free(ring, m.gens());
    let incl = ModuleMap::raw(f1, f0, r.transpose());
    incl.image().0
}

pub fn pd_report(m: &Presentation) -> PdReport {
    if is_projective(m) {
        return PdReport {
            pd: Pd::Finite(0),
            note: None,
        };
    }
    if m.ring() == Ring::Z {
        return PdReport {
            pd: Pd::Finite(1),
            note: None,
        };
    }
    // Syzygies of modules over Z/m: once an invariant type repeats, the
    // sequence cycles without reaching a projective module.
    let mut seen = vec![m.invariants()];
    let mut cur = m.simplify().module;
    for step in 1..=32 {
        let next = syzygy(&cur).simplify().module;
        if is_projective(&next) {
            return PdReport {
                pd: Pd::Finite(step),
                note: None,
            };
        }
        let inv = next.invariants();
        if let Some(pos) = seen.iter().position(|s| *s == inv) {
            return PdReport {
                pd: Pd::Infinite,
                note: Some(format!(
                    "syzygy {step} repeats the type of syzygy {pos} ({inv}); the resolution never terminates"
                )),
            };
        }
        seen.push(inv);
        cur = next;
    }
    PdReport {
        pd: Pd::Infinite,
        note: Some("no projective syzygy within 32 steps".into()),
    }
}

pub fn pd(m: &Presentation) -> Pd {
    pd_report(m).pd
}

/// `0 -> Z^f1 --boundary--> Z^f0 -> M -> 0`, `F0` free on the given generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    pub f0: usize,
    pub f1: usize,
    pub boundary: IntMatrix,
}

pub fn free_resolution(m: &Presentation) -> Result<FreeResolution> {
    if m.ring() != Ring::Z {
        return Err(Error::Precondition("free resolutions of length one exist over Z only".into()));
    }
    let (d1, _) = resolution_maps(m);
    Ok(FreeResolution {
        f0: d1.rows(),
        f1: d1.cols(),
        boundary: d1,
    })
}

//! Tensor products of complexes and the quotient-by-boundaries product.

use std::collections::BTreeMap;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::fgmod::{FgAbInvariants, Presentation, Ring};
use crate::linalg::IntMatrix;
use crate::model::{self, Verdict};
use crate::samples;

/// Position of `X_k ⊗ Y_{n-k}` inside `(X ⊗ Y)_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub k: i64,
    pub offset: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub result: ChainComplex,
    /// Blocks of each degree, in ascending `k`.
    pub summand_index: BTreeMap<i64, Vec<Block>>,
}

/// `(X ⊗ Y)_n = ⊕_k X_k ⊗ Y_{n-k}` with `∂(x ⊗ y) = ∂x ⊗ y + (-1)^k x ⊗ ∂y`.
pub fn tensor(x: &ChainComplex, y: &ChainComplex) -> Result<TensorComplex> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch("tensor of complexes over different rings".into()));
    }
    let ring = x.ring();
    if x.size() == 0 || y.size() == 0 {
        return Ok(TensorComplex {
            result: ChainComplex::zero(ring),
            summand_index: BTreeMap::new(),
        });
    }
    let (lo, hi) = (x.min_deg() + y.min_deg(), x.max_deg() + y.max_deg());
    let mut index = BTreeMap::new();
    let mut comps = Vec::new();
    for n in lo..=hi {
        let mut blocks = Vec::new();
        let mut parts = Vec::new();
        let mut offset = 0;
        for k in x.degrees() {
            if !y.in_window(n - k) {
                continue;
            }
            let p = x.component(k).tensor(y.component(n - k))?;
            blocks.push(Block { k, offset, len: p.gens() });
            offset += p.gens();
            parts.push(p);
        }
        let refs: Vec<&Presentation> = parts.iter().collect();
        comps.push(Presentation::direct_sum_many(ring, &refs)?);
        index.insert(n, blocks);
    }
    let mut bds = Vec::new();
    for n in lo + 1..=hi {
        let (src, tgt) = (&index[&n], &index[&(n - 1)]);
        let rows: usize = tgt.iter().map(|b| b.len).sum();
        let cols: usize = src.iter().map(|b| b.len).sum();
        let mut m = IntMatrix::zeros(rows, cols);
        for b in src {
            let k = b.k;
            let (gx, gy) = (x.gens(k), y.gens(n - k));
            if let Some(t) = tgt.iter().find(|t| t.k == k - 1) {
                m.set_block(t.offset, b.offset, &x.boundary_matrix(k).kron(&IntMatrix::identity(gy)));
            }
            if let Some(t) = tgt.iter().find(|t| t.k == k) {
                let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                let part = IntMatrix::identity(gx)
                    .kron(&y.boundary_matrix(n - k))
                    .scale(&crate::linalg::int(sign));
                m.set_block(t.offset, b.offset, &part);
            }
        }
        bds.push(m);
    }
    let result = ChainComplex::new(ring, lo, comps, bds)?;
    Ok(TensorComplex { result, summand_index: index })
}

/// `(X ⊗̄ Y)_n = (X ⊗ Y)_n / B_n(X ⊗ Y)` with the differential induced by
/// `x ⊗ y ↦ ∂x ⊗ y`.
pub fn bar_tensor(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    let t = tensor(x, y)?;
    let tc = &t.result;
    if tc.size() == 0 {
        return Ok(tc.clone());
    }
    let comps: Vec<Presentation> = tc
        .degrees()
        .map(|n| tc.component(n).with_relations(&tc.boundary_matrix(n + 1)))
        .collect::<Result<_>>()?;
    let mut bds = Vec::new();
    for n in tc.min_deg() + 1..=tc.max_deg() {
        let (src, tgt) = (&t.summand_index[&n], &t.summand_index[&(n - 1)]);
        let rows: usize = tgt.iter().map(|b| b.len).sum();
        let cols: usize = src.iter().map(|b| b.len).sum();
        let mut m = IntMatrix::zeros(rows, cols);
        for b in src {
            if let Some(tb) = tgt.iter().find(|tb| tb.k == b.k - 1) {
                let gy = y.gens(n - b.k);
                m.set_block(tb.offset, b.offset, &x.boundary_matrix(b.k).kron(&IntMatrix::identity(gy)));
            }
        }
        bds.push(m);
    }
    ChainComplex::new(tc.ring(), tc.min_deg(), comps, bds)
}

/// Component groups, boundary matrices and homology of one product.
#[derive(Clone, Debug)]
pub struct ProductReport {
    pub name: String,
    pub complex: ChainComplex,
    pub components: Vec<(i64, FgAbInvariants)>,
    pub boundaries: Vec<(i64, IntMatrix)>,
    pub homology: Vec<(i64, FgAbInvariants)>,
    pub exact: bool,
}

impl ProductReport {
    fn new(name: &str, c: ChainComplex) -> Self {
        let components = c.degrees().map(|d| (d, c.component(d).invariants())).collect();
        let boundaries = (c.min_deg() + 1..=c.max_deg()).map(|d| (d, c.boundary_matrix(d))).collect();
        let homology = c.homology_all();
        let exact = homology.iter().all(|(_, h)| h.is_zero());
        ProductReport {
            name: name.into(),
            complex: c,
            components,
            boundaries,
            homology,
            exact,
        }
    }

    /// Whether the boundary out of degree `d` is zero as a map of modules.
    pub fn boundary_is_zero(&self, d: i64) -> bool {
        self.complex.boundary(d).is_zero()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (d, g) in self.components.iter().filter(|(_, g)| !g.is_zero()) {
            out.push(format!("{} degree {d}: {g}", self.name));
        }
        let nonzero = |d: i64| !self.complex.component(d).is_zero_module();
        for (d, m) in self.boundaries.iter().filter(|(d, _)| nonzero(*d) && nonzero(*d - 1)) {
            let zero = if self.boundary_is_zero(*d) { " (zero map)" } else { "" };
            out.push(format!("{} boundary {d}: {m:?}{zero}", self.name));
        }
        for (d, h) in &self.homology {
            if !h.is_zero() {
                out.push(format!("{} H_{d} = {h}", self.name));
            }
        }
        out.push(format!("{} exact: {}", self.name, if self.exact { "yes" } else { "no" }));
        out
    }
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub n: usize,
    /// `S⁰(Z/2)` for `n >= 1`, `D¹(Z)` for the `n = 0` control.
    pub cofibrant: ChainComplex,
    pub x: ChainComplex,
    pub cofibration: Verdict,
    pub trivial_cofibration: Verdict,
    pub tensor: ProductReport,
    pub bar: ProductReport,
    pub axiom_fails: bool,
}

impl CounterexampleReport {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("n = {}", self.n),
            format!("0 -> A: cofibration {}", self.cofibration),
            format!("0 -> X: trivial cofibration {}", self.trivial_cofibration),
        ];
        out.extend(self.tensor.lines());
        out.extend(self.bar.lines());
        out.push(if self.axiom_fails {
            "pushout-product axiom: FAILS for ⊗ and ⊗̄".to_string()
        } else {
            "pushout-product axiom: no failure on this control".to_string()
        });
        out
    }
}

/// For `n >= 1`: `0 -> S⁰(Z/2)` is a cofibration and `0 -> X` a trivial
/// cofibration for `X = Z --2--> Z --> Z/2`, yet neither product of the two
/// is exact. For `n = 0` the same products are formed with `D¹(Z)` instead.
pub fn counterexample_report(n: usize) -> Result<CounterexampleReport> {
    let x = samples::resolution_complex(0, 2);
    let a = if n == 0 {
        ChainComplex::disk(1, &Presentation::free(Ring::Z, 1))
    } else {
        ChainComplex::sphere(0, &Presentation::cyclic(Ring::Z, 2))
    };
    let zero = ChainComplex::zero(Ring::Z);
    let cof = model::classify(&crate::maps::ChainMap::zero(&zero, &a), n)?;
    let tcof = model::classify(&crate::maps::ChainMap::zero(&zero, &x), n)?;
    let trivial_cofibration = tcof.trivial_cofibration;
    let tensor = ProductReport::new("⊗", tensor(&a, &x)?.result);
    let bar = ProductReport::new("⊗̄", bar_tensor(&a, &x)?);
    let axiom_fails = n >= 1
        && cof.cofibration != Verdict::No
        && trivial_cofibration == Verdict::Yes
        && !tensor.exact
        && !bar.exact;
    Ok(CounterexampleReport {
        n,
        cofibrant: a,
        x,
        cofibration: cof.cofibration,
        trivial_cofibration,
        tensor,
        bar,
        axiom_fails,
    })
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

    #[test]
    fn sphere_times_resolution() {
        let t = tensor(&ChainComplex::sphere(0, &z2()), &samples::resolution_complex(0, 2)).unwrap();
        let c = &t.result;
        assert_eq!((c.min_deg(), c.max_deg()), (-1, 1));
        for d in -1..=1 {
            assert_eq!(c.component(d).invariants().torsion, vec![int(2)]);
        }
        assert!(c.boundary(1).is_zero());
        assert_eq!(c.homology(1).torsion, vec![int(2)]);
    }

    #[test]
    fn unit_laws() {
        let x = samples::resolution_complex(0, 3);
        let s = ChainComplex::sphere(0, &z());
        for t in [tensor(&x, &s).unwrap().result, tensor(&s, &x).unwrap().result] {
            assert_eq!((t.min_deg(), t.max_deg()), (x.min_deg(), x.max_deg()));
            for d in x.degrees() {
                assert_eq!(t.boundary_matrix(d), x.boundary_matrix(d));
                assert_eq!(t.component(d).invariants(), x.component(d).invariants());
            }
        }
    }

    #[test]
    fn disk_squared() {
        let d = ChainComplex::disk(1, &z());
        let t = tensor(&d, &d).unwrap();
        let c = &t.result;
        assert_eq!((c.min_deg(), c.max_deg()), (0, 2));
        assert_eq!([c.gens(2), c.gens(1), c.gens(0)], [1, 2, 1]);
        assert!(c.is_exact());
        assert_eq!(t.summand_index[&1].iter().map(|b| b.k).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn bar_products() {
        let b = bar_tensor(&ChainComplex::sphere(0, &z2()), &samples::resolution_complex(0, 2)).unwrap();
        assert_eq!(b.component(1).invariants().torsion, vec![int(2)]);
        assert_eq!(b.component(0).invariants().torsion, vec![int(2)]);
        assert!(b.component(-1).is_zero_module());
        assert!(b.boundary(1).is_zero() && b.boundary(0).is_zero());
        assert!(!b.is_exact());
        assert_eq!(bar_tensor(&ChainComplex::zero(Ring::Z), &b).unwrap().size(), 0);
        // B_0 = ℤ kills the bottom of the disk.
        let c = bar_tensor(&ChainComplex::disk(1, &z()), &ChainComplex::sphere(0, &z())).unwrap();
        assert_eq!(c.component(1).invariants().free_rank, 1);
        assert!(c.component(0).is_zero_module());
    }

    #[test]
    fn contractible_factor_gives_exact_products() {
        let mut r = samples::rng(9);
        let d = ChainComplex::disk(1, &z());
        for _ in 0..5 {
            let y = samples::random_bounded(&mut r, 5, (-1, 1));
            assert!(tensor(&d, &y).unwrap().result.is_exact());
        }
    }

    #[test]
    fn counterexample() {
        let r = counterexample_report(1).unwrap();
        assert!(r.axiom_fails);
        let nonzero: Vec<_> = r.tensor.homology.iter().filter(|(_, h)| !h.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!((nonzero[0].0, nonzero[0].1.to_string()), (1, "Z/2".to_string()));
        assert_eq!(r.lines().last().unwrap(), "pushout-product axiom: FAILS for ⊗ and ⊗̄");
        let c = counterexample_report(0).unwrap();
        assert!(!c.axiom_fails && c.tensor.exact);
    }
}

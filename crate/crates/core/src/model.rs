//! Classes of maps in the n-projective model structure on complexes over Z,
//! the generating families, lifting problems and the mapping cylinder.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::fgmod::{self, Pd, Presentation, Ring};
use crate::linalg::IntMatrix;
use crate::linalg::MatrixSystem;
use crate::maps::{self, ChainMap};
use crate::resolve;

/// `consistent-with-family` is a semi-decision: no member of the finite
/// family refutes membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    ConsistentWithFamily(Vec<String>),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("yes"),
            Verdict::No => f.write_str("no"),
            Verdict::ConsistentWithFamily(_) => f.write_str("consistent-with-family"),
        }
    }
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

#[derive(Clone, Debug)]
pub struct MapClassification {
    pub n: usize,
    pub mono: bool,
    pub epi: bool,
    pub weak_equiv: bool,
    pub cofibration: Verdict,
    pub trivial_cofibration: Verdict,
    pub fibration: Verdict,
    pub trivial_fibration: Verdict,
    pub evidence: Vec<String>,
}

fn degreewise_pd_at_most(c: &ChainComplex, n: usize) -> Option<i64> {
    c.degrees().find(|&d| match fgmod::pd(c.component(d)) {
        Pd::Finite(k) => k > n,
        Pd::Infinite => true,
    })
}

/// Disks used to probe the nullhomotopy condition on cokernels.
fn probe_disks(window: (i64, i64)) -> Vec<(String, ChainComplex)> {
    let mut out = Vec::new();
    for (label, m) in [
        ("Z", Presentation::free(Ring::Z, 1)),
        ("Z/2", Presentation::cyclic(Ring::Z, 2)),
        ("Z/3", Presentation::cyclic(Ring::Z, 3)),
    ] {
        for k in window.0..=window.1 + 1 {
            out.push((format!("D^{k}({label})"), ChainComplex::disk(k, &m)));
        }
    }
    out
}

/// Cofibrations are monos with cokernel in dgP̃ₙ, trivial cofibrations
/// monos with cokernel in P̃ₙ, fibrations epis with kernel in the right
/// orthogonal of P̃ₙ, trivial fibrations epis with exact kernel whose cycles
/// are right orthogonal to Pₙ.
pub fn classify(f: &ChainMap, n: usize) -> Result<MapClassification> {
    let bad = f.validate();
    if !bad.is_empty() {
        return Err(Error::InvalidChainMap(bad.join("; ")));
    }
    if f.source().ring() != Ring::Z {
        return Err(Error::Precondition("model structure is implemented over Z".into()));
    }
    let mono = f.is_mono();
    let epi = f.is_epi();
    let weak_equiv = f.is_quasi_iso();
    let mut evidence = vec![
        format!("mono: {mono}"),
        format!("epi: {epi}"),
        format!("quasi-isomorphism: {weak_equiv}"),
    ];

    let (coker, _) = f.cokernel_complex();
    let coker_in_class = resolve::in_tilde_pn(&coker, n);
    evidence.push(format!("cokernel in P̃_{n}: {coker_in_class}"));
    let trivial_cofibration = Verdict::from_bool(mono && coker_in_class);
    let cofibration = if !mono {
        Verdict::No
    } else if coker_in_class {
        Verdict::Yes
    } else if let Some(d) = degreewise_pd_at_most(&coker, n) {
        evidence.push(format!("cokernel component in degree {d} has projective dimension above {n}"));
        Verdict::No
    } else if n == 0 {
        evidence.push("cokernel is bounded and degreewise projective".into());
        Verdict::Yes
    } else {
        let window = if coker.size() == 0 { (0, 0) } else { (coker.min_deg(), coker.max_deg()) };
        let mut labels = Vec::new();
        let mut refuted = None;
        for (label, e) in probe_disks(window) {
            for g in maps::chain_map_generators(&coker, &e) {
                if maps::is_nullhomotopic(&g).is_none() {
                    refuted = Some(label.clone());
                }
            }
            labels.push(label);
        }
        match refuted {
            Some(l) => {
                evidence.push(format!("map into {l} is not nullhomotopic"));
                Verdict::No
            }
            None => {
                evidence.push(format!(
                    "cokernel degreewise in P_{n}; every map into {} probe disks is nullhomotopic",
                    labels.len()
                ));
                Verdict::ConsistentWithFamily(labels)
            }
        }
    };

    let (ker, _) = f.kernel_complex();
    let ker_zero = ker.degrees().all(|d| ker.component(d).is_zero_module());
    let (fibration, trivial_fibration) = if !epi {
        (Verdict::No, Verdict::No)
    } else if n == 0 {
        evidence.push("n = 0: every complex is right orthogonal to the projective complexes".into());
        (Verdict::Yes, Verdict::from_bool(ker.is_exact()))
    } else {
        if !ker_zero {
            let family = resolve::default_family(n, (ker.min_deg(), ker.max_deg()));
            let report = resolve::consistent_with_right_class(&ker, n, &family)?;
            for (label, e) in report.entries.iter().filter(|(_, e)| !e.is_zero()) {
                evidence.push(format!("Ext¹({label}, kernel) = {e}"));
            }
            evidence.push(format!(
                "kernel has a nonzero finitely generated component, which is not injective over Z (required for n = {n} >= 1)"
            ));
        }
        (Verdict::from_bool(ker_zero), Verdict::from_bool(ker_zero))
    };

    Ok(MapClassification {
        n,
        mono,
        epi,
        weak_equiv,
        cofibration,
        trivial_cofibration,
        fibration,
        trivial_fibration,
        evidence,
    })
}

/// A labelled family of monomorphisms.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub label: String,
    pub maps: Vec<(String, ChainMap)>,
}

fn disk_inclusions(window: (i64, i64)) -> Vec<(String, ChainMap)> {
    let z = Presentation::free(Ring::Z, 1);
    let zero = ChainComplex::zero(Ring::Z);
    (window.0..=window.1)
        .map(|k| (format!("0 -> D^{k}(Z)"), ChainMap::zero(&zero, &ChainComplex::disk(k, &z))))
        .collect()
}

/// `I` and `J` over a degree window, from sample modules of projective
/// dimension at most `n` with their free presentations
/// `0 -> Y_S --k_S--> Z_S -> S -> 0`.
pub fn generating_sets(n: usize, window: (i64, i64), sample_modules: &[Presentation]) -> Result<(GeneratingSet, GeneratingSet)> {
    let z = Presentation::free(Ring::Z, 1);
    for s in sample_modules {
        if s.ring() != Ring::Z {
            return Err(Error::Precondition("sample modules must be over Z".into()));
        }
        if !matches!(fgmod::pd(s), Pd::Finite(k) if k <= n) {
            return Err(Error::Precondition(format!("sample {} has projective dimension above {n}", s.invariants())));
        }
    }
    let mut i_maps = disk_inclusions(window);
    for k in window.0..=window.1 {
        let s = ChainComplex::sphere(k - 1, &z);
        let d = ChainComplex::disk(k, &z);
        let m = ChainMap::new(s, d, BTreeMap::from([(k - 1, IntMatrix::identity(1))]))?;
        i_maps.push((format!("S^{}(Z) -> D^{k}(Z)", k - 1), m));
    }
    for s in sample_modules {
        let res = fgmod::free_resolution(s)?;
        for k in window.0..=window.1 {
            let y = ChainComplex::sphere(k, &Presentation::free(Ring::Z, res.f1));
            let zc = ChainComplex::sphere(k, &Presentation::free(Ring::Z, res.f0));
            let m = ChainMap::new(y, zc, BTreeMap::from([(k, res.boundary.clone())]))?;
            i_maps.push((format!("S^{k}(k_S) for S = {}", s.invariants()), m));
        }
    }
    let mut j_maps = disk_inclusions(window);
    for s in sample_modules {
        for k in window.0..=window.1 {
            let target = ChainComplex::disk(k, s);
            let (_, _, eps) = resolve::projective_cover_complex(&target);
            let (_, incl) = eps.kernel_complex();
            j_maps.push((format!("K -> P for D^{k}({})", s.invariants()), incl));
        }
    }
    for (label, m) in i_maps.iter().chain(&j_maps) {
        if !m.is_mono() {
            return Err(Error::InvalidChainMap(format!("generating map {label} is not a monomorphism")));
        }
    }
    Ok((
        GeneratingSet { label: "I".into(), maps: i_maps },
        GeneratingSet { label: "J".into(), maps: j_maps },
    ))
}

/// ```text
/// A --u--> C
/// |i       |p
/// B --v--> D
/// ```
#[derive(Clone, Debug)]
pub struct LiftingSquare {
    pub i: ChainMap,
    pub p: ChainMap,
    pub u: ChainMap,
    pub v: ChainMap,
}

/// A diagonal `d : B -> C` with `d ∘ i = u` and `p ∘ d = v`, if one exists.
pub fn verify_lifting(sq: &LiftingSquare) -> Result<Option<ChainMap>> {
    let (a, b) = (sq.i.source(), sq.i.target());
    let (c, d) = (sq.p.source(), sq.p.target());
    let left = sq.i.compose(&sq.v)?;
    let right = sq.u.compose(&sq.p)?;
    if !left.equals(&right) {
        return Err(Error::Precondition("square does not commute".into()));
    }
    let mut ds: Vec<i64> = b.degrees().chain(c.degrees()).collect();
    ds.sort_unstable();
    ds.dedup();
    let mut sys = MatrixSystem::new();
    let mut vars = BTreeMap::new();
    for &m in &ds {
        if b.gens(m) > 0 && c.gens(m) > 0 {
            vars.insert(m, sys.var(c.gens(m), b.gens(m)));
        }
    }
    let lat = |x: &ChainComplex, m: i64| x.component(m).relation_lattice().clone();
    for &m in &ds {
        // ∂^C d_m = d_{m-1} ∂^B.
        let (gc, gb) = (c.gens(m - 1), b.gens(m));
        if gc > 0 && gb > 0 {
            let mut terms = Vec::new();
            if let Some(&x) = vars.get(&m) {
                terms.push((x, c.boundary_matrix(m), IntMatrix::identity(gb)));
            }
            if let Some(&x) = vars.get(&(m - 1)) {
                terms.push((x, IntMatrix::identity(gc).neg(), b.boundary_matrix(m)));
            }
            if !terms.is_empty() {
                sys.equation(terms, IntMatrix::zeros(gc, gb), Some(lat(c, m - 1)));
            }
        }
    }
    for (&m, &x) in &vars {
        let rels = b.component(m).without_zero_relations();
        if rels.relations().rows() > 0 {
            let gc = c.gens(m);
            sys.equation(
                vec![(x, IntMatrix::identity(gc), rels.relations().transpose())],
                IntMatrix::zeros(gc, rels.relations().rows()),
                Some(lat(c, m)),
            );
        }
    }
    let mut all: Vec<i64> = ds.clone();
    all.extend(a.degrees());
    all.extend(d.degrees());
    all.sort_unstable();
    all.dedup();
    for &m in &all {
        // d_m i_m = u_m in C_m.
        if c.gens(m) > 0 && a.gens(m) > 0 {
            let terms = vars
                .get(&m)
                .map(|&x| vec![(x, IntMatrix::identity(c.gens(m)), sq.i.component_matrix(m))])
                .unwrap_or_default();
            let rhs = sq.u.component_matrix(m);
            if terms.is_empty() {
                if !c.component(m).columns_zero(&rhs) {
                    return Ok(None);
                }
            } else {
                sys.equation(terms, rhs, Some(lat(c, m)));
            }
        }
        // p_m d_m = v_m in D_m.
        if d.gens(m) > 0 && b.gens(m) > 0 {
            let terms = vars
                .get(&m)
                .map(|&x| vec![(x, sq.p.component_matrix(m), IntMatrix::identity(b.gens(m)))])
                .unwrap_or_default();
            let rhs = sq.v.component_matrix(m);
            if terms.is_empty() {
                if !d.component(m).columns_zero(&rhs) {
                    return Ok(None);
                }
            } else {
                sys.equation(terms, rhs, Some(lat(d, m)));
            }
        }
    }
    let Some(sol) = sys.solve() else { return Ok(None) };
    let comps = vars.iter().map(|(&m, &x)| (m, sol[x].clone())).collect();
    let diag = ChainMap::new(b.clone(), c.clone(), comps)?;
    debug_assert!(sq.i.compose(&diag)?.equals(&sq.u) && diag.compose(&sq.p)?.equals(&sq.v));
    Ok(Some(diag))
}

/// `X --i--> Cyl(f) --p--> Y` with `p ∘ i = f`, `i` a degreewise split
/// monomorphism and `p` a homotopy equivalence. Demo plumbing only; it is
/// not a factorization in the n-projective model structure.
#[derive(Clone, Debug)]
pub struct MappingCylinder {
    pub cylinder: ChainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `Cyl_m = X_m ⊕ X_{m-1} ⊕ Y_m`, `∂(x, c, y) = (∂x - c, -∂c, ∂y + f(c))`.
pub fn mapping_cylinder(f: &ChainMap) -> Result<MappingCylinder> {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let mut ds: Vec<i64> = x.degrees().chain(y.degrees()).chain(x.degrees().map(|d| d + 1)).collect();
    ds.sort_unstable();
    ds.dedup();
    let mut comps = BTreeMap::new();
    for &m in &ds {
        let p = Presentation::direct_sum_many(ring, &[x.component(m), x.component(m - 1), y.component(m)])?;
        comps.insert(m, p);
    }
    let mut bds = BTreeMap::new();
    for &m in &ds {
        if !comps.contains_key(&(m - 1)) {
            continue;
        }
        let (a0, c0, y0) = (x.gens(m), x.gens(m - 1), y.gens(m));
        let (a1, c1, y1) = (x.gens(m - 1), x.gens(m - 2), y.gens(m - 1));
        let mut b = IntMatrix::zeros(a1 + c1 + y1, a0 + c0 + y0);
        b.set_block(0, 0, &x.boundary_matrix(m));
        b.set_block(0, a0, &IntMatrix::identity(c0).neg());
        b.set_block(a1, a0, &x.boundary_matrix(m - 1).neg());
        b.set_block(a1 + c1, a0, &f.component_matrix(m - 1));
        b.set_block(a1 + c1, a0 + c0, &y.boundary_matrix(m));
        bds.insert(m, b);
    }
    let cyl = ChainComplex::from_degree_maps(ring, &comps, &bds)?;
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for &m in &ds {
        let (a0, c0, y0) = (x.gens(m), x.gens(m - 1), y.gens(m));
        let mut i = IntMatrix::zeros(a0 + c0 + y0, a0);
        i.set_block(0, 0, &IntMatrix::identity(a0));
        inc.insert(m, i);
        let mut p = IntMatrix::zeros(y0, a0 + c0 + y0);
        p.set_block(0, 0, &f.component_matrix(m));
        p.set_block(0, a0 + c0, &IntMatrix::identity(y0));
        proj.insert(m, p);
    }
    let inclusion = ChainMap::new(x.clone(), cyl.clone(), inc)?;
    let projection = ChainMap::new(cyl.clone(), y.clone(), proj)?;
    Ok(MappingCylinder {
        cylinder: cyl,
        inclusion,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn z() -> Presentation {
        Presentation::free(Ring::Z, 1)
    }

    fn z2() -> Presentation {
        Presentation::cyclic(Ring::Z, 2)
    }

    fn zero() -> ChainComplex {
        ChainComplex::zero(Ring::Z)
    }

    #[test]
    fn classification_examples() {
        let x = samples::resolution_complex(0, 2);
        let c = classify(&ChainMap::zero(&zero(), &x), 1).unwrap();
        assert_eq!(c.trivial_cofibration, Verdict::Yes);
        assert_eq!(c.cofibration, Verdict::Yes);
        assert!(c.weak_equiv);

        let s = ChainComplex::sphere(0, &z2());
        let c = classify(&ChainMap::zero(&zero(), &s), 1).unwrap();
        assert!(matches!(c.cofibration, Verdict::ConsistentWithFamily(_)));
        assert_eq!(c.trivial_cofibration, Verdict::No);
        assert!(!c.weak_equiv);
        assert_eq!(classify(&ChainMap::zero(&zero(), &s), 0).unwrap().cofibration, Verdict::No);

        let c = classify(&ChainMap::zero(&x, &zero()), 1).unwrap();
        assert!(c.epi && c.weak_equiv);
        assert_eq!(c.fibration, Verdict::No);
        let c = classify(&ChainMap::zero(&x, &zero()), 0).unwrap();
        assert_eq!((c.fibration, c.trivial_fibration), (Verdict::Yes, Verdict::Yes));
    }

    #[test]
    fn generating_set_examples() {
        let (i, j) = generating_sets(1, (-1, 1), &[z2()]).unwrap();
        let labels = |g: &GeneratingSet| g.maps.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>();
        let (li, lj) = (labels(&i), labels(&j));
        assert!(lj.contains(&"0 -> D^0(Z)".to_string()) && lj.contains(&"0 -> D^1(Z)".to_string()));
        assert!(li.contains(&"S^0(Z) -> D^1(Z)".to_string()));
        let ks = i.maps.iter().find(|(l, _)| l == "S^0(k_S) for S = Z/2").unwrap();
        assert_eq!(ks.1.component_matrix(0), IntMatrix::from_i64(1, 1, &[2]));
        for (_, m) in j.maps.iter().skip(3) {
            let c = classify(m, 1).unwrap();
            assert_eq!(c.trivial_cofibration, Verdict::Yes);
        }
        let (i, _) = generating_sets(1, (0, 1), &[]).unwrap();
        assert_eq!(i.maps.len(), 4);
        assert!(generating_sets(0, (0, 0), &[z2()]).is_err());
    }

    #[test]
    fn lifting_examples() {
        let d1 = ChainComplex::disk(1, &z());
        let x = samples::resolution_complex(0, 2);
        let (_, p, eps) = resolve::projective_cover_complex(&x);
        let i = ChainMap::zero(&zero(), &d1);
        let v = ChainMap::new(d1.clone(), x.clone(), BTreeMap::from([(1, IntMatrix::identity(1)), (0, IntMatrix::from_i64(1, 1, &[2]))])).unwrap();
        let sq = LiftingSquare { i, p: eps, u: ChainMap::zero(&zero(), &p), v };
        let diag = verify_lifting(&sq).unwrap().unwrap();
        assert!(diag.compose(&sq.p).unwrap().equals(&sq.v));

        let id = ChainMap::identity(&x);
        let sq = LiftingSquare { i: id.clone(), p: id.clone(), u: id.clone(), v: id.clone() };
        assert!(verify_lifting(&sq).unwrap().unwrap().equals(&id));

        let s2 = ChainComplex::sphere(0, &z2());
        let sz = ChainComplex::sphere(0, &z());
        let pi = ChainMap::new(sz.clone(), s2.clone(), BTreeMap::from([(0, IntMatrix::identity(1))])).unwrap();
        let sq = LiftingSquare {
            i: ChainMap::zero(&zero(), &s2),
            p: pi,
            u: ChainMap::zero(&zero(), &sz),
            v: ChainMap::identity(&s2),
        };
        assert!(verify_lifting(&sq).unwrap().is_none());
    }

    #[test]
    fn cylinder() {
        let x = samples::resolution_complex(0, 2);
        let f = ChainMap::zero(&x, &ChainComplex::sphere(0, &z()));
        let c = mapping_cylinder(&f).unwrap();
        assert!(c.inclusion.compose(&c.projection).unwrap().equals(&f));
        assert!(c.inclusion.is_mono());
        assert!(c.projection.is_quasi_iso());
    }

    #[test]
    fn two_of_three_on_samples() {
        let mut r = samples::rng(21);
        for _ in 0..5 {
            let x = samples::random_bounded(&mut r, 4, (0, 1));
            let (y, f) = samples::twist(&mut r, &x);
            let (_, g) = samples::twist(&mut r, &y);
            let gf = f.compose(&g).unwrap();
            assert!(f.is_quasi_iso() && g.is_quasi_iso() && gf.is_quasi_iso());
        }
    }
}

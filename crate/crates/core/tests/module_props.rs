use chainlab::fgmod::{self, Pd, Presentation, Ring};
use chainlab::linalg::{int, IntMatrix};
use chainlab::samples;
use proptest::prelude::*;

fn presentation() -> impl Strategy<Value = Presentation> {
    (1usize..4, 0usize..4).prop_flat_map(|(g, r)| {
        prop::collection::vec(-6i64..=6, g * r)
            .prop_map(move |v| Presentation::new(Ring::Z, g, IntMatrix::from_i64(r, g, &v)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplification_is_an_isomorphism(m in presentation()) {
        let s = m.simplify();
        let forward = fgmod::ModuleMap::new(s.module.clone(), m.clone(), s.to_original.clone()).unwrap();
        prop_assert!(forward.is_iso());
        prop_assert_eq!(s.module.invariants(), m.invariants());
    }

    #[test]
    fn cokernel_of_identity_is_zero(m in presentation()) {
        let id = fgmod::ModuleMap::identity(&m);
        prop_assert!(id.cokernel().0.is_zero_module());
        prop_assert!(id.kernel().0.is_zero_module());
    }

    #[test]
    fn pd_over_z_is_zero_or_one(m in presentation()) {
        let expected = if m.invariants().torsion.is_empty() { Pd::Finite(0) } else { Pd::Finite(1) };
        prop_assert_eq!(fgmod::pd(&m), expected);
    }

    #[test]
    fn hom_and_ext_of_free_modules(m in presentation(), k in 1usize..3) {
        let f = Presentation::free(Ring::Z, k);
        prop_assert!(fgmod::ext1(&f, &m).unwrap().is_zero());
        let h = fgmod::hom(&f, &m).unwrap();
        let inv = m.invariants();
        prop_assert_eq!(h.free_rank, k * inv.free_rank);
    }

    #[test]
    fn ext_of_cyclic_groups(a in 2i64..20, b in 2i64..20) {
        let e = fgmod::ext1(&Presentation::cyclic(Ring::Z, a), &Presentation::cyclic(Ring::Z, b)).unwrap();
        prop_assert_eq!(e.order(), Some(chainlab::linalg::gcd(&int(a), &int(b))));
    }
}

#[test]
fn random_modules_are_well_formed() {
    let mut rng = samples::rng(11);
    for _ in 0..40 {
        let m = samples::random_module(&mut rng, 4);
        let res = fgmod::free_resolution(&m).unwrap();
        assert_eq!(res.boundary.shape(), (res.f0, res.f1));
        let p = Presentation::new(Ring::Z, res.f0, res.boundary.transpose()).unwrap();
        assert_eq!(p.invariants(), m.invariants());
    }
}

use chainlab::complex::ChainComplex;
use chainlab::format;
use chainlab::maps::{self, ChainMap};
use chainlab::resolve::{self, ResolveOutcome};
use chainlab::samples;
use chainlab::tensorx;
use proptest::prelude::*;

const WINDOW: (i64, i64) = (-1, 2);

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_complexes_validate(seed in any::<u64>()) {
        let mut rng = samples::rng(seed);
        let x = samples::random_bounded(&mut rng, 8, WINDOW);
        prop_assert!(x.validate().valid);
        let (y, iso) = samples::twist(&mut rng, &x);
        prop_assert!(iso.is_iso());
        prop_assert_eq!(x.homology_all(), y.homology_all());
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let mut rng = samples::rng(seed);
        let x = samples::random_bounded(&mut rng, 8, WINDOW);
        let text = format::complex_to_text(&x);
        let y = format::complex_from_text(&text).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(format::complex_to_text(&y), text);
        let f = samples::random_chain_map(&mut rng, &x, &y);
        let ftext = format::map_to_text(&f);
        prop_assert_eq!(format::map_to_text(&format::map_from_text(&ftext).unwrap()), ftext);
    }

    #[test]
    fn kernel_image_cokernel_sequence(seed in any::<u64>()) {
        let mut rng = samples::rng(seed);
        let x = samples::random_bounded(&mut rng, 6, WINDOW);
        let y = samples::random_bounded(&mut rng, 6, WINDOW);
        let f = samples::random_chain_map(&mut rng, &x, &y);
        let (_, k) = f.kernel_complex();
        let (_, c) = f.cokernel_complex();
        prop_assert!(k.is_mono());
        prop_assert!(c.is_epi());
        prop_assert!(k.compose(&f).unwrap().equals(&ChainMap::zero(k.source(), f.target())));
        prop_assert!(f.compose(&c).unwrap().equals(&ChainMap::zero(f.source(), c.target())));
    }

    #[test]
    fn cone_detects_quasi_isomorphisms(seed in any::<u64>()) {
        let mut rng = samples::rng(seed);
        let x = samples::random_bounded(&mut rng, 6, WINDOW);
        let (y, iso) = samples::twist(&mut rng, &x);
        prop_assert!(maps::cone(&iso).is_exact());
        let f = samples::random_chain_map(&mut rng, &x, &y);
        prop_assert_eq!(f.is_quasi_iso(), maps::cone(&f).is_exact());
    }

    #[test]
    fn members_resolve(seed in any::<u64>(), n in 0usize..2) {
        let mut rng = samples::rng(seed);
        let x = samples::random_in_class(&mut rng, n, 12, WINDOW);
        prop_assert!(resolve::in_tilde_pn(&x, n));
        match resolve::resolve_complex(&x, n) {
            ResolveOutcome::Tower(t) => prop_assert!(t.verify() && t.length() <= n),
            ResolveOutcome::Exceeded { .. } => prop_assert!(false, "member did not resolve"),
        }
    }

    #[test]
    fn tensor_with_unit_sphere(seed in any::<u64>()) {
        let mut rng = samples::rng(seed);
        let x = samples::random_bounded(&mut rng, 6, WINDOW);
        let unit = ChainComplex::sphere(0, &chainlab::fgmod::Presentation::free(chainlab::fgmod::Ring::Z, 1));
        let t = tensorx::tensor(&x, &unit).unwrap().result;
        for d in x.degrees() {
            prop_assert_eq!(t.homology(d), x.homology(d));
        }
    }
}

#[test]
fn projective_complexes_are_contractible() {
    let mut rng = samples::rng(5);
    for _ in 0..20 {
        let x = samples::random_in_class(&mut rng, 0, 12, WINDOW);
        assert!(x.is_contractible());
        let h = maps::is_nullhomotopic(&ChainMap::identity(&x)).expect("identity is nullhomotopic");
        assert!(maps::verify_homotopy(&ChainMap::identity(&x), &h));
    }
}

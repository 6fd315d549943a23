use chainlab::linalg::{self, int, Int, IntMatrix};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

fn diag(rows: usize, cols: usize, d: &[Int]) -> IntMatrix {
    IntMatrix::diagonal(rows, cols, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_factorization(a in matrix()) {
        let s = linalg::snf(&a);
        let (r, c) = a.shape();
        prop_assert_eq!(s.u.mul(&diag(r, c, &s.d)).mul(&s.v), a.clone());
        prop_assert!(s.u.mul(&s.u_inv).is_identity());
        prop_assert!(s.v.mul(&s.v_inv).is_identity());
        for w in s.d[..s.rank].windows(2) {
            prop_assert!(linalg::divides(&w[0], &w[1]));
        }
        prop_assert!(s.d[..s.rank].iter().all(|x| x > &Int::ZERO));
        prop_assert_eq!(linalg::smith_diagonal(&a), s.d.clone());
        prop_assert_eq!(linalg::rank(&a), s.rank);
    }

    #[test]
    fn hermite_is_a_row_operation(a in matrix()) {
        let h = linalg::hnf(&a);
        prop_assert_eq!(h.u.mul(&a), h.h.clone());
        prop_assert_eq!(h.rank, linalg::rank(&a));
    }

    #[test]
    fn kernel_vectors_vanish(a in matrix()) {
        let k = linalg::kernel_basis(&a, None).unwrap();
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.cols(), a.cols() - linalg::rank(&a));
    }

    #[test]
    fn modular_kernel_vanishes(a in matrix(), m in 2i64..13) {
        let mi = int(m);
        let k = linalg::kernel_basis(&a, Some(&mi)).unwrap();
        prop_assert!(a.mul(&k).reduce_mod(&mi).is_zero());
    }

    #[test]
    fn solutions_solve(a in matrix(), seed in prop::collection::vec(-5i64..=5, 4)) {
        let x: Vec<Int> = seed.iter().take(a.cols()).map(|&v| int(v)).chain(std::iter::repeat(Int::ZERO)).take(a.cols()).collect();
        let b = a.mul_vec(&x);
        let y = linalg::solve(&a, &b, None).unwrap().expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn gcd_identity(a in -500i64..500, b in -500i64..500) {
        let (g, s, t) = linalg::xgcd(&int(a), &int(b));
        prop_assert_eq!(int(a) * s + int(b) * t, g.clone());
        prop_assert_eq!(g, linalg::gcd(&int(a), &int(b)));
    }
}

#[test]
fn large_entries_stay_exact() {
    let big = Int::from(u128::MAX) * Int::from(7u8);
    let a = IntMatrix::from_rows(2, &[vec![big.clone(), int(0)], vec![int(0), big.clone() * int(3)]]).unwrap();
    let s = linalg::snf(&a);
    assert_eq!(s.d, vec![big.clone(), big * int(3)]);
}

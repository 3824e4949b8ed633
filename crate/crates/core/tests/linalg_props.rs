use klr_core::linalg::{smith_normal_form, LaurentSeries, Matrix, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..5, c), r))
}

proptest! {
    #[test]
    fn rational_rank_matches_smith_factors(rows in small_matrix()) {
        let q = Matrix::<Q>::from_i64(&rows);
        let z: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let snf = smith_normal_form(&z, false);
        prop_assert_eq!(q.rank(), snf.rank());
        for w in snf.invariant_factors.windows(2) {
            if w[1] != BigInt::from(0) {
                prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
            }
        }
    }

    #[test]
    fn bar_is_an_involution(terms in prop::collection::vec((-6i32..7, -5i64..6), 0..6)) {
        let f = LaurentSeries::from_terms(terms);
        prop_assert_eq!(f.bar().bar(), f);
    }

    #[test]
    fn series_product_matches_polynomial_product(
        a in prop::collection::vec(-3i64..4, 1..5),
        b in prop::collection::vec(-3i64..4, 1..5),
    ) {
        let fa = LaurentSeries::from_terms(a.iter().enumerate().map(|(i, &c)| (i as i32, c)));
        let fb = LaurentSeries::from_terms(b.iter().enumerate().map(|(i, &c)| (i as i32, c)));
        let p = fa.mul(&fb);
        let mut want = vec![0i64; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                want[i + j] += x * y;
            }
        }
        for (d, &c) in want.iter().enumerate() {
            prop_assert_eq!(p.coeff(d as i32), c);
        }
    }
}

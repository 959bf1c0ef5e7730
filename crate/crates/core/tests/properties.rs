use matrixavoid::exactnum::{BigInt, BigRat};
use matrixavoid::formulas::{self, phi};
use matrixavoid::patterns::{avoids, AvoidanceSpec, BitMatrix, Oracle};
use matrixavoid::series::{div_series, exp_series, USeries};
use proptest::prelude::*;

fn any_spec() -> impl Strategy<Value = AvoidanceSpec> {
    (1u8..128).prop_map(|mask| AvoidanceSpec::all_subsets().nth(mask as usize - 1).unwrap())
}

fn any_matrix() -> impl Strategy<Value = BitMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(k, n)| (0u64..1 << (k * n)).prop_map(move |bits| BitMatrix::from_index(k, n, bits)))
}

fn any_series(order: usize) -> impl Strategy<Value = USeries> {
    proptest::collection::vec((-9i64..=9, 1i64..=4), order + 1).prop_map(|cs| {
        USeries::from_coeffs(cs.into_iter().map(|(p, q)| BigRat::new(p.into(), q.into())).collect())
    })
}

proptest! {
    #[test]
    fn permutation_invariance(m in any_matrix(), alpha in any_spec(), seed in any::<u64>()) {
        let rot = |len: usize, by: u64| -> Vec<usize> { (0..len).map(|i| (i + by as usize) % len).collect() };
        let rev = |len: usize| -> Vec<usize> { (0..len).rev().collect() };
        let a = avoids(&m, alpha);
        prop_assert_eq!(a, avoids(&m.permute_rows(&rot(m.rows(), seed)), alpha));
        prop_assert_eq!(a, avoids(&m.permute_cols(&rot(m.cols(), seed >> 8)), alpha));
        prop_assert_eq!(a, avoids(&m.permute_rows(&rev(m.rows())).permute_cols(&rev(m.cols())), alpha));
    }

    #[test]
    fn images_are_bijections(m in any_matrix(), alpha in any_spec()) {
        prop_assert_eq!(avoids(&m, alpha), avoids(&m.complement(), alpha.complement_image()));
        prop_assert_eq!(avoids(&m, alpha), avoids(&m.transpose(), alpha.transpose_image()));
        prop_assert_eq!(alpha.complement_image().complement_image(), alpha);
        prop_assert_eq!(alpha.transpose_image().transpose_image(), alpha);
    }

    #[test]
    fn spec_display_round_trips(alpha in any_spec()) {
        let text = alpha.to_string();
        prop_assert_eq!(text.parse::<AvoidanceSpec>().unwrap(), alpha);
        prop_assert_eq!(text.to_lowercase().parse::<AvoidanceSpec>().unwrap(), alpha);
    }

    #[test]
    fn formula_sets_are_transpose_consistent(k in 0usize..=20, n in 0usize..=20) {
        for name in ["I", "GAMMA", "C", "GAMMA,C", "T,L", "J,O"] {
            let alpha: AvoidanceSpec = name.parse().unwrap();
            prop_assert_eq!(phi(k, n, &alpha).unwrap().value, phi(n, k, &alpha).unwrap().value);
        }
        prop_assert_eq!(formulas::phi_t(k, n).unwrap(), formulas::phi_l(n, k).unwrap());
    }

    #[test]
    fn counts_never_exceed_all_matrices(k in 1usize..=10, n in 1usize..=10) {
        let total = BigInt::from(1u8) << (k * n);
        for name in ["I", "GAMMA", "C", "T", "L", "GAMMA,C", "T,L", "J,O"] {
            let v = phi(k, n, &name.parse().unwrap()).unwrap().value;
            prop_assert!(v >= BigInt::from(0) && v <= total, "{} ({},{}) = {}", name, k, n, v);
        }
    }

    #[test]
    fn series_ring_laws(a in any_series(6), b in any_series(6), c in any_series(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in any_series(6), b in any_series(6)) {
        prop_assume!(b.coeffs()[0] != BigRat::from_integer(0.into()));
        prop_assert_eq!(div_series(&(&a * &b), &b).unwrap(), a);
    }

    #[test]
    fn exp_turns_sums_into_products(a in any_series(6), b in any_series(6)) {
        let zero = BigRat::from_integer(0.into());
        let mut a = a.coeffs().to_vec();
        let mut b = b.coeffs().to_vec();
        a[0] = zero.clone();
        b[0] = zero;
        let (a, b) = (USeries::from_coeffs(a), USeries::from_coeffs(b));
        let lhs = exp_series(&(&a + &b)).unwrap();
        let rhs = &exp_series(&a).unwrap() * &exp_series(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn parallel_and_serial_oracles_agree_on_every_set() {
    let parallel = Oracle::default();
    let serial = Oracle::default().serial();
    for alpha in AvoidanceSpec::all_subsets() {
        for (k, n) in [(3, 5), (5, 3), (4, 4), (2, 9)] {
            assert_eq!(parallel.count(k, n, alpha).unwrap(), serial.count(k, n, alpha).unwrap(), "[{alpha}] ({k},{n})");
        }
    }
}

use ospq::linalg::{graded_kron, nilpotent_fun, permute_legs, rep_parity, GradedMatrix, NilFn, Parity, SignConvention};
use ospq::Scalar;
use proptest::prelude::*;

const C: SignConvention = SignConvention::Column;

/// Homogeneous matrix of the given parity with small integer entries.
fn arb_homogeneous(n: usize) -> impl Strategy<Value = GradedMatrix> {
    (any::<bool>(), proptest::collection::vec(-3i64..4, n * n)).prop_map(move |(odd, v)| {
        let want = (odd as usize) % 2;
        GradedMatrix::from_fn(rep_parity(n), |r, c| {
            if (r + c) % 2 == want {
                Scalar::from_int(v[r * n + c])
            } else {
                Scalar::zero()
            }
        })
    })
}

fn arb_nilpotent(n: usize) -> impl Strategy<Value = GradedMatrix> {
    proptest::collection::vec(-3i64..4, n * n).prop_map(move |v| {
        GradedMatrix::from_fn(rep_parity(n), |r, c| {
            if c > r && (r + c) % 2 == 0 {
                Scalar::from_int(v[r * n + c]) * Scalar::h()
            } else {
                Scalar::zero()
            }
        })
    })
}

fn parity_of(m: &GradedMatrix) -> Parity {
    m.operator_parity().unwrap_or(Parity::Even)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kron_is_associative(a in arb_homogeneous(2), b in arb_homogeneous(3), c in arb_homogeneous(2)) {
        let l = graded_kron(&graded_kron(&a, &b, C).unwrap(), &c, C).unwrap();
        let r = graded_kron(&a, &graded_kron(&b, &c, C).unwrap(), C).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn mixed_product_rule(a in arb_homogeneous(3), b in arb_homogeneous(2), c in arb_homogeneous(3), d in arb_homogeneous(2)) {
        let lhs = &graded_kron(&a, &b, C).unwrap() * &graded_kron(&c, &d, C).unwrap();
        let mut rhs = graded_kron(&(&a * &c), &(&b * &d), C).unwrap();
        if parity_of(&b).is_odd() && parity_of(&c).is_odd() {
            rhs = -&rhs;
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_and_ln_invert(n in arb_nilpotent(5)) {
        let id = GradedMatrix::identity(rep_parity(5));
        let e = nilpotent_fun(&n, &NilFn::Exp).unwrap();
        prop_assert_eq!(nilpotent_fun(&e, &NilFn::Ln).unwrap(), n.clone());
        let u = &id + &n;
        let l = nilpotent_fun(&u, &NilFn::Ln).unwrap();
        prop_assert_eq!(nilpotent_fun(&l, &NilFn::Exp).unwrap(), u.clone());
        let s = nilpotent_fun(&u, &NilFn::Sqrt).unwrap();
        prop_assert_eq!(&s * &s, u);
    }

    #[test]
    fn flip_is_an_involution(a in arb_homogeneous(3), b in arb_homogeneous(2)) {
        let m = graded_kron(&a, &b, C).unwrap();
        let legs = [rep_parity(3), rep_parity(2)];
        let f = permute_legs(&m, &legs, &[1, 0]).unwrap();
        let mut swapped = graded_kron(&b, &a, C).unwrap();
        if parity_of(&a).is_odd() && parity_of(&b).is_odd() {
            swapped = -&swapped;
        }
        prop_assert_eq!(&f, &swapped);
        let back = permute_legs(&f, &[rep_parity(2), rep_parity(3)], &[1, 0]).unwrap();
        prop_assert_eq!(back, m);
    }
}

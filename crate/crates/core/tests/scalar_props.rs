use num_bigint::BigInt;
use num_rational::BigRational;
use ospq::Scalar;
use proptest::prelude::*;

fn poly(c: &[i64]) -> Scalar {
    // c[3i + j] p^(i-1) h^j
    let mut acc = Scalar::zero();
    for (k, &x) in c.iter().enumerate() {
        if x != 0 {
            let term = Scalar::p_pow(k as i64 / 3 - 1) * Scalar::h().pow(k as i64 % 3).unwrap() * Scalar::from_int(x);
            acc = acc + term;
        }
    }
    acc
}

fn arb_poly() -> impl Strategy<Value = Scalar> {
    proptest::collection::vec(-4i64..5, 9).prop_map(|c| poly(&c))
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (arb_poly(), arb_poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n / d })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn display_parses_back(a in arb_scalar()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn limit_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
        let (la, lb) = (a.limit_at_p1().unwrap(), b.limit_at_p1().unwrap());
        prop_assert_eq!((&a * &b).limit_at_p1().unwrap(), &la * &lb);
        prop_assert_eq!((&a + &b).limit_at_p1().unwrap(), &la + &lb);
    }

    #[test]
    fn substitution_is_a_ring_map(a in arb_poly(), b in arb_poly(), n in -5i64..6, d in 1i64..5) {
        let a = a.limit_at_p1().unwrap();
        let b = b.limit_at_p1().unwrap();
        let v = BigRational::new(BigInt::from(n), BigInt::from(d));
        let (sa, sb) = (a.substitute_h(&v).unwrap(), b.substitute_h(&v).unwrap());
        prop_assert_eq!((&a * &b).substitute_h(&v).unwrap(), &sa * &sb);
    }
}

#[test]
fn pole_is_reported() {
    let x = Scalar::one() / (Scalar::p() - Scalar::one());
    assert!(x.limit_at_p1().is_err());
    assert_eq!(x.pole_order_at_p1(), 1);
}

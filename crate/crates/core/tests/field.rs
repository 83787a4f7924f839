use kacpal_core::cyclotomic::{cyclotomic_polynomial, degree, gauss_sum_check};
use kacpal_core::{CycNumber, Rational};
use proptest::prelude::*;

const ORDERS: [u32; 6] = [4, 6, 8, 10, 12, 9];

fn cyc(order: u32) -> impl Strategy<Value = CycNumber> {
    let d = degree(order);
    prop::collection::vec((-20i64..20, 1i64..8), d).prop_map(move |cs| {
        let coeffs = cs
            .into_iter()
            .map(|(a, b)| Rational::new(a.into(), b.into()))
            .collect();
        CycNumber::from_coeffs(order, coeffs).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (CycNumber, CycNumber, CycNumber)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|o| (cyc(o), cyc(o), cyc(o)))
}

// Brute-force reference: multiply as polynomials in x, then reduce by
// long division with the monic Φ_N.
fn naive_mul(a: &CycNumber, b: &CycNumber) -> CycNumber {
    let phi: Vec<Rational> = cyclotomic_polynomial(a.order())
        .unwrap()
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    let d = phi.len() - 1;
    let mut prod = vec![Rational::from_integer(0.into()); 2 * d];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for top in (d..prod.len()).rev() {
        let c = prod[top].clone();
        for k in 0..=d {
            let t = &c * &phi[k];
            prod[top - d + k] -= t;
        }
    }
    prod.truncate(d);
    CycNumber::from_coeffs(a.order(), prod).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(&a * &CycNumber::one(a.order()), a.clone());
    }

    #[test]
    fn product_matches_naive_reduction((a, b, _) in triple()) {
        prop_assert_eq!(&a * &b, naive_mul(&a, &b));
    }

    #[test]
    fn inverses((a, _, _) in triple()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&inv * &a).is_one());
        prop_assert_eq!(a.try_div(&a).unwrap(), CycNumber::one(a.order()));
    }

    #[test]
    fn reduction_is_idempotent((a, _, _) in triple()) {
        prop_assert_eq!(a.reduced(), a.clone());
        prop_assert_eq!(a.reduced().reduced(), a.reduced());
    }

    #[test]
    fn json_round_trip((a, _, _) in triple()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: CycNumber = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn powers_add((a, _, _) in triple(), j in -4i64..5, k in -4i64..5) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.pow(j + k).unwrap(), &a.pow(j).unwrap() * &a.pow(k).unwrap());
    }
}

#[test]
fn zeta_is_primitive() {
    for order in 1..=24u32 {
        let z = CycNumber::zeta_power(order, 1);
        let mut p = CycNumber::one(order);
        for k in 1..=4 * order as i64 {
            p = &p * &z;
            assert_eq!(p.is_one(), k % order as i64 == 0, "N={order} k={k}");
        }
    }
}

#[test]
fn gauss_sum_identity() {
    for n in 2..=6u32 {
        let order = 2 * n;
        for a in 0..n {
            for b in 0..n {
                let expected =
                    CycNumber::zeta_power(order, 2 * (a * b) as i64).scale(&Rational::from_integer(n.into()));
                assert_eq!(gauss_sum_check(n, a, b), expected, "n={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn rejects_malformed_json() {
    assert!(serde_json::from_str::<CycNumber>(r#"{"order":4,"coeffs":[["1","1"]]}"#).is_err());
    assert!(serde_json::from_str::<CycNumber>(r#"{"order":4,"coeffs":[["1","0"],["0","1"]]}"#).is_err());
    assert!(serde_json::from_str::<CycNumber>(r#"{"order":0,"coeffs":[]}"#).is_err());
    let ok: CycNumber =
        serde_json::from_str(r#"{"order":4,"coeffs":[["2","4"],["-3","1"]]}"#).unwrap();
    assert_eq!(ok.coeffs()[0], Rational::new(1.into(), 2.into()));
}

#[test]
fn documented_examples() {
    assert_eq!(
        cyclotomic_polynomial(12).unwrap(),
        [1, 0, -1, 0, 1].map(num_bigint::BigInt::from)
    );
    assert_eq!(CycNumber::zeta_power(6, 3), CycNumber::from_int(6, -1));
    let z = CycNumber::zeta_power(4, 1);
    assert!((&z + &CycNumber::zeta_power(4, 3)).is_zero());
    assert!(matches!(
        CycNumber::zero(4).inv(),
        Err(kacpal_core::Error::DivisionByZero(4))
    ));
}

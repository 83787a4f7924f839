use kacpal_core::classifier::idempotent_from_beta;
use kacpal_core::partitions::partitions_of;
use kacpal_core::{
    conjugacy_class_count, enumerate_labelled_partitions, AlgebraElement, CycNumber, GroupAlgebra,
    GroupIndex, Perm, Rational, WreathElement, WreathGroup,
};
use proptest::prelude::*;

fn element(n: u32, m: usize) -> impl Strategy<Value = WreathElement> {
    (
        prop::collection::vec(0..n, m),
        Just(Perm::all(m)).prop_flat_map(prop::sample::select),
    )
        .prop_map(|(twists, perm)| WreathElement { twists, perm })
}

fn sparse(alg: &GroupAlgebra) -> impl Strategy<Value = AlgebraElement> {
    let alg = alg.clone();
    let order = alg.field_order();
    prop::collection::vec((0..alg.dimension(), -3i64..4, 0i64..order as i64), 1..5).prop_map(
        move |terms| {
            alg.from_terms(terms.into_iter().map(|(g, c, k)| {
                (
                    GroupIndex(g),
                    CycNumber::zeta_power(order, k).scale(&Rational::from_integer(c.into())),
                )
            }))
            .unwrap()
        },
    )
}

fn triple_2_3() -> impl Strategy<Value = (AlgebraElement, AlgebraElement, AlgebraElement)> {
    let alg = GroupAlgebra::new(2, 3).unwrap();
    (sparse(&alg), sparse(&alg), sparse(&alg))
}

proptest! {
    #[test]
    fn group_associativity(u in element(3, 4), v in element(3, 4), w in element(3, 4)) {
        let g = WreathGroup::new(3, 4).unwrap();
        let lhs = g.multiply(&g.multiply(&u, &v).unwrap(), &w).unwrap();
        let rhs = g.multiply(&u, &g.multiply(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.multiply(&u, &g.inverse(&u)).unwrap(), g.identity());
    }

    #[test]
    fn convolution_associativity((a, b, c) in triple_2_3()) {
        let alg = GroupAlgebra::new(2, 3).unwrap();
        let lhs = alg.convolve(&alg.convolve(&a, &b).unwrap(), &c).unwrap();
        let rhs = alg.convolve(&a, &alg.convolve(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(alg.convolve(&alg.one(), &a).unwrap(), a.clone());
        prop_assert_eq!(alg.convolve(&a, &alg.one()).unwrap(), a.clone());
        let distrib = alg.convolve(&a, &b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(distrib, alg.convolve(&a, &b).unwrap().add(&alg.convolve(&a, &c).unwrap()).unwrap());
    }

    #[test]
    fn element_json_round_trip(a in sparse(&GroupAlgebra::new(3, 2).unwrap())) {
        let s = serde_json::to_string(&a).unwrap();
        let back: AlgebraElement = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn presentation_relations_hold_in_the_group() {
    for n in 1..=6u32 {
        for m in 1..=6usize {
            let Ok(g) = WreathGroup::new(n, m) else { continue };
            if g.order() > 10_000 {
                continue;
            }
            let a: Vec<_> = (1..=m).map(|i| g.generator_a(i).unwrap()).collect();
            let b: Vec<_> = (1..m).map(|l| g.generator_b(l).unwrap()).collect();
            let mul = |x: &WreathElement, y: &WreathElement| g.multiply(x, y).unwrap();
            let id = g.identity();
            for ai in &a {
                let mut p = id.clone();
                for _ in 0..n {
                    p = mul(&p, ai);
                }
                assert_eq!(p, id);
                for aj in &a {
                    assert_eq!(mul(ai, aj), mul(aj, ai));
                }
            }
            for (l, bl) in b.iter().enumerate() {
                assert_eq!(mul(bl, bl), id);
                for (i, ai) in a.iter().enumerate() {
                    let j = if i == l { l + 1 } else if i == l + 1 { l } else { i };
                    assert_eq!(mul(bl, ai), mul(&a[j], bl), "n={n} m={m} l={l} i={i}");
                }
                if l + 1 < b.len() {
                    let bk = &b[l + 1];
                    assert_eq!(mul(&mul(bl, bk), bl), mul(&mul(bk, bl), bk));
                }
                for bk in b.iter().skip(l + 2) {
                    assert_eq!(mul(bl, bk), mul(bk, bl));
                }
            }
            let distinct: std::collections::HashSet<_> =
                g.elements().into_iter().map(|u| g.index(&u).unwrap()).collect();
            assert_eq!(distinct.len(), g.order());
        }
    }
}

#[test]
fn conjugacy_matches_partition_formula() {
    // Σ_{l_1+…+l_n=m} p(l_1)⋯p(l_n), computed by brute-force recursion
    fn formula(n: u32, m: usize) -> usize {
        if n == 0 {
            return usize::from(m == 0);
        }
        (0..=m).map(|l| partitions_of(l).len() * formula(n - 1, m - l)).sum()
    }
    for (n, m) in [(1, 3), (2, 2), (2, 3), (3, 2), (4, 2), (3, 3), (2, 4), (1, 5), (5, 2)] {
        let classes = conjugacy_class_count(n, m, 10_000).unwrap();
        assert_eq!(classes, formula(n, m), "n={n} m={m}");
    }
}

#[test]
fn complementary_ideals_fill_the_algebra() {
    for (n, m) in [(2, 2), (3, 2), (2, 3)] {
        let alg = GroupAlgebra::new(n, m).unwrap();
        let total = alg.dimension();
        let mut idempotents = Vec::new();
        for t in 0..alg.group().twist_count() {
            idempotents.push(alg.lambda(&alg.group().twists_of(t)).unwrap());
        }
        for beta in enumerate_labelled_partitions(n, m) {
            idempotents.push(idempotent_from_beta(&alg, &beta).unwrap());
        }
        for e in idempotents {
            assert_eq!(alg.convolve(&e, &e).unwrap(), e);
            let co = alg.one().sub(&e).unwrap();
            let d = alg.left_ideal_dimension(&e).unwrap() + alg.left_ideal_dimension(&co).unwrap();
            assert_eq!(d, total);
        }
    }
}

#[test]
fn lambdas_are_central_among_twists() {
    let alg = GroupAlgebra::new(3, 2).unwrap();
    for t in 0..9 {
        let lam = alg.lambda(&alg.group().twists_of(t)).unwrap();
        for u in 0..9 {
            let x = alg.x_monomial(&alg.group().twists_of(u)).unwrap();
            assert_eq!(alg.convolve(&lam, &x).unwrap(), alg.convolve(&x, &lam).unwrap());
        }
    }
}

#[test]
fn relation_suite_with_caps() {
    let alg = GroupAlgebra::with_caps(2, 3, kacpal_core::Caps::uniform(10)).unwrap_err();
    assert!(matches!(alg, kacpal_core::Error::CapExceeded { .. }));
    let report = GroupAlgebra::new(4, 2).unwrap().verify_defining_relations().unwrap();
    assert!(report.all_passed());
    for family in ["z_square", "z_braid", "y_order", "z_lambda", "s_x", "lambda_complete"] {
        assert!(report.families.contains_key(family), "{family}");
    }
}

//! Acceptance run: one line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use itertools::Itertools;
use kacpal_core::classifier::idempotent_from_beta;
use kacpal_core::cyclotomic::gauss_sum_check;
use kacpal_core::partitions::{partitions_of, row_consecutive_tableau, standard_tableaux, young_symmetrizer};
use kacpal_core::{
    conjugacy_class_count, enumerate_labelled_partitions, irrep_dimension, irrep_table, labelled_partition_count,
    AlgebraElement, CycNumber, GroupAlgebra, HopfStructure, LabelledPartition, Partition, Rational, Tableau,
    TableOptions,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<Vec<String>, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SET: [(u32, usize); 6] = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4)];
const SMALL: [(u32, usize); 3] = [(2, 2), (3, 2), (2, 3)];

fn golden_table() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_kacpal"))
        .args(["table", "--n", "2", "--m", "3", "--format", "json", "--expanded"])
        .env_remove("KACPAL_CAP")
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "exit {:?}", out.status.code());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let irreps = v["irreps"].as_array().ok_or("no irreps")?;
    let alg = GroupAlgebra::new(2, 3).map_err(|e| e.to_string())?;
    let reference = common::table_2_3(&alg);
    ensure!(irreps.len() == 10, "{} irreps", irreps.len());
    let dims: Vec<u64> = irreps.iter().filter_map(|r| r["dimension"].as_u64()).collect();
    ensure!(dims == [1, 2, 1, 3, 3, 1, 2, 1, 3, 3], "dimensions {dims:?}");
    ensure!(dims.iter().map(|d| d * d).sum::<u64>() == 48, "sum of squares");
    for (rec, row) in irreps.iter().zip(&reference) {
        let e: AlgebraElement = serde_json::from_value(rec["idempotent"].clone()).map_err(|e| e.to_string())?;
        ensure!(rec["beta"] == row.beta, "row {}: beta {}", row.label, rec["beta"]);
        ensure!(e == row.element, "row {}: idempotent differs", row.label);
    }

    // rows (i), (j) as printed, with Λ_(1,1,0) and s_2
    let l110 = common::lambda(&alg, &[1, 1, 0]);
    let half = common::rational(1, 2);
    let mut dims_literal = Vec::new();
    for sign in [1, -1] {
        let e = common::product(&alg, &[&l110, &common::words(&alg, &[(1, &[]), (sign, &[2])])]).scale_rational(&half);
        let sq = alg.convolve(&e, &e).map_err(|e| e.to_string())?;
        ensure!(sq == e.scale_rational(&half), "literal row square");
        dims_literal.push(alg.left_ideal_dimension(&e).map_err(|e| e.to_string())?);
    }
    Ok(vec![format!(
        "rows (i),(j) compared on label (0,1,1); printed form with (1,1,0),s_2 squares to e/2, left ideal dims {dims_literal:?}"
    )])
}

fn relation_suite() -> Outcome {
    for (n, m) in SET {
        let alg = GroupAlgebra::new(n, m).map_err(|e| e.to_string())?;
        let report = alg.verify_defining_relations().map_err(|e| e.to_string())?;
        for family in ["z_square", "z_braid", "z_commute", "z_x", "x_power", "x_commute", "s_x", "s_braid", "s_square",
            "y_order", "z_square_is_y_inverse_square", "z_lambda"]
        {
            ensure!(report.families.contains_key(family), "({n},{m}) missing {family}");
        }
        let failure = report.failures().next().map(|(name, o)| format!("({n},{m}) {name}: {:?}", o.counterexample));
        if let Some(why) = failure {
            return Err(why);
        }
    }
    Ok(vec![])
}

fn classification_counts() -> Outcome {
    fn formula(n: u32, m: usize) -> usize {
        if n == 0 {
            return usize::from(m == 0);
        }
        (0..=m).map(|l| partitions_of(l).len() * formula(n - 1, m - l)).sum()
    }
    for (n, m) in SET {
        let t = irrep_table(n, m, &TableOptions::default()).map_err(|e| e.to_string())?;
        let classes = conjugacy_class_count(n, m, 10_000).map_err(|e| e.to_string())?;
        let f = formula(n, m);
        ensure!(
            t.irreps.len() == f && f == classes && labelled_partition_count(n, m) == f as u128,
            "({n},{m}): table {} formula {f} classes {classes}",
            t.irreps.len()
        );
        let order = (n as u128).pow(m as u32) * (1..=m as u128).product::<u128>();
        ensure!(t.dimensions().iter().map(|d| d * d).sum::<u128>() == order, "({n},{m}) sum of squares");
    }
    Ok(vec![])
}

fn triple_agreement() -> Outcome {
    for (n, m) in SMALL {
        let alg = GroupAlgebra::new(n, m).map_err(|e| e.to_string())?;
        let betas = enumerate_labelled_partitions(n, m);
        let mut idempotents = Vec::new();
        let mut ideals = Vec::new();
        for beta in &betas {
            let e = idempotent_from_beta(&alg, beta).map_err(|e| e.to_string())?;
            let formula = irrep_dimension(beta).map_err(|e| e.to_string())?;
            let hook = kacpal_core::classifier::irrep_dimension_hook(beta).map_err(|e| e.to_string())?;
            let basis = alg.left_ideal_basis(&e).map_err(|e| e.to_string())?;
            ensure!(formula == hook && hook == basis.len() as u128, "({n},{m}) {beta}: {formula} {hook} {}", basis.len());
            idempotents.push(e);
            ideals.push(basis);
        }
        for (i, e) in idempotents.iter().enumerate() {
            for (j, hf) in ideals.iter().enumerate() {
                let d = alg.sandwich_dimension_with_basis(e, hf);
                ensure!(d == usize::from(i == j), "({n},{m}) e_{} H e_{} has dim {d}", betas[i], betas[j]);
            }
        }
    }
    Ok(vec![])
}

fn hopf_axioms() -> Outcome {
    let mut notes = Vec::new();
    for (n, m) in SMALL {
        let alg = GroupAlgebra::new(n, m).map_err(|e| e.to_string())?;
        let report = HopfStructure::new(&alg).and_then(|h| h.verify()).map_err(|e| e.to_string())?;
        let failure =
            report.checks.failures().next().map(|(name, o)| format!("({n},{m}) {name}: {:?}", o.counterexample));
        if let Some(why) = failure {
            return Err(why);
        }
        ensure!(report.witnesses.len() == m - 1, "({n},{m}) {} witnesses", report.witnesses.len());
        for w in &report.witnesses {
            ensure!(!w.value.is_zero(), "zero witness");
            notes.push(format!("({n},{m}) l={}: coefficient of {:?} ⊗ {:?}", w.l, w.left, w.right));
        }
    }
    Ok(notes)
}

fn brute_force_standard(shape: &Partition) -> usize {
    let k = shape.size();
    (1..=k)
        .permutations(k)
        .filter(|fill| {
            let mut it = fill.iter().copied();
            let rows = shape.parts().iter().map(|&len| it.by_ref().take(len).collect()).collect();
            Tableau::new(rows).is_ok_and(|t| t.is_standard())
        })
        .count()
}

fn combinatorics() -> Outcome {
    for k in 0..=8usize {
        let mut sum_sq = 0u128;
        for mu in partitions_of(k) {
            let f = mu.standard_tableaux_count();
            ensure!(f as usize == brute_force_standard(&mu), "{mu:?}");
            ensure!(standard_tableaux(&mu).len() as u128 == f, "{mu:?} enumeration");
            sum_sq += f * f;
        }
        ensure!(sum_sq == (1..=k as u128).product::<u128>(), "k={k}");
    }
    for k in 1..=6 {
        for mu in partitions_of(k) {
            let e = young_symmetrizer(&row_consecutive_tableau(&mu));
            ensure!(e.mul(&e).map_err(|e| e.to_string())? == e, "{mu:?} not idempotent");
        }
    }
    Ok(vec![])
}

fn cyc(order: u32) -> impl Strategy<Value = CycNumber> {
    let d = kacpal_core::cyclotomic::degree(order);
    prop::collection::vec((-20i64..20, 1i64..8), d).prop_map(move |cs| {
        let coeffs = cs.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect();
        CycNumber::from_coeffs(order, coeffs).unwrap()
    })
}

fn field_core() -> Outcome {
    let strategy =
        prop::sample::select(vec![4u32, 6, 8, 10, 12, 9]).prop_flat_map(|o| (cyc(o), cyc(o), cyc(o)));
    let mut runner = TestRunner::new(Config { cases: 512, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a.inv().unwrap() * &a).is_one());
            }
            for x in [&a, &b, &c, &(&a * &b), &(&a - &c)] {
                let back: CycNumber = serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap();
                prop_assert_eq!(&back, x);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    for order in 1..=24u32 {
        let z = CycNumber::zeta_power(order, 1);
        let mut p = CycNumber::one(order);
        for k in 1..=2 * order as i64 {
            p = &p * &z;
            ensure!(p.is_one() == (k % order as i64 == 0), "ζ_{order}^{k}");
        }
    }
    for n in 2..=6u32 {
        for a in 0..n {
            for b in 0..n {
                let expected = CycNumber::zeta_power(2 * n, 2 * (a * b) as i64).scale(&Rational::from_integer(n.into()));
                ensure!(gauss_sum_check(n, a, b) == expected, "gauss n={n} a={a} b={b}");
            }
        }
    }

    let alg = GroupAlgebra::new(2, 3).map_err(|e| e.to_string())?;
    for beta in enumerate_labelled_partitions(2, 3) {
        let e = idempotent_from_beta(&alg, &beta).map_err(|e| e.to_string())?;
        let back: AlgebraElement = serde_json::from_str(&serde_json::to_string(&e).unwrap()).map_err(|e| e.to_string())?;
        ensure!(back == e, "{beta} round trip");
        let spec = beta.spec();
        ensure!(LabelledPartition::parse(2, &spec).ok().as_ref() == Some(&beta), "{spec} parse round trip");
    }
    Ok(vec![])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("golden H_{2,3} table", golden_table, 10),
        ("relation suite", relation_suite, 300),
        ("classification counts", classification_counts, 300),
        ("dimension triple agreement", triple_agreement, 600),
        ("hopf axioms", hopf_axioms, 600),
        ("combinatorial oracles", combinatorics, 300),
        ("field core", field_core, 300),
    ];
    let mut failed = 0;
    for (i, (name, run, bound)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|notes| {
            if elapsed > Duration::from_secs(bound) {
                Err(format!("exceeded {bound} s"))
            } else {
                Ok(notes)
            }
        });
        match result {
            Ok(notes) => {
                println!("criterion {}: PASS  {name}  ({:.2} s, bound {bound} s)", i + 1, elapsed.as_secs_f64());
                for note in notes {
                    println!("    {note}");
                }
            }
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  ({:.2} s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Reference elements of `H_{2,3}` built directly from `x_i` and `s_l`.

#![allow(dead_code)]

use kacpal_core::{AlgebraElement, CycNumber, GroupAlgebra, Rational};

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// `n^{-m} Σ_𝐢 q^{λ·𝐢} x_1^{i_1} ⋯ x_m^{i_m}`, expanded by convolution.
pub fn lambda(alg: &GroupAlgebra, lam: &[u32]) -> AlgebraElement {
    let (n, m) = (alg.n(), alg.m());
    let mut out = alg.zero();
    let mut idx = vec![0u32; m];
    loop {
        let mut mono = alg.one();
        for (j, &e) in idx.iter().enumerate() {
            let xj = alg.pow(&alg.x(j + 1).unwrap(), e).unwrap();
            mono = alg.convolve(&mono, &xj).unwrap();
        }
        let dot: i64 = lam.iter().zip(&idx).map(|(&a, &b)| (a * b) as i64).sum();
        let c = CycNumber::zeta_power(2 * n, 2 * dot);
        out = out.add(&mono.scale(&c)).unwrap();
        let mut k = 0;
        while k < m {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    out.scale_rational(&rational(1, (n as i64).pow(m as u32)))
}

/// Signed sum of words in the `s_l`; each word lists generator subscripts.
pub fn words(alg: &GroupAlgebra, terms: &[(i64, &[usize])]) -> AlgebraElement {
    let mut out = alg.zero();
    for (sign, word) in terms {
        let mut w = alg.one();
        for &l in *word {
            w = alg.convolve(&w, &alg.s(l).unwrap()).unwrap();
        }
        out = out.add(&w.scale_rational(&rational(*sign, 1))).unwrap();
    }
    out
}

pub fn product(alg: &GroupAlgebra, factors: &[&AlgebraElement]) -> AlgebraElement {
    alg.product(factors).unwrap()
}

pub struct Row {
    pub label: &'static str,
    pub beta: &'static str,
    pub element: AlgebraElement,
    pub dimension: u128,
}

/// The ten idempotents of `H_{2,3}` in table order. Rows (i) and (j) use the
/// non-decreasing label `(0,1,1)` of the orbit of `(1,1,0)`.
pub fn table_2_3(alg: &GroupAlgebra) -> Vec<Row> {
    let sym = words(alg, &[(1, &[]), (1, &[1]), (1, &[2]), (1, &[1, 2]), (1, &[2, 1]), (1, &[1, 2, 1])]);
    let alt = words(alg, &[(1, &[]), (-1, &[1]), (-1, &[2]), (1, &[1, 2]), (1, &[2, 1]), (-1, &[1, 2, 1])]);
    let hook = product(
        alg,
        &[&words(alg, &[(1, &[]), (1, &[1])]), &words(alg, &[(1, &[]), (-1, &[1, 2, 1])])],
    );
    let plus1 = words(alg, &[(1, &[]), (1, &[1])]);
    let minus1 = words(alg, &[(1, &[]), (-1, &[1])]);
    let plus2 = words(alg, &[(1, &[]), (1, &[2])]);
    let minus2 = words(alg, &[(1, &[]), (-1, &[2])]);
    let (l000, l001, l111, l011) = (
        lambda(alg, &[0, 0, 0]),
        lambda(alg, &[0, 0, 1]),
        lambda(alg, &[1, 1, 1]),
        lambda(alg, &[0, 1, 1]),
    );
    let row = |label, beta, scale: Rational, f: &[&AlgebraElement], dimension| Row {
        label,
        beta,
        element: product(alg, f).scale_rational(&scale),
        dimension,
    };
    vec![
        row("a", "0:3", rational(1, 6), &[&l000, &sym], 1),
        row("b", "0:2,1", rational(1, 3), &[&l000, &hook], 2),
        row("c", "0:1,1,1", rational(1, 6), &[&l000, &alt], 1),
        row("g", "0:2;1:1", rational(1, 2), &[&l001, &plus1], 3),
        row("h", "0:1,1;1:1", rational(1, 2), &[&l001, &minus1], 3),
        row("d", "1:3", rational(1, 6), &[&l111, &sym], 1),
        row("e", "1:2,1", rational(1, 3), &[&l111, &hook], 2),
        row("f", "1:1,1,1", rational(1, 6), &[&l111, &alt], 1),
        row("i", "0:1;1:2", rational(1, 2), &[&l011, &plus2], 3),
        row("j", "0:1;1:1,1", rational(1, 2), &[&l011, &minus2], 3),
    ]
}

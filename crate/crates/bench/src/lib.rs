//! Fixtures shared by the benchmarks.

use kacpal_core::classifier::idempotent_from_beta;
use kacpal_core::{enumerate_labelled_partitions, AlgebraElement, GroupAlgebra, Result};

/// The algebra together with every `e_β`, in table order.
pub fn idempotents(n: u32, m: usize) -> Result<(GroupAlgebra, Vec<AlgebraElement>)> {
    let alg = GroupAlgebra::new(n, m)?;
    let es = enumerate_labelled_partitions(n, m)
        .iter()
        .map(|beta| idempotent_from_beta(&alg, beta))
        .collect::<Result<_>>()?;
    Ok((alg, es))
}

/// `Σ_l z_l + Σ_i x_i`, a dense-ish element with cyclotomic coefficients.
pub fn generator_sum(alg: &GroupAlgebra) -> Result<AlgebraElement> {
    let mut acc = alg.zero();
    for l in 1..alg.m() {
        acc = acc.add(&alg.z(l)?)?;
    }
    for i in 1..=alg.m() {
        acc = acc.add(&alg.x(i)?)?;
    }
    Ok(acc)
}

//! `[n]`-labelled partitions, the idempotents `e_β` and the table of
//! irreducible representations of `H_{n,m}`.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Caps, GroupAlgebra};
use crate::cyclotomic::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::partitions::{
    partition_count, partitions_of, row_consecutive_tableau, standard_tableaux, young_symmetrizer,
    Partition, SymFormalSum,
};
use crate::report::{CheckOutcome, CheckReport, Counterexample};
use crate::wreath::{conjugacy_class_count, factorial, Perm, WreathElement};

/// A map `β: [n] → 𝒴` with `Σ |β(i)| = m`. Labels are `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelledPartition {
    n: u32,
    blocks: Vec<Partition>,
}

impl LabelledPartition {
    pub fn new(blocks: Vec<Partition>) -> Result<Self> {
        let n = u32::try_from(blocks.len())
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::InvalidBeta("need at least one label".into()))?;
        Ok(LabelledPartition { n, blocks })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `m = Σ l_i`.
    pub fn m(&self) -> usize {
        self.blocks.iter().map(Partition::size).sum()
    }

    pub fn blocks(&self) -> &[Partition] {
        &self.blocks
    }

    pub fn block(&self, label: usize) -> &Partition {
        &self.blocks[label]
    }

    /// `(l_0, …, l_{n-1})`.
    pub fn composition(&self) -> Vec<usize> {
        self.blocks.iter().map(Partition::size).collect()
    }

    /// First slot (0-based) of the block carrying `label`.
    pub fn offset(&self, label: usize) -> usize {
        self.blocks[..label].iter().map(Partition::size).sum()
    }

    /// Parses `"0:3,2,2;2:1,1,1"`; omitted labels carry the empty partition.
    pub fn parse(n: u32, spec: &str) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBeta("n must be at least 1".into()));
        }
        let mut blocks: Vec<Option<Partition>> = vec![None; n as usize];
        for entry in spec.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let (label, parts) = entry
                .split_once(':')
                .ok_or_else(|| Error::InvalidBeta(format!("entry {entry:?} lacks 'label:'")))?;
            let label: usize = label
                .trim()
                .parse()
                .map_err(|_| Error::InvalidBeta(format!("bad label {label:?}")))?;
            if label >= n as usize {
                return Err(Error::InvalidBeta(format!("label {label} not in 0..{n}")));
            }
            if blocks[label].is_some() {
                return Err(Error::InvalidBeta(format!("label {label} given twice")));
            }
            let parts = parts
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| Error::InvalidBeta(format!("bad part {p:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks[label] = Some(Partition::new(parts).map_err(|e| Error::InvalidBeta(e.to_string()))?);
        }
        Self::new(blocks.into_iter().map(Option::unwrap_or_default).collect())
    }

    /// Parses and checks the total against `m`.
    pub fn parse_for(n: u32, m: usize, spec: &str) -> Result<Self> {
        let beta = Self::parse(n, spec)?;
        if beta.m() != m {
            return Err(Error::InvalidBeta(format!(
                "{spec:?} has total size {}, expected m = {m}",
                beta.m()
            )));
        }
        Ok(beta)
    }

    /// The compact string form; inverse of [`LabelledPartition::parse`].
    pub fn spec(&self) -> String {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_empty())
            .map(|(i, b)| {
                let parts: Vec<String> = b.parts().iter().map(ToString::to_string).collect();
                format!("{i}:{}", parts.join(","))
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for LabelledPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if b.is_empty() {
                write!(f, "*")?;
            } else {
                write!(f, "{b:?}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LabelledPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=left).rev() {
            cur.push(v);
            go(n, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, &mut Vec::new(), &mut out);
    out
}

// (shift, representative): the representative is the lexicographically
// greatest rotation, `shift` the right rotation taking it to `c`.
fn rotation_key(c: &[usize]) -> (usize, std::cmp::Reverse<Vec<usize>>) {
    let n = c.len();
    let rotate = |k: usize| -> Vec<usize> { (0..n).map(|i| c[(i + k) % n]).collect() };
    let rep = (0..n).map(rotate).max().expect("n >= 1");
    let shift = (0..n)
        .find(|&k| (0..n).all(|i| c[i] == rep[(i + n - k) % n]))
        .expect("c is a rotation of rep");
    (shift, std::cmp::Reverse(rep))
}

/// Every `[n]`-labelled partition of `m`.
///
/// Compositions `(l_0, …, l_{n-1})` are ordered by rotation class; within a
/// composition the blocks run through reverse-lexicographic partitions with
/// the first label varying slowest.
pub fn enumerate_labelled_partitions(n: u32, m: usize) -> Vec<LabelledPartition> {
    if n == 0 {
        return Vec::new();
    }
    let mut comps = compositions(n as usize, m);
    comps.sort_by_cached_key(|c| rotation_key(c));
    let mut out = Vec::new();
    for c in comps {
        let per_block: Vec<Vec<Partition>> = c.iter().map(|&l| partitions_of(l)).collect();
        out.extend(
            per_block
                .iter()
                .map(|b| b.iter().cloned())
                .multi_cartesian_product()
                .map(|blocks| LabelledPartition { n, blocks }),
        );
    }
    out
}

/// `Σ_{l_1+…+l_n=m} p(l_1)⋯p(l_n)`, by convolving the partition function
/// `n` times.
pub fn labelled_partition_count(n: u32, m: usize) -> u128 {
    let p: Vec<u128> = (0..=m).map(partition_count).collect();
    let mut acc = vec![0u128; m + 1];
    acc[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; m + 1];
        for (s, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (t, &pt) in p.iter().enumerate().take(m + 1 - s) {
                next[s + t] += a * pt;
            }
        }
        acc = next;
    }
    acc[m]
}

/// The non-decreasing `λ_β` with `l_i` entries equal to `i`.
pub fn lambda_from_beta(beta: &LabelledPartition) -> Vec<u32> {
    beta.blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| std::iter::repeat_n(i as u32, b.size()))
        .collect()
}

/// `ι_label`: embeds a formal sum over `S_{l_label}` into the algebra, acting
/// on the slots of that label's block.
pub fn iota_embed(
    alg: &GroupAlgebra,
    beta: &LabelledPartition,
    label: usize,
    s: &SymFormalSum,
) -> Result<AlgebraElement> {
    if label >= beta.blocks.len() {
        return Err(Error::IndexOutOfRange {
            what: "label",
            index: label,
            max: beta.blocks.len() - 1,
        });
    }
    if beta.m() != alg.m() || beta.n() != alg.n() {
        return Err(Error::InvalidBeta(format!(
            "{beta} does not label H_{{{},{}}}",
            alg.n(),
            alg.m()
        )));
    }
    let size = beta.blocks[label].size();
    if s.degree() != size {
        return Err(Error::WrongAmbientSize {
            expected: size,
            found: s.degree(),
        });
    }
    let offset = beta.offset(label);
    let order = alg.field_order();
    let mut terms = Vec::with_capacity(s.terms().len());
    for (p, c) in s.terms() {
        let mut images: Vec<usize> = (0..alg.m()).collect();
        for j in 0..size {
            images[offset + j] = offset + p.apply(j);
        }
        let u = WreathElement {
            twists: vec![0; alg.m()],
            perm: Perm::from_images(images)?,
        };
        terms.push((alg.group().index(&u)?, CycNumber::from_rational(order, c.clone())));
    }
    alg.from_terms(terms)
}

/// `e_β = Λ_{λ_β} ι_0(e_{T_0}) ⋯ ι_{n-1}(e_{T_{n-1}})` with `T_i` the
/// row-consecutive tableau of `β(i)`; empty blocks are skipped.
pub fn idempotent_from_beta(alg: &GroupAlgebra, beta: &LabelledPartition) -> Result<AlgebraElement> {
    let mut acc = alg.lambda(&lambda_from_beta(beta))?;
    for (label, block) in beta.blocks.iter().enumerate() {
        if block.is_empty() {
            continue;
        }
        let e_t = young_symmetrizer(&row_consecutive_tableau(block));
        acc = alg.convolve(&acc, &iota_embed(alg, beta, label, &e_t)?)?;
    }
    Ok(acc)
}

fn checked_factorial(k: usize) -> Result<u128> {
    (1..=k as u128).try_fold(1u128, |a, b| a.checked_mul(b).ok_or(Error::Overflow("factorial")))
}

/// `m! / (l_1! ⋯ l_n!) · f_1 ⋯ f_n`, with each `f_i` counted by enumerating
/// standard tableaux.
pub fn irrep_dimension(beta: &LabelledPartition) -> Result<u128> {
    let mut dim = checked_factorial(beta.m())?;
    for b in &beta.blocks {
        dim /= checked_factorial(b.size())?;
    }
    for b in &beta.blocks {
        let f = standard_tableaux(b).len() as u128;
        dim = dim.checked_mul(f).ok_or(Error::Overflow("dimension"))?;
    }
    Ok(dim)
}

/// `m! / Π hook lengths` over the boxes of every block.
pub fn irrep_dimension_hook(beta: &LabelledPartition) -> Result<u128> {
    let mut hooks: u128 = 1;
    for b in &beta.blocks {
        for (r, c) in b.boxes() {
            hooks = hooks
                .checked_mul(b.hook_length(r, c)? as u128)
                .ok_or(Error::Overflow("hook product"))?;
        }
    }
    Ok(checked_factorial(beta.m())? / hooks)
}

/// Which optional checks [`irrep_table`] runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableOptions {
    pub caps: Caps,
    /// Attach every `e_β` to its record.
    pub include_idempotents: bool,
    /// `e_β² = e_β ≠ 0`.
    pub idempotency: bool,
    /// `dim H e_β` by rank, and `dim e_β H e_β = 1`.
    pub ranks: bool,
    /// `dim e_β H e_γ = 0` for `β ≠ γ`.
    pub orthogonality: bool,
    /// Compare the count with brute-force conjugacy classes.
    pub conjugacy: bool,
}

impl TableOptions {
    fn needs_algebra(&self) -> bool {
        self.include_idempotents || self.idempotency || self.ranks || self.orthogonality
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepRecord {
    #[serde(rename = "beta")]
    pub beta_spec: String,
    #[serde(rename = "blocks")]
    pub beta: LabelledPartition,
    pub lambda: Vec<u32>,
    #[serde(rename = "dimension")]
    pub dim_formula: u128,
    pub dim_hook: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotent: Option<AlgebraElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepTable {
    pub n: u32,
    pub m: usize,
    pub irreps: Vec<IrrepRecord>,
    pub checks: CheckReport,
}

impl IrrepTable {
    pub fn dimensions(&self) -> Vec<u128> {
        self.irreps.iter().map(|r| r.dim_formula).collect()
    }
}

struct Work {
    idempotent: AlgebraElement,
    square: Option<AlgebraElement>,
    ideal_basis: Option<Vec<AlgebraElement>>,
}

/// One record per labelled partition plus the consistency checks selected
/// in `options`. Cap violations for requested checks are errors.
pub fn irrep_table(n: u32, m: usize, options: &TableOptions) -> Result<IrrepTable> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams {
            n,
            m,
            reason: "n and m must be at least 1".into(),
        });
    }
    let betas = enumerate_labelled_partitions(n, m);
    let mut irreps = betas
        .iter()
        .map(|beta| {
            Ok(IrrepRecord {
                beta_spec: beta.spec(),
                beta: beta.clone(),
                lambda: lambda_from_beta(beta),
                dim_formula: irrep_dimension(beta)?,
                dim_hook: irrep_dimension_hook(beta)?,
                dim_rank: None,
                idempotent: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut checks = CheckReport::default();
    let expected_count = labelled_partition_count(n, m);
    checks.insert(
        "count_formula",
        CheckOutcome::single(irreps.len() as u128 == expected_count, || {
            Counterexample::case(format!("enumerated {}, formula {expected_count}", irreps.len()))
        }),
    );

    let order = (n as u128)
        .checked_pow(m as u32)
        .zip(checked_factorial(m).ok())
        .and_then(|(a, b)| a.checked_mul(b))
        .ok_or(Error::Overflow("group order"))?;
    let sum_sq = irreps
        .iter()
        .try_fold(0u128, |acc, r| acc.checked_add(r.dim_formula.checked_mul(r.dim_formula)?))
        .ok_or(Error::Overflow("sum of squared dimensions"))?;
    checks.insert(
        "sum_dim_squares",
        CheckOutcome::single(sum_sq == order, || {
            Counterexample::case(format!("sum of squares {sum_sq}, group order {order}"))
        }),
    );

    let mut o = CheckOutcome::default();
    for r in &irreps {
        o.record(r.dim_formula == r.dim_hook, || {
            Counterexample::case(format!("{}: formula {} vs hook {}", r.beta, r.dim_formula, r.dim_hook))
        });
    }
    checks.insert("formula_matches_hook", o);

    if options.conjugacy {
        let classes = conjugacy_class_count(n, m, options.caps.enumeration)?;
        checks.insert(
            "conjugacy_classes",
            CheckOutcome::single(classes == irreps.len(), || {
                Counterexample::case(format!("{classes} classes vs {} labelled partitions", irreps.len()))
            }),
        );
    }

    if options.needs_algebra() {
        if options.ranks || options.orthogonality {
            let order = usize::try_from(order).map_err(|_| Error::Overflow("group order"))?;
            Caps::require("ranks", order, options.caps.ranks)?;
        }
        let alg = GroupAlgebra::with_caps(n, m, options.caps)?;
        let work = betas
            .par_iter()
            .map(|beta| {
                let e = idempotent_from_beta(&alg, beta)?;
                let square = options
                    .idempotency
                    .then(|| alg.convolve(&e, &e))
                    .transpose()?;
                let ideal_basis = (options.ranks || options.orthogonality)
                    .then(|| alg.left_ideal_basis(&e))
                    .transpose()?;
                Ok(Work {
                    idempotent: e,
                    square,
                    ideal_basis,
                })
            })
            .collect::<Result<Vec<Work>>>()?;

        if options.idempotency {
            let mut o = CheckOutcome::default();
            for (r, w) in irreps.iter().zip(&work) {
                let sq = w.square.as_ref().expect("computed");
                let ok = !w.idempotent.is_zero() && *sq == w.idempotent;
                o.record(ok, || {
                    let diff = sq.first_difference(&w.idempotent);
                    Counterexample {
                        case: format!("beta={}", r.beta_spec),
                        coordinate: diff.as_ref().map(|d| d.0.to_string()),
                        lhs: diff.as_ref().map(|d| d.1.to_string()),
                        rhs: diff.as_ref().map(|d| d.2.to_string()),
                    }
                });
            }
            checks.insert("idempotency", o);
        }

        if options.ranks {
            let primitive: Vec<usize> = betas
                .par_iter()
                .zip(&work)
                .map(|(_, w)| {
                    alg.sandwich_dimension_with_basis(
                        &w.idempotent,
                        w.ideal_basis.as_ref().expect("computed"),
                    )
                })
                .collect();
            let mut dims = CheckOutcome::default();
            let mut prim = CheckOutcome::default();
            for ((r, w), p) in irreps.iter_mut().zip(&work).zip(primitive) {
                let rank = w.ideal_basis.as_ref().expect("computed").len();
                r.dim_rank = Some(rank);
                dims.record(rank as u128 == r.dim_formula, || {
                    Counterexample::case(format!("beta={}: rank {rank}, formula {}", r.beta_spec, r.dim_formula))
                });
                prim.record(p == 1, || {
                    Counterexample::case(format!("beta={}: dim eHe = {p}", r.beta_spec))
                });
            }
            checks.insert("rank_matches_formula", dims);
            checks.insert("primitivity", prim);
        }

        if options.orthogonality {
            let k = work.len();
            let pairs: Vec<(usize, usize)> = (0..k)
                .flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b)))
                .collect();
            let dims: Vec<usize> = pairs
                .par_iter()
                .map(|&(a, b)| {
                    alg.sandwich_dimension_with_basis(
                        &work[a].idempotent,
                        work[b].ideal_basis.as_ref().expect("computed"),
                    )
                })
                .collect();
            let mut o = CheckOutcome::default();
            for (&(a, b), d) in pairs.iter().zip(dims) {
                o.record(d == 0, || {
                    Counterexample::case(format!(
                        "beta={}, gamma={}: dim e H f = {d}",
                        irreps[a].beta_spec, irreps[b].beta_spec
                    ))
                });
            }
            checks.insert("orthogonality", o);
        }

        if options.include_idempotents {
            for (r, w) in irreps.iter_mut().zip(work) {
                r.idempotent = Some(w.idempotent);
            }
        }
    }

    Ok(IrrepTable {
        n,
        m,
        irreps,
        checks,
    })
}

/// `(1/k!) Σ_{g ∈ S_k} sign(g)^ε g` as a formal sum; used by tests and
/// fixtures as an independent symmetriser.
pub fn symmetric_sum(k: usize, alternating: bool) -> SymFormalSum {
    let norm = Rational::new(BigInt::from(1), BigInt::from(factorial(k).expect("small k")));
    SymFormalSum::from_terms(
        k,
        Perm::all(k).into_iter().map(|g| {
            let sign = if alternating { g.sign() } else { 1 };
            (g, &norm * Rational::from_integer(BigInt::from(sign)))
        }),
    )
}

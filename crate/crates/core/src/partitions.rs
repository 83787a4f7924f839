//! Integer partitions, Young tableaux and normalised Young symmetrizers.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::wreath::{factorial, Perm};

/// A partition `μ ⊢ k`: positive, non-increasing parts.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `k = Σ μ_i`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `ℓ(μ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// Boxes `(row, col)`, 0-based, in reading order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// Hook length of the 0-based box `(row, col)`: the box itself plus the
    /// boxes to its right and below it.
    pub fn hook_length(&self, row: usize, col: usize) -> Result<usize> {
        if row >= self.parts.len() || col >= self.parts[row] {
            return Err(Error::BoxOutsideShape {
                row,
                col,
                shape: self.parts.clone(),
            });
        }
        let arm = self.parts[row] - col - 1;
        let leg = self.parts[row + 1..].iter().filter(|&&p| p > col).count();
        Ok(arm + leg + 1)
    }

    /// `f_μ` by the hook length formula `k! / ∏ h(a, b)`.
    pub fn standard_tableaux_count(&self) -> u128 {
        let k = self.size() as u128;
        let numerator: u128 = (1..=k).product();
        let hooks: u128 = self
            .boxes()
            .map(|(r, c)| self.hook_length(r, c).expect("box of shape") as u128)
            .product();
        numerator / hooks
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `k` in reverse-lexicographic order.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// The partition function `p(k)`, by the standard coin-change recurrence.
pub fn partition_count(k: usize) -> u128 {
    let mut ways = vec![0u128; k + 1];
    ways[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            ways[total] += ways[total - part];
        }
    }
    ways[k]
}

/// A Young tableau: rows of distinct entries from `{1, …, k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl TryFrom<Vec<Vec<usize>>> for Tableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Tableau::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<usize>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        Partition::new(rows.iter().map(Vec::len).collect())
            .map_err(|e| Error::InvalidTableau(e.to_string()))?;
        let k: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; k + 1];
        for &v in rows.iter().flatten() {
            if v == 0 || v > k || seen[v] {
                return Err(Error::InvalidTableau(format!(
                    "{rows:?} is not a bijection onto 1..={k}"
                )));
            }
            seen[v] = true;
        }
        Ok(Tableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| {
                self.rows
                    .iter()
                    .take_while(|row| row.len() > c)
                    .map(|row| row[c])
                    .collect()
            })
            .collect()
    }

    /// Rows and columns strictly increase.
    pub fn is_standard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && self
                .columns()
                .iter()
                .all(|c| c.windows(2).all(|w| w[0] < w[1]))
    }
}

/// The standard tableau whose rows hold consecutive integers:
/// row `r` starts at `1 + Σ_{r' < r} μ_{r'}`.
pub fn row_consecutive_tableau(shape: &Partition) -> Tableau {
    let mut next = 1;
    let rows = shape
        .parts()
        .iter()
        .map(|&len| {
            let row: Vec<usize> = (next..next + len).collect();
            next += len;
            row
        })
        .collect();
    Tableau { rows }
}

/// Every standard tableau of the given shape, generated by placing
/// `1, 2, …, k` in turn into a row whose end is an addable corner.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    fn go(shape: &[usize], next: usize, k: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if next > k {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            let fits_row = len < shape[r];
            let supported = r == 0 || rows[r - 1].len() > len;
            if fits_row && supported {
                rows[r].push(next);
                go(shape, next + 1, k, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    go(shape.parts(), 1, shape.size(), &mut rows, &mut out);
    out
}

// All permutations of {0..k-1} that map each block (0-based points) to itself.
fn block_stabilizer(blocks: &[Vec<usize>], k: usize) -> Vec<Perm> {
    blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|images_per_block| {
            let mut images: Vec<usize> = (0..k).collect();
            for (block, imgs) in blocks.iter().zip(images_per_block) {
                for (&src, dst) in block.iter().zip(imgs) {
                    images[src] = dst;
                }
            }
            Perm::from_images(images).expect("block permutation")
        })
        .sorted()
        .collect()
}

fn zero_based(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    groups
        .iter()
        .map(|g| g.iter().map(|&v| v - 1).collect())
        .collect()
}

/// `H_T`: permutations preserving the entry set of every row.
pub fn horizontal_group(t: &Tableau) -> Vec<Perm> {
    block_stabilizer(&zero_based(t.rows()), t.size())
}

/// `V_T`: permutations preserving the entry set of every column.
pub fn vertical_group(t: &Tableau) -> Vec<Perm> {
    block_stabilizer(&zero_based(&t.columns()), t.size())
}

/// A finitely supported rational combination of permutations of degree `k`,
/// multiplied by convolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFormalSum {
    degree: usize,
    terms: BTreeMap<Perm, Rational>,
}

impl SymFormalSum {
    pub fn zero(degree: usize) -> Self {
        SymFormalSum {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(degree: usize) -> Self {
        Self::from_terms(degree, [(Perm::identity(degree), Rational::one())])
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Perm, Rational)>) -> Self {
        let mut out = Self::zero(degree);
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    fn add_term(&mut self, p: Perm, c: Rational) {
        assert_eq!(p.degree(), self.degree, "permutation degree mismatch");
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Perm, Rational> {
        &self.terms
    }

    pub fn coeff(&self, p: &Perm) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(
            self.degree,
            self.terms.iter().map(|(p, c)| (p.clone(), c * r)),
        )
    }

    /// `(Σ a_g g)(Σ b_h h) = Σ a_g b_h (g∘h)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<Perm, Rational> = BTreeMap::new();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                *acc.entry(g.compose(h)).or_insert_with(Rational::zero) += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SymFormalSum {
            degree: self.degree,
            terms: acc,
        })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(Error::WrongAmbientSize {
                expected: self.degree,
                found: other.degree,
            })
        }
    }
}

/// The normalised Young symmetrizer `e_T = (f_μ / k!) h_T v_T`.
pub fn young_symmetrizer(t: &Tableau) -> SymFormalSum {
    let k = t.size();
    let h = SymFormalSum::from_terms(
        k,
        horizontal_group(t).into_iter().map(|g| (g, Rational::one())),
    );
    let v = SymFormalSum::from_terms(
        k,
        vertical_group(t)
            .into_iter()
            .map(|g| (g.clone(), Rational::from_integer(BigInt::from(g.sign())))),
    );
    let f = t.shape().standard_tableaux_count();
    let k_fact = factorial(k).expect("k! fits usize");
    let norm = Rational::new(BigInt::from(f), BigInt::from(k_fact));
    h.mul(&v).expect("same degree").scale(&norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partition_count(0), 1);
        assert_eq!(partition_count(3), 3);
        assert_eq!(partition_count(5), 7);
        for k in 0..=15 {
            assert_eq!(partitions_of(k).len() as u128, partition_count(k));
        }
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Tableau::new(vec![vec![1, 1]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert!(part(&[2, 1]).hook_length(1, 1).is_err());
    }

    #[test]
    fn hooks() {
        let mu = part(&[3, 2, 2]);
        let hooks: Vec<usize> = mu.boxes().map(|(r, c)| mu.hook_length(r, c).unwrap()).collect();
        assert_eq!(hooks, vec![5, 4, 1, 3, 2, 2, 1]);
        assert_eq!(mu.standard_tableaux_count(), 21);
        assert_eq!(part(&[4]).standard_tableaux_count(), 1);
        assert_eq!(part(&[2, 1]).standard_tableaux_count(), 2);
        assert_eq!(mu.conjugate(), part(&[3, 3, 1]));
    }

    #[test]
    fn row_consecutive() {
        let t = row_consecutive_tableau(&part(&[3, 2, 2]));
        assert_eq!(t.rows(), &[vec![1, 2, 3], vec![4, 5], vec![6, 7]]);
        assert!(t.is_standard());
        let t = row_consecutive_tableau(&part(&[1, 1, 1]));
        assert_eq!(t.rows(), &[vec![1], vec![2], vec![3]]);
        let t = row_consecutive_tableau(&part(&[4]));
        assert_eq!(t.rows(), &[vec![1, 2, 3, 4]]);
    }

    #[test]
    fn groups_of_tableaux() {
        let t = row_consecutive_tableau(&part(&[2, 1]));
        assert_eq!(
            horizontal_group(&t),
            vec![Perm::identity(3), Perm::transposition(3, 0, 1)]
        );
        assert_eq!(
            vertical_group(&t),
            vec![Perm::identity(3), Perm::transposition(3, 0, 2)]
        );
        let t = row_consecutive_tableau(&part(&[3, 2, 2]));
        assert_eq!(horizontal_group(&t).len(), 24);
        assert_eq!(vertical_group(&t).len(), 36);
        let t = row_consecutive_tableau(&part(&[4]));
        assert_eq!(horizontal_group(&t).len(), 24);
        assert_eq!(vertical_group(&t), vec![Perm::identity(4)]);
    }

    #[test]
    fn symmetrizer_of_hook_shape() {
        let t = row_consecutive_tableau(&part(&[2, 1]));
        let e = young_symmetrizer(&t);
        let one = SymFormalSum::identity(3);
        let h = one
            .add(&SymFormalSum::from_terms(3, [(Perm::transposition(3, 0, 1), rat(1, 1))]))
            .unwrap();
        let v = one
            .add(&SymFormalSum::from_terms(3, [(Perm::transposition(3, 0, 2), rat(-1, 1))]))
            .unwrap();
        assert_eq!(e, h.mul(&v).unwrap().scale(&rat(1, 3)));
        assert_eq!(e.mul(&e).unwrap(), e);
    }

    #[test]
    fn symmetrizers_of_row_and_column() {
        let row = young_symmetrizer(&row_consecutive_tableau(&part(&[3])));
        let col = young_symmetrizer(&row_consecutive_tableau(&part(&[1, 1, 1])));
        for g in Perm::all(3) {
            assert_eq!(row.coeff(&g), rat(1, 6));
            assert_eq!(col.coeff(&g), rat(g.sign() as i64, 6));
        }
    }

    #[test]
    fn non_standard_tableau_symmetrizer_is_idempotent() {
        let t = Tableau::new(vec![vec![3, 1], vec![2]]).unwrap();
        assert!(!t.is_standard());
        let e = young_symmetrizer(&t);
        assert_eq!(e.mul(&e).unwrap(), e);
    }

    #[test]
    fn serde_shapes() {
        assert_eq!(serde_json::to_string(&part(&[2, 1])).unwrap(), "[2,1]");
        let t = row_consecutive_tableau(&part(&[2, 1]));
        assert_eq!(serde_json::to_string(&t).unwrap(), "[[1,2],[3]]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn mismatched_degrees() {
        let a = SymFormalSum::identity(2);
        let b = SymFormalSum::identity(3);
        assert!(a.mul(&b).is_err());
    }
}

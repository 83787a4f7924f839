//! The generalised symmetric group `Z_n ≀ S_m`.
//!
//! Elements are pairs `(twists, perm)` with `twists ∈ Z_n^m` and
//! `perm ∈ S_m`, multiplied by
//!
//! ```text
//! (a, g)(b, h) = (a_i + b_{g⁻¹(i)}, g∘h),    (g∘h)(i) = g(h(i)).
//! ```
//!
//! Slots and permutation points are 0-based; generator subscripts `a_i`,
//! `b_l` are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, …, m-1}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm {
            images: (0..m).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Swap of the 0-based points `a` and `b`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(m);
        p.images.swap(a, b);
        p
    }

    /// `σ_l = (l l+1)` for 1-based `l`.
    pub fn adjacent(m: usize, l: usize) -> Result<Self> {
        if l == 0 || l >= m {
            return Err(Error::IndexOutOfRange {
                what: "adjacent transposition",
                index: l,
                max: m.saturating_sub(1),
            });
        }
        Ok(Self::transposition(m, l - 1, l))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Perm { images: inv }
    }

    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.degree()];
        let mut sign = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Lexicographic rank via the Lehmer code; the identity has rank 0.
    pub fn lehmer_rank(&self) -> usize {
        let m = self.degree();
        let mut rank = 0;
        for i in 0..m {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count();
            rank = rank * (m - i) + smaller;
        }
        rank
    }

    pub fn from_lehmer_rank(m: usize, mut rank: usize) -> Result<Self> {
        let total = factorial(m).ok_or(Error::Overflow("m!"))?;
        if rank >= total {
            return Err(Error::GroupIndexOutOfRange {
                index: rank,
                order: total,
            });
        }
        let mut digits = vec![0; m];
        for i in (0..m).rev() {
            let radix = m - i;
            digits[i] = rank % radix;
            rank /= radix;
        }
        let mut pool: Vec<usize> = (0..m).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Ok(Perm { images })
    }

    /// A word `[w_1, …, w_k]` of 1-based adjacent transpositions with
    /// `self = σ_{w_1} ∘ … ∘ σ_{w_k}`, obtained by bubble sort.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut work = self.images.clone();
        let mut swaps = Vec::new();
        let m = work.len();
        for end in (1..m).rev() {
            for i in 0..end {
                if work[i] > work[i + 1] {
                    // right-composing with σ_{i+1} swaps positions i, i+1
                    work.swap(i, i + 1);
                    swaps.push(i + 1);
                }
            }
        }
        swaps.reverse();
        swaps
    }

    /// All permutations of degree `m` in Lehmer-rank order.
    pub fn all(m: usize) -> Vec<Perm> {
        let total = factorial(m).expect("m! overflows usize");
        (0..total)
            .map(|r| Perm::from_lehmer_rank(m, r).expect("rank in range"))
            .collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

pub(crate) fn factorial(m: usize) -> Option<usize> {
    (1..=m).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// An element `(twists, perm)` of `Z_n ≀ S_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WreathElement {
    pub twists: Vec<u32>,
    pub perm: Perm,
}

/// Dense index of a group element: `lehmer(perm) · n^m + Σ twists[i] n^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupIndex(pub usize);

impl fmt::Display for GroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The group `Z_n ≀ S_m` for fixed parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathGroup {
    n: u32,
    m: usize,
    twist_count: usize,
    order: usize,
}

impl WreathGroup {
    pub fn new(n: u32, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParams {
                n,
                m,
                reason: "n and m must be at least 1".into(),
            });
        }
        let overflow = || Error::InvalidParams {
            n,
            m,
            reason: "group order overflows".into(),
        };
        let twist_count = (n as usize)
            .checked_pow(u32::try_from(m).map_err(|_| overflow())?)
            .ok_or_else(overflow)?;
        let order = factorial(m)
            .and_then(|f| f.checked_mul(twist_count))
            .ok_or_else(overflow)?;
        Ok(WreathGroup {
            n,
            m,
            twist_count,
            order,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `n^m · m!`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `n^m`, the order of the normal subgroup `Z_n^m`.
    pub fn twist_count(&self) -> usize {
        self.twist_count
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            twists: vec![0; self.m],
            perm: Perm::identity(self.m),
        }
    }

    pub fn validate(&self, u: &WreathElement) -> Result<()> {
        if u.twists.len() != self.m || u.perm.degree() != self.m {
            return Err(Error::InvalidElement(format!(
                "expected {} slots, got twists {:?} perm {:?}",
                self.m, u.twists, u.perm
            )));
        }
        if let Some(t) = u.twists.iter().find(|&&t| t >= self.n) {
            return Err(Error::InvalidElement(format!(
                "twist {t} not reduced modulo {}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, u: &WreathElement, v: &WreathElement) -> Result<WreathElement> {
        self.validate(u)?;
        self.validate(v)?;
        Ok(self.multiply_unchecked(u, v))
    }

    pub(crate) fn multiply_unchecked(&self, u: &WreathElement, v: &WreathElement) -> WreathElement {
        let inv = u.perm.inverse();
        let twists = (0..self.m)
            .map(|i| (u.twists[i] + v.twists[inv.apply(i)]) % self.n)
            .collect();
        WreathElement {
            twists,
            perm: u.perm.compose(&v.perm),
        }
    }

    pub fn inverse(&self, u: &WreathElement) -> WreathElement {
        let twists = (0..self.m)
            .map(|j| (self.n - u.twists[u.perm.apply(j)]) % self.n)
            .collect();
        WreathElement {
            twists,
            perm: u.perm.inverse(),
        }
    }

    /// `a_i`: the unit twist in 1-based slot `i`.
    pub fn generator_a(&self, i: usize) -> Result<WreathElement> {
        if i == 0 || i > self.m {
            return Err(Error::IndexOutOfRange {
                what: "generator a",
                index: i,
                max: self.m,
            });
        }
        let mut u = self.identity();
        u.twists[i - 1] = 1 % self.n;
        Ok(u)
    }

    /// `b_l`: zero twist with permutation `σ_l`, 1-based `l`.
    pub fn generator_b(&self, l: usize) -> Result<WreathElement> {
        if l == 0 || l >= self.m {
            return Err(Error::IndexOutOfRange {
                what: "generator b",
                index: l,
                max: self.m - 1,
            });
        }
        Ok(WreathElement {
            twists: vec![0; self.m],
            perm: Perm::adjacent(self.m, l)?,
        })
    }

    pub fn pure_twist(&self, twists: &[u32]) -> WreathElement {
        WreathElement {
            twists: twists.iter().map(|t| t % self.n).collect(),
            perm: Perm::identity(self.m),
        }
    }

    pub fn twist_index(&self, twists: &[u32]) -> usize {
        twists
            .iter()
            .rev()
            .fold(0, |acc, &t| acc * self.n as usize + (t % self.n) as usize)
    }

    pub fn twists_of(&self, mut twist_index: usize) -> Vec<u32> {
        let n = self.n as usize;
        (0..self.m)
            .map(|_| {
                let t = twist_index % n;
                twist_index /= n;
                t as u32
            })
            .collect()
    }

    pub fn index(&self, u: &WreathElement) -> Result<GroupIndex> {
        self.validate(u)?;
        Ok(self.index_unchecked(u))
    }

    pub(crate) fn index_unchecked(&self, u: &WreathElement) -> GroupIndex {
        GroupIndex(u.perm.lehmer_rank() * self.twist_count + self.twist_index(&u.twists))
    }

    pub fn element(&self, ix: GroupIndex) -> Result<WreathElement> {
        if ix.0 >= self.order {
            return Err(Error::GroupIndexOutOfRange {
                index: ix.0,
                order: self.order,
            });
        }
        Ok(WreathElement {
            twists: self.twists_of(ix.0 % self.twist_count),
            perm: Perm::from_lehmer_rank(self.m, ix.0 / self.twist_count)?,
        })
    }

    /// All elements, ordered by index.
    pub fn elements(&self) -> Vec<WreathElement> {
        let perms = Perm::all(self.m);
        let mut out = Vec::with_capacity(self.order);
        for perm in perms {
            for t in 0..self.twist_count {
                out.push(WreathElement {
                    twists: self.twists_of(t),
                    perm: perm.clone(),
                });
            }
        }
        out
    }

    /// Number of conjugacy classes, by an orbit sweep over all elements.
    pub fn conjugacy_class_count(&self, cap: usize) -> Result<usize> {
        if self.order > cap {
            return Err(Error::CapExceeded {
                check: "conjugacy class enumeration",
                order: self.order,
                cap,
            });
        }
        let elements = self.elements();
        let inverses: Vec<WreathElement> = elements.iter().map(|g| self.inverse(g)).collect();
        let mut visited = vec![false; self.order];
        let mut classes = 0;
        for start in 0..self.order {
            if visited[start] {
                continue;
            }
            classes += 1;
            let u = &elements[start];
            for (h, h_inv) in elements.iter().zip(&inverses) {
                let c = self.multiply_unchecked(&self.multiply_unchecked(h, u), h_inv);
                visited[self.index_unchecked(&c).0] = true;
            }
        }
        Ok(classes)
    }
}

/// Conjugacy class count of `Z_n ≀ S_m` by brute force.
pub fn conjugacy_class_count(n: u32, m: usize, cap: usize) -> Result<usize> {
    WreathGroup::new(n, m)?.conjugacy_class_count(cap)
}

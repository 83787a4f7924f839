//! The group algebra `Q(ζ_{2n})[Z_n ≀ S_m]`, which realises `H_{n,m}` as an
//! algebra via `a_i ↦ x_i`, `b_l ↦ s_l`.
//!
//! The generators `z_l` of `H_{n,m}` are reconstructed as `z_l = y_l⁻¹ s_l`
//! and the defining relations are then verified, not imposed.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::report::{CheckOutcome, CheckReport, Counterexample};
use crate::wreath::{GroupIndex, Perm, WreathElement, WreathGroup};

/// Group-order limits for the expensive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Relation suite, idempotency checks and algebra construction.
    pub relations: usize,
    /// Rank-based ideal dimensions.
    pub ranks: usize,
    /// Tensor-square computations.
    pub hopf: usize,
    /// Brute-force conjugacy classes.
    pub enumeration: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            relations: 10_000,
            ranks: 2_000,
            hopf: 100,
            enumeration: 10_000,
        }
    }
}

impl Caps {
    /// The same cap for every check.
    pub fn uniform(cap: usize) -> Self {
        Caps {
            relations: cap,
            ranks: cap,
            hopf: cap,
            enumeration: cap,
        }
    }

    pub fn require(check: &'static str, order: usize, cap: usize) -> Result<()> {
        if order > cap {
            Err(Error::CapExceeded { check, order, cap })
        } else {
            Ok(())
        }
    }
}

// Above this order the Cayley table is not materialised.
const TABLE_LIMIT: usize = 1024;

struct Inner {
    group: WreathGroup,
    caps: Caps,
    elements: Vec<WreathElement>,
    table: Option<Vec<u32>>,
}

/// The group algebra of `Z_n ≀ S_m` over `Q(ζ_{2n})`.
#[derive(Clone)]
pub struct GroupAlgebra {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for GroupAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupAlgebra")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

/// A finitely supported `Q(ζ_{2n})`-combination of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    n: u32,
    m: usize,
    terms: BTreeMap<GroupIndex, CycNumber>,
}

impl AlgebraElement {
    pub fn zero(n: u32, m: usize) -> Self {
        AlgebraElement {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> (u32, usize) {
        (self.n, self.m)
    }

    pub fn terms(&self) -> &BTreeMap<GroupIndex, CycNumber> {
        &self.terms
    }

    pub fn coeff(&self, ix: GroupIndex) -> CycNumber {
        self.terms
            .get(&ix)
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(2 * self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params() == other.params() {
            Ok(())
        } else {
            Err(Error::ParamMismatch {
                left: self.params(),
                right: other.params(),
            })
        }
    }

    fn add_term(&mut self, ix: GroupIndex, c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(ix) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.plus(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.minus(other))
    }

    pub(crate) fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ix, c) in &other.terms {
            out.add_term(*ix, c);
        }
        out
    }

    pub(crate) fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (ix, c) in &other.terms {
            out.add_term(*ix, &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            n: self.n,
            m: self.m,
            terms: self.terms.iter().map(|(ix, c)| (*ix, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        let mut out = Self::zero(self.n, self.m);
        for (ix, v) in &self.terms {
            out.add_term(*ix, &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.m);
        if r.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(ix, v)| (*ix, v.scale(r))).collect();
        out
    }

    /// Dense coefficient vector of length `order`.
    pub fn to_dense(&self, order: usize) -> Vec<CycNumber> {
        let mut v = vec![CycNumber::zero(2 * self.n); order];
        for (ix, c) in &self.terms {
            v[ix.0] = c.clone();
        }
        v
    }

    /// First coordinate (in index order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(GroupIndex, CycNumber, CycNumber)> {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|&ix| {
            let (a, b) = (self.coeff(ix), other.coeff(ix));
            (a != b).then_some((ix, a, b))
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    index: GroupIndex,
    coeff: CycNumber,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: u32,
    m: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.n,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(ix, c)| TermRepr {
                    index: *ix,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let group = WreathGroup::new(repr.n, repr.m).map_err(D::Error::custom)?;
        let mut out = AlgebraElement::zero(repr.n, repr.m);
        for t in repr.terms {
            if t.index.0 >= group.order() {
                return Err(D::Error::custom(format!(
                    "index {} out of range for order {}",
                    t.index,
                    group.order()
                )));
            }
            if t.coeff.order() != 2 * repr.n {
                return Err(D::Error::custom("coefficient field does not match n"));
            }
            out.add_term(t.index, &t.coeff);
        }
        Ok(out)
    }
}

/// The distinguished elements `x_i`, `s_l`, `y_l`, `z_l` (index `i-1`,
/// `l-1`).
#[derive(Clone, Debug)]
pub struct Generators {
    pub x: Vec<AlgebraElement>,
    pub s: Vec<AlgebraElement>,
    pub y: Vec<AlgebraElement>,
    pub z: Vec<AlgebraElement>,
}

impl GroupAlgebra {
    pub fn new(n: u32, m: usize) -> Result<Self> {
        Self::with_caps(n, m, Caps::default())
    }

    pub fn with_caps(n: u32, m: usize, caps: Caps) -> Result<Self> {
        let group = WreathGroup::new(n, m)?;
        Caps::require("group algebra construction", group.order(), caps.relations)?;
        let elements = group.elements();
        let order = group.order();
        let table = (order <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(order * order);
            for g in &elements {
                for h in &elements {
                    let gh = group.multiply_unchecked(g, h);
                    t.push(group.index_unchecked(&gh).0 as u32);
                }
            }
            t
        });
        Ok(GroupAlgebra {
            inner: Arc::new(Inner {
                group,
                caps,
                elements,
                table,
            }),
        })
    }

    pub fn n(&self) -> u32 {
        self.inner.group.n()
    }

    pub fn m(&self) -> usize {
        self.inner.group.m()
    }

    /// Order `2n` of the scalar field `Q(ζ_{2n})`.
    pub fn field_order(&self) -> u32 {
        2 * self.n()
    }

    pub fn group(&self) -> &WreathGroup {
        &self.inner.group
    }

    pub fn caps(&self) -> Caps {
        self.inner.caps
    }

    /// Dimension `n^m · m!`.
    pub fn dimension(&self) -> usize {
        self.inner.group.order()
    }

    pub fn element_at(&self, ix: GroupIndex) -> &WreathElement {
        &self.inner.elements[ix.0]
    }

    pub(crate) fn mul_index(&self, g: GroupIndex, h: GroupIndex) -> GroupIndex {
        match &self.inner.table {
            Some(t) => GroupIndex(t[g.0 * self.dimension() + h.0] as usize),
            None => {
                let gr = &self.inner.group;
                let gh = gr.multiply_unchecked(&self.inner.elements[g.0], &self.inner.elements[h.0]);
                gr.index_unchecked(&gh)
            }
        }
    }

    pub(crate) fn index_of(&self, u: &WreathElement) -> GroupIndex {
        self.inner.group.index_unchecked(u)
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.params() == (self.n(), self.m()) {
            Ok(())
        } else {
            Err(Error::ParamMismatch {
                left: (self.n(), self.m()),
                right: a.params(),
            })
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.n(), self.m())
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(GroupIndex(0))
    }

    pub fn scalar(&self, c: CycNumber) -> AlgebraElement {
        let mut out = self.zero();
        out.add_term(GroupIndex(0), &c);
        out
    }

    pub fn basis(&self, ix: GroupIndex) -> AlgebraElement {
        let mut out = self.zero();
        out.add_term(ix, &CycNumber::one(self.field_order()));
        out
    }

    pub fn from_group_element(&self, u: &WreathElement) -> Result<AlgebraElement> {
        Ok(self.basis(self.inner.group.index(u)?))
    }

    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (GroupIndex, CycNumber)>,
    ) -> Result<AlgebraElement> {
        let mut out = self.zero();
        for (ix, c) in terms {
            if ix.0 >= self.dimension() {
                return Err(Error::GroupIndexOutOfRange {
                    index: ix.0,
                    order: self.dimension(),
                });
            }
            if c.order() != self.field_order() {
                return Err(Error::OrderMismatch {
                    left: self.field_order(),
                    right: c.order(),
                });
            }
            out.add_term(ix, &c);
        }
        Ok(out)
    }

    /// `x_i`, 1-based.
    pub fn x(&self, i: usize) -> Result<AlgebraElement> {
        self.from_group_element(&self.inner.group.generator_a(i)?)
    }

    /// `𝐱^𝐢 = x_1^{i_1} ⋯ x_m^{i_m}`.
    pub fn x_monomial(&self, exponents: &[u32]) -> Result<AlgebraElement> {
        if exponents.len() != self.m() {
            return Err(Error::InvalidElement(format!(
                "expected {} exponents, got {}",
                self.m(),
                exponents.len()
            )));
        }
        Ok(self.basis(self.index_of(&self.inner.group.pure_twist(exponents))))
    }

    /// `s_l`, the image of the group generator `b_l`, 1-based.
    pub fn s(&self, l: usize) -> Result<AlgebraElement> {
        self.from_group_element(&self.inner.group.generator_b(l)?)
    }

    /// The image of the permutation `p` with zero twists, i.e. a word in the
    /// `s_l`.
    pub fn perm_element(&self, p: &Perm) -> Result<AlgebraElement> {
        self.from_group_element(&WreathElement {
            twists: vec![0; self.m()],
            perm: p.clone(),
        })
    }

    fn check_lambda(&self, lambda: &[u32]) -> Result<()> {
        if lambda.len() != self.m() || lambda.iter().any(|&v| v >= self.n()) {
            return Err(Error::InvalidElement(format!(
                "{lambda:?} is not an element of Z_{}^{}",
                self.n(),
                self.m()
            )));
        }
        Ok(())
    }

    /// `q^e = ζ^{2e}`.
    fn q_power(&self, e: i64) -> CycNumber {
        CycNumber::zeta_power(self.field_order(), 2 * e)
    }

    /// `Λ_λ = n^{-m} Σ_𝐢 q^{λ·𝐢} 𝐱^𝐢`.
    pub fn lambda(&self, lambda: &[u32]) -> Result<AlgebraElement> {
        self.check_lambda(lambda)?;
        let g = &self.inner.group;
        let norm = Rational::new(BigInt::from(1), BigInt::from(g.twist_count()));
        let mut out = self.zero();
        for t in 0..g.twist_count() {
            let i = g.twists_of(t);
            let dot: i64 = lambda.iter().zip(&i).map(|(&a, &b)| a as i64 * b as i64).sum();
            out.add_term(self.index_of(&g.pure_twist(&i)), &self.q_power(dot).scale(&norm));
        }
        Ok(out)
    }

    /// `Σ_λ c(λ) Λ_λ` for a scalar function `c` on `Z_n^m`, expanded in the
    /// `𝐱`-basis.
    pub fn lambda_combination(&self, c: impl Fn(&[u32]) -> CycNumber) -> AlgebraElement {
        let g = &self.inner.group;
        let mut out = self.zero();
        for t in 0..g.twist_count() {
            let lambda = g.twists_of(t);
            let coeff = c(&lambda);
            if coeff.is_zero() {
                continue;
            }
            let l = self.lambda(&lambda).expect("valid lambda");
            out = out.plus(&l.scale(&coeff));
        }
        out
    }

    fn check_l(&self, l: usize) -> Result<()> {
        if l == 0 || l >= self.m() {
            return Err(Error::IndexOutOfRange {
                what: "generator index l",
                index: l,
                max: self.m().saturating_sub(1),
            });
        }
        Ok(())
    }

    /// `ζ^{sign · λ_l λ_{l+1}}` with `λ` entries taken in `[0, n)`.
    fn twisted_phase(&self, l: usize, sign: i64) -> impl Fn(&[u32]) -> CycNumber + '_ {
        let order = self.field_order();
        move |lambda: &[u32]| {
            CycNumber::zeta_power(order, sign * lambda[l - 1] as i64 * lambda[l] as i64)
        }
    }

    /// `y_l = Σ_λ ζ^{-λ_l λ_{l+1}} Λ_λ`.
    pub fn y(&self, l: usize) -> Result<AlgebraElement> {
        self.check_l(l)?;
        Ok(self.lambda_combination(self.twisted_phase(l, -1)))
    }

    /// `y_l⁻¹ = Σ_λ ζ^{λ_l λ_{l+1}} Λ_λ`.
    pub fn y_inverse(&self, l: usize) -> Result<AlgebraElement> {
        self.check_l(l)?;
        Ok(self.lambda_combination(self.twisted_phase(l, 1)))
    }

    /// `z_l = y_l⁻¹ s_l`.
    pub fn z(&self, l: usize) -> Result<AlgebraElement> {
        Ok(self.mul(&self.y_inverse(l)?, &self.s(l)?))
    }

    pub fn generators(&self) -> Generators {
        let m = self.m();
        Generators {
            x: (1..=m).map(|i| self.x(i).expect("in range")).collect(),
            s: (1..m).map(|l| self.s(l).expect("in range")).collect(),
            y: (1..m).map(|l| self.y(l).expect("in range")).collect(),
            z: (1..m).map(|l| self.z(l).expect("in range")).collect(),
        }
    }

    /// The convolution product.
    pub fn convolve(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut acc: Vec<Option<CycNumber>> = vec![None; self.dimension()];
        for (&g, ca) in &a.terms {
            for (&h, cb) in &b.terms {
                let gh = self.mul_index(g, h);
                let p = ca * cb;
                match &mut acc[gh.0] {
                    Some(v) => *v += &p,
                    slot => *slot = Some(p),
                }
            }
        }
        let mut out = self.zero();
        out.terms = acc
            .into_iter()
            .enumerate()
            .filter_map(|(ix, c)| c.filter(|c| !c.is_zero()).map(|c| (GroupIndex(ix), c)))
            .collect();
        out
    }

    pub fn product(&self, factors: &[&AlgebraElement]) -> Result<AlgebraElement> {
        let mut acc = self.one();
        for f in factors {
            acc = self.convolve(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &AlgebraElement, k: u32) -> Result<AlgebraElement> {
        self.check(a)?;
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        Ok(acc)
    }

    /// `g · a` for a basis element `g`.
    pub fn left_translate(&self, g: GroupIndex, a: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        out.terms = a
            .terms
            .iter()
            .map(|(&h, c)| (self.mul_index(g, h), c.clone()))
            .collect();
        out
    }

    /// `a · g` for a basis element `g`.
    pub fn right_translate(&self, a: &AlgebraElement, g: GroupIndex) -> AlgebraElement {
        let mut out = self.zero();
        out.terms = a
            .terms
            .iter()
            .map(|(&h, c)| (self.mul_index(h, g), c.clone()))
            .collect();
        out
    }

    /// Runs the full relation suite on the canonical generators.
    pub fn verify_defining_relations(&self) -> Result<CheckReport> {
        Caps::require("relation suite", self.dimension(), self.caps().relations)?;
        let gens = self.generators();
        let mut report = self.check_relations(&gens);
        self.check_lambda_family(&mut report);
        self.check_y_and_z_structure(&gens, &mut report);
        Ok(report)
    }

    fn compare(
        &self,
        outcome: &mut CheckOutcome,
        case: impl FnOnce() -> String,
        lhs: &AlgebraElement,
        rhs: &AlgebraElement,
    ) {
        let diff = lhs.first_difference(rhs);
        outcome.record(diff.is_none(), || {
            let (ix, a, b) = diff.expect("differs");
            Counterexample {
                case: case(),
                coordinate: Some(describe(self.element_at(ix))),
                lhs: Some(a.to_string()),
                rhs: Some(b.to_string()),
            }
        });
    }

    /// `Σ_{i,j ∈ range} q^{-ij} x_l^i x_{l+1}^j / n`.
    fn z_square_sum(&self, gens: &Generators, l: usize, range: std::ops::Range<u32>) -> AlgebraElement {
        let n = self.n();
        let inv_n = Rational::new(BigInt::from(1), BigInt::from(n));
        let mut out = self.zero();
        for i in range.clone() {
            for j in range.clone() {
                let mono = self.mul(
                    &self.pow(&gens.x[l - 1], i).expect("params"),
                    &self.pow(&gens.x[l], j).expect("params"),
                );
                let c = self.q_power(-(i as i64 * j as i64)).scale(&inv_n);
                out = out.plus(&mono.scale(&c));
            }
        }
        out
    }

    /// Checks every defining relation of `H_{n,m}` on `gens.x`, `gens.z`
    /// and the symmetric-group relations on `gens.s`.
    pub fn check_relations(&self, gens: &Generators) -> CheckReport {
        let m = self.m();
        let n = self.n();
        let one = self.one();
        let mut report = CheckReport::default();
        let sigma = |l: usize, i: usize| -> usize {
            // σ_l on 1-based points
            if i == l {
                l + 1
            } else if i == l + 1 {
                l
            } else {
                i
            }
        };

        let mut o = CheckOutcome::default();
        for i in 1..=m {
            let p = self.pow(&gens.x[i - 1], n).expect("params");
            self.compare(&mut o, || format!("i={i}"), &p, &one);
        }
        report.insert("x_power", o);

        let mut o = CheckOutcome::default();
        for i in 1..=m {
            for j in i + 1..=m {
                let (a, b) = (&gens.x[i - 1], &gens.x[j - 1]);
                self.compare(&mut o, || format!("i={i}, j={j}"), &self.mul(a, b), &self.mul(b, a));
            }
        }
        report.insert("x_commute", o);

        for (name, family) in [("z", &gens.z), ("s", &gens.s)] {
            let mut o = CheckOutcome::default();
            for l in 1..m {
                for i in 1..=m {
                    let lhs = self.mul(&family[l - 1], &gens.x[i - 1]);
                    let rhs = self.mul(&gens.x[sigma(l, i) - 1], &family[l - 1]);
                    self.compare(&mut o, || format!("l={l}, i={i}"), &lhs, &rhs);
                }
            }
            report.insert(&format!("{name}_x"), o);

            let mut o = CheckOutcome::default();
            for l in 1..m {
                for k in l + 2..m {
                    let (a, b) = (&family[l - 1], &family[k - 1]);
                    self.compare(&mut o, || format!("l={l}, k={k}"), &self.mul(a, b), &self.mul(b, a));
                }
            }
            report.insert(&format!("{name}_commute"), o);

            let mut o = CheckOutcome::default();
            for l in 1..m.saturating_sub(1) {
                let (a, b) = (&family[l - 1], &family[l]);
                let lhs = self.mul(&self.mul(a, b), a);
                let rhs = self.mul(&self.mul(b, a), b);
                self.compare(&mut o, || format!("l={l}"), &lhs, &rhs);
            }
            report.insert(&format!("{name}_braid"), o);
        }

        let mut o = CheckOutcome::default();
        for l in 1..m {
            let lhs = self.mul(&gens.z[l - 1], &gens.z[l - 1]);
            let rhs = self.z_square_sum(gens, l, 0..n);
            self.compare(&mut o, || format!("l={l} (sum over i,j = 0..n-1)"), &lhs, &rhs);
        }
        report.insert("z_square", o);

        // The literal range i, j = 1..n-1 is reported as a note only.
        for l in 1..m {
            let lhs = self.mul(&gens.z[l - 1], &gens.z[l - 1]);
            let literal = self.z_square_sum(gens, l, 1..n);
            if lhs != literal {
                report.notes.push(format!(
                    "z_{l}^2 differs from (1/n) sum_{{i,j=1}}^{{n-1}} q^(-ij) x_{l}^i x_{}^j; \
                     the relation holds with the sum over i,j = 0..n-1",
                    l + 1
                ));
            }
        }

        let mut o = CheckOutcome::default();
        for l in 1..m {
            let sq = self.mul(&gens.s[l - 1], &gens.s[l - 1]);
            self.compare(&mut o, || format!("l={l}"), &sq, &one);
        }
        report.insert("s_square", o);

        report
    }

    // Λ_λ idempotent, orthogonal, complete, and x-eigenvectors.
    fn check_lambda_family(&self, report: &mut CheckReport) {
        let g = &self.inner.group;
        let lambdas: Vec<Vec<u32>> = (0..g.twist_count()).map(|t| g.twists_of(t)).collect();
        let elems: Vec<AlgebraElement> =
            lambdas.iter().map(|l| self.lambda(l).expect("valid")).collect();

        let mut o = CheckOutcome::default();
        let mut total = self.zero();
        for (lam, e) in lambdas.iter().zip(&elems) {
            self.compare(&mut o, || format!("lambda={lam:?}"), &self.mul(e, e), e);
            total = total.plus(e);
        }
        report.insert("lambda_idempotent", o);
        report.insert(
            "lambda_complete",
            CheckOutcome::single(total == self.one(), || Counterexample::case("sum of all Lambda")),
        );

        // Exhaustive pairs up to 64 labels; beyond that each label is paired
        // with its successor.
        let mut o = CheckOutcome::default();
        let count = lambdas.len();
        for a in 0..count {
            let partners: Vec<usize> = if count <= 64 {
                (0..count).filter(|&b| b != a).collect()
            } else {
                vec![(a + 1) % count]
            };
            for b in partners {
                if a == b {
                    continue;
                }
                let p = self.mul(&elems[a], &elems[b]);
                self.compare(
                    &mut o,
                    || format!("lambda={:?}, mu={:?}", lambdas[a], lambdas[b]),
                    &p,
                    &self.zero(),
                );
            }
        }
        report.insert("lambda_orthogonal", o);

        let mut o = CheckOutcome::default();
        for (lam, e) in lambdas.iter().zip(&elems) {
            for i in 1..=self.m() {
                let lhs = self.mul(&self.x(i).expect("in range"), e);
                let rhs = e.scale(&self.q_power(-(lam[i - 1] as i64)));
                self.compare(&mut o, || format!("lambda={lam:?}, i={i}"), &lhs, &rhs);
            }
        }
        report.insert("lambda_x_eigen", o);
    }

    fn check_y_and_z_structure(&self, gens: &Generators, report: &mut CheckReport) {
        let two_n = 2 * self.n();
        let one = self.one();

        let mut o = CheckOutcome::default();
        for l in 1..self.m() {
            let y = &gens.y[l - 1];
            let mut acc = one.clone();
            for k in 1..=two_n {
                acc = self.mul(&acc, y);
                let is_one = acc == one;
                let expected = k == two_n;
                o.record(is_one == expected, || {
                    Counterexample::case(format!("l={l}: y_l^{k} {} 1", if is_one { "=" } else { "!=" }))
                });
            }
        }
        report.insert("y_order", o);

        let mut o = CheckOutcome::default();
        for l in 1..self.m() {
            let y_inv = self.y_inverse(l).expect("in range");
            self.compare(&mut o, || format!("l={l}: y_l y_l^-1"), &self.mul(&gens.y[l - 1], &y_inv), &one);
            let z_sq = self.mul(&gens.z[l - 1], &gens.z[l - 1]);
            self.compare(&mut o, || format!("l={l}: z_l^2 = y_l^-2"), &z_sq, &self.mul(&y_inv, &y_inv));
        }
        report.insert("z_square_is_y_inverse_square", o);

        let mut o = CheckOutcome::default();
        for l in 1..self.m() {
            let ys = self.mul(&gens.y[l - 1], &gens.z[l - 1]);
            self.compare(&mut o, || format!("l={l}: y_l z_l = b_l"), &ys, &gens.s[l - 1]);
        }
        report.insert("s_is_group_generator", o);

        let g = &self.inner.group;
        let mut o = CheckOutcome::default();
        for l in 1..self.m() {
            for t in 0..g.twist_count() {
                let lam = g.twists_of(t);
                let mut swapped = lam.clone();
                swapped.swap(l - 1, l);
                let lhs = self.mul(&gens.z[l - 1], &self.lambda(&lam).expect("valid"));
                let rhs = self.mul(&self.lambda(&swapped).expect("valid"), &gens.z[l - 1]);
                self.compare(&mut o, || format!("l={l}, lambda={lam:?}"), &lhs, &rhs);
            }
        }
        report.insert("z_lambda", o);
    }

    /// `dim H e`, the rank of `{g · e : g ∈ G}`.
    pub fn left_ideal_dimension(&self, e: &AlgebraElement) -> Result<usize> {
        Ok(self.left_ideal_basis(e)?.len())
    }

    /// A basis of the left ideal `H e` in echelon form.
    pub fn left_ideal_basis(&self, e: &AlgebraElement) -> Result<Vec<AlgebraElement>> {
        self.check(e)?;
        Caps::require("left ideal rank", self.dimension(), self.caps().ranks)?;
        let mut basis = EchelonBasis::new(self.field_order());
        for g in 0..self.dimension() {
            basis.insert(self.left_translate(GroupIndex(g), e).terms);
        }
        Ok(basis
            .rows
            .into_values()
            .map(|terms| {
                let mut a = self.zero();
                a.terms = terms;
                a
            })
            .collect())
    }

    /// `dim e H f`, computed as the rank of `e · (basis of H f)`.
    pub fn sandwich_dimension(&self, e: &AlgebraElement, f: &AlgebraElement) -> Result<usize> {
        self.check(e)?;
        let hf = self.left_ideal_basis(f)?;
        Ok(self.sandwich_dimension_with_basis(e, &hf))
    }

    /// `dim e H f` given a basis of `H f`.
    pub fn sandwich_dimension_with_basis(&self, e: &AlgebraElement, hf: &[AlgebraElement]) -> usize {
        let mut basis = EchelonBasis::new(self.field_order());
        for b in hf {
            basis.insert(self.mul(e, b).terms);
        }
        basis.rank()
    }
}

fn describe(u: &WreathElement) -> String {
    format!("twists={:?} perm={:?}", u.twists, u.perm.images())
}

/// Incremental row echelon form over sparse vectors. Every stored row is
/// normalised to leading coefficient 1 and vanishes before its pivot.
struct EchelonBasis {
    order: u32,
    rows: BTreeMap<GroupIndex, BTreeMap<GroupIndex, CycNumber>>,
}

impl EchelonBasis {
    fn new(order: u32) -> Self {
        EchelonBasis {
            order,
            rows: BTreeMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and keeps the remainder if nonzero.
    fn insert(&mut self, mut v: BTreeMap<GroupIndex, CycNumber>) -> bool {
        v.retain(|_, c| !c.is_zero());
        for (pivot, row) in &self.rows {
            let Some(c) = v.get(pivot).cloned() else {
                continue;
            };
            for (ix, r) in row {
                let t = &c * r;
                let entry = v.entry(*ix).or_insert_with(|| CycNumber::zero(self.order));
                *entry -= &t;
                if entry.is_zero() {
                    v.remove(ix);
                }
            }
        }
        let Some((&lead, lead_c)) = v.iter().next() else {
            return false;
        };
        let inv = lead_c.inv().expect("nonzero leading coefficient");
        for c in v.values_mut() {
            *c = &*c * &inv;
        }
        self.rows.insert(lead, v);
        true
    }
}

/// Dense matrix over `Q(ζ_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: Vec<CycNumber>,
}

impl CycMatrix {
    pub fn zeros(order: u32, rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            order,
            entries: vec![CycNumber::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u32, k: usize) -> Self {
        let mut m = Self::zeros(order, k, k);
        for i in 0..k {
            m.set(i, i, CycNumber::one(order));
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(order: u32, len: usize, columns: &[AlgebraElement]) -> Self {
        let mut m = Self::zeros(order, len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (ix, c) in col.terms() {
                m.set(ix.0, j, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNumber {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNumber) {
        assert_eq!(v.order(), self.order, "cyclotomic order mismatch");
        self.entries[r * self.cols + c] = v;
    }

    /// Exact rank by Gaussian elimination, pivoting on the first nonzero
    /// entry of each column.
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        let cols = self.cols;
        let mut rank = 0;
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !a[r * cols + c].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    a.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = a[rank * cols + c].inv().expect("nonzero pivot");
            for j in c..cols {
                a[rank * cols + j] = &a[rank * cols + j] * &inv;
            }
            for r in rank + 1..self.rows {
                let f = a[r * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let t = &f * &a[rank * cols + j];
                    a[r * cols + j] -= &t;
                }
            }
            rank += 1;
        }
        rank
    }
}

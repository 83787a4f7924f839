//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}`, i.e. as
//! polynomials in `ζ` reduced modulo the `N`-th cyclotomic polynomial `Φ_N`.
//! Because `Φ_N` is irreducible the quotient is a field and the reduced
//! coefficient vector is a canonical form: two values are equal exactly when
//! their coefficient vectors are.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Coefficients of `Φ_N` in ascending degree order.
///
/// Computed by exact division of `x^N - 1` by `Φ_d` for every proper divisor
/// `d` of `N`.
pub fn cyclotomic_polynomial(order: u32) -> Result<Vec<BigInt>> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(field(order).phi.clone())
}

fn compute_cyclotomic(order: u32) -> Vec<BigInt> {
    let n = order as usize;
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = BigInt::from(-1);
    poly[n] = BigInt::one();
    for d in 1..order {
        if order.is_multiple_of(d) {
            poly = exact_div_monic(&poly, &compute_cyclotomic(d));
        }
    }
    poly
}

// Quotient of `num` by the monic `den`; the remainder must vanish.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k - dd + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn euler_phi(mut n: u32) -> usize {
    let mut result = n as usize;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p as usize;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n as usize;
    }
    result
}

struct Field {
    phi: Vec<BigInt>,
    degree: usize,
}

thread_local! {
    static FIELDS: RefCell<HashMap<u32, Rc<Field>>> = RefCell::new(HashMap::new());
}

fn field(order: u32) -> Rc<Field> {
    FIELDS.with(|cache| {
        cache
            .borrow_mut()
            .entry(order)
            .or_insert_with(|| {
                let phi = compute_cyclotomic(order);
                let degree = phi.len() - 1;
                debug_assert_eq!(degree, euler_phi(order));
                Rc::new(Field { phi, degree })
            })
            .clone()
    })
}

/// `φ(N)`, the degree of `Q(ζ_N)` over `Q`.
pub fn degree(order: u32) -> usize {
    field(order).degree
}

// Reduce an arbitrary-length coefficient vector modulo Φ_N in place.
fn reduce_in_place(f: &Field, poly: &mut Vec<Rational>) {
    let d = f.degree;
    for k in (d..poly.len()).rev() {
        if poly[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[k], Rational::zero());
        for j in 0..d {
            let pj = &f.phi[j];
            if pj.is_zero() {
                continue;
            }
            poly[k - d + j] -= &c * Rational::from_integer(pj.clone());
        }
    }
    poly.truncate(d);
    poly.resize(d, Rational::zero());
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn zero(order: u32) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        CycNumber {
            order,
            coeffs: vec![Rational::zero(); degree(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(v)))
    }

    /// `1/den` as a field element.
    pub fn fraction(order: u32, num: i64, den: i64) -> Self {
        Self::from_rational(
            order,
            Rational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    /// `ζ^k`, with `k` taken modulo `N`.
    pub fn zeta_power(order: u32, k: i64) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let e = k.rem_euclid(order as i64) as usize;
        let f = field(order);
        let mut poly = vec![Rational::zero(); (e + 1).max(f.degree)];
        poly[e] = Rational::one();
        reduce_in_place(&f, &mut poly);
        CycNumber {
            order,
            coeffs: poly,
        }
    }

    /// Builds a value from power-basis coefficients of any length, reducing
    /// modulo `Φ_N`.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let f = field(order);
        let mut poly = coeffs;
        reduce_in_place(&f, &mut poly);
        Ok(CycNumber {
            order,
            coeffs: poly,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let f = field(self.order);
        let d = f.degree;
        if d == 1 {
            return CycNumber {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        reduce_in_place(&f, &mut prod);
        CycNumber {
            order: self.order,
            coeffs: prod,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm over
    /// `Q[x]` against `Φ_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.order));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        let f = field(self.order);
        let mut r0: Vec<Rational> = f.phi.iter().cloned().map(Rational::from_integer).collect();
        let mut r1 = trimmed(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_N is irreducible, so the gcd r0 is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let s: Vec<Rational> = s0.into_iter().map(|v| v * &c).collect();
        Self::from_coeffs(self.order, s)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// `self^k` for any integer `k`; negative powers require `self ≠ 0`.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// Re-reduces the stored coefficients; a no-op on canonical values.
    pub fn reduced(&self) -> Self {
        Self::from_coeffs(self.order, self.coeffs.clone()).expect("order is positive")
    }
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trimmed(out)
}

// `den` must be trimmed and nonempty.
fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trimmed(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = den.last().expect("nonzero divisor").recip();
    let dd = den.len() - 1;
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        for (j, dj) in den.iter().enumerate() {
            let t = &c * dj;
            rem[k - dd + j] -= t;
        }
        quot[k - dd] = c;
    }
    rem.truncate(dd);
    (trimmed(quot), trimmed(rem))
}

/// `Σ_{i,j=0}^{n-1} q^{-ij - ai - bj}` with `q = ζ²`, `ζ` of order `2n`.
///
/// Completing the square shows the sum equals `n · q^{ab}`.
pub fn gauss_sum_check(n: u32, a: u32, b: u32) -> CycNumber {
    let order = 2 * n;
    let n_i = n as i64;
    let (a, b) = (a as i64, b as i64);
    let mut acc = CycNumber::zero(order);
    for i in 0..n_i {
        for j in 0..n_i {
            let e = (-(i * j) - a * i - b * j).rem_euclid(n_i);
            acc += &CycNumber::zeta_power(order, 2 * e);
        }
    }
    acc
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &CycNumber) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{a}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}({})", self.order, self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    order: u32,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycRepr::deserialize(deserializer)?;
        if repr.order == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let d = degree(repr.order);
        if repr.coeffs.len() != d {
            return Err(D::Error::custom(format!(
                "expected {d} coefficients for order {}, found {}",
                repr.order,
                repr.coeffs.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(d);
        for [num, den] in repr.coeffs {
            let num: BigInt = num.parse().map_err(D::Error::custom)?;
            let den: BigInt = den.parse().map_err(D::Error::custom)?;
            if !den.is_positive() {
                return Err(D::Error::custom("denominator must be positive"));
            }
            coeffs.push(Rational::new(num, den));
        }
        Ok(CycNumber {
            order: repr.order,
            coeffs,
        })
    }
}

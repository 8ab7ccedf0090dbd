//! Exact rationals, negative continued fractions and exact integer forms.
//!
//! Everything downstream compares d-invariants for equality, so nothing in
//! this crate ever touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    /// Panics on a zero denominator; meant for literals.
    pub fn frac(num: i64, den: i64) -> Self {
        Rational::new(num, den).expect("nonzero denominator")
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_i128_ratio(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("reciprocal of zero"));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Numerator and denominator as machine integers, when they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.numer().to_i64()?, self.denom().to_i64()?))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((self.0).$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$m(&rhs.0))
            }
        }
        impl $tr<i64> for Rational {
            type Output = Rational;
            fn $m(self, rhs: i64) -> Rational {
                Rational((self.0).$m(BigRational::from_integer(rhs.into())))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0
            .partial_cmp(&BigRational::from_integer((*other).into()))
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_bigint(s: &str, offset: usize) -> Result<BigInt> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    let body = t.strip_prefix('+').unwrap_or(t);
    let digits = body.strip_prefix('-').unwrap_or(body);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(
            offset + lead,
            format!("expected an integer, found {t:?}"),
        ));
    }
    body.parse::<BigInt>()
        .map_err(|e| Error::parse(offset + lead, e.to_string()))
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n` or `n/d`, with an optional sign on either part.
    fn from_str(s: &str) -> Result<Self> {
        match s.find('/') {
            None => Ok(Rational::from(parse_bigint(s, 0)?)),
            Some(k) => {
                let n = parse_bigint(&s[..k], 0)?;
                let d = parse_bigint(&s[k + 1..], k + 1)?;
                if d.is_zero() {
                    return Err(Error::parse(k + 1, "zero denominator"));
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sorted copy of a collection of rationals, the multiset view used for matching.
pub fn sorted_multiset<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Vec<Rational> {
    let mut v: Vec<Rational> = values.into_iter().cloned().collect();
    v.sort();
    v
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Expansion `x = c1 - 1/(c2 - 1/(... - 1/ck))` with every `ci <= -2`.
///
/// Exists exactly when `x < -1`.
pub fn neg_cont_frac(x: &Rational) -> Result<Vec<i64>> {
    if *x >= -1 {
        return Err(Error::invalid(format!(
            "{x} has no continued fraction with entries <= -2"
        )));
    }
    let mut out = Vec::new();
    let mut cur = x.clone();
    loop {
        let c = cur.floor();
        let ci = c.to_i64().ok_or(Error::Overflow("neg_cont_frac"))?;
        out.push(ci);
        let rest = Rational::from(c) - &cur;
        if rest.is_zero() {
            return Ok(out);
        }
        // c - x lies in (-1, 0), so the tail 1/(c - x) is below -1.
        cur = rest.recip()?;
    }
}

/// Evaluates `c1 - 1/(c2 - 1/(... - 1/ck))`.
pub fn eval_neg_cont_frac(cs: &[i64]) -> Result<Rational> {
    let (last, init) = cs
        .split_last()
        .ok_or_else(|| Error::invalid("empty expansion"))?;
    let mut acc = Rational::from_int(*last);
    for &c in init.iter().rev() {
        acc = Rational::from_int(c) - acc.recip()?;
    }
    Ok(acc)
}

/// Dense square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix is not square"));
        }
        Ok(IntMatrix {
            n,
            entries: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Determinant, adjugate and definiteness data of a nondegenerate form.
///
/// `adj` satisfies `Q * adj = det * I`; the exact inverse is `adj / det`.
/// When every entry fits, a machine-integer copy is kept for the lattice
/// hot loops.
#[derive(Clone, Debug)]
pub struct FormData {
    pub form: IntMatrix,
    pub det: BigInt,
    adj: Vec<BigInt>,
    small: Option<SmallForm>,
    leading_minors: Vec<BigInt>,
}

/// `i128` copies of the determinant and adjugate.
#[derive(Clone, Debug)]
pub struct SmallForm {
    pub det: i128,
    pub adj: Vec<i128>,
}

impl SmallForm {
    pub fn adj(&self, n: usize, i: usize, j: usize) -> i128 {
        self.adj[i * n + j]
    }
}

trait Ring: Clone + PartialEq {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn r_is_zero(&self) -> bool;
    fn mul_sub_div(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self>;
}

impl Ring for i128 {
    fn r_zero() -> Self {
        0
    }
    fn r_one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn r_is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub_div(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self> {
        let x = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(x % prev, 0);
        Some(x / prev)
    }
}

impl Ring for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        v.into()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub_div(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self> {
        Some((a * b - c * d) / prev)
    }
}

enum Elim<T> {
    Done { det: T, adj: Vec<T>, minors: Vec<T> },
    ZeroPivot { minors: Vec<T> },
    Overflow,
}

/// Fraction-free Gauss-Jordan on `[Q | I]` without pivoting.
///
/// The pivot at step k is the leading principal minor of order k+1, so a
/// clean run both inverts Q and certifies its signature pattern.
fn bareiss<T: Ring>(q: &IntMatrix) -> Elim<T> {
    let n = q.dim();
    let w = 2 * n;
    let mut m: Vec<T> = vec![T::r_zero(); n * w];
    for i in 0..n {
        for j in 0..n {
            m[i * w + j] = T::from_i64(q.get(i, j));
        }
        m[i * w + n + i] = T::r_one();
    }
    let mut prev = T::r_one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let piv = m[k * w + k].clone();
        if piv.r_is_zero() {
            return Elim::ZeroPivot { minors };
        }
        minors.push(piv.clone());
        for i in 0..n {
            if i == k {
                continue;
            }
            let mik = m[i * w + k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = match T::mul_sub_div(&piv, &m[i * w + j], &mik, &m[k * w + j], &prev) {
                    Some(v) => v,
                    None => return Elim::Overflow,
                };
                m[i * w + j] = v;
            }
            m[i * w + k] = T::r_zero();
        }
        prev = piv;
    }
    // Left block is now prev * I and the right block is prev * Q^{-1} = adj(Q).
    let adj = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| m[i * w + n + j].clone())
        .collect();
    Elim::Done {
        det: prev,
        adj,
        minors,
    }
}

/// Rational Gauss-Jordan with row pivoting, used when some leading minor vanishes.
fn rational_inverse(q: &IntMatrix) -> Result<(BigInt, Vec<BigInt>)> {
    let n = q.dim();
    let w = 2 * n;
    let mut m: Vec<BigRational> = vec![BigRational::zero(); n * w];
    for i in 0..n {
        for j in 0..n {
            m[i * w + j] = BigRational::from_integer(q.get(i, j).into());
        }
        m[i * w + n + i] = BigRational::one();
    }
    let mut det = BigRational::one();
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !m[r * w + k].is_zero())
            .ok_or(Error::DegenerateForm)?;
        if p != k {
            for j in 0..w {
                m.swap(p * w + j, k * w + j);
            }
            det = -det;
        }
        let piv = m[k * w + k].clone();
        det *= &piv;
        for j in 0..w {
            m[k * w + j] = &m[k * w + j] / &piv;
        }
        for i in 0..n {
            if i == k || m[i * w + k].is_zero() {
                continue;
            }
            let f = m[i * w + k].clone();
            for j in 0..w {
                let t = &f * &m[k * w + j];
                m[i * w + j] -= t;
            }
        }
    }
    let det = det.to_integer();
    let adj = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (&m[i * w + n + j] * BigRational::from_integer(det.clone())).to_integer())
        .collect();
    Ok((det, adj))
}

/// Exact determinant and inverse of a symmetric integer form.
pub fn form_data(q: &IntMatrix) -> Result<FormData> {
    if !q.is_symmetric() {
        return Err(Error::invalid("form is not symmetric"));
    }
    let n = q.dim();
    if n == 0 {
        return Ok(FormData {
            form: q.clone(),
            det: BigInt::one(),
            adj: vec![],
            small: Some(SmallForm {
                det: 1,
                adj: vec![],
            }),
            leading_minors: vec![],
        });
    }
    match bareiss::<i128>(q) {
        Elim::Done { det, adj, minors } => {
            return Ok(FormData {
                form: q.clone(),
                det: det.into(),
                adj: adj.iter().map(|&x| x.into()).collect(),
                small: Some(SmallForm { det, adj }),
                leading_minors: minors.into_iter().map(Into::into).collect(),
            })
        }
        Elim::ZeroPivot { minors } => {
            let (det, adj) = rational_inverse(q)?;
            return Ok(FormData::assemble(
                q,
                det,
                adj,
                minors.into_iter().map(Into::into).collect(),
            ));
        }
        Elim::Overflow => {}
    }
    match bareiss::<BigInt>(q) {
        Elim::Done { det, adj, minors } => Ok(FormData::assemble(q, det, adj, minors)),
        Elim::ZeroPivot { minors } => {
            let (det, adj) = rational_inverse(q)?;
            Ok(FormData::assemble(q, det, adj, minors))
        }
        Elim::Overflow => unreachable!("big integers do not overflow"),
    }
}

impl FormData {
    fn assemble(q: &IntMatrix, det: BigInt, adj: Vec<BigInt>, minors: Vec<BigInt>) -> Self {
        let small = det.to_i128().and_then(|d| {
            let a: Option<Vec<i128>> = adj.iter().map(|x| x.to_i128()).collect();
            a.map(|adj| SmallForm { det: d, adj })
        });
        FormData {
            form: q.clone(),
            det,
            adj,
            small,
            leading_minors: minors,
        }
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn adjugate(&self, i: usize, j: usize) -> &BigInt {
        &self.adj[i * self.dim() + j]
    }

    pub fn small(&self) -> Option<&SmallForm> {
        self.small.as_ref()
    }

    /// Exact `Q^{-1}` as rows of rationals.
    pub fn inverse(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        Rational::from_big(self.adjugate(i, j).clone(), self.det.clone())
                            .expect("determinant is nonzero")
                    })
                    .collect()
            })
            .collect()
    }

    /// Leading principal minors of orders 1..=k, up to the first vanishing one.
    pub fn leading_minors(&self) -> &[BigInt] {
        &self.leading_minors
    }

    /// Sylvester's criterion: the k-th leading minor has sign (-1)^k.
    pub fn is_negative_definite(&self) -> bool {
        self.leading_minors.len() == self.dim()
            && self.leading_minors.iter().enumerate().all(|(k, m)| {
                if k % 2 == 0 {
                    m.is_negative()
                } else {
                    m.is_positive()
                }
            })
    }

    pub fn abs_det(&self) -> BigInt {
        self.det.abs()
    }

    /// `x^T Q^{-1} x` for an integer vector.
    pub fn inverse_square(&self, x: &[i64]) -> Rational {
        let n = self.dim();
        if let Some(s) = &self.small {
            let mut acc: Option<i128> = Some(0);
            for i in 0..n {
                let mut row: i128 = 0;
                for j in 0..n {
                    row += s.adj[i * n + j] * x[j] as i128;
                }
                acc = acc.and_then(|a| a.checked_add(row.checked_mul(x[i] as i128)?));
            }
            if let Some(num) = acc {
                return Rational::from_i128_ratio(num, s.det).expect("nonzero det");
            }
        }
        let mut num = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                num += self.adjugate(i, j) * x[i] * x[j];
            }
        }
        Rational::from_big(num, self.det.clone()).expect("nonzero det")
    }
}

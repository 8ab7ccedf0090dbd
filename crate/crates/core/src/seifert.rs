//! Seifert fibered presentations `(b; a1/b1, ..., ar/br)` over the sphere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeifertData {
    pub b: i64,
    /// `(a_i, b_i)` with `b_i > 0` and `gcd(a_i, b_i) = 1`.
    pub coeffs: Vec<(i64, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EllipticType {
    I,
    O,
    T,
    D,
    Lens,
    NotElliptic,
}

impl EllipticType {
    pub fn is_non_cyclic_elliptic(self) -> bool {
        matches!(
            self,
            EllipticType::I | EllipticType::O | EllipticType::T | EllipticType::D
        )
    }
}

impl fmt::Display for EllipticType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EllipticType::I => "I",
            EllipticType::O => "O",
            EllipticType::T => "T",
            EllipticType::D => "D",
            EllipticType::Lens => "Lens",
            EllipticType::NotElliptic => "NotElliptic",
        };
        f.write_str(s)
    }
}

/// A presentation together with whether it describes the opposite
/// orientation of the manifold it was derived from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrientedSeifert {
    pub data: SeifertData,
    pub reversed: bool,
}

impl SeifertData {
    pub fn new(b: i64, coeffs: Vec<(i64, i64)>) -> Result<Self> {
        for &(a, d) in &coeffs {
            if d <= 0 {
                return Err(Error::invalid(format!("multiplicity {d} must be positive")));
            }
            if gcd(a, d) != 1 {
                return Err(Error::invalid(format!("{a}/{d} is not reduced")));
            }
        }
        Ok(SeifertData { b, coeffs })
    }

    pub fn fractions(&self) -> impl Iterator<Item = Rational> + '_ {
        self.coeffs.iter().map(|&(a, d)| Rational::frac(a, d))
    }

    /// Multiplicities of the exceptional fibers (those with `b_i >= 2`), sorted.
    pub fn multiplicities(&self) -> Vec<i64> {
        let mut m: Vec<i64> = self
            .coeffs
            .iter()
            .map(|c| c.1)
            .filter(|&d| d >= 2)
            .collect();
        m.sort_unstable();
        m
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.b)?;
        for (k, (a, d)) in self.coeffs.iter().enumerate() {
            let sep = if k == 0 { " " } else { ", " };
            write!(f, "{sep}{a}/{d}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for OrientedSeifert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "-{}", self.data)
        } else {
            write!(f, "{}", self.data)
        }
    }
}

/// `e(S) = b + sum a_i/b_i`.
pub fn euler_number(s: &SeifertData) -> Rational {
    s.fractions()
        .fold(Rational::from_int(s.b), |acc, x| acc + x)
}

/// `|b_1 ... b_r * e(S)|`; zero means infinite first homology.
pub fn h1_order(s: &SeifertData) -> Result<u64> {
    let prod: BigInt = s.coeffs.iter().map(|c| BigInt::from(c.1)).product();
    let v = euler_number(s) * Rational::from(prod);
    if !v.is_integer() {
        return Err(Error::Internal(format!("non-integral |H1| for {s}")));
    }
    v.numer().abs().to_u64().ok_or(Error::Overflow("h1_order"))
}

pub fn classify(s: &SeifertData) -> EllipticType {
    match s.multiplicities().as_slice() {
        [] | [_] | [_, _] => EllipticType::Lens,
        [2, 3, 5] => EllipticType::I,
        [2, 3, 4] => EllipticType::O,
        [2, 3, 3] => EllipticType::T,
        [2, 2, _] => EllipticType::D,
        _ => EllipticType::NotElliptic,
    }
}

fn to_i64(x: BigInt, what: &'static str) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow(what))
}

/// Moves integer parts into `b` so every fraction lies in `(0, 1)`;
/// fibers with `b_i = 1` are absorbed entirely.
pub fn normalize_fractions(s: &SeifertData) -> Result<SeifertData> {
    let mut b = BigInt::from(s.b);
    let mut coeffs = Vec::with_capacity(s.coeffs.len());
    for &(a, d) in &s.coeffs {
        let (q, r) = a.div_mod_floor(&d);
        b += q;
        if r != 0 {
            coeffs.push((r, d));
        }
    }
    Ok(SeifertData {
        b: to_i64(b, "normalize_fractions")?,
        coeffs,
    })
}

/// Presentation of the oppositely oriented manifold.
pub fn reverse_orientation(s: &SeifertData) -> Result<SeifertData> {
    let neg = SeifertData {
        b: s.b
            .checked_neg()
            .ok_or(Error::Overflow("reverse_orientation"))?,
        coeffs: s
            .coeffs
            .iter()
            .map(|&(a, d)| a.checked_neg().map(|na| (na, d)))
            .collect::<Option<_>>()
            .ok_or(Error::Overflow("reverse_orientation"))?,
    };
    normalize_fractions(&neg)
}

/// Canonical data for this exact orientation, if it fits the pattern
/// `(-1; 1/2, 1/3, a/b)` (types I, O, T) or `(-1; 1/2, 1/2, a/b)` (type D).
fn canonical_same_orientation(s: &SeifertData, ty: EllipticType) -> Result<Option<SeifertData>> {
    let n = normalize_fractions(s)?;
    let e = euler_number(&n);
    let (fixed, third): (Vec<(i64, i64)>, i64) = match ty {
        EllipticType::D => {
            let twos = n.coeffs.iter().filter(|c| c.1 == 2).count();
            let third = if twos == 3 {
                2
            } else {
                *n.multiplicities().last().unwrap()
            };
            (vec![(1, 2), (1, 2)], third)
        }
        EllipticType::I | EllipticType::O | EllipticType::T => {
            if !n.coeffs.contains(&(1, 3)) {
                return Ok(None);
            }
            let third = *n.multiplicities().last().unwrap();
            (vec![(1, 2), (1, 3)], third)
        }
        _ => {
            return Err(Error::invalid(format!(
                "{s} is not a non-cyclic elliptic manifold"
            )))
        }
    };
    let fixed_sum: Rational = fixed.iter().map(|&(a, d)| Rational::frac(a, d)).sum();
    let a3 = (e + 1 - fixed_sum) * third;
    let a3 = a3
        .to_i64()
        .ok_or_else(|| Error::Internal(format!("non-integral canonical coefficient for {s}")))?;
    let mut coeffs = fixed;
    coeffs.push((a3, third));
    Ok(Some(SeifertData { b: -1, coeffs }))
}

/// Canonical representative; `reversed` records that it describes the
/// opposite orientation of `s`.
pub fn normalize(s: &SeifertData) -> Result<OrientedSeifert> {
    let ty = classify(s);
    if !ty.is_non_cyclic_elliptic() || s.coeffs.iter().filter(|c| c.1 >= 2).count() != 3 {
        return Err(Error::invalid(format!(
            "{s} is not a non-cyclic elliptic manifold"
        )));
    }
    let same = canonical_same_orientation(s, ty)?;
    let opposite = canonical_same_orientation(&reverse_orientation(s)?, ty)?;
    match (same, opposite) {
        (Some(c), None) => Ok(OrientedSeifert {
            data: c,
            reversed: false,
        }),
        (None, Some(c)) => Ok(OrientedSeifert {
            data: c,
            reversed: true,
        }),
        (Some(c), Some(r)) => {
            if euler_number(&c).is_positive() {
                Ok(OrientedSeifert {
                    data: c,
                    reversed: false,
                })
            } else {
                Ok(OrientedSeifert {
                    data: r,
                    reversed: true,
                })
            }
        }
        (None, None) => Err(Error::Internal(format!("no canonical form for {s}"))),
    }
}

/// All canonical non-cyclic elliptic manifolds with `|H1| <= h1_bound`, one
/// per manifold up to orientation. Dihedral families `(-1; 1/2, 1/2, m/n)`
/// are truncated at `n <= n_bound`.
pub fn enumerate_elliptic(h1_bound: u64, n_bound: i64) -> Vec<OrientedSeifert> {
    let mut out = enumerate_iot(h1_bound);
    out.extend(enumerate_dihedral(h1_bound, n_bound));
    out
}

/// Types I, O and T: `(-1; 1/2, 1/3, a/b)` with `|H1| = |6a - (6 - b)|`.
pub fn enumerate_iot(h1_bound: u64) -> Vec<OrientedSeifert> {
    let bound = h1_bound as i64;
    let mut seen = std::collections::BTreeSet::new();
    for third in [5i64, 4, 3] {
        let lo = -(bound / 6) - 2;
        let hi = bound / 6 + 2;
        for a in lo..=hi {
            if gcd(a, third) != 1 {
                continue;
            }
            let s = SeifertData {
                b: -1,
                coeffs: vec![(1, 2), (1, 3), (a, third)],
            };
            let h = match h1_order(&s) {
                Ok(h) => h,
                Err(_) => continue,
            };
            if h == 0 || h > h1_bound {
                continue;
            }
            if let Ok(c) = normalize(&s) {
                seen.insert((h, classify(&c.data), c.data));
            }
        }
    }
    seen.into_iter()
        .map(|(_, _, data)| OrientedSeifert {
            data,
            reversed: false,
        })
        .collect()
}

/// Type D: `(-1; 1/2, 1/2, m/n)` with `|H1| = 4m`, every `n` in `2..=n_bound`
/// coprime to `m`.
pub fn enumerate_dihedral(h1_bound: u64, n_bound: i64) -> Vec<OrientedSeifert> {
    let mut out = Vec::new();
    for m in 1..=(h1_bound / 4) as i64 {
        for n in 2..=n_bound {
            if gcd(m, n) == 1 {
                out.push(OrientedSeifert {
                    data: SeifertData {
                        b: -1,
                        coeffs: vec![(1, 2), (1, 2), (m, n)],
                    },
                    reversed: false,
                });
            }
        }
    }
    out
}

/// Invariant factors of `H1` from the standard presentation
/// `b*m0 + m1 + ... + mr = 0`, `b_i*m0 = a_i*m_i`.
pub fn h1_invariant_factors(s: &SeifertData) -> Result<Vec<u64>> {
    let r = s.coeffs.len();
    let mut rows = Vec::with_capacity(r + 1);
    let mut first = vec![BigInt::from(s.b)];
    first.extend(std::iter::repeat_n(BigInt::from(-1), r));
    rows.push(first);
    for (i, &(a, d)) in s.coeffs.iter().enumerate() {
        let mut row = vec![BigInt::from(0); r + 1];
        row[0] = BigInt::from(a);
        row[i + 1] = BigInt::from(d);
        rows.push(row);
    }
    let diag = smith_diagonal(rows);
    diag.into_iter()
        .filter(|x| *x != BigInt::from(1))
        .map(|x| x.to_u64().ok_or(Error::Overflow("h1_invariant_factors")))
        .collect()
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the k-th factor is `d_k / d_{k-1}`.
fn smith_diagonal(m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    use num_traits::{One, Zero};
    let n = m.len();
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let sub: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
                    .collect();
                g = g.gcd(&cofactor_det(&sub));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), n - k + 1));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    use num_traits::{One, Zero};
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * cofactor_det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(Error::parse(
                self.pos,
                format!("expected '{}', found '{}'", c as char, x as char),
            )),
            None => Err(Error::parse(
                self.pos,
                format!("expected '{}', found end of input", c as char),
            )),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(Error::parse(start, "expected an integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| Error::parse(start, "integer out of range"))
    }
}

/// Parses `(b; a1/b1, a2/b2, ...)`, whitespace-insensitive. A leading `-`
/// denotes the oppositely oriented manifold.
pub fn parse_seifert(text: &str) -> Result<SeifertData> {
    let mut c = Cursor {
        s: text.as_bytes(),
        pos: 0,
    };
    let negate = if c.peek() == Some(b'-') {
        c.pos += 1;
        true
    } else {
        false
    };
    c.expect(b'(')?;
    let b = c.int()?;
    let mut coeffs = Vec::new();
    if c.peek() == Some(b';') {
        c.pos += 1;
        if c.peek() != Some(b')') {
            loop {
                c.skip_ws();
                let at = c.pos;
                let a = c.int()?;
                c.expect(b'/')?;
                let d = c.int()?;
                if d <= 0 {
                    return Err(Error::parse(
                        at,
                        format!("multiplicity {d} must be positive"),
                    ));
                }
                if gcd(a, d) != 1 {
                    return Err(Error::parse(at, format!("{a}/{d} is not reduced")));
                }
                coeffs.push((a, d));
                if c.peek() == Some(b',') {
                    c.pos += 1;
                } else {
                    break;
                }
            }
        }
    }
    c.expect(b')')?;
    if let Some(x) = c.peek() {
        return Err(Error::parse(
            c.pos,
            format!("unexpected trailing '{}'", x as char),
        ));
    }
    let data = SeifertData { b, coeffs };
    if negate {
        reverse_orientation(&data)
    } else {
        Ok(data)
    }
}

impl FromStr for SeifertData {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_seifert(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(b: i64, c: &[(i64, i64)]) -> SeifertData {
        SeifertData::new(b, c.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(euler_number(&sd(-2, &[(1, 2), (2, 3), (4, 5)])), r(-1, 30));
        assert_eq!(euler_number(&sd(-1, &[(1, 2), (1, 2), (1, 3)])), r(1, 3));
        assert_eq!(euler_number(&sd(0, &[])), r(0, 1));
    }

    #[test]
    fn h1_orders() {
        assert_eq!(h1_order(&sd(-2, &[(1, 2), (2, 3), (4, 5)])).unwrap(), 1);
        assert_eq!(h1_order(&sd(-1, &[(1, 2), (1, 3), (2, 5)])).unwrap(), 7);
        for (m, n) in [(1, 3), (2, 5), (7, 11), (8, 9), (3, 4)] {
            assert_eq!(
                h1_order(&sd(-1, &[(1, 2), (1, 2), (m, n)])).unwrap(),
                4 * m as u64
            );
        }
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify(&sd(-1, &[(1, 2), (1, 3), (2, 5)])),
            EllipticType::I
        );
        assert_eq!(
            classify(&sd(-1, &[(1, 2), (1, 2), (7, 3)])),
            EllipticType::D
        );
        assert_eq!(classify(&sd(-1, &[(1, 2), (1, 4)])), EllipticType::Lens);
        assert_eq!(
            classify(&sd(-1, &[(1, 2), (1, 3), (1, 7)])),
            EllipticType::NotElliptic
        );
        assert_eq!(
            classify(&sd(-1, &[(1, 2), (1, 3), (1, 4)])),
            EllipticType::O
        );
        assert_eq!(
            classify(&sd(-1, &[(1, 2), (1, 3), (2, 3)])),
            EllipticType::T
        );
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(
            reverse_orientation(&sd(-1, &[(1, 2), (1, 3), (1, 5)])).unwrap(),
            sd(-2, &[(1, 2), (2, 3), (4, 5)])
        );
        let d = sd(-1, &[(1, 2), (1, 2), (1, 3)]);
        let rd = reverse_orientation(&d).unwrap();
        assert_eq!(rd, sd(-2, &[(1, 2), (1, 2), (2, 3)]));
        assert_eq!(h1_order(&rd).unwrap(), 4);
    }

    #[test]
    fn normalize_examples() {
        let p = normalize(&sd(-2, &[(1, 2), (2, 3), (4, 5)])).unwrap();
        assert_eq!(
            p,
            OrientedSeifert {
                data: sd(-1, &[(1, 2), (1, 3), (1, 5)]),
                reversed: true
            }
        );
        let c = sd(-1, &[(1, 2), (1, 3), (1, 5)]);
        assert_eq!(
            normalize(&c).unwrap(),
            OrientedSeifert {
                data: c,
                reversed: false
            }
        );
        let s = sd(-3, &[(3, 2), (3, 2), (5, 3)]);
        let n = normalize(&s).unwrap();
        assert_eq!(n.data, sd(-1, &[(1, 2), (1, 2), (5, 3)]));
        assert_eq!(h1_order(&n.data).unwrap(), h1_order(&s).unwrap());
    }

    #[test]
    fn tetrahedral_tie_prefers_positive_euler_number() {
        let s = sd(-1, &[(1, 2), (1, 3), (-1, 3)]);
        let n = normalize(&s).unwrap();
        assert_eq!(
            n,
            OrientedSeifert {
                data: sd(-1, &[(1, 2), (1, 3), (2, 3)]),
                reversed: true
            }
        );
    }

    #[test]
    fn small_h1_enumeration() {
        let all = enumerate_elliptic(9, 11);
        let by_h1 = |h: u64| -> Vec<SeifertData> {
            all.iter()
                .filter(|o| classify(&o.data) != EllipticType::D && h1_order(&o.data).unwrap() == h)
                .map(|o| o.data.clone())
                .collect()
        };
        assert_eq!(by_h1(1), vec![sd(-1, &[(1, 2), (1, 3), (1, 5)])]);
        assert_eq!(by_h1(2), vec![sd(-1, &[(1, 2), (1, 3), (1, 4)])]);
        assert_eq!(by_h1(3), vec![sd(-1, &[(1, 2), (1, 3), (1, 3)])]);
        assert_eq!(by_h1(7), vec![sd(-1, &[(1, 2), (1, 3), (2, 5)])]);
        assert_eq!(by_h1(9), vec![sd(-1, &[(1, 2), (1, 3), (2, 3)])]);
        for h in [4, 5, 6, 8] {
            assert!(by_h1(h).is_empty(), "{h}");
        }
        let h1s: std::collections::BTreeSet<u64> =
            all.iter().map(|o| h1_order(&o.data).unwrap()).collect();
        assert_eq!(
            h1s.into_iter().collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 7, 8, 9]
        );
        assert_eq!(enumerate_elliptic(1, 101).len(), 1);
    }

    #[test]
    fn dihedral_homology_parity() {
        // Odd n: cyclic of order 4m. Even n: Z2 + Z_{2m}.
        assert_eq!(
            h1_invariant_factors(&sd(-1, &[(1, 2), (1, 2), (3, 5)])).unwrap(),
            vec![12]
        );
        assert_eq!(
            h1_invariant_factors(&sd(-1, &[(1, 2), (1, 2), (3, 4)])).unwrap(),
            vec![2, 6]
        );
        assert_eq!(
            h1_invariant_factors(&sd(-1, &[(1, 2), (1, 3), (1, 5)])).unwrap(),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn parser() {
        assert_eq!(
            parse_seifert("(-1; 1/2, 1/3, 2/5)").unwrap(),
            sd(-1, &[(1, 2), (1, 3), (2, 5)])
        );
        assert_eq!(
            parse_seifert("(-2;1/2,2/3,4/5)").unwrap(),
            sd(-2, &[(1, 2), (2, 3), (4, 5)])
        );
        assert_eq!(parse_seifert(" ( 0 ; ) ").unwrap(), sd(0, &[]));
        assert_eq!(parse_seifert("(3)").unwrap(), sd(3, &[]));
        assert_eq!(
            parse_seifert("-(-1; 1/2, 1/3, 1/5)").unwrap(),
            sd(-2, &[(1, 2), (2, 3), (4, 5)])
        );
        match parse_seifert("(-1; 1/2, 2/4)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_seifert("(-1; 1/2, 1/3"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_seifert("(-1; 1/0)"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_seifert("(-1; 1/2) x"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_seifert("(99999999999999999999)"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn display_round_trip() {
        let s = sd(-1, &[(1, 2), (1, 3), (2, 5)]);
        assert_eq!(s.to_string(), "(-1; 1/2, 1/3, 2/5)");
        assert_eq!(parse_seifert(&s.to_string()).unwrap(), s);
    }
}

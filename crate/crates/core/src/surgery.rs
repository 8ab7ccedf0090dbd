//! Correction terms of surgeries on L-space knots, and Moser's description
//! of torus knot surgeries.
//!
//! Spin^c structures of `S^3_{p/q}(K)` are labeled by `l` in `[0, p)`.
//! Label `l` uses the lens term `d(L(p,q), l)` and the knot correction at
//! `c = min(floor(l/q), ceil((p-l)/q))`, i.e. the representative `i = l`
//! or `i = l - p` with the smaller `|floor(i/q)|`. Conjugation acts on
//! labels by `l -> q - 1 - l (mod p)`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, Rational};
use crate::knots::AlexanderPoly;
use crate::seifert::{OrientedSeifert, SeifertData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p <= 0 || q <= 0 {
            return Err(Error::invalid(format!("slope {p}/{q} must be positive")));
        }
        if gcd(p, q) != 1 {
            return Err(Error::invalid(format!("slope {p}/{q} is not reduced")));
        }
        Ok(Slope { p, q })
    }

    pub fn integral(p: i64) -> Result<Self> {
        Slope::new(p, 1)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let p: i64 = p
            .parse()
            .map_err(|_| Error::parse(0, format!("bad slope numerator in {s:?}")))?;
        let q: i64 = q.parse().map_err(|_| {
            Error::parse(
                t.find('/').map_or(0, |k| k + 1),
                format!("bad slope denominator in {s:?}"),
            )
        })?;
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `d(L(p,q), i)` by the two-term recursion, for `0 <= i < p + q`.
pub fn d_lens(p: i64, q: i64, i: i64) -> Result<Rational> {
    if p <= 0 || q < 0 || !(q < p || p == 1) {
        return Err(Error::invalid(format!(
            "lens space L({p},{q}) needs 0 <= q < p"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::invalid(format!("gcd({p},{q}) != 1")));
    }
    if i < 0 || i >= p + q {
        return Err(Error::invalid(format!("label {i} outside [0, {})", p + q)));
    }
    let (mut p, mut q, mut i) = (p as i128, q as i128, i as i128);
    let mut acc = Rational::zero();
    let mut sign = 1i64;
    while p != 1 {
        let t = 2 * i + 1 - p - q;
        let term = Rational::from_i128_ratio(t * t - p * q, 4 * p * q)?;
        acc = acc + term * sign;
        sign = -sign;
        (p, q, i) = (q, p % q, i % q);
    }
    Ok(acc)
}

/// `-2 sum_{j>=1} j a_{c+j}`.
pub fn knot_correction(a: &AlexanderPoly, c: usize) -> i64 {
    (1..=a.genus().saturating_sub(c))
        .map(|j| -2 * j as i64 * a.coeff(c + j))
        .sum()
}

/// The correction term of every Spin^c label of `S^3_{p/q}(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryD {
    pub slope: Slope,
    pub values: Vec<Rational>,
}

impl SurgeryD {
    pub fn value(&self, label: usize) -> &Rational {
        &self.values[label]
    }

    pub fn multiset(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v
    }

    /// Labels `0..=p/2`; for integral slopes every other label is the
    /// conjugate of one of these, so `0` (and `p/2` for even `p`) occur
    /// once and the rest twice.
    pub fn row(&self) -> &[Rational] {
        &self.values[..=(self.slope.p as usize / 2)]
    }

    pub fn conjugate_label(&self, label: usize) -> usize {
        let p = self.slope.p;
        (self.slope.q - 1 - label as i64).rem_euclid(p) as usize
    }
}

pub fn d_surgery(s: Slope, a: &AlexanderPoly) -> Result<SurgeryD> {
    let bound = 2 * a.genus() as i64 - 1;
    if s.p < bound * s.q {
        return Err(Error::NotLSpaceSlope {
            p: s.p,
            q: s.q,
            bound,
        });
    }
    let (p, q) = (s.p, s.q);
    let lens_q = if p == 1 { 0 } else { q % p };
    let values = (0..p)
        .map(|l| {
            let c = (l / q).min((p - l + q - 1) / q) as usize;
            Ok(d_lens(p, lens_q, l)? + knot_correction(a, c))
        })
        .collect::<Result<_>>()?;
    Ok(SurgeryD { slope: s, values })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MoserResult {
    LensSpace {
        p: i64,
        q: i64,
    },
    /// `L(r,s) # L(s,r)`.
    ConnectedSum {
        r: i64,
        s: i64,
    },
    Seifert(OrientedSeifert),
    /// Seifert with multiplicities `r, s, t`; explicit data is only
    /// produced for `T_{r,2}`, `T_{4,3}` and `T_{5,3}`.
    MultiplicitiesOnly {
        r: i64,
        s: i64,
        t: i64,
    },
}

/// `S^3_{p/q}(T_{r,s})` for `r > s >= 2`.
pub fn moser_classify(r: i64, s: i64, slope: Slope) -> Result<MoserResult> {
    if !(r > s && s >= 2) || gcd(r, s) != 1 {
        return Err(Error::invalid(format!(
            "({r},{s}) is not a torus knot pair with r > s >= 2"
        )));
    }
    let (p, q) = (slope.p, slope.q);
    let rs = r * s;
    if q == 1 && p == rs {
        return Ok(MoserResult::ConnectedSum { r, s });
    }
    let t = rs * q - p;
    if t.abs() == 1 {
        return Ok(MoserResult::LensSpace {
            p,
            q: (rs * q).rem_euclid(p),
        });
    }
    // Each family lists the exceptional fibers for rsq - p > 0 and, in
    // reversed orientation, for rsq - p < 0.
    let fibers: Option<([(i64, i64); 2], [(i64, i64); 2])> = match (r, s) {
        (r, 2) => Some(([(1, 2), ((r - 1) / 2, r)], [(1, 2), ((r + 1) / 2, r)])),
        (4, 3) => Some(([(2, 3), (1, 4)], [(1, 3), (3, 4)])),
        (5, 3) => Some(([(1, 3), (3, 5)], [(2, 3), (2, 5)])),
        _ => None,
    };
    let Some((pos, neg)) = fibers else {
        return Ok(MoserResult::MultiplicitiesOnly { r, s, t: t.abs() });
    };
    let (two, reversed) = if t > 0 { (pos, false) } else { (neg, true) };
    let mut coeffs = two.to_vec();
    coeffs.push((q, t.abs()));
    Ok(MoserResult::Seifert(OrientedSeifert {
        data: SeifertData::new(-1, coeffs)?,
        reversed,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{torus_alex, AlexanderPoly};
    use crate::seifert::normalize;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn named(n: &str) -> AlexanderPoly {
        AlexanderPoly::from_table_name(n).unwrap()
    }

    #[test]
    fn lens_values() {
        assert_eq!(d_lens(3, 1, 0).unwrap(), r(1, 2));
        assert_eq!(d_lens(3, 1, 1).unwrap(), r(-1, 6));
        assert_eq!(d_lens(3, 1, 2).unwrap(), r(-1, 6));
        assert_eq!(d_lens(4, 1, 2).unwrap(), r(-1, 4));
        assert_eq!(d_lens(2, 1, 0).unwrap(), r(1, 4));
        assert_eq!(d_lens(2, 1, 1).unwrap(), r(-1, 4));
        assert_eq!(d_lens(1, 0, 0).unwrap(), r(0, 1));
        assert!(d_lens(4, 2, 0).is_err());
        assert!(d_lens(3, 1, 4).is_err());
    }

    #[test]
    fn lens_recursion_is_periodic() {
        for p in 2..30 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                for i in 0..q {
                    assert_eq!(d_lens(p, q, i).unwrap(), d_lens(p, q, i + p).unwrap());
                }
            }
        }
    }

    #[test]
    fn corrections() {
        assert_eq!(knot_correction(&named("D1"), 0), -2);
        assert_eq!(knot_correction(&named("D2'"), 0), -4);
        assert_eq!(knot_correction(&named("D1"), 1), 0);
        assert_eq!(knot_correction(&named("D2"), 1), -2);
        assert_eq!(knot_correction(&named("D5"), 7), 0);
    }

    #[test]
    fn surgery_rows() {
        let d = d_surgery(Slope::new(3, 1).unwrap(), &named("D2")).unwrap();
        assert_eq!(d.row(), &[r(-3, 2), r(-13, 6)]);
        let d = d_surgery(Slope::new(4, 1).unwrap(), &named("D1")).unwrap();
        assert_eq!(d.row(), &[r(-5, 4), r(0, 1), r(-1, 4)]);
        assert_eq!(d.multiset(), vec![r(-5, 4), r(-1, 4), r(0, 1), r(0, 1)]);
        let d = d_surgery(Slope::new(8, 1).unwrap(), &named("D2")).unwrap();
        assert_eq!(d.row(), &[r(-1, 4), r(-9, 8), r(1, 4), r(-1, 8), r(-1, 4)]);
    }

    #[test]
    fn conjugation_preserves_values() {
        for (p, q) in [(7, 2), (16, 3), (29, 5), (12, 1)] {
            let d = d_surgery(Slope::new(p, q).unwrap(), &named("D1")).unwrap();
            for l in 0..p as usize {
                assert_eq!(d.value(l), d.value(d.conjugate_label(l)));
            }
        }
    }

    #[test]
    fn slope_bound() {
        assert!(matches!(
            d_surgery(Slope::new(2, 1).unwrap(), &named("D2")),
            Err(Error::NotLSpaceSlope { .. })
        ));
        assert!(d_surgery(Slope::new(3, 1).unwrap(), &named("D2")).is_ok());
    }

    #[test]
    fn moser_cases() {
        let s = |p, q| Slope::new(p, q).unwrap();
        assert_eq!(
            moser_classify(3, 2, s(6, 1)).unwrap(),
            MoserResult::ConnectedSum { r: 3, s: 2 }
        );
        assert_eq!(
            moser_classify(3, 2, s(7, 1)).unwrap(),
            MoserResult::LensSpace { p: 7, q: 6 }
        );
        let MoserResult::Seifert(o) = moser_classify(5, 2, s(7, 1)).unwrap() else {
            panic!()
        };
        let canon = normalize(&o.data).unwrap();
        assert_eq!(
            canon.data,
            SeifertData::new(-1, vec![(1, 2), (1, 3), (2, 5)]).unwrap()
        );
        assert!(matches!(
            moser_classify(7, 3, s(1, 1)).unwrap(),
            MoserResult::MultiplicitiesOnly { t: 20, .. }
        ));
        let _ = torus_alex(7, 3).unwrap();
    }
}

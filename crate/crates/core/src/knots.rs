//! Alexander polynomials of L-space knots and torus knots.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::gcd;
use crate::surgery::Slope;

/// Symmetrized polynomial `a_0 + sum a_i (T^i + T^-i)`, stored as
/// `a_0, ..., a_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlexanderPoly {
    coeffs: Vec<i64>,
}

impl AlexanderPoly {
    /// Checks the L-space shape: entries in {-1,0,1}, nonzero ones
    /// alternating from `a_g = 1` downward, and value 1 at `T = 1`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let Some(&top) = coeffs.last() else {
            return Err(Error::invalid("empty coefficient list"));
        };
        if top != 1 {
            return Err(Error::invalid(format!(
                "leading coefficient must be 1, got {top}"
            )));
        }
        let mut expect = 1;
        for &a in coeffs.iter().rev() {
            match a {
                0 => {}
                1 | -1 if a == expect => expect = -expect,
                _ => {
                    return Err(Error::invalid(
                        "nonzero coefficients must alternate +1, -1, ... from the top",
                    ))
                }
            }
        }
        let at_one = coeffs[0] + 2 * coeffs[1..].iter().sum::<i64>();
        if at_one != 1 {
            return Err(Error::invalid(format!(
                "polynomial evaluates to {at_one} at T=1"
            )));
        }
        Ok(AlexanderPoly { coeffs })
    }

    /// The unknot.
    pub fn trivial() -> Self {
        AlexanderPoly { coeffs: vec![1] }
    }

    /// Polynomial whose nonzero exponents are `exps` (top and 0 included).
    pub fn from_exponents(exps: &[usize]) -> Result<Self> {
        let g = exps
            .iter()
            .copied()
            .max()
            .ok_or_else(|| Error::invalid("no exponents"))?;
        let mut sorted = exps.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted.dedup();
        let mut coeffs = vec![0; g + 1];
        let mut sign = 1;
        for e in sorted {
            coeffs[e] = sign;
            sign = -sign;
        }
        AlexanderPoly::new(coeffs)
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Nonzero exponents, descending.
    pub fn exponents(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .rev()
            .filter(|&i| self.coeffs[i] != 0)
            .collect()
    }

    /// Name used in the printed polynomial list, if it appears there.
    pub fn table_name(&self) -> Option<&'static str> {
        NAMED
            .iter()
            .find(|(_, e)| self.exponents() == *e)
            .map(|(n, _)| *n)
    }

    /// Looks up `D1`, `D2'`, `D8''` (or with a Greek Delta).
    pub fn from_table_name(name: &str) -> Result<Self> {
        let key = name.trim().replace('Δ', "D");
        let key = key.strip_prefix('D').unwrap_or(&key);
        if let Ok(g) = key.parse::<usize>() {
            if g >= 1 {
                return AlexanderPoly::from_exponents(&(0..=g).collect::<Vec<_>>());
            }
        }
        NAMED
            .iter()
            .find(|(n, _)| n.trim_start_matches('Δ') == key)
            .map(|(_, e)| AlexanderPoly::from_exponents(e))
            .unwrap_or_else(|| Err(Error::invalid(format!("unknown polynomial name {name:?}"))))
    }

    /// Name if known, otherwise the coefficient text.
    pub fn label(&self) -> String {
        self.table_name()
            .map(str::to_string)
            .unwrap_or_else(|| self.to_string())
    }
}

const NAMED: &[(&str, &[usize])] = &[
    ("Δ1", &[1, 0]),
    ("Δ2", &[2, 1, 0]),
    ("Δ2'", &[2, 0]),
    ("Δ3", &[3, 2, 1, 0]),
    ("Δ4", &[4, 3, 2, 1, 0]),
    ("Δ4'", &[4, 3, 1, 0]),
    ("Δ5", &[5, 4, 3, 2, 1, 0]),
    ("Δ6", &[6, 5, 4, 3, 2, 1, 0]),
    ("Δ7", &[7, 6, 5, 4, 3, 2, 1, 0]),
    ("Δ8", &[8, 7, 6, 5, 4, 3, 2, 1, 0]),
    ("Δ8'", &[8, 7, 5, 4, 2, 1, 0]),
    ("Δ8''", &[8, 7, 5, 3, 1, 0]),
    ("Δ9'", &[9, 8, 5, 4, 3, 2, 0]),
];

/// Text form `a_g,...,a_1,a_0`.
impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.coeffs.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for AlexanderPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let t = part.trim();
            let v: i64 = t
                .parse()
                .map_err(|_| Error::parse(pos, format!("bad coefficient {t:?}")))?;
            coeffs.push(v);
            pos += part.len() + 1;
        }
        coeffs.reverse();
        AlexanderPoly::new(coeffs)
    }
}

impl Serialize for AlexanderPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All L-space-shaped polynomials of genus `1..=g_max`, by genus, then by
/// descending exponent list.
pub fn enumerate_lspace_alex(g_max: usize) -> Vec<AlexanderPoly> {
    let mut out = Vec::new();
    for g in 1..=g_max {
        let mut lists: Vec<Vec<usize>> = (0u64..1 << (g - 1))
            .map(|mask| {
                let mut e = vec![g];
                e.extend((1..g).rev().filter(|&i| mask >> (i - 1) & 1 == 1));
                e.push(0);
                e
            })
            .collect();
        lists.sort();
        for e in lists {
            let p = AlexanderPoly::from_exponents(&e).expect("alternating by construction");
            out.push(p);
        }
    }
    out
}

/// `(T^{rs}-1)(T-1)/((T^r-1)(T^s-1))`, symmetrized.
pub fn torus_alex(r: i64, s: i64) -> Result<AlexanderPoly> {
    if !(r > s && s >= 2) {
        return Err(Error::invalid(format!(
            "torus knot needs r > s >= 2, got ({r},{s})"
        )));
    }
    if gcd(r, s) != 1 {
        return Err(Error::invalid(format!("gcd({r},{s}) != 1")));
    }
    let n = (r * s) as usize;
    let mut num = vec![0i64; n + 2];
    num[n + 1] += 1;
    num[n] -= 1;
    num[1] -= 1;
    num[0] += 1;
    let poly = divide_by_cyclic(&divide_by_cyclic(&num, r as usize)?, s as usize)?;
    let g = (poly.len() - 1) / 2;
    AlexanderPoly::new(poly[g..].to_vec())
}

/// Exact division by `T^k - 1`.
fn divide_by_cyclic(p: &[i64], k: usize) -> Result<Vec<i64>> {
    let deg = p.len() - 1;
    let mut rem = p.to_vec();
    let mut q = vec![0; deg - k + 1];
    for d in (k..=deg).rev() {
        let c = rem[d];
        q[d - k] = c;
        rem[d] -= c;
        rem[d - k] += c;
    }
    if rem.iter().any(|&x| x != 0) {
        return Err(Error::Internal(
            "torus polynomial division left a remainder".into(),
        ));
    }
    Ok(q)
}

/// Largest g with `2g - 1 <= p/q`.
pub fn max_genus(s: &Slope) -> usize {
    ((s.p + s.q) / (2 * s.q)) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate_lspace_alex(1),
            vec![AlexanderPoly::from_exponents(&[1, 0]).unwrap()]
        );
        assert_eq!(enumerate_lspace_alex(2).len(), 3);
        assert_eq!(enumerate_lspace_alex(4).len(), 15);
        for g in 1..10 {
            for p in enumerate_lspace_alex(g) {
                assert!(AlexanderPoly::new(p.coeffs().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn torus_polynomials() {
        assert_eq!(torus_alex(3, 2).unwrap().table_name(), Some("Δ1"));
        assert_eq!(torus_alex(5, 2).unwrap().table_name(), Some("Δ2"));
        assert_eq!(torus_alex(7, 2).unwrap().table_name(), Some("Δ3"));
        assert_eq!(torus_alex(4, 3).unwrap().to_string(), "1,-1,0,1");
        assert_eq!(torus_alex(5, 3).unwrap().genus(), 4);
        assert!(torus_alex(6, 4).is_err());
        assert!(torus_alex(2, 3).is_err());
    }

    #[test]
    fn named_polynomials() {
        assert_eq!(
            AlexanderPoly::from_table_name("D2'").unwrap().to_string(),
            "1,0,-1"
        );
        assert_eq!(
            AlexanderPoly::from_table_name("Δ8''").unwrap().to_string(),
            "1,-1,0,1,0,-1,0,1,-1"
        );
        assert_eq!(AlexanderPoly::from_table_name("D8").unwrap().genus(), 8);
        assert!(AlexanderPoly::from_table_name("D3'").is_err());
        for (name, _) in NAMED {
            assert_eq!(
                AlexanderPoly::from_table_name(name).unwrap().table_name(),
                Some(*name)
            );
        }
    }

    #[test]
    fn text_syntax() {
        let p: AlexanderPoly = "1,-1,1".parse().unwrap();
        assert_eq!(p.coeffs(), &[1, -1, 1]);
        assert_eq!(p.to_string(), "1,-1,1");
        assert!("1,1,1".parse::<AlexanderPoly>().is_err());
        assert!("-1,1".parse::<AlexanderPoly>().is_err());
        assert!("1,x".parse::<AlexanderPoly>().is_err());
        assert!("1,0,0".parse::<AlexanderPoly>().is_err());
    }

    #[test]
    fn genus_bound() {
        let s = |p, q| Slope::new(p, q).unwrap();
        assert_eq!(max_genus(&s(1, 1)), 1);
        assert_eq!(max_genus(&s(7, 2)), 2);
        assert_eq!(max_genus(&s(9, 1)), 5);
        assert_eq!(max_genus(&s(4, 3)), 1);
    }
}

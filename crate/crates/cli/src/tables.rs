//! Embedded copies of the published correction-term tables, their
//! regeneration from first principles, and a cell-by-cell diff.

use std::collections::BTreeSet;

use dinv_core::knots::AlexanderPoly;
use dinv_core::lattice::d_plumbing;
use dinv_core::plumbing::to_plumbing;
use dinv_core::seifert::SeifertData;
use dinv_core::surgery::{d_surgery, Slope};
use dinv_core::{Rational, Result};
use serde::Serialize;

/// A printed entry: a constant, or `-(n + c)/den` in the family parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Term {
    Const(Rational),
    Var { c: i64, den: i64 },
}

impl Term {
    pub fn eval(&self, n: i64) -> Rational {
        match self {
            Term::Const(r) => r.clone(),
            Term::Var { c, den } => Rational::frac(-(n + c), *den),
        }
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Term::Const(r) => write!(f, "{r}"),
            Term::Var { c, den } if *c >= 0 => write!(f, "-(n+{c})/{den}"),
            Term::Var { c, den } => write!(f, "-(n-{})/{den}", -c),
        }
    }
}

fn rats(s: &str) -> Vec<Rational> {
    s.split_whitespace()
        .map(|t| t.parse().expect("embedded table entry"))
        .collect()
}

fn terms(s: &str, den: i64) -> Vec<Term> {
    s.split_whitespace()
        .map(|t| match t.strip_prefix('n') {
            Some(c) => Term::Var {
                c: c.parse().expect("embedded offset"),
                den,
            },
            None => Term::Const(t.parse().expect("embedded table entry")),
        })
        .collect()
}

// ---- Table 1: |H1| < 10 ----

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub h1: u64,
    /// Rows for the dihedral families depend on the odd parameter `n`.
    pub symbolic: bool,
    pub terms: Vec<Term>,
}

const TABLE1: &[(u64, &str)] = &[
    (1, "-2"),
    (2, "-7/4 -1/4"),
    (3, "-1/6 -3/2 -1/6"),
    (4, "n2 0 0 n-2"),
    (7, "1/14 -3/14 -19/14 -1/2 -19/14 -3/14 1/14"),
    (8, "n-4 1/4 n4 -1/4 -1/4 n4 1/4 n-4"),
    (9, "0 -10/9 -4/9 2/9 0 2/9 -4/9 -10/9 0"),
];

pub fn table1() -> Vec<Table1Row> {
    TABLE1
        .iter()
        .map(|&(h1, s)| {
            let terms = terms(s, h1 as i64);
            let symbolic = terms.iter().any(|t| matches!(t, Term::Var { .. }));
            Table1Row {
                h1,
                symbolic,
                terms,
            }
        })
        .collect()
}

/// Canonical manifold of the row; `n` is used by the dihedral rows.
pub fn table1_manifold(h1: u64, n: i64) -> Result<SeifertData> {
    let third = match h1 {
        1 => (1, 2, 1, 5),
        2 => (1, 2, 1, 4),
        3 => (1, 2, 1, 3),
        4 => return SeifertData::new(-1, vec![(1, 2), (1, 2), (1, n)]),
        7 => (1, 2, 2, 5),
        8 => return SeifertData::new(-1, vec![(1, 2), (1, 2), (2, n)]),
        9 => (1, 2, 2, 3),
        _ => {
            return Err(dinv_core::Error::Invalid(format!(
                "no Table 1 row for |H1| = {h1}"
            )))
        }
    };
    SeifertData::new(-1, vec![(third.0, third.1), (1, 3), (third.2, third.3)])
}

/// Correction terms of a Seifert manifold, sorted.
pub fn sfs_multiset(s: &SeifertData) -> Result<Vec<Rational>> {
    let p = to_plumbing(s)?;
    Ok(d_plumbing(&p.graph, &p.form, p.flipped)?.multiset())
}

// ---- Table 3: dihedral manifolds (-1; 1/2, 1/2, m/n), 4m <= 32 ----

#[derive(Clone, Debug, Serialize)]
pub struct Table3Row {
    pub m: i64,
    /// The row covers `n = k mod m` (odd `n`).
    pub k: i64,
    pub constants: Vec<Rational>,
    pub variable: Vec<Term>,
    /// Three concrete members of the class used for checking.
    pub sample_n: [i64; 3],
}

const TABLE3: &[(i64, i64, &str, &str, [i64; 3])] = &[
    (1, 1, "0", "n2 n-2", [3, 5, 7]),
    (2, 1, "1/4 -1/4", "n-4 n4", [3, 5, 7]),
    (3, 1, "1/2 -1/6", "n4 n-4 n8 n-8", [7, 13, 19]),
    (4, 1, "0 3/4 -1/4", "n2 n-14 n-6 n10", [5, 9, 13]),
    (
        5,
        1,
        "1 -1/5 1/5",
        "n-2 n-22 n10 n-10 n14 n-6",
        [11, 21, 31],
    ),
    (5, 2, "0 2/5 -2/5", "n-2 n-10 n10 n-14 n6 n18", [7, 17, 27]),
    (
        6,
        1,
        "5/4 -1/4 -1/12 -5/12",
        "n16 n8 n-8 n-32 n-16 n-8",
        [7, 13, 19],
    ),
    (
        7,
        1,
        "1/14 9/14 3/2 -3/14",
        "n-8 n-44 n-24 n-16 n-12 n4 n16 n20",
        [15, 29, 43],
    ),
    (
        7,
        2,
        "1/14 9/14 -3/14 -1/2",
        "n12 n8 n-20 n-4 n4 n24 n-24 n-16",
        [9, 23, 37],
    ),
    (
        7,
        3,
        "3/14 1/2 -1/14 -9/14",
        "n4 n-8 n20 n-20 n8 n-16 n12 n32",
        [3, 17, 31],
    ),
    (
        8,
        1,
        "7/8 1/4 -1/4 -1/8 -7/4",
        "n-26 n-58 n-2 n-34 n14 n-18 n22 n-10",
        [9, 17, 25],
    ),
    (
        8,
        3,
        "5/8 1/4 -1/4 -3/8 -1/4",
        "n-22 n10 n-30 n2 n-6 n26 n18 n-14",
        [3, 11, 19],
    ),
];

pub fn table3() -> Vec<Table3Row> {
    TABLE3
        .iter()
        .map(|&(m, k, c, v, sample_n)| Table3Row {
            m,
            k,
            constants: rats(c),
            variable: terms(v, 4 * m),
            sample_n,
        })
        .collect()
}

/// The table lists each value once regardless of how many Spin^c
/// structures carry it, so rows are compared as sets.
pub fn table3_printed_set(row: &Table3Row, n: i64) -> BTreeSet<Rational> {
    row.constants
        .iter()
        .cloned()
        .chain(row.variable.iter().map(|t| t.eval(n)))
        .collect()
}

pub fn dihedral(m: i64, n: i64) -> Result<SeifertData> {
    SeifertData::new(-1, vec![(1, 2), (1, 2), (m, n)])
}

// ---- Table 4: surgeries matching dihedral manifolds ----

#[derive(Clone, Debug, Serialize)]
pub struct Table4Row {
    pub name: &'static str,
    pub p: i64,
    /// Signed `n` column: some `+-(-1; 1/2, 1/2, (p/4)/|n|)` has these terms.
    pub n: i64,
    /// Labels `0..=p/2`.
    pub values: Vec<Rational>,
}

const TABLE4: &[(&str, i64, i64, &str)] = &[
    ("Δ1", 4, -3, "-5/4 0 -1/4"),
    ("Δ1", 8, 3, "-1/4 7/8 1/4 -1/8 -1/4"),
    ("Δ2", 8, -5, "-1/4 -9/8 1/4 -1/8 -1/4"),
    ("Δ2", 12, 5, "3/4 -1/6 13/12 1/2 1/12 -1/6 -1/4"),
    ("Δ3", 12, -7, "-5/4 -1/6 -11/12 1/2 1/12 -1/6 -1/4"),
    ("Δ3", 16, 7, "-1/4 13/16 0 21/16 3/4 5/16 0 -3/16 -1/4"),
    ("Δ4", 16, -9, "-1/4 -19/16 0 -11/16 3/4 5/16 0 -3/16 -1/4"),
    (
        "Δ4",
        20,
        9,
        "3/4 -1/5 19/20 1/5 31/20 1 11/20 1/5 -1/20 -1/5 -1/4",
    ),
    (
        "Δ5",
        20,
        -11,
        "-5/4 -1/5 -21/20 1/5 -9/20 1 11/20 1/5 -1/20 -1/5 -1/4",
    ),
    (
        "Δ5",
        24,
        11,
        "-1/4 19/24 -1/12 9/8 5/12 43/24 5/4 19/24 5/12 1/8 -1/12 -5/24 -1/4",
    ),
    (
        "Δ6",
        24,
        -13,
        "-1/4 -29/24 -1/12 -7/8 5/12 -5/24 5/4 19/24 5/12 1/8 -1/12 -5/24 -1/4",
    ),
    (
        "Δ8'",
        28,
        -5,
        "3/4 -3/14 25/28 1/14 -19/28 9/14 1/28 -1/2 29/28 9/14 9/28 1/14 -3/28 -3/14 -1/4",
    ),
    (
        "Δ9'",
        28,
        11,
        "3/4 -3/14 -31/28 1/14 -19/28 9/14 1/28 -1/2 -27/28 9/14 9/28 1/14 -3/28 -3/14 -1/4",
    ),
    (
        "Δ6",
        28,
        13,
        "3/4 -3/14 25/28 1/14 37/28 9/14 57/28 3/2 29/28 9/14 9/28 1/14 -3/28 -3/14 -1/4",
    ),
    (
        "Δ7",
        28,
        -15,
        "-5/4 -3/14 -31/28 1/14 -19/28 9/14 1/28 3/2 29/28 9/14 9/28 1/14 -3/28 -3/14 -1/4",
    ),
    (
        "Δ8''",
        32,
        -9,
        "-1/4 25/32 -1/8 -31/32 1/4 49/32 7/8 9/32 7/4 41/32 7/8 17/32 1/4 1/32 -1/8 -7/32 -1/4",
    ),
    (
        "Δ7",
        32,
        15,
        "-1/4 25/32 -1/8 33/32 1/4 49/32 7/8 73/32 7/4 41/32 7/8 17/32 1/4 1/32 -1/8 -7/32 -1/4",
    ),
    (
        "Δ8",
        32,
        -17,
        "-1/4 -39/32 -1/8 -31/32 1/4 -15/32 7/8 9/32 7/4 41/32 7/8 17/32 1/4 1/32 -1/8 -7/32 -1/4",
    ),
];

pub fn table4() -> Vec<Table4Row> {
    TABLE4
        .iter()
        .map(|&(name, p, n, v)| Table4Row {
            name,
            p,
            n,
            values: rats(v),
        })
        .collect()
}

pub fn table4_computed(name: &str, p: i64) -> Result<Vec<Rational>> {
    let poly = AlexanderPoly::from_table_name(name)?;
    Ok(d_surgery(Slope::integral(p)?, &poly)?.row().to_vec())
}

// ---- diff ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub table: u8,
    pub row: String,
    /// Printed entries with no computed counterpart.
    pub printed_only: Vec<String>,
    /// Computed entries with no printed counterpart.
    pub computed_only: Vec<String>,
}

fn multiset_diff(printed: &[Rational], computed: &[Rational]) -> (Vec<String>, Vec<String>) {
    let mut a = printed.to_vec();
    let mut b = computed.to_vec();
    a.sort();
    b.sort();
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                only_a.push(x.to_string());
                i += 1;
            }
            (Some(_), Some(y)) | (None, Some(y)) => {
                only_b.push(y.to_string());
                j += 1;
            }
            (Some(x), None) => {
                only_a.push(x.to_string());
                i += 1;
            }
            (None, None) => break,
        }
    }
    (only_a, only_b)
}

/// Table 1 as multisets; symbolic rows at each `n` in `ns`.
pub fn diff_table1(ns: &[i64]) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for row in table1() {
        let samples: Vec<i64> = if row.symbolic { ns.to_vec() } else { vec![0] };
        for n in samples {
            let printed: Vec<Rational> = row.terms.iter().map(|t| t.eval(n)).collect();
            let computed = sfs_multiset(&table1_manifold(row.h1, n)?)?;
            let (p, c) = multiset_diff(&printed, &computed);
            if !p.is_empty() || !c.is_empty() {
                let label = if row.symbolic {
                    format!("|H1|={} n={n}", row.h1)
                } else {
                    format!("|H1|={}", row.h1)
                };
                out.push(Discrepancy {
                    table: 1,
                    row: label,
                    printed_only: p,
                    computed_only: c,
                });
            }
        }
    }
    Ok(out)
}

pub fn diff_table3() -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for row in table3() {
        for n in row.sample_n {
            let printed = table3_printed_set(&row, n);
            let computed: BTreeSet<Rational> =
                sfs_multiset(&dihedral(row.m, n)?)?.into_iter().collect();
            let p: Vec<String> = printed
                .difference(&computed)
                .map(|r| r.to_string())
                .collect();
            let c: Vec<String> = computed
                .difference(&printed)
                .map(|r| r.to_string())
                .collect();
            if !p.is_empty() || !c.is_empty() {
                out.push(Discrepancy {
                    table: 3,
                    row: format!("4m={} n={} ({} mod {})", 4 * row.m, n, row.k, row.m),
                    printed_only: p,
                    computed_only: c,
                });
            }
        }
    }
    Ok(out)
}

/// Table 4 position by position.
pub fn diff_table4() -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for row in table4() {
        let computed = table4_computed(row.name, row.p)?;
        if computed != row.values {
            let (mut p, mut c) = (Vec::new(), Vec::new());
            for i in 0..row.values.len().max(computed.len()) {
                let a = row.values.get(i);
                let b = computed.get(i);
                if a != b {
                    p.push(format!(
                        "i={i}: {}",
                        a.map_or("-".into(), |x| x.to_string())
                    ));
                    c.push(format!(
                        "i={i}: {}",
                        b.map_or("-".into(), |x| x.to_string())
                    ));
                }
            }
            out.push(Discrepancy {
                table: 4,
                row: format!("{} p={}", row.name, row.p),
                printed_only: p,
                computed_only: c,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_are_well_formed() {
        assert_eq!(table1().len(), 7);
        assert_eq!(table3().len(), 12);
        for row in table3() {
            assert_eq!(row.variable.len() as i64, 2 * ((row.m + 1) / 2));
            for n in row.sample_n {
                assert_eq!(n % row.m, row.k % row.m);
                assert_eq!(n % 2, 1);
            }
        }
        for row in table4() {
            assert_eq!(row.values.len() as i64, row.p / 2 + 1);
        }
    }

    #[test]
    fn term_display() {
        assert_eq!(Term::Var { c: 2, den: 4 }.to_string(), "-(n+2)/4");
        assert_eq!(Term::Var { c: -4, den: 8 }.to_string(), "-(n-4)/8");
        assert_eq!(Term::Var { c: 2, den: 4 }.eval(3), Rational::frac(-5, 4));
    }
}

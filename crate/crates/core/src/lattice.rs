//! Characteristic vectors, nice full paths and d-invariants of plumbings.
//!
//! Vectors are kept in Hom-dual form `u = v^T Q`, so `u_i = <V, v_i>`.
//! Two vectors lie in the same Spin^c class iff `(u - u')/2` is in the row
//! space of `Q`, i.e. `adj(Q) (u - u') = 0 mod 2|det Q|`; the residue of
//! `adj(Q) u` mod `2|det Q|` is therefore a complete class label.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{FormData, Rational, SmallForm};
use crate::plumbing::{bad_vertex_count, PlumbingGraph};

/// Fixes which orientation the plumbing formula describes: the value
/// reported for the graph's own boundary is `SIGMA * (-max (V^2+|G|)/4)`.
/// Pinned by `d((-1; 1/2, 1/3, 1/5)) = d(S^3_1(T_{3,2})) = -2`.
pub const ORIENTATION_SIGMA: i64 = -1;

pub const DEFAULT_BRUTEFORCE_LIMIT: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharVector(pub Vec<i64>);

impl fmt::Display for CharVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Residue vector `adj(Q) u mod 2|det Q|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey(pub Vec<i128>);

impl Serialize for ClassKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpincClass {
    pub id: usize,
    pub representative: CharVector,
    pub key: ClassKey,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DInvariants {
    pub classes: Vec<(SpincClass, Rational)>,
    #[serde(skip)]
    modulus: i128,
}

impl DInvariants {
    /// Sorted values with multiplicity.
    pub fn multiset(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.classes.iter().map(|c| c.1.clone()).collect();
        v.sort();
        v
    }

    pub fn by_key(&self) -> BTreeMap<ClassKey, Rational> {
        self.classes
            .iter()
            .map(|(c, d)| (c.key.clone(), d.clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Every class and its conjugate (the class of `-u`) carry the same value.
    pub fn is_conjugation_symmetric(&self) -> bool {
        let map = self.by_key();
        map.iter().all(|(k, d)| {
            let conj = ClassKey(k.0.iter().map(|x| (-x).rem_euclid(self.modulus)).collect());
            map.get(&conj) == Some(d)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    LowestIndex,
    HighestIndex,
}

/// Precomputed data shared by the lattice routines for one graph.
struct Ctx<'a> {
    g: &'a PlumbingGraph,
    small: &'a SmallForm,
    modulus: i128,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a PlumbingGraph, f: &'a FormData) -> Result<Self> {
        if f.dim() != g.len() {
            return Err(Error::invalid("form and graph dimensions differ"));
        }
        let small = f.small().ok_or(Error::Overflow("lattice adjugate"))?;
        let modulus = small
            .det
            .checked_abs()
            .and_then(|d| d.checked_mul(2))
            .ok_or(Error::Overflow("lattice modulus"))?;
        Ok(Ctx { g, small, modulus })
    }

    fn n(&self) -> usize {
        self.g.len()
    }

    fn adj_times(&self, u: &[i64]) -> Vec<i128> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let row = &self.small.adj[i * n..(i + 1) * n];
                row.iter().zip(u).map(|(a, &x)| a * x as i128).sum()
            })
            .collect()
    }

    fn key_of(&self, au: &[i128]) -> ClassKey {
        ClassKey(au.iter().map(|x| x.rem_euclid(self.modulus)).collect())
    }

    /// `V^2` numerator over `det`: `u^T adj u`.
    fn square_numer(&self, u: &[i64], au: &[i128]) -> i128 {
        au.iter().zip(u).map(|(a, &x)| a * x as i128).sum()
    }

    fn value(&self, square_numer: i128) -> Result<Rational> {
        let sq = Rational::from_i128_ratio(square_numer, self.small.det)?;
        let max_term = (sq + self.n() as i64) / 4;
        Ok(-max_term * ORIENTATION_SIGMA)
    }
}

pub fn is_characteristic(v: &CharVector, g: &PlumbingGraph) -> bool {
    v.0.len() == g.len()
        && v.0
            .iter()
            .zip(g.weights())
            .all(|(x, w)| (x - w).rem_euclid(2) == 0)
}

/// `V -> V + 2 PD(v_i)`, defined when `<V, v_i> = -m(v_i)`.
pub fn step(v: &CharVector, i: usize, g: &PlumbingGraph) -> Result<CharVector> {
    if i >= g.len() || v.0.len() != g.len() || v.0[i] != -g.weight(i) {
        return Err(Error::StepNotApplicable(i));
    }
    let mut out = v.clone();
    out.0[i] = g.weight(i);
    for &j in g.neighbors(i) {
        out.0[j] += 2;
    }
    Ok(out)
}

pub fn is_nice(v: &CharVector, g: &PlumbingGraph) -> bool {
    v.0.iter()
        .zip(g.weights())
        .all(|(&x, &w)| w <= x && x <= -w)
}

/// Greedy descent on the first `k` vertices, ignoring edges leaving them.
/// Returns false as soon as some coordinate leaves the nice box.
fn descend(u: &mut [i64], g: &PlumbingGraph, k: usize, policy: Policy) -> bool {
    let ready = |u: &[i64], i: usize| u[i] == -g.weight(i);
    match policy {
        Policy::LowestIndex => {
            let mut heap: BinaryHeap<Reverse<usize>> =
                (0..k).filter(|&i| ready(u, i)).map(Reverse).collect();
            while let Some(Reverse(i)) = heap.pop() {
                if !ready(u, i) {
                    continue;
                }
                if !fire(u, g, k, i, |j| heap.push(Reverse(j))) {
                    return false;
                }
            }
        }
        Policy::HighestIndex => {
            let mut heap: BinaryHeap<usize> = (0..k).filter(|&i| ready(u, i)).collect();
            while let Some(i) = heap.pop() {
                if !ready(u, i) {
                    continue;
                }
                if !fire(u, g, k, i, |j| heap.push(j)) {
                    return false;
                }
            }
        }
    }
    true
}

fn fire(u: &mut [i64], g: &PlumbingGraph, k: usize, i: usize, mut push: impl FnMut(usize)) -> bool {
    u[i] = g.weight(i);
    for &j in g.neighbors(i) {
        if j >= k {
            continue;
        }
        u[j] += 2;
        let top = -g.weight(j);
        if u[j] > top {
            return false;
        }
        if u[j] == top {
            push(j);
        }
    }
    true
}

/// Follows a full path from `v` with the given tie-break; returns its end
/// or `None` if the path leaves the nice box.
pub fn path_endpoint(v: &CharVector, g: &PlumbingGraph, policy: Policy) -> Option<CharVector> {
    if !is_nice(v, g) {
        return None;
    }
    let mut u = v.0.clone();
    descend(&mut u, g, g.len(), policy).then_some(CharVector(u))
}

fn check_applicable(g: &PlumbingGraph, f: &FormData) -> Result<()> {
    if bad_vertex_count(g) > 1 {
        return Err(Error::Inapplicable(format!(
            "{} bad vertices; the path algorithm needs at most one",
            bad_vertex_count(g)
        )));
    }
    if !f.is_negative_definite() {
        return Err(Error::Inapplicable(
            "intersection form is not negative definite".into(),
        ));
    }
    Ok(())
}

/// Starts of full paths of nice vectors, in lexicographic order.
///
/// A start lies in the box `m_i < u_i <= -m_i`; it is accepted when greedy
/// descent stays nice. The box is searched depth first over vertices in
/// index order: if descent restricted to the assigned prefix already leaves
/// the box, so does every extension, since vertices outside the prefix only
/// ever add to the prefix coordinates.
pub fn nice_full_path_starts(g: &PlumbingGraph, f: &FormData) -> Result<Vec<CharVector>> {
    check_applicable(g, f)?;
    let n = g.len();
    let mut out = Vec::new();
    let mut u = vec![0i64; n];
    dfs_starts(g, 0, &mut u, &mut out);
    Ok(out)
}

fn dfs_starts(g: &PlumbingGraph, k: usize, u: &mut Vec<i64>, out: &mut Vec<CharVector>) {
    if k == g.len() {
        out.push(CharVector(u.clone()));
        return;
    }
    let w = g.weight(k);
    let mut val = w + 2;
    while val <= -w {
        u[k] = val;
        let mut trial = u[..=k].to_vec();
        if descend(&mut trial, g, k + 1, Policy::LowestIndex) {
            dfs_starts(g, k + 1, u, out);
        }
        val += 2;
    }
    u[k] = 0;
}

/// Spin^c classes discovered through the nice full path starts, ids in
/// order of their lexicographically smallest start.
pub fn spinc_partition(g: &PlumbingGraph, f: &FormData) -> Result<Vec<SpincClass>> {
    let ctx = Ctx::new(g, f)?;
    let starts = nice_full_path_starts(g, f)?;
    let mut seen: HashMap<ClassKey, ()> = HashMap::new();
    let mut classes = Vec::new();
    for s in starts {
        let key = ctx.key_of(&ctx.adj_times(&s.0));
        if seen.insert(key.clone(), ()).is_none() {
            classes.push(SpincClass {
                id: classes.len(),
                representative: s,
                key,
            });
        }
    }
    expect_class_count(classes.len(), f)?;
    Ok(classes)
}

fn expect_class_count(found: usize, f: &FormData) -> Result<()> {
    let det = f.abs_det().to_usize().unwrap_or(usize::MAX);
    if found != det {
        return Err(Error::Internal(format!(
            "found {found} Spin^c classes, expected |det Q| = {det}"
        )));
    }
    Ok(())
}

fn finish(
    ctx: &Ctx,
    best: HashMap<ClassKey, (i128, Vec<i64>)>,
    flipped: bool,
    f: &FormData,
) -> Result<DInvariants> {
    expect_class_count(best.len(), f)?;
    let mut classes: Vec<(SpincClass, Rational)> = best
        .into_iter()
        .map(|(key, (sq, rep))| {
            let mut d = ctx.value(sq)?;
            if flipped {
                d = -d;
            }
            Ok((
                SpincClass {
                    id: 0,
                    representative: CharVector(rep),
                    key,
                },
                d,
            ))
        })
        .collect::<Result<_>>()?;
    classes.sort_by(|a, b| a.0.representative.cmp(&b.0.representative));
    for (i, c) in classes.iter_mut().enumerate() {
        c.0.id = i;
    }
    Ok(DInvariants {
        classes,
        modulus: ctx.modulus,
    })
}

/// Keeps the per-class maximum of `V^2 = sq/det`; `sign` is the sign of det.
fn offer(
    best: &mut HashMap<ClassKey, (i128, Vec<i64>)>,
    key: ClassKey,
    sq: i128,
    sign: i128,
    u: &[i64],
) {
    match best.get_mut(&key) {
        None => {
            best.insert(key, (sq, u.to_vec()));
        }
        Some(cur) => {
            if sq * sign > cur.0 * sign || (sq == cur.0 && u < cur.1.as_slice()) {
                *cur = (sq, u.to_vec());
            }
        }
    }
}

/// d-invariants via the path algorithm; `flipped` reports them for the
/// reverse of the graph's boundary.
pub fn d_plumbing(g: &PlumbingGraph, f: &FormData, flipped: bool) -> Result<DInvariants> {
    let ctx = Ctx::new(g, f)?;
    let starts = nice_full_path_starts(g, f)?;
    let mut best = HashMap::new();
    for s in &starts {
        let au = ctx.adj_times(&s.0);
        let sq = ctx.square_numer(&s.0, &au);
        offer(&mut best, ctx.key_of(&au), sq, ctx.small.det.signum(), &s.0);
    }
    finish(&ctx, best, flipped, f)
}

/// Number of characteristic vectors in the nice box.
pub fn nice_box_size(g: &PlumbingGraph) -> u128 {
    g.weights()
        .iter()
        .map(|&w| if w <= 0 { (1 - w) as u128 } else { 0 })
        .fold(1u128, |a, b| a.saturating_mul(b))
}

/// Independent oracle: maximizes `V^2` per class over the entire nice box.
pub fn d_bruteforce(
    g: &PlumbingGraph,
    f: &FormData,
    flipped: bool,
    limit: u128,
) -> Result<DInvariants> {
    check_applicable(g, f)?;
    let ctx = Ctx::new(g, f)?;
    let size = nice_box_size(g);
    if size > limit {
        return Err(Error::OracleTooLarge { size, limit });
    }
    let n = g.len();
    let w = g.weights();
    let last = n - 1;
    let last_values: Vec<i64> = (0..=-w[last])
        .map(|k| w[last] + 2 * k)
        .filter(|&x| x <= -w[last])
        .collect();
    let partial: Vec<HashMap<ClassKey, (i128, Vec<i64>)>> = last_values
        .par_iter()
        .map(|&lv| {
            let mut best = HashMap::new();
            let mut u: Vec<i64> = w.to_vec();
            u[last] = lv;
            let mut au = ctx.adj_times(&u);
            let mut sq = ctx.square_numer(&u, &au);
            loop {
                offer(&mut best, ctx.key_of(&au), sq, ctx.small.det.signum(), &u);
                // Odometer over the first n-1 coordinates with exact
                // incremental updates of adj*u and u^T adj u.
                let mut i = 0;
                loop {
                    if i == last {
                        return best;
                    }
                    let delta = if u[i] + 2 <= -w[i] { 2 } else { 2 * w[i] };
                    let col = &ctx.small.adj[i * n..(i + 1) * n];
                    let d = delta as i128;
                    sq += 2 * d * au[i] + d * d * col[i];
                    for (a, c) in au.iter_mut().zip(col) {
                        *a += d * c;
                    }
                    u[i] += delta;
                    if delta == 2 {
                        break;
                    }
                    i += 1;
                }
            }
        })
        .collect();
    let mut best = HashMap::new();
    for part in partial {
        for (k, (sq, rep)) in part {
            offer(&mut best, k, sq, ctx.small.det.signum(), &rep);
        }
    }
    finish(&ctx, best, flipped, f)
}

/// `V^2 = u Q^{-1} u^T`.
pub fn square(v: &CharVector, f: &FormData) -> Rational {
    f.inverse_square(&v.0)
}

/// Class label of a characteristic vector.
pub fn class_key(v: &CharVector, g: &PlumbingGraph, f: &FormData) -> Result<ClassKey> {
    let ctx = Ctx::new(g, f)?;
    Ok(ctx.key_of(&ctx.adj_times(&v.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::to_plumbing;
    use crate::seifert::SeifertData;

    fn sd(b: i64, c: &[(i64, i64)]) -> SeifertData {
        SeifertData::new(b, c.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn cv(v: &[i64]) -> CharVector {
        CharVector(v.to_vec())
    }

    #[test]
    fn e8_step_example() {
        let p = to_plumbing(&sd(-2, &[(1, 2), (2, 3), (4, 5)])).unwrap();
        let v = cv(&[2, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            step(&v, 0, &p.graph).unwrap(),
            cv(&[-2, 2, 2, 0, 2, 0, 0, 0])
        );
        let z = cv(&[0; 8]);
        assert!((0..8).all(|i| step(&z, i, &p.graph).is_err()));
        let starts = nice_full_path_starts(&p.graph, &p.form).unwrap();
        assert_eq!(starts, vec![z]);
    }

    #[test]
    fn dihedral_example_starts_and_squares() {
        for n in [3usize, 5, 7] {
            let p = to_plumbing(&sd(-2, &[(1, 2), (1, 2), (n as i64 - 1, n as i64)])).unwrap();
            let starts = nice_full_path_starts(&p.graph, &p.form).unwrap();
            let size = n + 2;
            let unit = |k: usize| {
                let mut v = vec![0; size];
                v[k] = 2;
                CharVector(v)
            };
            let mut expect = vec![CharVector(vec![0; size]), unit(1), unit(2), unit(size - 1)];
            expect.sort();
            assert_eq!(starts, expect);
            let sq: Vec<Rational> = [CharVector(vec![0; size]), unit(1), unit(2), unit(size - 1)]
                .iter()
                .map(|v| square(v, &p.form))
                .collect();
            let m = -(n as i64 + 2);
            assert_eq!(sq, vec![r(0, 1), r(m, 1), r(m, 1), r(-4, 1)]);
        }
    }

    #[test]
    fn class_counts() {
        let e8 = to_plumbing(&sd(-2, &[(1, 2), (2, 3), (4, 5)])).unwrap();
        assert_eq!(spinc_partition(&e8.graph, &e8.form).unwrap().len(), 1);
        let ex = to_plumbing(&sd(-1, &[(1, 2), (1, 2), (1, 3)])).unwrap();
        assert_eq!(spinc_partition(&ex.graph, &ex.form).unwrap().len(), 4);
        let t = to_plumbing(&sd(-2, &[(1, 2), (2, 3), (2, 3)])).unwrap();
        assert_eq!(spinc_partition(&t.graph, &t.form).unwrap().len(), 3);
    }

    fn d_of(s: &SeifertData) -> Vec<Rational> {
        let p = to_plumbing(s).unwrap();
        d_plumbing(&p.graph, &p.form, p.flipped).unwrap().multiset()
    }

    #[test]
    fn known_values() {
        assert_eq!(d_of(&sd(-1, &[(1, 2), (1, 3), (1, 5)])), vec![r(-2, 1)]);
        for n in [3i64, 5, 7, 9] {
            let mut e = vec![r(-(n + 2), 4), r(0, 1), r(0, 1), r(-(n - 2), 4)];
            e.sort();
            assert_eq!(d_of(&sd(-1, &[(1, 2), (1, 2), (1, n)])), e);
        }
        assert_eq!(
            d_of(&sd(-1, &[(1, 2), (1, 3), (1, 3)])),
            vec![r(-3, 2), r(-1, 6), r(-1, 6)]
        );
    }

    #[test]
    fn bruteforce_agrees_on_small_graphs() {
        for s in [
            sd(-2, &[(1, 2), (2, 3), (4, 5)]),
            sd(-2, &[(1, 2), (2, 3), (2, 3)]),
            sd(-1, &[(1, 2), (1, 2), (1, 3)]),
            sd(-1, &[(1, 2), (1, 2), (1, 5)]),
            sd(-1, &[(1, 2), (1, 2), (2, 7)]),
        ] {
            let p = to_plumbing(&s).unwrap();
            let a = d_plumbing(&p.graph, &p.form, p.flipped).unwrap();
            let b = d_bruteforce(&p.graph, &p.form, p.flipped, DEFAULT_BRUTEFORCE_LIMIT).unwrap();
            assert_eq!(a.by_key(), b.by_key(), "{s}");
            assert!(a.is_conjugation_symmetric());
        }
    }

    #[test]
    fn oracle_limit_and_applicability() {
        let p = to_plumbing(&sd(-2, &[(1, 2), (2, 3), (4, 5)])).unwrap();
        assert!(matches!(
            d_bruteforce(&p.graph, &p.form, false, 10),
            Err(Error::OracleTooLarge { .. })
        ));
        // Two adjacent degree-3 vertices of weight -1: two bad vertices.
        let g = PlumbingGraph::new(
            vec![-1, -1, -2, -2, -2, -2],
            vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
        )
        .unwrap();
        let f = crate::exactmath::form_data(&g.intersection_form()).unwrap();
        assert!(matches!(
            nice_full_path_starts(&g, &f),
            Err(Error::Inapplicable(_))
        ));
    }
}

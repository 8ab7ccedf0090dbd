//! Matching d-invariants of elliptic manifolds against knot surgeries.
//!
//! A manifold `Y` with `|H1| = p` can only be `S^3_{p/q}(K)` for an L-space
//! knot if some candidate `(p/q, Delta)` yields the same multiset of
//! correction terms as `Y` or as `-Y`. Hyperbolic knots are restricted to
//! `q` in {1, 2}; torus knots are scanned over every `q` through Moser's
//! description.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{gcd, Rational};
use crate::knots::{enumerate_lspace_alex, max_genus, torus_alex, AlexanderPoly};
use crate::lattice::d_plumbing;
use crate::plumbing::to_plumbing;
use crate::seifert::{
    classify, enumerate_dihedral, enumerate_elliptic, h1_order, normalize, EllipticType,
    OrientedSeifert, SeifertData,
};
use crate::surgery::{d_lens, d_surgery, knot_correction, moser_classify, MoserResult, Slope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    AsIs,
    Mirrored,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::AsIs => "as-is",
            Orientation::Mirrored => "mirrored",
        }
    }
}

impl Serialize for Orientation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// `S^3_{slope}(K)` with `Delta_K = poly` has the target's correction terms
/// (`AsIs`) or those of its reverse (`Mirrored`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub slope: Slope,
    pub poly: AlexanderPoly,
    pub orientation: Orientation,
    pub torus: Option<(i64, i64)>,
}

impl Candidate {
    /// Realized by a torus knot whose uniqueness needs no further input:
    /// non-integral and non-half-integral slopes exclude hyperbolic knots,
    /// genus one fibered knots are trefoils, and `T_{5,2}` is determined by
    /// its small L-space surgeries.
    pub fn is_pinned(&self) -> bool {
        let Some((r, s)) = self.torus else {
            return false;
        };
        self.slope.q >= 3 || self.poly.genus() == 1 || ((r, s) == (5, 2) && self.slope.p <= 9)
    }

    fn sort_key(&self) -> (Slope, usize, Vec<usize>, Orientation) {
        (
            self.slope,
            self.poly.genus(),
            self.poly.exponents(),
            self.orientation,
        )
    }
}

impl Serialize for Candidate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Candidate", 7)?;
        st.serialize_field("p", &self.slope.p)?;
        st.serialize_field("q", &self.slope.q)?;
        st.serialize_field("alex", &self.poly)?;
        st.serialize_field("alex_name", &self.poly.table_name())?;
        st.serialize_field("orientation", &self.orientation)?;
        st.serialize_field("torus", &self.torus.map(|(r, s)| [r, s]))?;
        st.serialize_field("pinned", &self.is_pinned())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NotSurgery,
    CandidatesFound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Category {
    /// Every candidate is a pinned torus knot surgery.
    UniqueTorus,
    CandidateOnly,
    NotSurgery,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchReport {
    /// Canonical form; `reversed` relates it to the input presentation.
    pub manifold: OrientedSeifert,
    pub h1: u64,
    pub ty: EllipticType,
    /// Correction terms of `manifold.data`, sorted.
    pub target_d: Vec<Rational>,
    pub candidates: Vec<Candidate>,
    pub verdict: Verdict,
}

impl MatchReport {
    pub fn category(&self) -> Category {
        if self.candidates.is_empty() {
            Category::NotSurgery
        } else if self.candidates.iter().all(Candidate::is_pinned) {
            Category::UniqueTorus
        } else {
            Category::CandidateOnly
        }
    }
}

impl Serialize for MatchReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MatchReport", 7)?;
        st.serialize_field("manifold", &self.manifold.data.to_string())?;
        st.serialize_field("h1", &self.h1)?;
        st.serialize_field("type", &self.ty.to_string())?;
        st.serialize_field("target_d", &self.target_d)?;
        st.serialize_field("candidates", &self.candidates)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("category", &self.category())?;
        st.end()
    }
}

/// `(p/q, Delta)` with `q` in {1, 2}, `gcd(p, q) = 1` and every L-space
/// polynomial allowed by the genus bound.
pub fn candidates(p: i64) -> Vec<(Slope, AlexanderPoly)> {
    let mut out = Vec::new();
    for q in [1, 2] {
        let Ok(s) = Slope::new(p, q) else { continue };
        for poly in enumerate_lspace_alex(max_genus(&s)) {
            out.push((s, poly));
        }
    }
    out
}

/// Correction terms of every polynomial at one slope, scaled to integers
/// and indexed by sorted multiset.
struct SlopeIndex {
    scale: i64,
    polys: Vec<AlexanderPoly>,
    by_multiset: HashMap<Vec<i64>, Vec<usize>>,
}

impl SlopeIndex {
    fn build(s: Slope) -> Result<Self> {
        let (p, q) = (s.p, s.q);
        let lens_q = if p == 1 { 0 } else { q % p };
        let lens: Vec<Rational> = (0..p)
            .map(|l| d_lens(p, lens_q, l))
            .collect::<Result<_>>()?;
        let scale = lens
            .iter()
            .try_fold(1i64, |acc, d| d.denom().to_i64().map(|den| acc.lcm(&den)))
            .ok_or(Error::Overflow("slope index scale"))?;
        let scaled: Vec<i64> = lens
            .iter()
            .map(|d| {
                (d.clone() * scale)
                    .to_i64()
                    .ok_or(Error::Overflow("slope index"))
            })
            .collect::<Result<_>>()?;
        let cs: Vec<usize> = (0..p)
            .map(|l| (l / q).min((p - l + q - 1) / q) as usize)
            .collect();
        let polys = enumerate_lspace_alex(max_genus(&s));
        let mut by_multiset: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (k, poly) in polys.iter().enumerate() {
            let mut v: Vec<i64> = scaled
                .iter()
                .zip(&cs)
                .map(|(x, &c)| x + scale * knot_correction(poly, c))
                .collect();
            v.sort_unstable();
            by_multiset.entry(v).or_default().push(k);
        }
        Ok(SlopeIndex {
            scale,
            polys,
            by_multiset,
        })
    }

    fn lookup(&self, target: &[Rational]) -> &[usize] {
        let scaled: Option<Vec<i64>> = target
            .iter()
            .map(|d| (d.clone() * self.scale).to_i64())
            .collect();
        let Some(mut key) = scaled else { return &[] };
        key.sort_unstable();
        self.by_multiset.get(&key).map_or(&[], Vec::as_slice)
    }
}

type SharedIndex = Arc<OnceLock<std::result::Result<SlopeIndex, Error>>>;

/// Shares per-slope indices across manifolds; safe to use from many threads.
#[derive(Default)]
pub struct Matcher {
    indices: Mutex<HashMap<Slope, SharedIndex>>,
}

impl Matcher {
    pub fn new() -> Self {
        Matcher::default()
    }

    fn index(&self, s: Slope) -> Result<Arc<OnceLock<std::result::Result<SlopeIndex, Error>>>> {
        let cell = {
            let mut map = self
                .indices
                .lock()
                .map_err(|_| Error::Internal("matcher cache poisoned".into()))?;
            map.entry(s).or_default().clone()
        };
        cell.get_or_init(|| SlopeIndex::build(s));
        Ok(cell)
    }

    pub fn match_manifold(&self, s: &SeifertData) -> Result<MatchReport> {
        let ty = classify(s);
        if !ty.is_non_cyclic_elliptic() {
            return Err(Error::invalid(format!(
                "{s} is not a non-cyclic elliptic manifold ({ty})"
            )));
        }
        let manifold = normalize(s)?;
        let h1 = h1_order(&manifold.data)?;
        let plumbed = to_plumbing(&manifold.data)?;
        let target_d = d_plumbing(&plumbed.graph, &plumbed.form, plumbed.flipped)?.multiset();
        let mirrored: Vec<Rational> = target_d.iter().rev().map(|d| -d).collect();

        let mut found: Vec<Candidate> = Vec::new();
        for q in [1, 2] {
            let Ok(slope) = Slope::new(h1 as i64, q) else {
                continue;
            };
            let cell = self.index(slope)?;
            let idx = match cell.get().expect("initialized") {
                Ok(i) => i,
                Err(e) => return Err(e.clone()),
            };
            for (orientation, t) in [
                (Orientation::AsIs, &target_d),
                (Orientation::Mirrored, &mirrored),
            ] {
                for &k in idx.lookup(t) {
                    let poly = idx.polys[k].clone();
                    if found.iter().any(|c| c.slope == slope && c.poly == poly) {
                        // Self-conjugate multiset: keep the first orientation only.
                        continue;
                    }
                    found.push(Candidate {
                        slope,
                        poly,
                        orientation,
                        torus: None,
                    });
                }
            }
        }

        for (r, sk, slope, orientation) in torus_realizations(&manifold.data, h1 as i64)? {
            let poly = torus_alex(r, sk)?;
            let d = d_surgery(slope, &poly)?.multiset();
            let expect = match orientation {
                Orientation::AsIs => &target_d,
                Orientation::Mirrored => &mirrored,
            };
            if &d != expect {
                return Err(Error::Internal(format!(
                    "S^3_{slope}(T_{{{r},{sk}}}) = {} but correction terms differ",
                    manifold.data
                )));
            }
            match found
                .iter_mut()
                .find(|c| c.slope == slope && c.poly == poly)
            {
                Some(c) if c.orientation == orientation => c.torus = Some((r, sk)),
                Some(_) => {
                    return Err(Error::Internal(format!(
                        "torus realization of {} at {slope} disagrees in orientation",
                        manifold.data
                    )))
                }
                None => found.push(Candidate {
                    slope,
                    poly,
                    orientation,
                    torus: Some((r, sk)),
                }),
            }
        }

        found.sort_by_key(Candidate::sort_key);
        let verdict = if found.is_empty() {
            Verdict::NotSurgery
        } else {
            Verdict::CandidatesFound
        };
        Ok(MatchReport {
            manifold,
            h1,
            ty,
            target_d,
            candidates: found,
            verdict,
        })
    }
}

/// Torus knot surgeries `S^3_{p/q}(T_{r,s})` that Moser identifies with
/// `data` (canonical form), with the orientation relating the two.
fn torus_realizations(data: &SeifertData, p: i64) -> Result<Vec<(i64, i64, Slope, Orientation)>> {
    let m = data.multiplicities();
    let mut out = Vec::new();
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let (a, b, t) = (m[i], m[j], m[k]);
        if gcd(a, b) != 1 || a.min(b) < 2 {
            continue;
        }
        let (r, s) = (a.max(b), a.min(b));
        for num in [p + t, p - t] {
            if num <= 0 || num % (r * s) != 0 {
                continue;
            }
            let Ok(slope) = Slope::new(p, num / (r * s)) else {
                continue;
            };
            let MoserResult::Seifert(o) = moser_classify(r, s, slope)? else {
                continue;
            };
            let canon = normalize(&o.data)?;
            if canon.data != *data {
                continue;
            }
            let flipped = o.reversed != canon.reversed;
            let orientation = if flipped {
                Orientation::Mirrored
            } else {
                Orientation::AsIs
            };
            if !out
                .iter()
                .any(|x: &(i64, i64, Slope, Orientation)| (x.0, x.1, x.2) == (r, s, slope))
            {
                out.push((r, s, slope, orientation));
            }
        }
    }
    Ok(out)
}

pub fn match_manifold(s: &SeifertData) -> Result<MatchReport> {
    Matcher::new().match_manifold(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub reports: Vec<MatchReport>,
}

impl Classification {
    pub fn by_category(&self, cat: Category) -> impl Iterator<Item = &MatchReport> {
        self.reports.iter().filter(move |r| r.category() == cat)
    }

    pub fn with_candidates(&self) -> impl Iterator<Item = &MatchReport> {
        self.reports.iter().filter(|r| !r.candidates.is_empty())
    }
}

/// Matches every enumerated manifold; output order is by `|H1|`, then by
/// canonical data, independent of scheduling.
pub fn run_classification(
    h1_bound: u64,
    n_bound: i64,
    dihedral_only: bool,
) -> Result<Classification> {
    let manifolds = if dihedral_only {
        enumerate_dihedral(h1_bound, n_bound)
    } else {
        enumerate_elliptic(h1_bound, n_bound)
    };
    let matcher = Matcher::new();
    let mut reports: Vec<MatchReport> = manifolds
        .par_iter()
        .map(|m| matcher.match_manifold(&m.data))
        .collect::<Result<_>>()?;
    reports.sort_by(|a, b| (a.h1, &a.manifold.data).cmp(&(b.h1, &b.manifold.data)));
    Ok(Classification { reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(b: i64, c: &[(i64, i64)]) -> SeifertData {
        SeifertData::new(b, c.to_vec()).unwrap()
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidates(7).len(), 18);
        assert_eq!(candidates(1).len(), 1);
        assert_eq!(candidates(4).len(), 3);
    }

    #[test]
    fn h1_seven() {
        let r = match_manifold(&sd(-1, &[(1, 2), (1, 3), (2, 5)])).unwrap();
        let got: Vec<(String, String, Option<(i64, i64)>)> = r
            .candidates
            .iter()
            .map(|c| (c.slope.to_string(), c.poly.label(), c.torus))
            .collect();
        assert_eq!(
            got,
            vec![
                ("7".to_string(), "Δ2".to_string(), Some((5, 2))),
                ("7/2".to_string(), "Δ1".to_string(), Some((3, 2))),
            ]
        );
        assert_eq!(r.category(), Category::UniqueTorus);
    }

    #[test]
    fn excluded_dihedral() {
        let r = match_manifold(&sd(-1, &[(1, 2), (1, 2), (2, 7)])).unwrap();
        assert_eq!(r.verdict, Verdict::NotSurgery);
    }

    #[test]
    fn rejects_lens_spaces() {
        assert!(match_manifold(&sd(-1, &[(1, 2), (1, 3)])).is_err());
    }
}

//! Star-shaped negative definite plumbings bounding Seifert spaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{form_data, neg_cont_frac, FormData, IntMatrix, Rational};
use crate::seifert::{euler_number, normalize_fractions, reverse_orientation, SeifertData};

/// Weighted tree. Vertex order for graphs built from Seifert data: center
/// first, then each arm root to tip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    center: Option<usize>,
    arms: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    weights: Vec<i64>,
    edges: Vec<[usize; 2]>,
}

impl PlumbingGraph {
    /// Validates that the edges form a tree on the vertices.
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::invalid("graph has no vertices"));
        }
        if edges.len() + 1 != n {
            return Err(Error::invalid(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut neighbors = vec![Vec::new(); n];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::invalid(format!("self loop at {a}")));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::invalid("graph has a cycle or repeated edge"));
            }
            parent[ra] = rb;
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for nb in neighbors.iter_mut() {
            nb.sort_unstable();
        }
        let (center, arms) = star_structure(&neighbors);
        Ok(PlumbingGraph {
            weights,
            edges,
            neighbors,
            center,
            arms,
        })
    }

    /// A path with the given weights in order.
    pub fn chain(weights: Vec<i64>) -> Result<Self> {
        let edges = (1..weights.len()).map(|i| (i - 1, i)).collect();
        PlumbingGraph::new(weights, edges)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// The unique vertex of degree >= 3, if there is exactly one.
    pub fn center(&self) -> Option<usize> {
        self.center
    }

    /// Arms hanging off the center, each listed from the center outward.
    pub fn arms(&self) -> &[Vec<usize>] {
        &self.arms
    }

    pub fn intersection_form(&self) -> IntMatrix {
        let n = self.len();
        let mut q = IntMatrix::zeros(n);
        for (i, &w) in self.weights.iter().enumerate() {
            q.set(i, i, w);
        }
        for &(a, b) in &self.edges {
            q.set(a, b, 1);
            q.set(b, a, 1);
        }
        q
    }

    pub fn to_json(&self) -> String {
        let g = GraphJson {
            weights: self.weights.clone(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_string(&g).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("graph JSON: {e}")))?;
        PlumbingGraph::new(
            g.weights,
            g.edges.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}

fn star_structure(neighbors: &[Vec<usize>]) -> (Option<usize>, Vec<Vec<usize>>) {
    let hubs: Vec<usize> = (0..neighbors.len())
        .filter(|&i| neighbors[i].len() >= 3)
        .collect();
    let [c] = hubs.as_slice() else {
        return (None, Vec::new());
    };
    let arms = neighbors[*c]
        .iter()
        .map(|&start| {
            let mut arm = vec![start];
            let (mut prev, mut cur) = (*c, start);
            while let Some(&next) = neighbors[cur].iter().find(|&&x| x != prev) {
                arm.push(next);
                prev = cur;
                cur = next;
            }
            arm
        })
        .collect();
    (Some(*c), arms)
}

/// A vertex is bad when its weight exceeds minus its degree.
pub fn bad_vertex_count(g: &PlumbingGraph) -> usize {
    (0..g.len())
        .filter(|&i| g.weight(i) > -(g.degree(i) as i64))
        .count()
}

/// Graph, form, and whether the graph bounds the reverse of the input.
#[derive(Clone, Debug)]
pub struct Plumbed {
    pub graph: PlumbingGraph,
    pub form: FormData,
    pub flipped: bool,
}

/// Star-shaped plumbing for `s`, oriented so that the Euler number is
/// negative and the form negative definite. The center carries `b`, arm i
/// the expansion of `-b_i/a_i` after fractions are moved into `(0,1)`.
pub fn to_plumbing(s: &SeifertData) -> Result<Plumbed> {
    let e = euler_number(s);
    if e.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let flipped = e.is_positive();
    let data = if flipped {
        reverse_orientation(s)?
    } else {
        normalize_fractions(s)?
    };
    let mut weights = vec![data.b];
    let mut edges = Vec::new();
    for &(a, d) in &data.coeffs {
        let cf = neg_cont_frac(&Rational::frac(-d, a))?;
        let mut prev = 0;
        for w in cf {
            let v = weights.len();
            weights.push(w);
            edges.push((prev, v));
            prev = v;
        }
    }
    let graph = PlumbingGraph::new(weights, edges)?;
    let form = form_data(&graph.intersection_form())?;
    if !form.is_negative_definite() {
        return Err(Error::Internal(format!(
            "plumbing of {s} is not negative definite"
        )));
    }
    Ok(Plumbed {
        graph,
        form,
        flipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sd(b: i64, c: &[(i64, i64)]) -> SeifertData {
        SeifertData::new(b, c.to_vec()).unwrap()
    }

    #[test]
    fn e8_from_poincare_sphere() {
        let p = to_plumbing(&sd(-2, &[(1, 2), (2, 3), (4, 5)])).unwrap();
        assert!(!p.flipped);
        assert_eq!(p.graph.weights(), &[-2; 8]);
        let lens: Vec<usize> = p.graph.arms().iter().map(Vec::len).collect();
        assert_eq!(lens, vec![1, 2, 4]);
        assert_eq!(p.graph.arms()[2], vec![4, 5, 6, 7]);
        assert_eq!(p.form.abs_det(), BigInt::from(1));
        assert_eq!(bad_vertex_count(&p.graph), 1);
    }

    #[test]
    fn canonical_input_is_flipped() {
        let p = to_plumbing(&sd(-1, &[(1, 2), (1, 3), (1, 5)])).unwrap();
        assert!(p.flipped);
        assert_eq!(p.graph.len(), 8);
    }

    #[test]
    fn dihedral_example_graph() {
        for n in [3i64, 5, 9] {
            let p = to_plumbing(&sd(-2, &[(1, 2), (1, 2), (n - 1, n)])).unwrap();
            assert_eq!(p.graph.len() as i64, n + 2);
            assert!(p.graph.weights().iter().all(|&w| w == -2));
            let lens: Vec<usize> = p.graph.arms().iter().map(Vec::len).collect();
            assert_eq!(lens, vec![1, 1, (n - 1) as usize]);
            assert_eq!(p.form.abs_det(), BigInt::from(4));
        }
    }

    #[test]
    fn h1_three_graph() {
        let p = to_plumbing(&sd(-2, &[(1, 2), (2, 3), (2, 3)])).unwrap();
        assert_eq!(p.graph.len(), 6);
        assert!(p.graph.weights().iter().all(|&w| w == -2));
        assert_eq!(bad_vertex_count(&p.graph), 1);
        assert_eq!(p.form.abs_det(), BigInt::from(3));
    }

    #[test]
    fn bad_vertices() {
        let chain = PlumbingGraph::chain(vec![-2; 5]).unwrap();
        assert_eq!(bad_vertex_count(&chain), 0);
        let star = to_plumbing(&sd(-2, &[(1, 2), (1, 2), (2, 3)])).unwrap();
        assert_eq!(bad_vertex_count(&star.graph), 1);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let p = to_plumbing(&sd(-2, &[(1, 2), (2, 3), (4, 5)])).unwrap();
        let back = PlumbingGraph::from_json(&p.graph.to_json()).unwrap();
        assert_eq!(back, p.graph);
        assert!(PlumbingGraph::from_json(r#"{"weights":[-2,-2],"edges":[[0,0]]}"#).is_err());
        assert!(
            PlumbingGraph::from_json(r#"{"weights":[-2,-2,-2],"edges":[[0,1],[1,0]]}"#).is_err()
        );
        assert!(PlumbingGraph::from_json(r#"{"weights":[-2],"edges":[[0,3]]}"#).is_err());
        assert!(PlumbingGraph::from_json("not json").is_err());
    }
}

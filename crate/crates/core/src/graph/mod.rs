//! Simple undirected graphs, seeded G(n,p), and the exact/greedy combinatorial
//! bounds that bracket the minrank: independence number from below, clique
//! cover number (the chromatic number of the complement) from above.

mod bounds;
mod rng;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Field, Matrix};

pub use bounds::{
    clique_cover_exact, clique_cover_exact_with_limit, greedy_clique_cover, independence_number,
    maximum_independent_set, Coloring, DEFAULT_ALPHA_LIMIT, DEFAULT_CLIQUE_COVER_LIMIT,
};
pub use rng::{splitmix64, SplitMix64};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("instance too large: n = {n} exceeds limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid edge ({0}, {1}) for n = {2}")]
    InvalidEdge(usize, usize, usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("coloring assigns non-edge ({0}, {1}) to one class")]
    ImproperOnComplement(usize, usize),
    #[error("coloring assigns edge ({0}, {1}) to one class")]
    ImproperOnGraph(usize, usize),
    #[error("malformed graph: {0}")]
    Parse(String),
}

/// Simple undirected graph on vertices `0..n` with a dense adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            let j = (i + 1) % n;
            if i != j {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(GraphError::InvalidEdge(i, j, n));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// Adds or removes `{i, j}`; self-loops are ignored.
    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        if i != j {
            self.adj[i * self.n + j] = present;
            self.adj[j * self.n + i] = present;
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&e| e)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count() / 2
    }

    /// Neighbourhood of `v` as a bitmask. Only valid for `n <= 64`.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.neighbors(v).fold(0u64, |m, u| m | 1 << u)
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &w) in vertices.iter().enumerate().skip(a + 1) {
                g.set_edge(a, b, self.has_edge(u, w));
            }
        }
        g
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        })
        .expect("graph serializes")
    }

    /// Parses `{"n":..,"edges":[[i,j],..]}`; edges must have `i < j`, appear in
    /// lexicographic order and not repeat.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, GraphError> {
        let parsed: GraphJson =
            serde_json::from_value(v.clone()).map_err(|e| GraphError::Parse(e.to_string()))?;
        let mut prev: Option<[usize; 2]> = None;
        for e in &parsed.edges {
            if e[0] >= e[1] {
                return Err(GraphError::Parse(format!("edge {e:?} must satisfy i < j")));
            }
            if prev.is_some_and(|p| p >= *e) {
                return Err(GraphError::Parse(format!(
                    "edge {e:?} out of order or duplicated"
                )));
            }
            prev = Some(*e);
        }
        let edges: Vec<(usize, usize)> = parsed.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(parsed.n, &edges)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Samples G(n, p) from a splitmix64 stream: one draw per pair `(i, j)`,
/// `i < j`, in lexicographic order; the edge is kept iff `p >= 1` or the draw
/// is below `floor(p * 2^64)`.
///
/// ```
/// use minrank_lab::graph::gnp;
/// let g = gnp(5, 0.5, 42).unwrap();
/// assert_eq!(g.edges(), vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4)]);
/// ```
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    // exact for p < 1: scaling by a power of two is lossless
    let threshold = (p * 18_446_744_073_709_551_616.0) as u64;
    let mut stream = SplitMix64::new(seed);
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let u = stream.next_u64();
            if p >= 1.0 || u < threshold {
                g.set_edge(i, j, true);
            }
        }
    }
    Ok(g)
}

pub fn complement(g: &Graph) -> Graph {
    let mut h = Graph::empty(g.n);
    for i in 0..g.n {
        for j in i + 1..g.n {
            h.set_edge(i, j, !g.has_edge(i, j));
        }
    }
    h
}

/// Whether `m` fits `g`: nonzero diagonal, and `m[i][j] = m[j][i] = 0` on every
/// non-edge. Entries on edges are unconstrained.
pub fn is_fit<F: Field>(field: &F, m: &Matrix<F::Elem>, g: &Graph) -> Result<bool, GraphError> {
    if m.n_rows() != g.n || m.n_cols() != g.n {
        return Err(GraphError::Shape(format!(
            "{}x{} matrix for a graph on {} vertices",
            m.n_rows(),
            m.n_cols(),
            g.n
        )));
    }
    for i in 0..g.n {
        if field.is_zero(m.get(i, i)) {
            return Ok(false);
        }
        for j in 0..g.n {
            if i != j && !g.has_edge(i, j) && !field.is_zero(m.get(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

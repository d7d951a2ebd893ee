//! Simple undirected graphs stored as symmetric bit matrices.
//!
//! Vertices are `0..n`. Each vertex owns a dynamically sized bit row, so
//! graphs up to a few thousand vertices are supported; everything in this
//! crate stays far below that. Graphs are immutable after construction and
//! all operations are pure, so values can be shared freely across threads.

use crate::matching;
use crate::{Error, Result};

/// A finite simple undirected graph.
///
/// Invariants: the adjacency matrix is symmetric with a false diagonal.
/// Self-loops and repeated edges are rejected at construction rather than
/// silently dropped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0u64; n * words],
        }
    }

    /// Builds a graph from an explicit edge list.
    ///
    /// Rejects self-loops, duplicate edges, and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph by evaluating `f(u, v)` on every unordered pair `u < v`.
    pub fn from_predicate(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if f(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u},{v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidArgument(format!("duplicate edge ({u},{v})")));
        }
        self.set_edge(u, v);
        Ok(())
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1u64 << (u % 64);
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Bit row of vertex `v`.
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Whether the edge `uv` is present.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Degree of vertex `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Maximum degree, 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Iterates over the neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Iterates over all edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        let total: usize = self.bits.iter().map(|w| w.count_ones() as usize).sum();
        total / 2
    }

    /// Number of vertex triples inducing a triangle.
    ///
    /// Each unordered adjacent pair contributes its common-neighborhood size,
    /// which counts every triangle three times.
    pub fn triangle_count(&self) -> u64 {
        let mut total: u64 = 0;
        for (u, v) in self.edges() {
            let ru = self.row(u);
            let rv = self.row(v);
            total += ru
                .iter()
                .zip(rv)
                .map(|(&a, &b)| (a & b).count_ones() as u64)
                .sum::<u64>();
        }
        total / 3
    }

    /// Exact maximum matching, with the witness edge set.
    pub fn max_matching(&self) -> Matching {
        let mate = matching::maximum_matching(self, None);
        Matching::from_mates(&mate)
    }

    /// Matching number `ν(G)`.
    pub fn nu(&self) -> usize {
        self.max_matching().len()
    }

    /// Whether the graph has a matching of at least `k` edges.
    ///
    /// Short-circuits: augmentation stops as soon as `k` edges are matched.
    pub fn has_matching_of_size(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let mate = matching::maximum_matching(self, Some(k));
        Matching::from_mates(&mate).len() >= k
    }

    /// Subgraph induced by `verts`, relabeled to `0..verts.len()` in the
    /// given order. The index map is `verts` itself: new `i` is old `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        for &v in verts {
            if v >= self.n {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} out of range for {} vertices",
                    self.n
                )));
            }
            if seen[v] {
                return Err(Error::InvalidArgument(format!("repeated vertex {v}")));
            }
            seen[v] = true;
        }
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Subgraph induced by the neighborhood of `v`, together with the map
    /// from new indices back to the original vertices.
    pub fn neighborhood(&self, v: usize) -> (Graph, Vec<usize>) {
        let verts: Vec<usize> = self.neighbors(v).collect();
        let g = self.induced(&verts).expect("neighbors are in range");
        (g, verts)
    }

    /// Join: disjoint union plus all cross edges. `self`'s vertices keep
    /// their labels; `other`'s are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in self.n..self.n + other.n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(self.n + u, self.n + v);
        }
        g
    }

    /// The graph with the given vertex removed (remaining vertices are
    /// relabeled downward).
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        let verts: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        if v >= self.n {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        self.induced(&verts)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Graph {
        Graph::from_predicate(n, |_, _| true)
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_predicate(a + b, |u, v| u < a && v >= a)
    }

    /// Path on `n` vertices (`n-1` edges).
    pub fn path(n: usize) -> Graph {
        Graph::from_predicate(n, |u, v| v == u + 1)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs >= 3 vertices, got {n}")));
        }
        Ok(Graph::from_predicate(n, |u, v| v == u + 1 || (u == 0 && v == n - 1)))
    }

    /// Friendship graph: `k` triangles sharing vertex 0.
    ///
    /// `2k+1` vertices, `3k` edges, triangle count `k`.
    pub fn friendship(k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(Error::InvalidArgument("friendship graph needs k >= 1".into()));
        }
        let mut g = Graph::empty(2 * k + 1);
        for i in 0..k {
            let (u, v) = (2 * i + 1, 2 * i + 2);
            g.set_edge(0, u);
            g.set_edge(0, v);
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Vertices of positive degree, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) > 0).collect()
    }

    /// graph6 encoding of this graph (labels preserved).
    pub fn to_graph6(&self) -> String {
        crate::graph6::encode(self)
    }

    /// Decodes a graph6 line.
    pub fn from_graph6(line: &str) -> Result<Graph> {
        crate::graph6::decode(line)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// A set of pairwise vertex-disjoint edges of some host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    fn from_mates(mate: &[Option<usize>]) -> Matching {
        let edges = mate
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.filter(|&u| v < u).map(|u| (v, u)))
            .collect();
        Matching { edges }
    }

    /// Number of edges in the matching.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Whether the matching is empty.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The matched pairs, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Checks that every pair is an edge of `g` and that pairs are pairwise
    /// vertex-disjoint.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut used = vec![false; g.n()];
        for &(u, v) in &self.edges {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return Err(Error::Internal(format!("({u},{v}) is not an edge of the host")));
            }
            if used[u] || used[v] {
                return Err(Error::Internal(format!("({u},{v}) reuses a matched vertex")));
            }
            used[u] = true;
            used[v] = true;
        }
        Ok(())
    }
}

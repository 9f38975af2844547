//! Simple undirected graphs on at most [`MAX_VERTICES`] labelled vertices.
//!
//! Every adjacency row is a single machine word, so neighbourhood
//! intersection during clique recursion is one `AND`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// One adjacency row. Changing this alias changes the vertex budget.
pub type Row = u64;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = Row::BITS as usize;

/// An unordered pair `{u, v}` stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Builds the edge `{a, b}` in either order. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "self-loop {a}-{a} is not an edge");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        (a != b).then(|| Edge::new(a, b))
    }

    pub fn u(self) -> usize {
        self.u
    }

    pub fn v(self) -> usize {
        self.v
    }

    pub fn contains(self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    /// Position of this edge in row-major upper-triangle order on `n` vertices.
    pub fn index(self, n: usize) -> usize {
        debug_assert!(self.v < n);
        self.u * (2 * n - self.u - 1) / 2 + (self.v - self.u - 1)
    }

    /// Inverse of [`Edge::index`].
    pub fn from_index(mut idx: usize, n: usize) -> Self {
        let mut u = 0;
        loop {
            let row = n - u - 1;
            if idx < row {
                return Edge { u, v: u + 1 + idx };
            }
            idx -= row;
            u += 1;
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// All `C(n, 2)` edges of `K_n` in row-major order.
pub fn all_edges(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge { u, v }))
}

/// Number of unordered pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
fn bit(v: usize) -> Row {
    1 << v
}

#[inline]
fn low_mask(n: usize) -> Row {
    if n >= MAX_VERTICES {
        !0
    } else {
        (1 << n) - 1
    }
}

/// Counts the `size`-cliques whose vertices all lie in `cand`, each clique
/// once: a clique is extended only by vertices above its current maximum.
pub fn count_cliques_in(rows: &[Row], cand: Row, size: usize) -> u64 {
    match size {
        0 => 1,
        1 => u64::from(cand.count_ones()),
        2 => {
            let mut total = 0;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                total += u64::from((rows[v] & rest).count_ones());
            }
            total
        }
        _ => {
            let mut total = 0;
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let next = rows[v] & rest;
                if next.count_ones() as usize >= size - 1 {
                    total += count_cliques_in(rows, next, size - 1);
                }
            }
            total
        }
    }
}

/// True if `cand` contains at least one `size`-clique. Short-circuits.
pub fn has_clique_in(rows: &[Row], cand: Row, size: usize) -> bool {
    match size {
        0 => true,
        1 => cand != 0,
        _ => {
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let next = rows[v] & rest;
                if next.count_ones() as usize >= size - 1 && has_clique_in(rows, next, size - 1) {
                    return true;
                }
            }
            false
        }
    }
}

/// Calls `visit` with the vertex mask of every `size`-clique inside `cand`.
pub fn for_each_clique_in(rows: &[Row], cand: Row, size: usize, visit: &mut impl FnMut(Row)) {
    fn go(rows: &[Row], cand: Row, size: usize, acc: Row, visit: &mut impl FnMut(Row)) {
        if size == 0 {
            visit(acc);
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let next = rows[v] & rest;
            if next.count_ones() as usize >= size - 1 {
                go(rows, next, size - 1, acc | bit(v), visit);
            }
        }
    }
    go(rows, cand, size, 0, visit);
}

/// Undirected simple graph with one bit-row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Row>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let full = low_mask(n);
        for (v, row) in g.adj.iter_mut().enumerate() {
            *row = full & !bit(v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for e in edges {
            g.check_edge(e)?;
            g.adj[e.u] |= bit(e.v);
            g.adj[e.v] |= bit(e.u);
        }
        Ok(g)
    }

    pub(crate) fn from_rows_unchecked(n: usize, adj: Vec<Row>) -> Self {
        debug_assert_eq!(adj.len(), n);
        Graph { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Row] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> Row {
        self.adj[v]
    }

    pub fn vertex_mask(&self) -> Row {
        low_mask(self.n)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.v < self.n && self.adj[e.u] & bit(e.v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        all_edges(self.n).filter(move |&e| self.has_edge(e))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    fn check_edge(&self, e: Edge) -> Result<(), GraphError> {
        if e.v >= self.n {
            Err(GraphError::VertexOutOfRange { edge: e, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Copy of `self` with every listed edge deleted.
    pub fn remove_edges(&self, es: &[Edge]) -> Result<Graph, GraphError> {
        let mut out = self.clone();
        for &e in es {
            self.check_edge(e)?;
            if !out.has_edge(e) {
                return Err(GraphError::EdgeNotPresent(e));
            }
            out.adj[e.u] &= !bit(e.v);
            out.adj[e.v] &= !bit(e.u);
        }
        Ok(out)
    }

    /// Copy of `self` with the listed edges added (already present edges are ignored).
    pub fn add_edges(&self, es: &[Edge]) -> Result<Graph, GraphError> {
        let mut out = self.clone();
        for &e in es {
            self.check_edge(e)?;
            out.adj[e.u] |= bit(e.v);
            out.adj[e.v] |= bit(e.u);
        }
        Ok(out)
    }

    /// Number of `s`-subsets inducing a complete subgraph.
    pub fn count_cliques(&self, s: usize) -> u64 {
        if s > self.n {
            return 0;
        }
        count_cliques_in(&self.adj, self.vertex_mask(), s)
    }

    pub fn has_clique(&self, s: usize) -> bool {
        s <= self.n && has_clique_in(&self.adj, self.vertex_mask(), s)
    }

    /// Number of `s`-cliques containing both endpoints of `e`.
    pub fn count_cliques_through_edge(&self, s: usize, e: Edge) -> Result<u64, GraphError> {
        self.check_edge(e)?;
        if !self.has_edge(e) {
            return Err(GraphError::EdgeNotPresent(e));
        }
        Ok(self.cliques_through_pair(s, e))
    }

    /// Like [`count_cliques_through_edge`](Self::count_cliques_through_edge) but
    /// does not require `e` to be present: counts `s`-sets containing `e`'s
    /// endpoints that would be cliques if `e` were added.
    pub fn cliques_through_pair(&self, s: usize, e: Edge) -> u64 {
        if s < 2 {
            return 0;
        }
        let common = self.adj[e.u] & self.adj[e.v];
        count_cliques_in(&self.adj, common, s - 2)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0; self.n];
        for e in self.edges() {
            let (a, b) = (perm[e.u], perm[e.v]);
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by the vertices in `mask`, keeping original labels.
    pub fn restricted(&self, mask: Row) -> Graph {
        let adj = self.adj.iter().enumerate().map(|(v, r)| if mask & bit(v) != 0 { r & mask } else { 0 }).collect();
        Graph { n: self.n, adj }
    }

    /// True if the edges of `self` form a single connected component on the
    /// vertices they touch (vacuously false for an edgeless graph).
    pub fn edges_connected(&self) -> bool {
        let touched: Row = self.adj.iter().enumerate().filter(|(_, r)| **r != 0).fold(0, |m, (v, _)| m | bit(v));
        if touched == 0 {
            return false;
        }
        let start = touched.trailing_zeros() as usize;
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == touched
    }

    /// Vertices touched by at least one edge.
    pub fn touched_vertices(&self) -> Row {
        self.adj.iter().enumerate().filter(|(_, r)| **r != 0).fold(0, |m, (v, _)| m | bit(v))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().map(|e| e.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    Graph::complete(n)
}

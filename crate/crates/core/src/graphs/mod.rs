//! Simple undirected graphs on vertices `0..n`.
//!
//! Every named construction fixes its vertex order, because labelers index
//! vertices directly:
//!
//! * `cycle(n)`: `i ~ i±1 (mod n)`
//! * `path(n)`: `i ~ i+1`
//! * `star(n)`: vertex 0 is the center, leaves `1..=n`
//! * `complete_multipartite(&[m1, .., mt])`: parts are consecutive id ranges
//! * `complete_minus_matching(n)`: `K_n` without the edges `{2i, 2i+1}`
//! * `join(g, h)`: the vertices of `g` first, then those of `h` shifted by `|g|`

mod expr;
mod trees;

pub use expr::{construct_graph, parse_edge_list};
pub use trees::{enumerate_trees, prufer_decode, tree_canonical_code};

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("edge list: {0}")]
    EdgeList(String),
    #[error("cannot read `{path}`: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Pairs of twin vertices (equal open neighborhoods) covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinPairing {
    pairs: Vec<(usize, usize)>,
}

impl TwinPairing {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub degrees: Vec<usize>,
    pub is_regular: bool,
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
    pub is_tree: bool,
    pub is_connected: bool,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from an adjacency predicate over unordered pairs.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|list| list.binary_search(&v).is_ok())
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParameter(format!("C({n}) needs n >= 3")));
        }
        Ok(Self::from_fn(n, |u, v| v - u == 1 || v - u == n - 1))
    }

    pub fn path(n: usize) -> Self {
        Self::from_fn(n, |u, v| v - u == 1)
    }

    pub fn complete_multipartite(parts: &[usize]) -> Self {
        let part_of: Vec<usize> =
            parts.iter().enumerate().flat_map(|(i, &size)| std::iter::repeat_n(i, size)).collect();
        Self::from_fn(part_of.len(), |u, v| part_of[u] != part_of[v])
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        Self::complete_multipartite(&[m, n])
    }

    /// `K_{1,n}` with center 0.
    pub fn star(n: usize) -> Self {
        Self::from_fn(n + 1, |u, _| u == 0)
    }

    /// `K_n` minus the perfect matching `{2i, 2i+1}`.
    pub fn complete_minus_matching(n: usize) -> Result<Self, GraphError> {
        if n % 2 == 1 {
            return Err(GraphError::InvalidParameter(format!("KmM({n}) needs n even")));
        }
        Ok(Self::from_fn(n, |u, v| u / 2 != v / 2))
    }

    /// `self + other`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let offset = self.n();
        Graph::from_fn(offset + other.n(), |u, v| match (u < offset, v < offset) {
            (true, true) => self.has_edge(u, v),
            (false, false) => other.has_edge(u - offset, v - offset),
            _ => true,
        })
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n(), |u, v| !self.has_edge(u, v))
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |a, b| self.has_edge(vertices[a], vertices[b]))
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// `G^k`: same vertices, `u ~ v` iff `1 <= d(u, v) <= k`.
    pub fn power(&self, k: usize) -> Result<Graph, GraphError> {
        if k == 0 {
            return Err(GraphError::InvalidParameter("graph power needs k >= 1".into()));
        }
        let dist: Vec<Vec<Option<usize>>> = (0..self.n()).map(|v| self.distances_from(v)).collect();
        Ok(Graph::from_fn(self.n(), |u, v| dist[u][v].is_some_and(|d| d <= k)))
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() == self.n() - 1 && self.is_connected()
    }

    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.n() {
            for d in self.distances_from(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            degrees: self.degrees(),
            is_regular: self.is_regular(),
            diameter: self.diameter(),
            is_tree: self.is_tree(),
            is_connected: self.is_connected(),
        }
    }

    /// Groups vertices by open neighborhood and pairs them up inside each
    /// class in ascending id order. Fails when some class has odd size.
    pub fn find_twin_pairing(&self) -> Option<TwinPairing> {
        let mut classes: HashMap<&[usize], Vec<usize>> = HashMap::new();
        for v in 0..self.n() {
            classes.entry(self.adj[v].as_slice()).or_default().push(v);
        }
        let mut pairs = Vec::with_capacity(self.n() / 2);
        for class in classes.values() {
            if class.len() % 2 == 1 {
                return None;
            }
            pairs.extend(class.chunks(2).map(|c| (c[0], c[1])));
        }
        pairs.sort_unstable();
        Some(TwinPairing { pairs })
    }

    /// Regular, even order, and split into twin pairs.
    pub fn is_balanced_dmg(&self) -> bool {
        self.n().is_multiple_of(2) && self.is_regular() && self.find_twin_pairing().is_some()
    }

    /// If the vertex set splits into two parts with every cross edge present
    /// and no edge inside a part, returns the side of each vertex
    /// (`false` for the side containing vertex 0).
    pub fn complete_bipartition(&self) -> Option<Vec<bool>> {
        if self.n() < 2 || !self.is_connected() {
            return None;
        }
        let dist = self.distances_from(0);
        let side: Vec<bool> = dist.iter().map(|d| d.unwrap() % 2 == 1).collect();
        let ones = side.iter().filter(|&&s| s).count();
        let complete = self.edges().all(|(u, v)| side[u] != side[v]) && self.edge_count() == ones * (self.n() - ones);
        complete.then_some(side)
    }

    /// Exact isomorphism test by backtracking with degree pruning; meant for
    /// the small graphs (n <= 10) this crate deals with.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.n() != other.n() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut da = self.degrees();
        let mut db = other.degrees();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        let mut map = vec![usize::MAX; self.n()];
        let mut used = vec![false; self.n()];
        self.extend_iso(other, 0, &mut map, &mut used)
    }

    fn extend_iso(&self, other: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if v == self.n() {
            return true;
        }
        for w in 0..other.n() {
            if used[w] || other.degree(w) != self.degree(v) {
                continue;
            }
            let consistent = (0..v).all(|u| self.has_edge(u, v) == other.has_edge(map[u], w));
            if consistent {
                map[v] = w;
                used[w] = true;
                if self.extend_iso(other, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_join_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(c4.is_regular());
        assert_eq!(c4.degrees(), [2, 2, 2, 2]);
        assert!(Graph::cycle(2).is_err());

        let g = Graph::complete_minus_matching(4).unwrap().join(&Graph::complete(1));
        assert_eq!(g.n(), 5);
        assert_eq!(g.degrees(), [3, 3, 3, 3, 4]);
        assert!(Graph::complete_minus_matching(5).is_err());

        assert_eq!(Graph::complete_bipartite(2, 3).degrees(), [3, 3, 2, 2, 2]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn power_examples() {
        let c6 = Graph::cycle(6).unwrap();
        let sq = c6.power(2).unwrap();
        let k6_minus = Graph::from_fn(6, |u, v| v - u != 3);
        assert_eq!(sq, k6_minus);
        assert_eq!(c6.power(1).unwrap(), c6);
        assert_eq!(Graph::path(4).power(3).unwrap(), Graph::complete(4));
        assert!(c6.power(0).is_err());
    }

    #[test]
    fn metrics_examples() {
        let p4 = Graph::path(4).metrics();
        assert_eq!(p4.diameter, Some(3));
        assert!(p4.is_tree);
        let c5 = Graph::cycle(5).unwrap().metrics();
        assert!(c5.is_regular);
        assert_eq!(c5.diameter, Some(2));
        let kb = Graph::complete_bipartite(2, 3).metrics();
        assert!(!kb.is_regular);
        assert_eq!(kb.diameter, Some(2));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().metrics();
        assert_eq!(split.diameter, None);
        assert!(!split.is_connected && !split.is_tree);
    }

    #[test]
    fn twin_pairing_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.find_twin_pairing().unwrap().pairs(), &[(0, 2), (1, 3)]);
        assert!(Graph::complete_bipartite(4, 4).is_balanced_dmg());
        assert!(Graph::cycle(6).unwrap().find_twin_pairing().is_none());
        let sq = Graph::cycle(6).unwrap().power(2).unwrap();
        assert_eq!(sq.find_twin_pairing().unwrap().pairs(), &[(0, 3), (1, 4), (2, 5)]);
        assert_eq!(
            Graph::complete_minus_matching(8).unwrap().find_twin_pairing().unwrap().pairs(),
            &[(0, 1), (2, 3), (4, 5), (6, 7)]
        );
    }

    #[test]
    fn bipartition_detection() {
        let side = Graph::complete_bipartite(2, 3).complete_bipartition().unwrap();
        assert_eq!(side, [false, false, true, true, true]);
        assert!(Graph::cycle(6).unwrap().complete_bipartition().is_none());
        assert!(Graph::cycle(4).unwrap().complete_bipartition().is_some());
    }

    #[test]
    fn isomorphism() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(c4.is_isomorphic(&Graph::complete_minus_matching(4).unwrap()));
        assert!(!Graph::path(4).is_isomorphic(&Graph::star(3)));
        let relabeled = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1), (1, 2)]).unwrap();
        assert!(c4.is_isomorphic(&relabeled));
    }
}

//! Simple undirected graphs, vertex subsets and multipoles.
//!
//! Vertices are dense ids `0..n`. Graphs are immutable once built, so every
//! query here is a pure function over shared data.

mod multipole;
mod vertex_set;

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use multipole::Multipole;
pub use vertex_set::VertexSet;

const MODULE: &str = "graph-core";

/// An undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

/// Length of a shortest cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    /// True when every cycle has length at least `len`.
    pub fn at_least(self, len: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= len,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => serializer.serialize_u64(*g as u64),
            Girth::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

/// A finite simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, parallel edges and ids `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge between {u} and {}",
                    w[0]
                )));
            }
        }
        Ok(Graph {
            adjacency,
            edge_count,
        })
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The common degree, if every vertex has the same degree.
    pub fn is_regular(&self) -> Option<usize> {
        let mut degrees = self.adjacency.iter().map(Vec::len);
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    /// Hop distances from `root`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, root: usize) -> Result<Vec<Option<usize>>> {
        if root >= self.order() {
            return Err(Error::invalid(
                MODULE,
                format!("root {root} outside 0..{}", self.order()),
            ));
        }
        let mut dist = vec![None; self.order()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Vertices within `radius` hops of any vertex in `roots`.
    pub fn ball(&self, roots: &[usize], radius: usize) -> VertexSet {
        let mut seen = VertexSet::new(self.order());
        let mut frontier: Vec<usize> = roots.iter().copied().filter(|&r| seen.insert(r)).collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adjacency[u] {
                    if seen.insert(w) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.order() {
            0 => true,
            n => self.ball(&[0], n).len() == n,
        }
    }

    /// Shortest cycle length, from one BFS per root. Each BFS stops once
    /// its depth can no longer beat the best cycle found so far.
    pub fn girth(&self) -> Girth {
        let n = self.order();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adjacency[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if 2 * dist[u] + 1 >= best {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Two-colours each component; true when no edge joins equal colours.
    pub fn is_bipartite(&self) -> bool {
        let n = self.order();
        let mut colour = vec![u8::MAX; n];
        for start in 0..n {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_subset(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.order() {
            return Err(Error::invalid(
                MODULE,
                format!(
                    "vertex set over {} ids used with a graph of order {}",
                    s.universe(),
                    self.order()
                ),
            ));
        }
        if s.is_empty() {
            return Err(Error::invalid(MODULE, "vertex set is empty"));
        }
        Ok(())
    }

    /// Number of edges with exactly one endpoint in `s`. No argument checks.
    pub fn boundary_size(&self, s: &VertexSet) -> usize {
        s.iter()
            .map(|u| self.adjacency[u].iter().filter(|&&w| !s.contains(w)).count())
            .sum()
    }

    /// The edges leaving `s`, each reported as `(inside, outside)`.
    pub fn edge_boundary(&self, s: &VertexSet) -> Result<Vec<Edge>> {
        self.check_subset(s)?;
        if s.len() == self.order() {
            return Err(Error::invalid(MODULE, "edge boundary of the whole vertex set"));
        }
        Ok(s.iter()
            .flat_map(|u| {
                self.adjacency[u]
                    .iter()
                    .filter(|&&w| !s.contains(w))
                    .map(move |&w| (u, w))
            })
            .collect())
    }

    /// The induced multipole on `s`: edges leaving `s` become semi-edges.
    pub fn induced_multipole(&self, s: &VertexSet) -> Result<Multipole> {
        self.check_subset(s)?;
        Ok(Multipole::from_graph(self).induced(s))
    }

    /// Neighbourhood bitmasks, available when the graph has at most 64 vertices.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        (self.order() <= 64).then(|| {
            self.adjacency
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &w| m | 1 << w))
                .collect()
        })
    }

    /// Disjoint union: `other`'s vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|list| list.iter().map(|&w| w + shift).collect()),
        );
        Graph {
            adjacency,
            edge_count: self.edge_count + other.edge_count,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub(crate) fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// Outer cycle 0..5, spokes i -- i+5, inner pentagram.
    pub(crate) fn petersen() -> Graph {
        let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
        Graph::from_edges(10, edges).unwrap()
    }

    /// Cycle enumeration oracle: length of the shortest simple cycle found
    /// by DFS over paths of length at most `limit`.
    fn shortest_cycle_by_paths(g: &Graph, limit: usize) -> Option<usize> {
        fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, limit: usize, best: &mut Option<usize>) {
            let last = *path.last().unwrap();
            for &w in g.neighbors(last) {
                if w == start && path.len() >= 3 {
                    *best = Some(best.map_or(path.len(), |b| b.min(path.len())));
                } else if w > start && !path.contains(&w) && path.len() < limit {
                    path.push(w);
                    extend(g, start, path, limit, best);
                    path.pop();
                }
            }
        }
        let mut best = None;
        for start in 0..g.order() {
            extend(g, start, &mut vec![start], limit, &mut best);
        }
        best
    }

    #[test]
    fn girth_examples() {
        assert_eq!(complete(4).girth(), Girth::Finite(3));
        assert_eq!(cycle(6).girth(), Girth::Finite(6));
        assert_eq!(petersen().girth(), Girth::Finite(5));
        assert_eq!(shortest_cycle_by_paths(&petersen(), 5), Some(5));
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), Girth::Infinite);
    }

    #[test]
    fn regularity() {
        assert_eq!(petersen().is_regular(), Some(3));
        let k4_minus = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(k4_minus.is_regular(), None);
        assert_eq!(Graph::empty(1).is_regular(), Some(0));
    }

    #[test]
    fn bfs_examples() {
        let d = cycle(6).bfs_distances(0).unwrap();
        assert_eq!(d, [0, 1, 2, 3, 2, 1].map(Some).to_vec());
        let p = petersen();
        for root in 0..10 {
            let d = p.bfs_distances(root).unwrap();
            let count = |k| d.iter().filter(|x| **x == Some(k)).count();
            assert_eq!((count(0), count(1), count(2)), (1, 3, 6));
        }
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.bfs_distances(0).unwrap(), vec![Some(0), Some(1), None, None]);
        assert!(two.bfs_distances(4).is_err());
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn multipole_examples() {
        let p = petersen();
        let single = p.induced_multipole(&VertexSet::from_vertices(10, [4]).unwrap()).unwrap();
        assert_eq!(single.internal_edges().len(), 0);
        assert_eq!(single.semi_edges(4), Some(3));

        let outer = VertexSet::from_vertices(10, 0..5).unwrap();
        let m = p.induced_multipole(&outer).unwrap();
        assert_eq!(m.internal_edges().len(), 5);
        assert!((0..5).all(|v| m.semi_edges(v) == Some(1)));

        let k4 = complete(4);
        let whole = k4.induced_multipole(&VertexSet::full(4)).unwrap();
        assert_eq!(whole.internal_edges().len(), 6);
        assert_eq!(whole.total_semi_edges(), 0);

        assert!(p.induced_multipole(&VertexSet::new(10)).is_err());
    }

    #[test]
    fn boundary_examples() {
        let p = petersen();
        let outer = VertexSet::from_vertices(10, 0..5).unwrap();
        let spokes = p.edge_boundary(&outer).unwrap();
        assert_eq!(spokes, (0..5).map(|i| (i, i + 5)).collect::<Vec<_>>());
        let arc = VertexSet::from_vertices(6, [0, 1, 2]).unwrap();
        assert_eq!(cycle(6).edge_boundary(&arc).unwrap().len(), 2);
        let single = VertexSet::from_vertices(4, [0]).unwrap();
        assert_eq!(complete(4).edge_boundary(&single).unwrap().len(), 3);
        assert!(complete(4).edge_boundary(&VertexSet::full(4)).is_err());
        assert!(complete(4).edge_boundary(&VertexSet::new(4)).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..14).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn boundary_symmetric_and_matches_semi_edges(g in arb_graph(), mask in any::<u64>()) {
            let n = g.order();
            let s = VertexSet::from_mask(n, mask);
            prop_assume!(!s.is_empty() && s.len() < n);
            let b = g.edge_boundary(&s).unwrap().len();
            prop_assert_eq!(b, g.edge_boundary(&s.complement()).unwrap().len());
            let m = g.induced_multipole(&s).unwrap();
            prop_assert_eq!(m.total_semi_edges(), b);
            for u in s.iter() {
                prop_assert_eq!(m.degree(u), Some(g.degree(u)));
            }
        }

        #[test]
        fn adjacency_invariants(g in arb_graph()) {
            let degree_sum: usize = (0..g.order()).map(|u| g.degree(u)).sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
            for (u, v) in g.edges() {
                prop_assert!(g.has_edge(v, u));
            }
            if let Girth::Finite(len) = g.girth() {
                prop_assert!(len >= 3);
                prop_assert_eq!(shortest_cycle_by_paths(&g, len), Some(len));
            } else {
                prop_assert_eq!(shortest_cycle_by_paths(&g, g.order()), None);
            }
        }

        #[test]
        fn bfs_triangle_inequality(g in arb_graph(), a in 0usize..64, b in 0usize..64, c in 0usize..64) {
            let n = g.order();
            let (a, b, c) = (a % n, b % n, c % n);
            let da = g.bfs_distances(a).unwrap();
            let db = g.bfs_distances(b).unwrap();
            if let (Some(ab), Some(bc)) = (da[b], db[c]) {
                let ac = da[c].expect("c reachable through b");
                prop_assert!(ac <= ab + bc);
            }
        }
    }

    #[test]
    fn regular_graphs_have_finite_girth() {
        for g in [complete(4), cycle(5), petersen()] {
            assert!(g.girth().finite().is_some());
        }
    }
}

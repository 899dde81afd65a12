use super::{Edge, Graph, VertexSet};

/// A graph that may carry semi-edges: edges incident with one vertex only.
///
/// Vertex ids are those of the host graph. Only semi-edge counts are kept,
/// never their identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multipole {
    vertices: VertexSet,
    adjacency: Vec<Vec<usize>>,
    semi: Vec<usize>,
}

impl Multipole {
    /// A graph viewed as a multipole without semi-edges.
    pub fn from_graph(g: &Graph) -> Self {
        Multipole {
            vertices: VertexSet::full(g.order()),
            adjacency: (0..g.order()).map(|u| g.neighbors(u).to_vec()).collect(),
            semi: vec![0; g.order()],
        }
    }

    /// The induced multipole on `s`: each member keeps its edges into `s`,
    /// gains a semi-edge for every edge leaving `s`, and keeps its existing
    /// semi-edges. Degrees are preserved. Non-members of `self` in `s` are
    /// ignored.
    pub fn induced(&self, s: &VertexSet) -> Multipole {
        let members = self.vertices.intersection(s);
        let mut adjacency = vec![Vec::new(); self.adjacency.len()];
        let mut semi = vec![0; self.adjacency.len()];
        for u in members.iter() {
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                self.adjacency[u].iter().partition(|&&w| members.contains(w));
            adjacency[u] = inside;
            semi[u] = self.semi[u] + outside.len();
        }
        Multipole {
            vertices: members,
            adjacency,
            semi,
        }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    /// Edges with both ends in the multipole, `(u, v)` with `u < v`.
    pub fn internal_edges(&self) -> Vec<Edge> {
        self.vertices
            .iter()
            .flat_map(|u| self.adjacency[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    pub fn internal_degree(&self, u: usize) -> Option<usize> {
        self.vertices.contains(u).then(|| self.adjacency[u].len())
    }

    pub fn semi_edges(&self, u: usize) -> Option<usize> {
        self.vertices.contains(u).then(|| self.semi[u])
    }

    /// Internal edges plus semi-edges at `u`.
    pub fn degree(&self, u: usize) -> Option<usize> {
        self.vertices
            .contains(u)
            .then(|| self.adjacency[u].len() + self.semi[u])
    }

    pub fn total_semi_edges(&self) -> usize {
        self.vertices.iter().map(|u| self.semi[u]).sum()
    }

    /// True when the internal edges form a forest.
    pub fn is_acyclic(&self) -> bool {
        let n = self.adjacency.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (u, v) in self.internal_edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::petersen;

    #[test]
    fn nested_induction_keeps_degrees() {
        let p = petersen();
        let outer = VertexSet::from_vertices(10, 0..5).unwrap();
        let first = p.induced_multipole(&outer).unwrap();
        let pair = VertexSet::from_vertices(10, [0, 1]).unwrap();
        let second = first.induced(&pair);
        assert_eq!(second.internal_edges(), vec![(0, 1)]);
        assert_eq!(second.semi_edges(0), Some(2));
        assert_eq!(second.degree(1), Some(3));
        assert!(second.is_acyclic());
        assert!(!first.is_acyclic());
    }
}

//! Simple undirected graphs, planarity, vertex connectivity and the
//! polyhedral predicate.

mod connectivity;
mod dmp;
mod lr;

use serde::Serialize;

use crate::error::{invalid, Result};

pub use connectivity::{local_vertex_connectivity, vertex_connectivity};
pub use dmp::{embed, verify_embedding, BlockEmbedding, Embedding};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl SimpleGraph {
    /// Rejects loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return invalid(format!("edge ({a},{b}) out of range for {n} vertices"));
            }
            if a == b {
                return invalid(format!("loop at vertex {a}"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("duplicate edge at vertex {v}"));
            }
        }
        Ok(SimpleGraph { n, adj, m: edges.len() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for a in 0..self.n {
            for &b in &self.adj[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    fn without_edge(&self, e: (usize, usize)) -> SimpleGraph {
        let edges: Vec<_> = self.edges().into_iter().filter(|&f| f != e).collect();
        SimpleGraph::new(self.n, &edges).expect("subgraph of a simple graph")
    }
}

/// Exact planarity by the left-right criterion.
pub fn is_planar(g: &SimpleGraph) -> bool {
    if g.n > 2 && g.m > 3 * g.n - 6 {
        return false;
    }
    lr::lr_planar(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K5` or `K3,3` contained in the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// `None` for planar graphs; otherwise an edge-minimal non-planar subgraph.
pub fn kuratowski_witness(g: &SimpleGraph) -> Option<Kuratowski> {
    if is_planar(g) {
        return None;
    }
    let mut h = g.clone();
    for e in g.edges() {
        let smaller = h.without_edge(e);
        if !is_planar(&smaller) {
            h = smaller;
        }
    }
    let branch: Vec<usize> = (0..h.n).filter(|&v| h.degree(v) >= 3).collect();
    let kind = if branch.len() == 5 && branch.iter().all(|&v| h.degree(v) == 4) {
        KuratowskiKind::K5
    } else {
        KuratowskiKind::K33
    };
    Some(Kuratowski { kind, branch_vertices: branch, edges: h.edges() })
}

/// Planar and 3-connected.
pub fn is_polyhedral(g: &SimpleGraph) -> bool {
    g.n >= 4 && is_planar(g) && vertex_connectivity(g) >= 3
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog;

    pub fn complete(n: usize) -> SimpleGraph {
        let e: Vec<_> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
        SimpleGraph::new(n, &e).unwrap()
    }

    pub fn k33() -> SimpleGraph {
        let e: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        SimpleGraph::new(6, &e).unwrap()
    }

    #[test]
    fn k5_is_not_planar() {
        let g = complete(5);
        assert!(!is_planar(&g));
        let w = kuratowski_witness(&g).unwrap();
        assert_eq!(w.kind, KuratowskiKind::K5);
        assert_eq!(w.edges.len(), 10);
    }

    #[test]
    fn k33_is_not_planar() {
        let g = k33();
        assert!(!is_planar(&g));
        assert_eq!(kuratowski_witness(&g).unwrap().kind, KuratowskiKind::K33);
    }

    #[test]
    fn petersen_contains_k33_subdivision() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = SimpleGraph::new(10, &e).unwrap();
        assert!(!is_planar(&g));
        let w = kuratowski_witness(&g).unwrap();
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert_eq!(w.branch_vertices.len(), 6);
    }

    #[test]
    fn k4_and_dodecahedron_are_planar() {
        assert!(is_planar(&complete(4)));
        let d = catalog::solid("dodecahedron").unwrap().graph();
        assert!(is_planar(&d));
        assert!(kuratowski_witness(&d).is_none());
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(SimpleGraph::new(3, &[(0, 0)]).is_err());
        assert!(SimpleGraph::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::new(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn polyhedral_examples() {
        assert!(is_polyhedral(&catalog::solid("octahedron").unwrap().graph()));
        let k4_minus = SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(!is_polyhedral(&k4_minus));
        for s in catalog::solids() {
            assert!(is_polyhedral(&s.graph()), "{}", s.name);
        }
    }
}

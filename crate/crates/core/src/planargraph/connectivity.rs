//! Vertex connectivity by unit-capacity flows on the vertex-split digraph.

use std::collections::VecDeque;

use super::SimpleGraph;

/// Residual network: vertex `v` becomes `2v -> 2v+1` with capacity one.
struct Flow {
    head: Vec<usize>,
    cap: Vec<u8>,
    adj: Vec<Vec<usize>>,
}

impl Flow {
    fn new(g: &SimpleGraph, s: usize, t: usize) -> Flow {
        let mut f = Flow { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); 2 * g.n()] };
        for v in 0..g.n() {
            // source and sink are not limited
            let c = if v == s || v == t { 2 } else { 1 };
            f.arc(2 * v, 2 * v + 1, c);
        }
        for (a, b) in g.edges() {
            f.arc(2 * a + 1, 2 * b, 1);
            f.arc(2 * b + 1, 2 * a, 1);
        }
        f
    }

    fn arc(&mut self, a: usize, b: usize, c: u8) {
        self.adj[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.adj[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let w = self.head[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = e;
                    if w == t {
                        let mut x = t;
                        while x != s {
                            let e = via[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.head[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

/// Number of internally disjoint `s`-`t` paths in a graph where `s` and `t`
/// are not adjacent, stopping once `cap` is reached.
pub fn local_vertex_connectivity(g: &SimpleGraph, s: usize, t: usize, cap: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let mut f = Flow::new(g, s, t);
    let mut k = 0;
    while k < cap && f.augment(2 * s + 1, 2 * t) {
        k += 1;
    }
    k
}

/// Vertex connectivity; `n - 1` for complete graphs.
pub fn vertex_connectivity(g: &SimpleGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut k = g.min_degree();
    // Some minimum separator misses one of v_0..v_k, so checking pairs with
    // a smaller endpoint among them suffices.
    let mut i = 0;
    while i <= k && i < n {
        for j in (i + 1)..n {
            if !g.has_edge(i, j) {
                k = k.min(local_vertex_connectivity(g, i, j, k));
            }
        }
        i += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::super::tests::{complete, k33};
    use super::*;
    use crate::catalog;

    fn brute(g: &SimpleGraph) -> usize {
        let n = g.n();
        let mut best = n - 1;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size >= best || size + 2 > n {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 0).collect();
            let mut seen = vec![false; n];
            let mut stack = vec![rest[0]];
            seen[rest[0]] = true;
            while let Some(v) = stack.pop() {
                for &w in g.neighbors(v) {
                    if mask >> w & 1 == 0 && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if rest.iter().any(|&v| !seen[v]) {
                best = size;
            }
        }
        best
    }

    #[test]
    fn small_known_values() {
        assert_eq!(vertex_connectivity(&complete(1)), 0);
        assert_eq!(vertex_connectivity(&complete(5)), 4);
        assert_eq!(vertex_connectivity(&k33()), 3);
        let path = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(vertex_connectivity(&path), 1);
        let split = SimpleGraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&split), 0);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..9);
            let p: f64 = rng.gen_range(0.2..0.9);
            let e: Vec<_> = (0..n)
                .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = SimpleGraph::new(n, &e).unwrap();
            assert_eq!(vertex_connectivity(&g), brute(&g), "{e:?}");
        }
    }

    #[test]
    fn solids_are_three_connected() {
        for s in catalog::solids() {
            let g = s.graph();
            assert_eq!(vertex_connectivity(&g), g.min_degree(), "{}", s.name);
        }
    }
}

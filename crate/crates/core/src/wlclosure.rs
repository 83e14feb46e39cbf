//! Coherent closure by 2-dimensional Weisfeiler-Leman refinement.
//!
//! Internally colors are named by the sorted order of their signatures, so
//! the refined coloring is an isomorphism invariant of the input labels. The
//! public results are renumbered by first appearance.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;

use crate::ccstruct::ColorGraph;
use crate::error::{invalid, Result};

/// An arbitrary coloring of ordered pairs, the input to [`wl_close`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialColoring {
    pub n: usize,
    /// Row-major `n x n` labels.
    pub color: Vec<usize>,
}

impl InitialColoring {
    pub fn new(n: usize, color: Vec<usize>) -> Result<Self> {
        if color.len() != n * n {
            return invalid(format!("expected {} labels, got {}", n * n, color.len()));
        }
        Ok(InitialColoring { n, color })
    }

    /// Diagonal, edge and non-edge labels of a simple graph.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut color = vec![2; n * n];
        for a in 0..n {
            color[a * n + a] = 0;
        }
        for &(a, b) in edges {
            if a >= n || b >= n {
                return invalid(format!("edge ({a},{b}) out of range"));
            }
            if a == b {
                return invalid(format!("loop at {a}"));
            }
            if color[a * n + b] == 1 {
                return invalid(format!("duplicate edge ({a},{b})"));
            }
            color[a * n + b] = 1;
            color[b * n + a] = 1;
        }
        Ok(InitialColoring { n, color })
    }
}

/// Stable coloring with invariant color names `0..count`.
#[derive(Clone, Debug)]
pub(crate) struct Refined {
    pub n: usize,
    pub colors: Vec<u32>,
    pub count: usize,
    /// Hash of every round's signature table; equal inputs up to
    /// isomorphism give equal traces.
    pub trace: u64,
}

impl Refined {
    pub fn diag(&self, v: usize) -> u32 {
        self.colors[v * self.n + v]
    }
}

fn assign_sorted<K: Ord + Hash + Eq + Clone>(keys: &[K], hasher: &mut DefaultHasher) -> (Vec<u32>, usize) {
    let mut uniq: Vec<&K> = keys.iter().collect();
    uniq.sort_unstable();
    uniq.dedup();
    for k in &uniq {
        k.hash(hasher);
    }
    let ids: HashMap<&K, u32> = uniq.iter().enumerate().map(|(i, k)| (*k, i as u32)).collect();
    (keys.iter().map(|k| ids[k]).collect(), uniq.len())
}

/// Runs the refinement to its fixed point from invariant labels.
pub(crate) fn refine(n: usize, labels: &[u64]) -> Refined {
    let mut hasher = DefaultHasher::new();
    n.hash(&mut hasher);
    let init: Vec<(bool, u64, u64)> =
        (0..n * n).map(|p| (p / n == p % n, labels[p], labels[(p % n) * n + p / n])).collect();
    let (mut colors, mut count) = assign_sorted(&init, &mut hasher);
    let width = n + 1;
    let mut sig = vec![0u64; n * n * width];
    loop {
        let k = count as u64;
        let cur = &colors;
        sig.par_chunks_mut(width).enumerate().for_each(|(p, out)| {
            let (a, b) = (p / n, p % n);
            out[0] = cur[p] as u64;
            for g in 0..n {
                out[g + 1] = cur[a * n + g] as u64 * k + cur[g * n + b] as u64;
            }
            out[1..].sort_unstable();
        });
        let keys: Vec<&[u64]> = sig.chunks(width).collect();
        let (next, next_count) = assign_sorted(&keys, &mut hasher);
        if next_count == count {
            break;
        }
        colors = next;
        count = next_count;
    }
    count.hash(&mut hasher);
    Refined { n, colors, count, trace: hasher.finish() }
}

fn to_color_graph(n: usize, r: &Refined) -> ColorGraph {
    ColorGraph::from_matrix(n, r.colors.iter().map(|&c| c as usize).collect())
        .expect("stable coloring is a rainbow")
}

/// The coherent closure of an arbitrary pair coloring.
pub fn wl_close(init: &InitialColoring) -> ColorGraph {
    let labels: Vec<u64> = init.color.iter().map(|&c| c as u64).collect();
    to_color_graph(init.n, &refine(init.n, &labels))
}

/// The coherent closure of a simple undirected graph.
pub fn wl_close_graph(n: usize, edges: &[(usize, usize)]) -> Result<ColorGraph> {
    Ok(wl_close(&InitialColoring::from_graph(n, edges)?))
}

/// The coherent closure of a rainbow. A [`ColorGraph`] satisfies the rainbow
/// axioms by construction; raw matrices go through [`wl_close_rainbow_matrix`].
pub fn wl_close_rainbow(x: &ColorGraph) -> ColorGraph {
    wl_close(&InitialColoring { n: x.n(), color: x.colors().to_vec() })
}

pub fn wl_close_rainbow_matrix(n: usize, color: Vec<usize>) -> Result<ColorGraph> {
    Ok(wl_close_rainbow(&ColorGraph::from_matrix(n, color)?))
}

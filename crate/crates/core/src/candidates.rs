//! Enumeration of undirected graphs whose edge set is a union of colors of
//! a coherent configuration, followed by the reductions used to look for
//! polyhedral graphs with a prescribed coherent closure.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::ccstruct::{ColorGraph, ColorId};
use crate::error::{invalid, Error, Result};
use crate::isomorph::{algebraic_aut_group, AlgebraicAutGroup};
use crate::limits::MAX_ENUMERATION_NODES;
use crate::planargraph::{is_polyhedral, SimpleGraph};
use crate::wlclosure::wl_close_graph;

/// Edge bound applied inside a single fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiberBound {
    None,
    /// `3k - 6` edges on `k` points.
    Planar,
    /// The fiber induces a regular graph of degree at most 5, so at most
    /// `5k/2` edges. Deliberately not capped at `3k - 6`.
    RegularDegree,
}

/// Edge bound applied between two distinct fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrossBound {
    None,
    /// `3k - 6` with `k` the size of the smaller fiber.
    SmallerFiber,
}

/// Edge-count filters. The global `3n - 6` bound always applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBounds {
    pub within: FiberBound,
    pub cross: CrossBound,
}

impl EdgeBounds {
    /// Bounds that reproduce the reference search counts.
    pub const REGULAR: EdgeBounds = EdgeBounds { within: FiberBound::RegularDegree, cross: CrossBound::None };
    /// Planar bound on every fiber pair, the smaller fiber standing in for both.
    pub const PAIRWISE: EdgeBounds = EdgeBounds { within: FiberBound::Planar, cross: CrossBound::SmallerFiber };
    pub const GLOBAL_ONLY: EdgeBounds = EdgeBounds { within: FiberBound::None, cross: CrossBound::None };
}

impl Default for EdgeBounds {
    fn default() -> Self {
        EdgeBounds::REGULAR
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    pub bounds: EdgeBounds,
    pub phi_reduce: bool,
    pub wl_filter: bool,
    pub node_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { bounds: EdgeBounds::default(), phi_reduce: true, wl_filter: true, node_limit: MAX_ENUMERATION_NODES }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    /// All subsets of symmetric units, `2^units`.
    pub raw: u128,
    pub edge_bounded: usize,
    pub phi_reduced: usize,
    pub wl_exact: usize,
    pub polyhedral: usize,
}

/// A union `s ∪ s*` of a non-reflexive color and its converse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unit {
    pub colors: Vec<ColorId>,
    /// Indices of the fibers it joins, smaller first.
    pub fibers: (usize, usize),
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateSet {
    pub base: ColorGraph,
    pub units: Vec<Unit>,
    /// Bit `i` selects `units[i]`; increasing order.
    pub candidates: Vec<u64>,
    pub counts: StageCounts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub mask: u64,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub wl_rank: usize,
}

/// Symmetric units sorted by fiber pair, then by least color id.
pub fn symmetric_units(base: &ColorGraph) -> Vec<Unit> {
    let fiber_index = |v: usize| base.fiber_of_vertex(v);
    let mut units = Vec::new();
    for c in 0..base.rank() {
        let d = base.converse(c);
        if base.is_reflexive(c) || d < c {
            continue;
        }
        let (a, b) = base.rep(c);
        let (fa, fb) = (fiber_index(a), fiber_index(b));
        let colors = if c == d { vec![c] } else { vec![c, d] };
        let pairs: usize = colors.iter().map(|&k| base.size(k)).sum();
        units.push(Unit { colors, fibers: (fa.min(fb), fa.max(fb)), edges: pairs / 2 });
    }
    units.sort_by_key(|u| (u.fibers, u.colors[0]));
    units
}

fn planar_max(k: usize) -> usize {
    if k >= 3 {
        3 * k - 6
    } else {
        k * k.saturating_sub(1) / 2
    }
}

/// Edge budget of each fiber pair, `None` when unbounded.
fn pair_limits(base: &ColorGraph, units: &[Unit], b: EdgeBounds) -> BTreeMap<(usize, usize), usize> {
    let sizes: Vec<usize> = base.fibers().iter().map(Vec::len).collect();
    let mut out = BTreeMap::new();
    for u in units {
        let (f, g) = u.fibers;
        let lim = if f == g {
            match b.within {
                FiberBound::None => None,
                FiberBound::Planar => Some(planar_max(sizes[f])),
                FiberBound::RegularDegree => Some(5 * sizes[f] / 2),
            }
        } else {
            match b.cross {
                CrossBound::None => None,
                CrossBound::SmallerFiber => Some(planar_max(sizes[f].min(sizes[g]))),
            }
        };
        if let Some(l) = lim {
            out.insert(u.fibers, l);
        }
    }
    out
}

/// Every union of symmetric units meeting the edge bounds, the empty one
/// included.
pub fn enumerate(base: &ColorGraph, bounds: EdgeBounds, node_limit: u64) -> Result<CandidateSet> {
    let units = symmetric_units(base);
    if units.len() > 63 {
        return Err(Error::Bound(format!("{} symmetric units exceed the 63-bit candidate encoding", units.len())));
    }
    let limits = pair_limits(base, &units, bounds);
    let slot: Vec<Option<usize>> =
        units.iter().map(|u| limits.keys().position(|k| *k == u.fibers)).collect();
    let caps: Vec<usize> = limits.values().copied().collect();
    let mut search = Enum {
        units: &units,
        slot: &slot,
        caps: &caps,
        global: planar_max(base.n()),
        used: vec![0; caps.len()],
        total: 0,
        nodes: 0,
        limit: node_limit,
        out: Vec::new(),
    };
    search.go(0, 0)?;
    let mut candidates = search.out;
    candidates.sort_unstable();
    let counts = StageCounts {
        raw: 1u128 << units.len(),
        edge_bounded: candidates.len(),
        phi_reduced: candidates.len(),
        wl_exact: candidates.len(),
        polyhedral: candidates.len(),
    };
    Ok(CandidateSet { base: base.clone(), units, candidates, counts })
}

struct Enum<'a> {
    units: &'a [Unit],
    slot: &'a [Option<usize>],
    caps: &'a [usize],
    global: usize,
    used: Vec<usize>,
    total: usize,
    nodes: u64,
    limit: u64,
    out: Vec<u64>,
}

impl Enum<'_> {
    fn go(&mut self, i: usize, mask: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Bound(format!(
                "enumeration exceeded {} nodes; split the search by fibers",
                self.limit
            )));
        }
        if i == self.units.len() {
            self.out.push(mask);
            return Ok(());
        }
        self.go(i + 1, mask)?;
        let e = self.units[i].edges;
        let fits_pair = self.slot[i].is_none_or(|s| self.used[s] + e <= self.caps[s]);
        if self.total + e <= self.global && fits_pair {
            self.total += e;
            if let Some(s) = self.slot[i] {
                self.used[s] += e;
            }
            self.go(i + 1, mask | 1 << i)?;
            self.total -= e;
            if let Some(s) = self.slot[i] {
                self.used[s] -= e;
            }
        }
        Ok(())
    }
}

impl CandidateSet {
    /// Undirected edges of a candidate, sorted.
    pub fn edges(&self, mask: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, u) in self.units.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &c in &u.colors {
                    out.extend(self.base.pairs_of(c).into_iter().filter(|&(a, b)| a < b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Image of each unit under each algebraic automorphism.
    fn unit_images(&self, phi: &AlgebraicAutGroup) -> Result<Vec<Vec<usize>>> {
        let mut unit_of = vec![usize::MAX; self.base.rank()];
        for (i, u) in self.units.iter().enumerate() {
            for &c in &u.colors {
                unit_of[c] = i;
            }
        }
        phi.elements
            .iter()
            .map(|sigma| {
                if sigma.len() != self.base.rank() {
                    return invalid("algebraic automorphism of the wrong rank");
                }
                Ok(self.units.iter().map(|u| unit_of[sigma[u.colors[0]]]).collect())
            })
            .collect()
    }

    /// Keeps the least mask of every orbit of `phi`.
    pub fn phi_reduce(&mut self, phi: &AlgebraicAutGroup) -> Result<()> {
        let images = self.unit_images(phi)?;
        if images.iter().flatten().any(|&u| u == usize::MAX) {
            return invalid("algebraic automorphism maps a unit outside the units");
        }
        let image = |m: u64, img: &[usize]| -> u64 {
            img.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0u64, |acc, (_, &j)| acc | 1 << j)
        };
        self.candidates = self
            .candidates
            .par_iter()
            .copied()
            .filter(|&m| images.iter().all(|img| image(m, img) >= m))
            .collect();
        self.counts.phi_reduced = self.candidates.len();
        self.counts.wl_exact = self.candidates.len();
        self.counts.polyhedral = self.candidates.len();
        Ok(())
    }

    /// Keeps candidates whose coherent closure is the base configuration.
    pub fn wl_filter(&mut self) {
        let n = self.base.n();
        let base = &self.base;
        let keep: Vec<u64> = self
            .candidates
            .par_iter()
            .copied()
            .filter(|&m| {
                let x = wl_close_graph(n, &self.edges(m)).expect("candidate edges are valid");
                x.rank() == base.rank() && x.same_partition(base)
            })
            .collect();
        self.candidates = keep;
        self.counts.wl_exact = self.candidates.len();
        self.counts.polyhedral = self.candidates.len();
    }

    /// Candidates whose graph is planar and 3-connected.
    pub fn polyhedral_screen(&mut self) -> Vec<Witness> {
        let n = self.base.n();
        let found: Vec<Witness> = self
            .candidates
            .par_iter()
            .filter_map(|&m| {
                let edges = self.edges(m);
                let g = SimpleGraph::new(n, &edges).expect("candidate edges are valid");
                is_polyhedral(&g).then(|| {
                    let wl_rank = wl_close_graph(n, &edges).expect("valid").rank();
                    Witness { mask: m, n, edges, wl_rank }
                })
            })
            .collect();
        self.counts.polyhedral = found.len();
        found
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub counts: StageCounts,
    pub phi_order: usize,
    pub witnesses: Vec<Witness>,
}

/// The full pipeline: edge bounds, algebraic automorphism orbits, closure
/// filter, polyhedral screen.
pub fn search(base: &ColorGraph, opts: &SearchOptions) -> Result<(CandidateSet, SearchReport)> {
    let mut cs = enumerate(base, opts.bounds, opts.node_limit)?;
    let mut phi_order = 1;
    if opts.phi_reduce {
        let phi = algebraic_aut_group(base)?;
        phi_order = phi.order();
        cs.phi_reduce(&phi)?;
    }
    if opts.wl_filter {
        cs.wl_filter();
    }
    let witnesses = cs.polyhedral_screen();
    Ok((cs.clone(), SearchReport { counts: cs.counts, phi_order, witnesses }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::{inv, Perm, PermGroup};

    fn symmetric_group_base(n: usize) -> ColorGraph {
        let mut gens = vec![Perm::from_cycles(n, &[&[0, 1]]).unwrap()];
        let cyc: Vec<usize> = (0..n).collect();
        gens.push(Perm::from_cycles(n, &[&cyc]).unwrap());
        inv(&PermGroup::new(n, gens).unwrap())
    }

    #[test]
    fn rank_two_base() {
        for n in 3..8 {
            let base = symmetric_group_base(n);
            let cs = enumerate(&base, EdgeBounds::default(), 1000).unwrap();
            let fits = n * (n - 1) / 2 <= planar_max(n);
            assert_eq!(cs.candidates.len(), 1 + usize::from(fits), "n = {n}");
        }
    }

    #[test]
    fn candidates_are_symmetric_unions() {
        let g = PermGroup::new(6, vec![Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap()]).unwrap();
        let base = inv(&g);
        let cs = enumerate(&base, EdgeBounds::GLOBAL_ONLY, 1 << 20).unwrap();
        for &m in &cs.candidates {
            let e = cs.edges(m);
            assert!(e.iter().all(|&(a, b)| a < b));
            let g = SimpleGraph::new(6, &e).unwrap();
            for (a, b) in g.edges() {
                assert!(g.has_edge(b, a));
            }
            assert!(e.len() <= 12);
        }
    }

    #[test]
    fn node_limit_is_reported() {
        let g = PermGroup::new(12, vec![Perm::from_cycles(12, &[&(0..12).collect::<Vec<_>>()]).unwrap()]).unwrap();
        let err = enumerate(&inv(&g), EdgeBounds::GLOBAL_ONLY, 10).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn trivial_phi_keeps_everything() {
        let g = PermGroup::new(5, vec![Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()]).unwrap();
        let base = inv(&g);
        let mut cs = enumerate(&base, EdgeBounds::GLOBAL_ONLY, 1 << 20).unwrap();
        let before = cs.candidates.clone();
        let id = AlgebraicAutGroup { elements: vec![(0..base.rank()).collect()], generators: vec![] };
        cs.phi_reduce(&id).unwrap();
        assert_eq!(cs.candidates, before);
    }

    #[test]
    fn complete_graph_fails_wl_filter_on_nontrivial_base() {
        let g = PermGroup::new(4, vec![Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()]).unwrap();
        let base = inv(&g);
        let mut cs = enumerate(&base, EdgeBounds::GLOBAL_ONLY, 1 << 20).unwrap();
        let full = (1u64 << cs.units.len()) - 1;
        assert!(cs.candidates.contains(&full));
        cs.wl_filter();
        assert!(!cs.candidates.contains(&full));
    }
}

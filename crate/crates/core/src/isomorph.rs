//! Automorphisms and isomorphisms of colored pair structures by
//! individualization and refinement, plus algebraic automorphisms.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::ccstruct::{tensor, ColorGraph, ColorId};
use crate::error::{Error, Result};
use crate::limits;
use crate::permgrp::{inv, Perm, PermGroup};
use crate::wlclosure::{refine, Refined};

/// Automorphism group with the data of its stabilizer chain.
#[derive(Clone, Debug, Serialize)]
pub struct AutGroup {
    pub group: PermGroup,
    pub order: u128,
    pub base: Vec<usize>,
    /// Orbit length of each base point in the stabilizer of the previous ones.
    pub orbit_lengths: Vec<usize>,
}

fn individualize(node: &Refined, v: usize) -> Refined {
    let n = node.n;
    let mut labels: Vec<u64> = node.colors.iter().map(|&c| c as u64).collect();
    labels[v * n + v] = node.count as u64;
    refine(n, &labels)
}

/// Smallest non-singleton vertex cell, ties broken by color name.
fn target_cell(node: &Refined) -> Option<Vec<usize>> {
    let mut cells: HashMap<u32, Vec<usize>> = HashMap::new();
    for v in 0..node.n {
        cells.entry(node.diag(v)).or_default().push(v);
    }
    cells.into_iter().filter(|(_, c)| c.len() > 1).min_by_key(|(k, c)| (c.len(), *k)).map(|(_, c)| c)
}

fn same_node(a: &Refined, b: &Refined) -> bool {
    a.count == b.count && a.trace == b.trace
}

/// Vertex map sending the vertex of `from` with each diagonal color to the
/// vertex of `to` with the same color. Both must be discrete.
fn leaf_map(from: &Refined, to: &Refined) -> Vec<usize> {
    let mut by_color: HashMap<u32, usize> = HashMap::new();
    for v in 0..to.n {
        by_color.insert(to.diag(v), v);
    }
    (0..from.n).map(|v| by_color[&from.diag(v)]).collect()
}

/// The leftmost path: always individualize the least vertex of the target cell.
fn first_path(root: Refined) -> (Vec<Refined>, Vec<Vec<usize>>) {
    let mut nodes = vec![root];
    let mut cells = Vec::new();
    while let Some(cell) = target_cell(nodes.last().expect("nonempty")) {
        let child = individualize(nodes.last().expect("nonempty"), cell[0]);
        cells.push(cell);
        nodes.push(child);
    }
    (nodes, cells)
}

/// Depth-first search below `node` for a leaf matching `path`'s leaf and
/// accepted by `accept`.
fn search_leaf(
    node: &Refined,
    depth: usize,
    path: &[Refined],
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    match target_cell(node) {
        None => {
            let f = leaf_map(&path[depth], node);
            accept(&f).then_some(f)
        }
        Some(cell) => {
            if depth + 1 >= path.len() {
                return None;
            }
            for u in cell {
                let child = individualize(node, u);
                if same_node(&child, &path[depth + 1]) {
                    if let Some(f) = search_leaf(&child, depth + 1, path, accept) {
                        return Some(f);
                    }
                }
            }
            None
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    let bound = limits::max_n();
    if n > bound {
        return Err(Error::Bound(format!("{n} points exceeds the bound {bound} (set CC_MAX_N)")));
    }
    Ok(())
}

fn is_automorphism(x: &ColorGraph, f: &[usize]) -> bool {
    let n = x.n();
    (0..n).all(|a| (0..n).all(|b| x.color(a, b) == x.color(f[a], f[b])))
}

/// The group of vertex permutations fixing every color of `x`.
pub fn aut_group(x: &ColorGraph) -> Result<AutGroup> {
    let n = x.n();
    check_size(n)?;
    let labels: Vec<u64> = x.colors().iter().map(|&c| c as u64).collect();
    let (path, cells) = first_path(refine(n, &labels));
    let mut gens: Vec<Perm> = Vec::new();
    let mut orbit_lengths = vec![0; cells.len()];
    for level in (0..cells.len()).rev() {
        let v = cells[level][0];
        for &w in &cells[level][1..] {
            let current = PermGroup::new(n, gens.clone())?;
            if current.orbit_of(v).contains(&w) {
                continue;
            }
            let child = individualize(&path[level], w);
            if !same_node(&child, &path[level + 1]) {
                continue;
            }
            let mut accept = |f: &[usize]| is_automorphism(x, f);
            if let Some(f) = search_leaf(&child, level + 1, &path, &mut accept) {
                gens.push(Perm::new(f)?);
            }
        }
        orbit_lengths[level] = PermGroup::new(n, gens.clone())?.orbit_of(v).len();
    }
    let order = orbit_lengths.iter().map(|&k| k as u128).product();
    Ok(AutGroup {
        group: PermGroup::new(n, gens)?,
        order,
        base: cells.iter().map(|c| c[0]).collect(),
        orbit_lengths,
    })
}

/// True when `x` equals the orbit configuration of its automorphism group.
pub fn is_schurian(x: &ColorGraph) -> Result<bool> {
    let a = aut_group(x)?;
    Ok(inv(&a.group).rank() == x.rank())
}

/// Labels of colors invariant under color renaming, computed jointly for
/// several structures so that labels are comparable across them.
fn joint_color_labels(xs: &[&ColorGraph]) -> Vec<Vec<u64>> {
    let mut keys: Vec<Vec<u64>> = Vec::new();
    let mut owner: Vec<(usize, usize)> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        for c in 0..x.rank() {
            let (fs, ft) = x.fiber_of(c);
            keys.push(vec![
                u64::from(x.is_reflexive(c)),
                x.size(c) as u64,
                x.valency(c) as u64,
                u64::from(x.is_symmetric(c)),
                x.fibers()[fs].len() as u64,
                x.fibers()[ft].len() as u64,
            ]);
            owner.push((i, c));
        }
    }
    let tensors: Vec<Option<_>> = xs.iter().map(|x| tensor(x).ok()).collect();
    let mut ids = dense_ids(&keys);
    let mut count = ids.iter().copied().max().map_or(0, |m| m + 1);
    if tensors.iter().all(Option::is_some) {
        let offsets: Vec<usize> =
            xs.iter().scan(0, |acc, x| {
                let o = *acc;
                *acc += x.rank();
                Some(o)
            }).collect();
        loop {
            let next_keys: Vec<Vec<u64>> = owner
                .iter()
                .enumerate()
                .map(|(k, &(i, t))| {
                    let ten = tensors[i].as_ref().expect("checked");
                    let o = offsets[i];
                    let mut row: Vec<u64> = ten
                        .entries_for(t)
                        .iter()
                        .map(|&(r, s, c)| ((ids[o + r] as u64) << 40) | ((ids[o + s] as u64) << 20) | c as u64)
                        .collect();
                    row.sort_unstable();
                    let mut key = vec![ids[k] as u64];
                    key.extend(row);
                    key
                })
                .collect();
            let next = dense_ids(&next_keys);
            let next_count = next.iter().copied().max().map_or(0, |m| m + 1);
            ids = next;
            if next_count == count {
                break;
            }
            count = next_count;
        }
    }
    let mut out: Vec<Vec<u64>> = xs.iter().map(|x| vec![0; x.rank()]).collect();
    for (k, &(i, c)) in owner.iter().enumerate() {
        out[i][c] = ids[k] as u64;
    }
    out
}

fn dense_ids(keys: &[Vec<u64>]) -> Vec<usize> {
    let mut uniq: Vec<&Vec<u64>> = keys.iter().collect();
    uniq.sort();
    uniq.dedup();
    let map: HashMap<&Vec<u64>, usize> = uniq.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter().map(|k| map[k]).collect()
}

/// A vertex bijection `f` carrying the partition of `x` onto that of `y`
/// (colors may be renamed), or `None`.
pub fn color_isomorphic(x: &ColorGraph, y: &ColorGraph) -> Result<Option<Vec<usize>>> {
    if x.n() != y.n() || x.rank() != y.rank() {
        return Ok(None);
    }
    let n = x.n();
    check_size(n)?;
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let labels = joint_color_labels(&[x, y]);
    let mut lx = labels[0].clone();
    let mut ly = labels[1].clone();
    lx.sort_unstable();
    ly.sort_unstable();
    if lx != ly {
        return Ok(None);
    }
    let pair_labels = |g: &ColorGraph, l: &[u64]| -> Vec<u64> { g.colors().iter().map(|&c| l[c]).collect() };
    let rx = refine(n, &pair_labels(x, &labels[0]));
    let ry = refine(n, &pair_labels(y, &labels[1]));
    if !same_node(&rx, &ry) {
        return Ok(None);
    }
    let (path, _) = first_path(rx);
    let mut accept = |f: &[usize]| is_color_isomorphism(x, y, f);
    Ok(search_leaf(&ry, 0, &path, &mut accept))
}

/// Checks that `f` maps the partition of `x` onto that of `y`.
pub fn is_color_isomorphism(x: &ColorGraph, y: &ColorGraph, f: &[usize]) -> bool {
    let n = x.n();
    if y.n() != n || f.len() != n || x.rank() != y.rank() {
        return false;
    }
    let mut sigma = vec![usize::MAX; x.rank()];
    let mut used = vec![false; y.rank()];
    for a in 0..n {
        for b in 0..n {
            let (c, d) = (x.color(a, b), y.color(f[a], f[b]));
            if sigma[c] == usize::MAX {
                if used[d] {
                    return false;
                }
                sigma[c] = d;
                used[d] = true;
            } else if sigma[c] != d {
                return false;
            }
        }
    }
    true
}

/// Color map induced by a vertex bijection that is a color isomorphism.
pub fn induced_color_map(x: &ColorGraph, y: &ColorGraph, f: &[usize]) -> Vec<ColorId> {
    (0..x.rank())
        .map(|c| {
            let (a, b) = x.rep(c);
            y.color(f[a], f[b])
        })
        .collect()
}

/// All algebraic automorphisms with a generating set.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraicAutGroup {
    /// Every element as a color image array, identity first.
    pub elements: Vec<Vec<ColorId>>,
    pub generators: Vec<Vec<ColorId>>,
}

impl AlgebraicAutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

struct AlgSearch<'a> {
    k: usize,
    dense: Vec<u32>,
    conv: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    order: &'a [usize],
    sigma: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl AlgSearch<'_> {
    #[inline]
    fn d(&self, r: usize, s: usize, t: usize) -> u32 {
        self.dense[(r * self.k + s) * self.k + t]
    }

    fn consistent(&self, c: usize) -> bool {
        let sg = &self.sigma;
        for &a in &self.assigned {
            for &b in &self.assigned {
                if self.d(c, a, b) != self.d(sg[c], sg[a], sg[b])
                    || self.d(a, c, b) != self.d(sg[a], sg[c], sg[b])
                    || self.d(a, b, c) != self.d(sg[a], sg[b], sg[c])
                {
                    return false;
                }
            }
        }
        true
    }

    fn assign(&mut self, c: usize, d: usize) -> bool {
        self.sigma[c] = d;
        self.used[d] = true;
        self.assigned.push(c);
        if !self.consistent(c) {
            return false;
        }
        let (cc, dc) = (self.conv[c], self.conv[d]);
        if cc != c {
            if self.used[dc] || !self.candidates[cc].contains(&dc) {
                return false;
            }
            self.sigma[cc] = dc;
            self.used[dc] = true;
            self.assigned.push(cc);
            return self.consistent(cc);
        }
        dc == d
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let c = self.assigned.pop().expect("nonempty");
            self.used[self.sigma[c]] = false;
            self.sigma[c] = usize::MAX;
        }
    }

    fn run(&mut self, pos: usize) -> Result<()> {
        let Some(&c) = self.order[pos..].iter().find(|&&c| self.sigma[c] == usize::MAX) else {
            self.found.push(self.sigma.clone());
            if self.found.len() > limits::MAX_GROUP_ELEMENTS {
                return Err(Error::Bound("too many algebraic automorphisms".into()));
            }
            return Ok(());
        };
        for i in 0..self.candidates[c].len() {
            let d = self.candidates[c][i];
            if self.used[d] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(c, d) {
                self.run(pos + 1)?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// All color bijections preserving reflexivity, converses and intersection numbers.
pub fn algebraic_aut_group(x: &ColorGraph) -> Result<AlgebraicAutGroup> {
    algebraic_aut_group_bounded(x, limits::DEFAULT_MAX_ALG_RANK)
}

pub fn algebraic_aut_group_bounded(x: &ColorGraph, max_rank: usize) -> Result<AlgebraicAutGroup> {
    let k = x.rank();
    if k > max_rank {
        return Err(Error::Bound(format!("rank {k} exceeds the algebraic automorphism bound {max_rank}")));
    }
    let t = tensor(x)?;
    let labels = joint_color_labels(&[x]).remove(0);
    let mut classes: HashMap<u64, Vec<usize>> = HashMap::new();
    for c in 0..k {
        classes.entry(labels[c]).or_default().push(c);
    }
    let candidates: Vec<Vec<usize>> = (0..k).map(|c| classes[&labels[c]].clone()).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| (candidates[c].len(), c));
    let mut s = AlgSearch {
        k,
        dense: t.dense(),
        conv: (0..k).map(|c| x.converse(c)).collect(),
        candidates,
        order: &order,
        sigma: vec![usize::MAX; k],
        used: vec![false; k],
        assigned: Vec::new(),
        found: Vec::new(),
    };
    s.run(0)?;
    let mut elements = s.found;
    elements.sort();
    let id: Vec<usize> = (0..k).collect();
    if let Some(p) = elements.iter().position(|e| *e == id) {
        elements.swap(0, p);
    }
    let generators = greedy_generators(&elements);
    Ok(AlgebraicAutGroup { elements, generators })
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

fn greedy_generators(elements: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let Some(id) = elements.first() else { return Vec::new() };
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut closure: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    for e in elements {
        if closure.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let mut queue: VecDeque<Vec<usize>> = closure.iter().cloned().collect();
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = compose(&p, g);
                if closure.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccstruct::{check_algebraic_automorphism, test_support::*};
    use crate::wlclosure::wl_close_graph;

    #[test]
    fn trivial_configuration_has_symmetric_group() {
        for n in 1..6u128 {
            let a = aut_group(&ColorGraph::trivial(n as usize)).unwrap();
            assert_eq!(a.order, (1..=n).product::<u128>());
        }
    }

    #[test]
    fn cube_automorphisms() {
        let x = distance_scheme(8, &cube());
        let a = aut_group(&x).unwrap();
        assert_eq!(a.order, 48);
        for g in a.group.generators() {
            assert!(is_automorphism(&x, g.images()));
        }
        assert!(is_schurian(&x).unwrap());
    }

    #[test]
    fn petersen_graph() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let x = wl_close_graph(10, &e).unwrap();
        assert_eq!(aut_group(&x).unwrap().order, 120);
    }

    #[test]
    fn relabeled_copy_is_isomorphic() {
        let x = distance_scheme(8, &cube());
        let f = [3, 1, 4, 0, 7, 5, 2, 6];
        let y = x.relabel(&f).unwrap();
        let g = color_isomorphic(&x, &y).unwrap().expect("isomorphic");
        assert!(is_color_isomorphism(&x, &y, &g));
    }

    #[test]
    fn different_sizes_not_isomorphic() {
        assert!(color_isomorphic(&ColorGraph::trivial(5), &ColorGraph::trivial(6)).unwrap().is_none());
    }

    #[test]
    fn cube_vs_pentagonal_prism_schemes() {
        let x = wl_close_graph(8, &cube()).unwrap();
        let mut e = cycle(4);
        e.extend(cycle(4).iter().map(|&(a, b)| (a + 4, b + 4)));
        e.extend((0..4).map(|i| (i, i + 4)));
        let y = wl_close_graph(8, &e).unwrap();
        // the 4-prism is the cube
        assert!(color_isomorphic(&x, &y).unwrap().is_some());
        let z = wl_close_graph(8, &cycle(8)).unwrap();
        assert!(color_isomorphic(&x, &z).unwrap().is_none());
    }

    #[test]
    fn thin_c4_has_swap() {
        let g = PermGroup::new(4, vec![Perm::new(vec![1, 2, 3, 0]).unwrap()]).unwrap();
        let x = inv(&g);
        let phi = algebraic_aut_group(&x).unwrap();
        assert_eq!(phi.order(), 2);
        let t = tensor(&x).unwrap();
        let swap: Vec<usize> = (0..4).map(|c| x.converse(c)).collect();
        assert!(check_algebraic_automorphism(&x, &t, &swap).is_ok());
        assert!(phi.elements.contains(&swap));
    }

    #[test]
    fn trivial_configuration_alg_aut_is_identity() {
        let phi = algebraic_aut_group(&ColorGraph::trivial(4)).unwrap();
        assert_eq!(phi.elements, vec![vec![0, 1]]);
        assert!(phi.generators.is_empty());
    }

    #[test]
    fn rank_bound_enforced() {
        let x = wl_close_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert!(matches!(algebraic_aut_group_bounded(&x, 3), Err(Error::Bound(_))));
    }
}

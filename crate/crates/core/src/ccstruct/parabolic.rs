use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{tensor, validate, ColorGraph, ColorId, IntersectionTensor};
use crate::error::{invalid, Error, Result};
use crate::limits::PARABOLIC_RANK_CUTOFF;

/// An equivalence relation on the points that is a union of colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parabolic {
    /// Sorted color ids whose union is the relation.
    pub colors: Vec<ColorId>,
    /// Classes ordered by least element, each sorted.
    pub classes: Vec<Vec<usize>>,
}

impl Parabolic {
    pub fn contains(&self, c: ColorId) -> bool {
        self.colors.binary_search(&c).is_ok()
    }

    pub(crate) fn from_mask(x: &ColorGraph, mask: &[bool]) -> Parabolic {
        let n = x.n();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let class: Vec<usize> = (0..n).filter(|&b| mask[x.color(a, b)]).collect();
            for &b in &class {
                seen[b] = true;
            }
            classes.push(class);
        }
        Parabolic { colors: (0..x.rank()).filter(|&c| mask[c]).collect(), classes }
    }
}

/// True if the union of `colors` is an equivalence relation on all points.
pub fn is_parabolic(x: &ColorGraph, t: &IntersectionTensor, colors: &[ColorId]) -> bool {
    let mut mask = vec![false; x.rank()];
    for &c in colors {
        if c >= x.rank() {
            return false;
        }
        mask[c] = true;
    }
    (0..x.rank()).all(|c| !x.is_reflexive(c) || mask[c])
        && colors.iter().all(|&c| mask[x.converse(c)])
        && t.iter().all(|(r, s, u, _)| !(mask[r] && mask[s]) || mask[u])
}

/// The smallest parabolic containing `colors`.
pub fn parabolic_closure(x: &ColorGraph, t: &IntersectionTensor, colors: &[ColorId]) -> Parabolic {
    let mut mask = vec![false; x.rank()];
    for c in 0..x.rank() {
        if x.is_reflexive(c) {
            mask[c] = true;
        }
    }
    for &c in colors {
        mask[c] = true;
        mask[x.converse(c)] = true;
    }
    loop {
        let mut changed = false;
        for (r, s, u, _) in t.iter() {
            if mask[r] && mask[s] && !mask[u] {
                mask[u] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Parabolic::from_mask(x, &mask)
}

fn symmetric_units(x: &ColorGraph) -> Vec<Vec<ColorId>> {
    (0..x.rank())
        .filter(|&c| !x.is_reflexive(c) && c <= x.converse(c))
        .map(|c| if x.is_symmetric(c) { vec![c] } else { vec![c, x.converse(c)] })
        .collect()
}

/// All parabolics, smallest first. Refuses ranks above the enumeration cutoff;
/// use [`parabolics_single_generated`] there.
pub fn parabolics(x: &ColorGraph) -> Result<Vec<Parabolic>> {
    if x.rank() > PARABOLIC_RANK_CUTOFF {
        return Err(Error::Bound(format!(
            "rank {} exceeds {PARABOLIC_RANK_CUTOFF} for full parabolic enumeration; use single-generated parabolics",
            x.rank()
        )));
    }
    let t = tensor(x)?;
    let units = symmetric_units(x);
    let bottom = parabolic_closure(x, &t, &[]);
    let mut seen: BTreeSet<Vec<ColorId>> = BTreeSet::new();
    seen.insert(bottom.colors.clone());
    let mut out = vec![bottom.clone()];
    let mut queue = VecDeque::from([bottom]);
    while let Some(p) = queue.pop_front() {
        for u in &units {
            if p.contains(u[0]) {
                continue;
            }
            let mut gen = p.colors.clone();
            gen.extend_from_slice(u);
            let q = parabolic_closure(x, &t, &gen);
            if seen.insert(q.colors.clone()) {
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out.sort_by(|a, b| (a.colors.len(), &a.colors).cmp(&(b.colors.len(), &b.colors)));
    Ok(out)
}

/// The diagonal, the parabolics generated by one symmetric unit, and the full relation.
pub fn parabolics_single_generated(x: &ColorGraph) -> Result<Vec<Parabolic>> {
    let t = tensor(x)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |p: Parabolic| {
        if seen.insert(p.colors.clone()) {
            out.push(p);
        }
    };
    push(parabolic_closure(x, &t, &[]));
    for u in symmetric_units(x) {
        push(parabolic_closure(x, &t, &u));
    }
    push(parabolic_closure(x, &t, &(0..x.rank()).collect::<Vec<_>>()));
    out.sort_by(|a, b| (a.colors.len(), &a.colors).cmp(&(b.colors.len(), &b.colors)));
    Ok(out)
}

/// Quotient of a coherent configuration modulo a parabolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMap {
    /// Class index of every point.
    pub pi: Vec<usize>,
    pub quotient: ColorGraph,
    /// Quotient color containing the image of each original color.
    pub color_map: Vec<ColorId>,
}

pub fn quotient(x: &ColorGraph, e: &Parabolic) -> Result<QuotientMap> {
    let t = tensor(x)?;
    if !is_parabolic(x, &t, &e.colors) {
        return invalid("quotient: relation is not a parabolic");
    }
    let n = x.n();
    let m = e.classes.len();
    let mut pi = vec![0; n];
    for (k, class) in e.classes.iter().enumerate() {
        for &a in class {
            pi[a] = k;
        }
    }
    let mut cell: Vec<BTreeSet<ColorId>> = vec![BTreeSet::new(); m * m];
    for a in 0..n {
        for b in 0..n {
            cell[pi[a] * m + pi[b]].insert(x.color(a, b));
        }
    }
    let mut ids: HashMap<&BTreeSet<ColorId>, usize> = HashMap::new();
    let mut color_map = vec![usize::MAX; x.rank()];
    let mut qcolor = vec![0; m * m];
    for (p, set) in cell.iter().enumerate() {
        let k = ids.len();
        let id = *ids.entry(set).or_insert(k);
        qcolor[p] = id;
        for &c in set {
            if color_map[c] == usize::MAX {
                color_map[c] = id;
            } else if color_map[c] != id {
                return Err(Error::Axiom(format!("images of color {c} overlap in the quotient")));
            }
        }
    }
    let quotient = ColorGraph::coherent_from_matrix(m, qcolor)?;
    // renumbering is a bijection on ids; recover it from the first cell of each id
    let mut renum = vec![0; ids.len()];
    for (p, set) in cell.iter().enumerate() {
        renum[ids[set]] = quotient.colors()[p];
    }
    let color_map = color_map.into_iter().map(|c| renum[c]).collect();
    Ok(QuotientMap { pi, quotient, color_map })
}

fn sorted_set(n: usize, delta: &[usize]) -> Result<Vec<usize>> {
    let mut d = delta.to_vec();
    d.sort_unstable();
    d.dedup();
    if d.is_empty() || d.len() != delta.len() || d[d.len() - 1] >= n {
        return invalid("point set must be nonempty, duplicate-free and in range");
    }
    Ok(d)
}

fn is_homogeneity_set(x: &ColorGraph, d: &[usize]) -> bool {
    let mut inside = vec![false; x.n()];
    for &a in d {
        inside[a] = true;
    }
    x.fibers().iter().all(|f| f.iter().all(|&a| inside[a]) || f.iter().all(|&a| !inside[a]))
}

/// Restriction to a homogeneity set or to a class of a parabolic. Point `i`
/// of the result is the `i`-th smallest element of `delta`.
pub fn restriction(x: &ColorGraph, delta: &[usize]) -> Result<ColorGraph> {
    let d = sorted_set(x.n(), delta)?;
    if !is_homogeneity_set(x, &d) {
        let t = tensor(x)?;
        let mut meets: Vec<ColorId> = d.iter().flat_map(|&a| d.iter().map(move |&b| (a, b))).map(|(a, b)| x.color(a, b)).collect();
        meets.sort_unstable();
        meets.dedup();
        let p = parabolic_closure(x, &t, &meets);
        if !p.classes.contains(&d) {
            return invalid("restriction: set is neither a homogeneity set nor a parabolic class");
        }
    }
    let m = d.len();
    let mut color = Vec::with_capacity(m * m);
    for &a in &d {
        for &b in &d {
            color.push(x.color(a, b));
        }
    }
    ColorGraph::from_matrix(m, color)
}

/// Looks for a two-class parabolic of `x` restricted to `delta` whose classes
/// each meet every class of `e` inside `delta` exactly once. The returned
/// parabolic lives on the restriction (see [`restriction`] for point order).
pub fn find_complement(x: &ColorGraph, e: &Parabolic, delta: &[usize]) -> Result<Option<Parabolic>> {
    let t = tensor(x)?;
    if !is_parabolic(x, &t, &e.colors) {
        return invalid("find_complement: e is not a parabolic");
    }
    let d = sorted_set(x.n(), delta)?;
    if !is_homogeneity_set(x, &d) {
        return invalid("find_complement: delta is not a homogeneity set");
    }
    let mut inside = vec![false; x.n()];
    for &a in &d {
        inside[a] = true;
    }
    let mut class_size = None;
    for c in &e.classes {
        let k = c.iter().filter(|&&a| inside[a]).count();
        if k == 0 {
            if c.len() != 1 {
                return invalid("find_complement: e is not trivial outside delta");
            }
        } else {
            if k != c.len() {
                return invalid("find_complement: a class of e crosses the boundary of delta");
            }
            if *class_size.get_or_insert(k) != k {
                return invalid("find_complement: classes of e inside delta differ in size");
            }
        }
    }
    if class_size != Some(2) {
        return Ok(None);
    }
    let local: HashMap<usize, usize> = d.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let e_local: Vec<Vec<usize>> = e
        .classes
        .iter()
        .filter(|c| inside[c[0]])
        .map(|c| c.iter().map(|a| local[a]).collect())
        .collect();
    let xd = restriction(x, &d)?;
    if !validate(&xd).coherent {
        return Err(Error::Axiom("restriction is not coherent".into()));
    }
    let candidates = if xd.rank() <= PARABOLIC_RANK_CUTOFF { parabolics(&xd)? } else { parabolics_single_generated(&xd)? };
    Ok(candidates.into_iter().find(|p| {
        p.classes.len() == 2
            && p.classes.iter().all(|cls| {
                e_local.iter().all(|ec| ec.iter().filter(|a| cls.binary_search(a).is_ok()).count() == 1)
            })
    }))
}

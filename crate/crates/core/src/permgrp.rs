//! Finite permutation groups given by generators.
//!
//! Permutations act on the right: `images[i]` is the image of `i`, and the
//! product `g.then(h)` applies `g` first.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::ccstruct::ColorGraph;
use crate::error::{invalid, Error, Result};
use crate::limits;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Perm::new(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return invalid(format!("not a permutation of 0..{n}: {images:?}"));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n || touched[a] {
                    return invalid(format!("bad cycle {c:?}"));
                }
                touched[a] = true;
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    degree: usize,
    generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generator_names: Vec<String>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        let names = (1..=generators.len()).map(|i| format!("g{i}")).collect();
        Self::with_names(degree, generators, names)
    }

    pub fn with_names(degree: usize, generators: Vec<Perm>, names: Vec<String>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return invalid(format!("generator of degree {} in group of degree {degree}", g.degree()));
        }
        if names.len() != generators.len() {
            return invalid("generator name count mismatch");
        }
        Ok(PermGroup { degree, generators, names })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), names: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: GroupFile = serde_json::from_str(s)?;
        let gens = f.generators.into_iter().map(Perm::new).collect::<Result<Vec<_>>>()?;
        if f.generator_names.is_empty() {
            PermGroup::new(f.degree, gens)
        } else {
            PermGroup::with_names(f.degree, gens, f.generator_names)
        }
    }

    pub fn to_json(&self, name: Option<&str>) -> String {
        let f = GroupFile {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images.clone()).collect(),
            name: name.map(str::to_string),
            generator_names: self.names.clone(),
        };
        serde_json::to_string(&f).expect("group serializes")
    }

    /// All group elements by breadth-first closure, identity first.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        let id = Perm::identity(self.degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = p.then(g);
                if seen.insert(q.clone(), ()).is_none() {
                    if out.len() >= limits::MAX_GROUP_ELEMENTS {
                        return Err(Error::Bound("group too large to enumerate".into()));
                    }
                    out.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Ok(out)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    /// Evaluates a word such as `"r1*r2^-1 t3"` in the named generators.
    /// The empty word and `"1"` denote the identity.
    pub fn eval_word(&self, word: &str) -> Result<Perm> {
        let mut acc = Perm::identity(self.degree);
        for tok in word.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            if tok == "1" || tok == "e" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((a, b)) => {
                    let e: i64 = b.parse().map_err(|_| Error::Invalid(format!("bad exponent in {tok:?}")))?;
                    (a, e)
                }
                None => (tok, 1),
            };
            let idx = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Invalid(format!("unknown generator {name:?} in word {word:?}")))?;
            acc = acc.then(&self.generators[idx].pow(exp));
        }
        Ok(acc)
    }

    /// The subgroup generated by the given words, on the same points.
    pub fn subgroup(&self, words: &[&str]) -> Result<PermGroup> {
        let gens = words.iter().map(|w| self.eval_word(w)).collect::<Result<Vec<_>>>()?;
        let names = words.iter().map(|w| w.to_string()).collect();
        PermGroup::with_names(self.degree, gens, names)
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let p = out[i];
            i += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    out.push(q);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub orbit_id: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    fn position(&self, set: &[usize]) -> Option<usize> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        let first = *s.first()?;
        let k = *self.orbit_id.get(first)?;
        (self.orbits[k] == s).then_some(k)
    }
}

pub fn orbits(g: &PermGroup) -> OrbitDecomposition {
    let n = g.degree();
    let mut orbit_id = vec![usize::MAX; n];
    let mut list = Vec::new();
    for p in 0..n {
        if orbit_id[p] == usize::MAX {
            let orb = g.orbit_of(p);
            for &q in &orb {
                orbit_id[q] = list.len();
            }
            list.push(orb);
        }
    }
    OrbitDecomposition { orbit_id, orbits: list }
}

/// The orbit configuration: colors are the orbits of `g` on ordered pairs.
pub fn inv(g: &PermGroup) -> ColorGraph {
    let n = g.degree();
    let mut color = vec![usize::MAX; n * n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n * n {
        if color[start] != usize::MAX {
            continue;
        }
        color[start] = next;
        stack.push(start);
        while let Some(p) = stack.pop() {
            let (a, b) = (p / n, p % n);
            for h in g.generators() {
                let q = h.apply(a) * n + h.apply(b);
                if color[q] == usize::MAX {
                    color[q] = next;
                    stack.push(q);
                }
            }
        }
        next += 1;
    }
    ColorGraph::from_matrix(n, color).expect("pair orbits form a rainbow")
}

/// Action of `g` on the right cosets of the subgroup generated by `subgroup_words`.
/// The trivial coset is point 0.
pub fn coset_action(g: &PermGroup, subgroup_words: &[&str]) -> Result<PermGroup> {
    let h = g.subgroup(subgroup_words)?.elements()?;
    let key = |x: &Perm| -> Perm { h.iter().map(|y| y.then(x)).min().expect("nonempty subgroup") };
    let id = Perm::identity(g.degree());
    let mut index: HashMap<Perm, usize> = HashMap::new();
    let mut reps = vec![id.clone()];
    index.insert(key(&id), 0);
    let mut i = 0;
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); g.generators().len()];
    while i < reps.len() {
        let r = reps[i].clone();
        for (k, x) in g.generators().iter().enumerate() {
            let y = r.then(x);
            let ky = key(&y);
            let j = match index.get(&ky) {
                Some(&j) => j,
                None => {
                    let j = reps.len();
                    index.insert(ky, j);
                    reps.push(y);
                    j
                }
            };
            images[k].push(j);
        }
        i += 1;
        if reps.len() > limits::MAX_GROUP_ELEMENTS {
            return Err(Error::Bound("too many cosets".into()));
        }
    }
    let gens = images.into_iter().map(Perm::new).collect::<Result<Vec<_>>>()?;
    PermGroup::with_names(reps.len(), gens, g.names().to_vec())
}

/// Action of the same abstract generators on the disjoint union of the
/// point sets of `parts`; the generator lists must correspond.
pub fn disjoint_union(parts: &[PermGroup]) -> Result<PermGroup> {
    let Some(first) = parts.first() else {
        return Ok(PermGroup::trivial(0));
    };
    let k = first.generators().len();
    if parts.iter().any(|p| p.generators().len() != k) {
        return invalid("disjoint union needs matching generator lists");
    }
    let degree = parts.iter().map(PermGroup::degree).sum();
    let mut gens = Vec::with_capacity(k);
    for j in 0..k {
        let mut images = Vec::with_capacity(degree);
        let mut offset = 0;
        for p in parts {
            images.extend(p.generators()[j].images().iter().map(|&i| i + offset));
            offset += p.degree();
        }
        gens.push(Perm::new(images)?);
    }
    PermGroup::with_names(degree, gens, first.names().to_vec())
}

/// `gamma` dominates `delta` when some pair-orbit inside `gamma x delta`
/// is a function from `gamma` to `delta`.
pub fn dominates(g: &PermGroup, gamma: &[usize], delta: &[usize]) -> Result<bool> {
    let orb = orbits(g);
    if orb.position(gamma).is_none() || orb.position(delta).is_none() {
        return invalid("dominates: arguments must be orbits");
    }
    Ok(dominates_in(&inv(g), gamma[0], delta))
}

fn dominates_in(x: &ColorGraph, gamma0: usize, delta: &[usize]) -> bool {
    let mut count: HashMap<usize, usize> = HashMap::new();
    for &d in delta {
        *count.entry(x.color(gamma0, d)).or_default() += 1;
    }
    count.values().any(|&c| c == 1)
}

pub fn is_domination_free(g: &PermGroup) -> bool {
    let orb = orbits(g);
    let x = inv(g);
    for (i, a) in orb.orbits.iter().enumerate() {
        for (j, b) in orb.orbits.iter().enumerate() {
            if i != j && dominates_in(&x, a[0], b) {
                return false;
            }
        }
    }
    true
}

/// Mutual domination; stands in for permutation equivalence of constituents.
pub fn mutually_dominating(g: &PermGroup, delta: &[usize], gamma: &[usize]) -> Result<bool> {
    Ok(dominates(g, delta, gamma)? && dominates(g, gamma, delta)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc4() -> PermGroup {
        PermGroup::new(4, vec![Perm::new(vec![1, 2, 3, 0]).unwrap()]).unwrap()
    }

    #[test]
    fn perm_rejects_non_bijection() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
    }

    #[test]
    fn right_action_product() {
        let g = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let h = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -g-> 1 -h-> 2
        assert_eq!(g.then(&h).apply(0), 2);
        assert_eq!(g.then(&h).order(), 3);
        assert!(g.then(&g.inverse()).is_identity());
    }

    #[test]
    fn trivial_group_has_singleton_orbits() {
        let o = orbits(&PermGroup::trivial(4));
        assert_eq!(o.orbits.len(), 4);
    }

    #[test]
    fn cyclic_group_is_transitive() {
        let o = orbits(&cyc4());
        assert_eq!(o.orbits, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn alt4_on_pairs_is_one_orbit() {
        let r1 = Perm::new(vec![1, 2, 0, 3]).unwrap();
        let r2 = Perm::new(vec![0, 2, 3, 1]).unwrap();
        let pairs: Vec<(usize, usize)> =
            (0..4).flat_map(|a| ((a + 1)..4).map(move |b| (a, b))).collect();
        let induced = |p: &Perm| {
            let imgs = pairs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p.apply(a).min(p.apply(b)), p.apply(a).max(p.apply(b)));
                    pairs.iter().position(|&q| q == (x, y)).unwrap()
                })
                .collect();
            Perm::new(imgs).unwrap()
        };
        let g = PermGroup::new(6, vec![induced(&r1), induced(&r2)]).unwrap();
        assert_eq!(orbits(&g).orbits.len(), 1);
        assert_eq!(inv(&g).rank(), 4);
    }

    #[test]
    fn regular_cyclic_rank_equals_order() {
        let g = PermGroup::new(3, vec![Perm::new(vec![1, 2, 0]).unwrap()]).unwrap();
        assert_eq!(inv(&g).rank(), 3);
    }

    #[test]
    fn coset_action_of_sym3_regular() {
        // sym(3) acting regularly on its 6 elements
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let small = PermGroup::new(3, vec![a, b]).unwrap();
        let elems = small.elements().unwrap();
        let regular = |x: &Perm| {
            let imgs = elems.iter().map(|e| elems.iter().position(|f| *f == e.then(x)).unwrap()).collect();
            Perm::new(imgs).unwrap()
        };
        let g = PermGroup::new(6, small.generators().iter().map(regular).collect()).unwrap();
        assert_eq!(orbits(&g).orbits.len(), 1);
        let act = coset_action(&g, &["g1"]).unwrap();
        assert_eq!(act.degree(), 3);
        assert_eq!(orbits(&act).orbits.len(), 1);
        // brute-force count of right cosets
        let h = g.subgroup(&["g1"]).unwrap().elements().unwrap();
        let all = g.elements().unwrap();
        let mut cosets: Vec<Vec<Perm>> = all
            .iter()
            .map(|x| {
                let mut c: Vec<Perm> = h.iter().map(|y| y.then(x)).collect();
                c.sort();
                c
            })
            .collect();
        cosets.sort();
        cosets.dedup();
        assert_eq!(cosets.len(), 3);
    }

    #[test]
    fn coset_action_of_whole_group_is_trivial() {
        let act = coset_action(&cyc4(), &["g1"]).unwrap();
        assert_eq!(act.degree(), 1);
    }

    #[test]
    fn words_evaluate() {
        let g = cyc4();
        assert_eq!(g.eval_word("g1^2").unwrap(), g.eval_word("g1 * g1").unwrap());
        assert!(g.eval_word("g1^-1*g1").unwrap().is_identity());
        assert!(g.eval_word("h7").is_err());
        assert!(g.eval_word("g1^x").is_err());
    }

    #[test]
    fn singleton_orbit_is_dominated() {
        // cyclic group on 0..3 plus a fixed point 4
        let g = PermGroup::new(5, vec![Perm::new(vec![1, 2, 3, 0, 4]).unwrap()]).unwrap();
        assert!(dominates(&g, &[0, 1, 2, 3], &[4]).unwrap());
        assert!(!is_domination_free(&g));
        assert!(dominates(&g, &[0, 1, 2, 3], &[0]).is_err());
    }

    #[test]
    fn regular_orbit_dominates_everything() {
        // C4 regular on 0..3 and acting on 4,5 through the quotient C2
        let g = PermGroup::new(6, vec![Perm::new(vec![1, 2, 3, 0, 5, 4]).unwrap()]).unwrap();
        assert!(dominates(&g, &[0, 1, 2, 3], &[4, 5]).unwrap());
        assert!(!dominates(&g, &[4, 5], &[0, 1, 2, 3]).unwrap());
        assert!(!mutually_dominating(&g, &[0, 1, 2, 3], &[4, 5]).unwrap());
    }

    #[test]
    fn transitive_group_is_domination_free() {
        assert!(is_domination_free(&cyc4()));
    }

    #[test]
    fn group_json_roundtrip() {
        let g = cyc4();
        let back = PermGroup::from_json(&g.to_json(Some("c4"))).unwrap();
        assert_eq!(back, g);
    }
}

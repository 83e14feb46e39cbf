//! Rainbows and coherent configurations on `0..n`.

mod fusion;
mod parabolic;
mod tensor;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use fusion::{algebraic_fusion, check_algebraic_automorphism};
pub use parabolic::{
    find_complement, is_parabolic, parabolic_closure, parabolics, parabolics_single_generated,
    quotient, restriction, Parabolic, QuotientMap,
};
pub use tensor::{tensor, IntersectionTensor};

pub type ColorId = usize;

/// A partition of `n x n` into color classes satisfying the rainbow axioms:
/// the diagonal is a union of classes and every class has a converse class.
///
/// Colors are numbered by first appearance in a row-major scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorGraph {
    n: usize,
    color: Vec<ColorId>,
    rank: usize,
    reflexive: Vec<bool>,
    converse: Vec<ColorId>,
    size: Vec<usize>,
    rep: Vec<(usize, usize)>,
    fibers: Vec<Vec<usize>>,
    vertex_fiber: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ColorGraphFile {
    n: usize,
    colors: Vec<usize>,
}

impl Serialize for ColorGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColorGraphFile { n: self.n, colors: self.color.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColorGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = ColorGraphFile::deserialize(d)?;
        ColorGraph::from_matrix(f.n, f.colors).map_err(serde::de::Error::custom)
    }
}

/// First axiom violation found by [`validate_matrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Shape { expected: usize, got: usize },
    /// A color occurs both on and off the diagonal.
    Diagonal { color: usize, diagonal: (usize, usize), off_diagonal: (usize, usize) },
    /// Two pairs of one color have transposes of different colors.
    Converse { color: usize, first: (usize, usize), second: (usize, usize) },
    /// Two pairs of one color lie in different fiber products.
    Fiber { color: usize, first: (usize, usize), second: (usize, usize) },
    /// The intersection number `c_{r,s}^t` depends on the pair chosen in `t`.
    Regularity { r: usize, s: usize, t: usize, first: (usize, usize, usize), second: (usize, usize, usize) },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Shape { expected, got } => write!(f, "matrix has {got} entries, expected {expected}"),
            Violation::Diagonal { color, diagonal, off_diagonal } => {
                write!(f, "color {color} on diagonal {diagonal:?} and off diagonal {off_diagonal:?}")
            }
            Violation::Converse { color, first, second } => {
                write!(f, "color {color}: transposes of {first:?} and {second:?} differ")
            }
            Violation::Fiber { color, first, second } => {
                write!(f, "color {color}: {first:?} and {second:?} lie in different fiber products")
            }
            Violation::Regularity { r, s, t, first, second } => write!(
                f,
                "c_{{{r},{s}}}^{{{t}}} is {} at {:?} but {} at {:?}",
                first.2,
                (first.0, first.1),
                second.2,
                (second.0, second.1)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub rainbow: bool,
    pub coherent: bool,
    pub violation: Option<Violation>,
}

fn canonical_renumber(color: &[usize]) -> (Vec<usize>, usize) {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let out = color
        .iter()
        .map(|&c| {
            let k = map.len();
            *map.entry(c).or_insert(k)
        })
        .collect();
    (out, map.len())
}

fn rainbow_violation(n: usize, color: &[usize]) -> Option<Violation> {
    if color.len() != n * n {
        return Some(Violation::Shape { expected: n * n, got: color.len() });
    }
    let mut diag: HashMap<usize, (usize, usize)> = HashMap::new();
    for a in 0..n {
        diag.entry(color[a * n + a]).or_insert((a, a));
    }
    let mut conv: HashMap<usize, (usize, (usize, usize))> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let c = color[a * n + b];
            if a != b {
                if let Some(&d) = diag.get(&c) {
                    return Some(Violation::Diagonal { color: c, diagonal: d, off_diagonal: (a, b) });
                }
            }
            let t = color[b * n + a];
            match conv.get(&c) {
                Some(&(t0, p)) if t0 != t => {
                    return Some(Violation::Converse { color: c, first: p, second: (a, b) })
                }
                Some(_) => {}
                None => {
                    conv.insert(c, (t, (a, b)));
                }
            }
        }
    }
    None
}

/// Checks the rainbow axioms, fiber consistency and regularity of an
/// arbitrary color matrix (colors need not be canonical).
pub fn validate_matrix(n: usize, color: &[usize]) -> ValidationReport {
    if let Some(v) = rainbow_violation(n, color) {
        return ValidationReport { rainbow: false, coherent: false, violation: Some(v) };
    }
    let x = ColorGraph::from_matrix(n, color.to_vec()).expect("rainbow checked");
    validate(&x)
}

/// Checks regularity (the third axiom) of a rainbow.
pub fn validate(x: &ColorGraph) -> ValidationReport {
    let violation = x.fiber_violation().or_else(|| x.regularity_violation());
    ValidationReport { rainbow: true, coherent: violation.is_none(), violation }
}

impl ColorGraph {
    /// Builds a rainbow from an arbitrary color matrix, renumbering colors canonically.
    pub fn from_matrix(n: usize, color: Vec<usize>) -> Result<Self> {
        if let Some(v) = rainbow_violation(n, &color) {
            return Err(Error::Axiom(v.to_string()));
        }
        let (color, rank) = canonical_renumber(&color);
        let mut reflexive = vec![false; rank];
        let mut size = vec![0; rank];
        let mut rep = vec![(usize::MAX, usize::MAX); rank];
        let mut converse = vec![0; rank];
        for a in 0..n {
            for b in 0..n {
                let c = color[a * n + b];
                size[c] += 1;
                if rep[c].0 == usize::MAX {
                    rep[c] = (a, b);
                    converse[c] = color[b * n + a];
                }
                if a == b {
                    reflexive[c] = true;
                }
            }
        }
        let mut fiber_index = HashMap::new();
        let mut fibers: Vec<Vec<usize>> = Vec::new();
        let mut vertex_fiber = vec![0; n];
        for v in 0..n {
            let c = color[v * n + v];
            let k = *fiber_index.entry(c).or_insert_with(|| {
                fibers.push(Vec::new());
                fibers.len() - 1
            });
            fibers[k].push(v);
            vertex_fiber[v] = k;
        }
        Ok(ColorGraph { n, color, rank, reflexive, converse, size, rep, fibers, vertex_fiber })
    }

    /// Like [`ColorGraph::from_matrix`] but rejects non-coherent input.
    pub fn coherent_from_matrix(n: usize, color: Vec<usize>) -> Result<Self> {
        let x = Self::from_matrix(n, color)?;
        match validate(&x).violation {
            None => Ok(x),
            Some(v) => Err(Error::Axiom(v.to_string())),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("color graph serializes")
    }

    /// The complete configuration of rank 2 (rank 1 when `n == 1`).
    pub fn trivial(n: usize) -> Self {
        let color = (0..n * n).map(|p| usize::from(p / n != p % n)).collect();
        Self::from_matrix(n, color).expect("trivial configuration")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn color(&self, a: usize, b: usize) -> ColorId {
        self.color[a * self.n + b]
    }

    pub fn colors(&self) -> &[ColorId] {
        &self.color
    }

    pub fn is_reflexive(&self, c: ColorId) -> bool {
        self.reflexive[c]
    }

    pub fn converse(&self, c: ColorId) -> ColorId {
        self.converse[c]
    }

    pub fn is_symmetric(&self, c: ColorId) -> bool {
        self.converse[c] == c
    }

    /// Number of pairs of color `c`.
    pub fn size(&self, c: ColorId) -> usize {
        self.size[c]
    }

    /// First pair of color `c` in row-major order.
    pub fn rep(&self, c: ColorId) -> (usize, usize) {
        self.rep[c]
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn fiber_of_vertex(&self, v: usize) -> usize {
        self.vertex_fiber[v]
    }

    /// Source and target fibers of color `c`, read off its representative pair.
    pub fn fiber_of(&self, c: ColorId) -> (usize, usize) {
        let (a, b) = self.rep[c];
        (self.vertex_fiber[a], self.vertex_fiber[b])
    }

    /// Out-degree of color `c` at its source fiber.
    pub fn valency(&self, c: ColorId) -> usize {
        self.size[c] / self.fibers[self.fiber_of(c).0].len()
    }

    pub fn pairs_of(&self, c: ColorId) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n * n).filter(|&p| self.color[p] == c).map(|p| (p / n, p % n)).collect()
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &ColorGraph) -> bool {
        if self.n != coarser.n {
            return false;
        }
        let mut map = vec![usize::MAX; self.rank];
        for (p, &c) in self.color.iter().enumerate() {
            let d = coarser.color[p];
            if map[c] == usize::MAX {
                map[c] = d;
            } else if map[c] != d {
                return false;
            }
        }
        true
    }

    /// Equality of the underlying partitions.
    pub fn same_partition(&self, other: &ColorGraph) -> bool {
        self.rank == other.rank && self.refines(other)
    }

    /// Applies a vertex relabeling: pair `(a,b)` moves to `(f[a], f[b])`.
    pub fn relabel(&self, f: &[usize]) -> Result<ColorGraph> {
        let n = self.n;
        if f.len() != n {
            return invalid("relabeling has wrong length");
        }
        let mut color = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                color[f[a] * n + f[b]] = self.color(a, b);
            }
        }
        ColorGraph::from_matrix(n, color)
    }

    fn fiber_violation(&self) -> Option<Violation> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let c = self.color(a, b);
                let fb = (self.vertex_fiber[a], self.vertex_fiber[b]);
                if fb != self.fiber_of(c) {
                    return Some(Violation::Fiber { color: c, first: self.rep[c], second: (a, b) });
                }
            }
        }
        None
    }

    /// For each pair `(a,b)` the sorted list of `(color(a,g), color(g,b))` codes.
    fn profile(&self, a: usize, b: usize) -> Vec<u64> {
        let k = self.rank as u64;
        let mut v: Vec<u64> =
            (0..self.n).map(|g| self.color(a, g) as u64 * k + self.color(g, b) as u64).collect();
        v.sort_unstable();
        v
    }

    fn regularity_violation(&self) -> Option<Violation> {
        let n = self.n;
        let k = self.rank as u64;
        let reps: Vec<Vec<u64>> = (0..self.rank).map(|c| self.profile(self.rep[c].0, self.rep[c].1)).collect();
        for a in 0..n {
            for b in 0..n {
                let t = self.color(a, b);
                if (a, b) == self.rep[t] {
                    continue;
                }
                let p = self.profile(a, b);
                if p != reps[t] {
                    let code = first_difference(&reps[t], &p);
                    let count = |v: &[u64]| v.iter().filter(|&&x| x == code).count();
                    let (r, s) = ((code / k) as usize, (code % k) as usize);
                    let (a0, b0) = self.rep[t];
                    return Some(Violation::Regularity {
                        r,
                        s,
                        t,
                        first: (a0, b0, count(&reps[t])),
                        second: (a, b, count(&p)),
                    });
                }
            }
        }
        None
    }
}

fn first_difference(x: &[u64], y: &[u64]) -> u64 {
    let mut i = 0;
    let mut j = 0;
    while i < x.len() && j < y.len() {
        if x[i] != y[j] {
            return x[i].min(y[j]);
        }
        i += 1;
        j += 1;
    }
    unreachable!("profiles of equal length differ")
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;

    #[test]
    fn trivial_configuration_is_valid() {
        for n in 2..6 {
            let x = ColorGraph::trivial(n);
            assert_eq!(x.rank(), 2);
            assert!(validate(&x).coherent);
        }
        assert_eq!(ColorGraph::trivial(1).rank(), 1);
    }

    #[test]
    fn asymmetric_break_reports_converse() {
        // colors of (0,1),(1,0) and (0,2),(2,0) collide asymmetrically
        let m = vec![0, 1, 1, 2, 0, 1, 1, 2, 0];
        let r = validate_matrix(3, &m);
        assert!(!r.rainbow);
        assert!(matches!(r.violation, Some(Violation::Converse { .. })));
    }

    #[test]
    fn diagonal_mixing_reported() {
        let m = vec![0, 0, 1, 0];
        assert!(matches!(validate_matrix(2, &m).violation, Some(Violation::Diagonal { .. })));
    }

    #[test]
    fn path_coloring_is_not_regular() {
        // diagonal / edge / non-edge on the path 0-1-2 is a rainbow but not coherent
        let m = vec![0, 1, 2, 1, 0, 1, 2, 1, 0];
        let r = validate_matrix(3, &m);
        assert!(r.rainbow);
        assert!(!r.coherent);
        assert!(matches!(r.violation, Some(Violation::Regularity { .. })));
    }

    #[test]
    fn canonical_numbering_is_first_appearance() {
        let x = ColorGraph::from_matrix(2, vec![7, 3, 3, 7]).unwrap();
        assert_eq!(x.colors(), &[0, 1, 1, 0]);
    }

    #[test]
    fn cube_distance_scheme_is_coherent() {
        let x = distance_scheme(8, &cube());
        assert_eq!(x.rank(), 4);
        assert!(validate(&x).coherent);
        let vals: Vec<usize> = (0..4).map(|c| x.valency(c)).collect();
        assert_eq!(vals, vec![1, 3, 3, 1]);
    }

    #[test]
    fn json_roundtrip() {
        let x = distance_scheme(5, &cycle(5));
        let y = ColorGraph::from_json(&x.to_json()).unwrap();
        assert_eq!(x, y);
    }
}

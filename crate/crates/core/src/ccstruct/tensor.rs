use serde::Serialize;

use super::{validate, ColorGraph, ColorId};
use crate::error::{Error, Result};

/// Intersection numbers `c_{r,s}^t`: for `(a,b)` in `t`, the number of `g`
/// with `(a,g)` in `r` and `(g,b)` in `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionTensor {
    rank: usize,
    /// Nonzero entries `(r, s, c)` per `t`, sorted by `(r, s)`.
    by_t: Vec<Vec<(ColorId, ColorId, usize)>>,
    valency: Vec<usize>,
    converse: Vec<ColorId>,
}

/// Computes all nonzero intersection numbers; fails if `x` is not coherent.
pub fn tensor(x: &ColorGraph) -> Result<IntersectionTensor> {
    if let Some(v) = validate(x).violation {
        return Err(Error::Axiom(v.to_string()));
    }
    Ok(tensor_unchecked(x))
}

/// Intersection numbers read off one representative pair per color.
pub(crate) fn tensor_unchecked(x: &ColorGraph) -> IntersectionTensor {
    let n = x.n();
    let rank = x.rank();
    let by_t = (0..rank)
        .map(|t| {
            let (a, b) = x.rep(t);
            let mut codes: Vec<(ColorId, ColorId)> = (0..n).map(|g| (x.color(a, g), x.color(g, b))).collect();
            codes.sort_unstable();
            let mut out: Vec<(ColorId, ColorId, usize)> = Vec::new();
            for (r, s) in codes {
                match out.last_mut() {
                    Some(last) if last.0 == r && last.1 == s => last.2 += 1,
                    _ => out.push((r, s, 1)),
                }
            }
            out
        })
        .collect();
    IntersectionTensor {
        rank,
        by_t,
        valency: (0..rank).map(|c| x.valency(c)).collect(),
        converse: (0..rank).map(|c| x.converse(c)).collect(),
    }
}

impl IntersectionTensor {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, r: ColorId, s: ColorId, t: ColorId) -> usize {
        let row = &self.by_t[t];
        match row.binary_search_by(|e| (e.0, e.1).cmp(&(r, s))) {
            Ok(i) => row[i].2,
            Err(_) => 0,
        }
    }

    /// Nonzero `(r, s, c)` with `c = c_{r,s}^t`.
    pub fn entries_for(&self, t: ColorId) -> &[(ColorId, ColorId, usize)] {
        &self.by_t[t]
    }

    /// All nonzero entries as `(r, s, t, c)`.
    pub fn iter(&self) -> impl Iterator<Item = (ColorId, ColorId, ColorId, usize)> + '_ {
        self.by_t.iter().enumerate().flat_map(|(t, row)| row.iter().map(move |&(r, s, c)| (r, s, t, c)))
    }

    pub fn valency(&self, s: ColorId) -> usize {
        self.valency[s]
    }

    pub fn converse(&self, s: ColorId) -> ColorId {
        self.converse[s]
    }

    pub fn is_thin(&self, s: ColorId) -> bool {
        self.valency[s] == 1 && self.valency[self.converse[s]] == 1
    }

    pub fn is_quasi_thin(&self) -> bool {
        self.valency.iter().all(|&v| v <= 2)
    }

    /// `c_{R,S}^t` for unions of colors `R` and `S`.
    pub fn union_get(&self, rs: &[ColorId], ss: &[ColorId], t: ColorId) -> usize {
        self.by_t[t]
            .iter()
            .filter(|&&(r, s, _)| rs.contains(&r) && ss.contains(&s))
            .map(|e| e.2)
            .sum()
    }

    /// Dense `rank^3` copy indexed `[(r * rank + s) * rank + t]`.
    pub fn dense(&self) -> Vec<u32> {
        let k = self.rank;
        let mut d = vec![0u32; k * k * k];
        for (r, s, t, c) in self.iter() {
            d[(r * k + s) * k + t] = c as u32;
        }
        d
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("r\ts\tt\tc\n");
        for (r, s, t, c) in self.iter() {
            out.push_str(&format!("{r}\t{s}\t{t}\t{c}\n"));
        }
        out
    }
}

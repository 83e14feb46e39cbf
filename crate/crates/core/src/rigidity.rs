//! Closure of point sets under a spherical representation and certificates
//! for rigid pairs.
//!
//! For a color `t` with representative `(a, b)` the table entry
//! `D[u][v][t]` counts the points `g` with Gram class `u` to `a` and `v` to
//! `b`; this is the intersection number of the Gram relations `s(u)`,
//! `s(v)` at `t`. A color lies in the composition `s(u) s(v)` exactly when
//! the entry is positive.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ccstruct::{ColorGraph, ColorId};
use crate::error::{invalid, Error, Result};
use crate::spectral::SphericalRep;

/// Fixed-width set of color ids.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(k: usize) -> Bits {
        Bits(vec![0; k.div_ceil(64)])
    }

    fn full(k: usize) -> Bits {
        let mut b = Bits::empty(k);
        for i in 0..k {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and_with(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= b;
        }
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn to_vec(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                out.push(w * 64 + x.trailing_zeros() as usize);
                x &= x - 1;
            }
        }
        out
    }
}

/// Intersection numbers of the Gram relations against the colors of `x`.
pub struct RhoContext<'a> {
    x: &'a ColorGraph,
    rep: &'a SphericalRep,
    wk: usize,
    counts: Vec<u32>,
    allowed: Vec<Bits>,
    two: Vec<Bits>,
    /// Colors admitted into `S` before intersecting, per Gram class of the pair.
    start: Vec<Bits>,
}

/// Which colors may enter the set of relations indistinguishable from
/// `r(a,b)` once the set has three or more points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetRule {
    /// Non-reflexive colors with the Gram value of `(a,b)`. These are the only
    /// colors an algebraic isomorphism can carry `r(a,b)` to.
    #[default]
    SameGram,
    /// Every color contained in the intersection of compositions.
    Literal,
}

impl<'a> RhoContext<'a> {
    /// Fails if some non-antipodal color has an entry above 2, which no
    /// representation on the 2-sphere permits.
    pub fn new(x: &'a ColorGraph, rep: &'a SphericalRep) -> Result<Self> {
        Self::with_rule(x, rep, SetRule::default())
    }

    pub fn with_rule(x: &'a ColorGraph, rep: &'a SphericalRep, rule: SetRule) -> Result<Self> {
        if rep.n() != x.n() || rep.w_of_color.len() != x.rank() {
            return invalid("representation does not belong to this configuration");
        }
        if !rep.injective {
            return Err(Error::Numeric("representation is not injective".into()));
        }
        let (n, k, wk) = (x.n(), x.rank(), rep.w.len());
        let mut counts = vec![0u32; wk * wk * k];
        for t in 0..k {
            let (a, b) = x.rep(t);
            for g in 0..n {
                let (u, v) = (rep.w_index(x, a, g), rep.w_index(x, g, b));
                counts[(u * wk + v) * k + t] += 1;
            }
        }
        let mut allowed = vec![Bits::empty(k); wk * wk];
        let mut two = vec![Bits::empty(k); wk * wk];
        for uv in 0..wk * wk {
            for t in 0..k {
                let c = counts[uv * k + t];
                if c > 2 && !rep.is_antipodal(t) {
                    return Err(Error::Axiom(format!(
                        "color {t} has {c} common points for Gram classes ({}, {})",
                        uv / wk,
                        uv % wk
                    )));
                }
                if c >= 1 {
                    allowed[uv].insert(t);
                }
                if c == 2 {
                    two[uv].insert(t);
                }
            }
        }
        let start = (0..wk)
            .map(|w| match rule {
                SetRule::Literal => Bits::full(k),
                SetRule::SameGram => {
                    let mut b = Bits::empty(k);
                    for t in (0..k).filter(|&t| !x.is_reflexive(t) && rep.w_of_color[t] == w) {
                        b.insert(t);
                    }
                    b
                }
            })
            .collect();
        Ok(RhoContext { x, rep, wk, counts, allowed, two, start })
    }

    pub fn config(&self) -> &ColorGraph {
        self.x
    }

    pub fn rep(&self) -> &SphericalRep {
        self.rep
    }

    /// Number of points `g` with `(a,g)` in `s(u)` and `(g,b)` in `s(v)` for
    /// `(a,b)` in `t`.
    pub fn count(&self, u: usize, v: usize, t: ColorId) -> u32 {
        self.counts[(u * self.wk + v) * self.x.rank() + t]
    }

    fn w(&self, a: usize, b: usize) -> usize {
        self.rep.w_index(self.x, a, b)
    }

    fn allowed_via(&self, a: usize, d: usize, b: usize) -> &Bits {
        &self.allowed[self.w(a, d) * self.wk + self.w(d, b)]
    }

    fn non_antipodal(&self, a: usize, b: usize) -> bool {
        !self.rep.is_antipodal(self.x.color(a, b))
    }

    fn qualifies(&self, s: &Bits, a: usize, b: usize, g: usize) -> bool {
        s.subset_of(&self.two[self.w(a, g) * self.wk + self.w(b, g)])
    }

    fn s_bits(&self, delta: &[usize], a: usize, b: usize) -> Bits {
        let k = self.x.rank();
        let mut s = Bits::empty(k);
        if delta.len() == 2 {
            s.insert(self.x.color(a, b));
            return s;
        }
        s = self.start[self.w(a, b)].clone();
        for &d in delta {
            if d != a && d != b {
                s.and_with(self.allowed_via(a, d, b));
            }
        }
        s
    }

    /// The colors that cannot be told apart from `r(a,b)` using the points of
    /// `delta` and the Gram relations.
    pub fn s_delta(&self, delta: &[usize], a: usize, b: usize) -> Result<Vec<ColorId>> {
        if a == b {
            return invalid("the two points must differ");
        }
        if !delta.contains(&a) || !delta.contains(&b) {
            return invalid("both points must lie in the set");
        }
        let mut d = delta.to_vec();
        d.sort_unstable();
        d.dedup();
        if d.iter().any(|&p| p >= self.x.n()) {
            return invalid("point out of range");
        }
        Ok(self.s_bits(&d, a, b).to_vec())
    }

    /// Smallest closed superset of `seed`, adding the least qualifying point
    /// at every step.
    pub fn closure(&self, seed: &[usize]) -> Result<RigidityCertificate> {
        let n = self.x.n();
        let mut start = seed.to_vec();
        start.sort_unstable();
        start.dedup();
        if start.len() < 2 {
            return invalid("seed needs at least two points");
        }
        if start.iter().any(|&p| p >= n) {
            return invalid("seed point out of range");
        }
        let seed_color = (start.len() == 2).then(|| self.x.color(start[0], start[1]));
        let mut state = Closure::new(self, &start);
        let mut steps = Vec::new();
        while let Some(step) = state.next_step() {
            state.add(step.gamma);
            steps.push(step);
        }
        let size = state.members.len();
        Ok(RigidityCertificate { seed: start, seed_color, steps, rigid: size == n, final_size: size })
    }

    /// Re-derives every step from scratch and checks that the final set is
    /// closed and the certificate equals a fresh run.
    pub fn replay(&self, cert: &RigidityCertificate) -> bool {
        let n = self.x.n();
        let mut delta = cert.seed.clone();
        if delta.len() < 2 || delta.iter().any(|&p| p >= n) {
            return false;
        }
        let mut inside = vec![false; n];
        for &p in &delta {
            inside[p] = true;
        }
        for st in &cert.steps {
            let ok = st.gamma < n
                && !inside[st.gamma]
                && st.alpha != st.beta
                && st.alpha < n
                && st.beta < n
                && inside[st.alpha]
                && inside[st.beta]
                && self.non_antipodal(st.alpha, st.beta)
                && st.u == self.w(st.alpha, st.gamma)
                && st.v == self.w(st.beta, st.gamma)
                && self.qualifies(&self.s_bits(&delta, st.alpha, st.beta), st.alpha, st.beta, st.gamma);
            if !ok {
                return false;
            }
            inside[st.gamma] = true;
            delta.push(st.gamma);
            delta.sort_unstable();
        }
        for g in (0..n).filter(|&g| !inside[g]) {
            for &a in &delta {
                for &b in &delta {
                    if a != b && self.non_antipodal(a, b) && self.qualifies(&self.s_bits(&delta, a, b), a, b, g) {
                        return false;
                    }
                }
            }
        }
        cert.final_size == delta.len()
            && cert.rigid == (delta.len() == n)
            && self.closure(&cert.seed).map(|c| &c == cert).unwrap_or(false)
    }

    /// Runs the closure from the representative pair of each non-reflexive,
    /// non-antipodal color and returns the first that reaches every point.
    pub fn find_rigid_color(&self) -> Option<(ColorId, RigidityCertificate)> {
        let colors: Vec<ColorId> =
            (0..self.x.rank()).filter(|&c| !self.x.is_reflexive(c) && !self.rep.is_antipodal(c)).collect();
        colors
            .par_iter()
            .map(|&c| {
                let (a, b) = self.x.rep(c);
                (c, self.closure(&[a, b]).expect("valid seed"))
            })
            .find_first(|(_, cert)| cert.rigid)
    }
}

/// Incremental closure state; `inter[a*n+b]` intersects the allowed colors
/// over all members other than `a` and `b`.
struct Closure<'c, 'a> {
    ctx: &'c RhoContext<'a>,
    members: Vec<usize>,
    inside: Vec<bool>,
    inter: Vec<Option<Bits>>,
}

impl<'c, 'a> Closure<'c, 'a> {
    fn new(ctx: &'c RhoContext<'a>, seed: &[usize]) -> Self {
        let n = ctx.x.n();
        let mut c = Closure { ctx, members: Vec::new(), inside: vec![false; n], inter: vec![None; n * n] };
        for &p in seed {
            c.inside[p] = true;
        }
        c.members = seed.to_vec();
        for &a in seed {
            for &b in seed {
                if a != b {
                    c.inter[a * n + b] = Some(c.fresh(a, b));
                }
            }
        }
        c
    }

    fn fresh(&self, a: usize, b: usize) -> Bits {
        let mut s = self.ctx.start[self.ctx.w(a, b)].clone();
        for &d in &self.members {
            if d != a && d != b {
                s.and_with(self.ctx.allowed_via(a, d, b));
            }
        }
        s
    }

    fn s(&self, a: usize, b: usize) -> Bits {
        if self.members.len() == 2 {
            let mut s = Bits::empty(self.ctx.x.rank());
            s.insert(self.ctx.x.color(a, b));
            return s;
        }
        self.inter[a * self.ctx.x.n() + b].clone().expect("pair of members")
    }

    fn next_step(&self) -> Option<ClosureStep> {
        let n = self.ctx.x.n();
        let pairs: Vec<(usize, usize, Bits)> = self
            .members
            .iter()
            .flat_map(|&a| self.members.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a != b && self.ctx.non_antipodal(a, b))
            .map(|(a, b)| (a, b, self.s(a, b)))
            .collect();
        for g in (0..n).filter(|&g| !self.inside[g]) {
            for (a, b, s) in &pairs {
                if self.ctx.qualifies(s, *a, *b, g) {
                    return Some(ClosureStep {
                        gamma: g,
                        alpha: *a,
                        beta: *b,
                        u: self.ctx.w(*a, g),
                        v: self.ctx.w(*b, g),
                    });
                }
            }
        }
        None
    }

    fn add(&mut self, g: usize) {
        let n = self.ctx.x.n();
        for &a in &self.members {
            for &b in &self.members {
                if a != b {
                    let via = self.ctx.allowed_via(a, g, b).clone();
                    self.inter[a * n + b].as_mut().expect("pair of members").and_with(&via);
                }
            }
        }
        self.members.push(g);
        self.inside[g] = true;
        for &a in &self.members.clone() {
            if a != g {
                self.inter[a * n + g] = Some(self.fresh(a, g));
                self.inter[g * n + a] = Some(self.fresh(g, a));
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureStep {
    pub gamma: usize,
    pub alpha: usize,
    pub beta: usize,
    /// Gram class indices of `(alpha, gamma)` and `(beta, gamma)`.
    pub u: usize,
    pub v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityCertificate {
    pub seed: Vec<usize>,
    pub seed_color: Option<ColorId>,
    pub steps: Vec<ClosureStep>,
    pub rigid: bool,
    pub final_size: usize,
}

impl RigidityCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn s_delta(x: &ColorGraph, rep: &SphericalRep, delta: &[usize], a: usize, b: usize) -> Result<Vec<ColorId>> {
    RhoContext::new(x, rep)?.s_delta(delta, a, b)
}

pub fn rho_closure(x: &ColorGraph, rep: &SphericalRep, seed: &[usize]) -> Result<RigidityCertificate> {
    RhoContext::new(x, rep)?.closure(seed)
}

pub fn find_rigid_color(x: &ColorGraph, rep: &SphericalRep) -> Result<Option<(ColorId, RigidityCertificate)>> {
    Ok(RhoContext::new(x, rep)?.find_rigid_color())
}

pub fn replay(x: &ColorGraph, rep: &SphericalRep, cert: &RigidityCertificate) -> Result<bool> {
    Ok(RhoContext::new(x, rep)?.replay(cert))
}

//! Spherical representations on the 2-sphere from rank-3 eigenprojections of
//! the Laplacian or adjacency matrix.
//!
//! Numerics are always checked against the combinatorics: the projection and
//! the Gram matrix must be constant on every color of the configuration.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::ccstruct::{ColorGraph, ColorId, Parabolic};
use crate::error::{invalid, Error, Result};
use crate::planargraph::SimpleGraph;
use crate::wlclosure::wl_close_rainbow;

/// Relative tolerance for grouping eigenvalues.
pub const EIGEN_TOL: f64 = 1e-7;
/// Absolute tolerance for clustering Gram values.
pub const GRAM_TOL: f64 = 1e-6;
/// Maximum spread of a projection or Gram entry over one color.
pub const CONSTANCY_TOL: f64 = 1e-7;
/// Tolerance when matching a requested eigenvalue.
pub const MATCH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixKind {
    /// Laplacian `D - A`.
    L,
    /// Adjacency matrix.
    A,
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(MatrixKind::L),
            "A" | "a" => Ok(MatrixKind::A),
            _ => invalid(format!("unknown matrix kind {s:?}, expected L or A")),
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::L => "L",
            MatrixKind::A => "A",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EigenChoice {
    /// Every eigenvalue of multiplicity three, in increasing order.
    Auto,
    /// Second smallest eigenvalue of `L`, second largest of `A`.
    Fiedler,
    Value(f64),
}

impl FromStr for EigenChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EigenChoice::Auto),
            "fiedler" => Ok(EigenChoice::Fiedler),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(EigenChoice::Value)
                .ok_or_else(|| Error::Invalid(format!("bad eigenvalue {s:?}"))),
        }
    }
}

pub fn graph_matrix(g: &SimpleGraph, kind: MatrixKind) -> DMatrix<f64> {
    let n = g.n();
    let mut m = DMatrix::zeros(n, n);
    for (a, b) in g.edges() {
        m[(a, b)] = 1.0;
        m[(b, a)] = 1.0;
    }
    if kind == MatrixKind::L {
        m = -m;
        for v in 0..n {
            m[(v, v)] = g.degree(v) as f64;
        }
    }
    m
}

/// Eigenvalues grouped within tolerance, with orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// `(eigenvalue, multiplicity)` in increasing order.
    pub groups: Vec<(f64, usize)>,
    values: Vec<f64>,
    vectors: DMatrix<f64>,
    starts: Vec<usize>,
}

impl Spectrum {
    pub fn new(m: DMatrix<f64>) -> Spectrum {
        let tol = EIGEN_TOL * m.norm().max(1.0);
        let eig = SymmetricEigen::new(m);
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut starts = Vec::new();
        for (i, &v) in values.iter().enumerate() {
            match groups.last_mut() {
                Some((_, k)) if v - values[i - 1] <= tol => *k += 1,
                _ => {
                    starts.push(i);
                    groups.push((v, 1));
                }
            }
        }
        for (g, &s) in groups.iter_mut().zip(&starts) {
            g.0 = values[s..s + g.1].iter().sum::<f64>() / g.1 as f64;
        }
        Spectrum { groups, values, vectors, starts }
    }

    /// Orthonormal basis of the `i`-th eigenspace as columns.
    pub fn basis(&self, i: usize) -> DMatrix<f64> {
        self.vectors.columns(self.starts[i], self.groups[i].1).into_owned()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// An orthogonal projection onto a 3-dimensional eigenspace.
#[derive(Clone, Debug)]
pub struct Projection {
    pub kind: MatrixKind,
    pub lambda: f64,
    /// `n x 3` orthonormal basis `V` with `P = V V^T`.
    pub basis: DMatrix<f64>,
    pub matrix: DMatrix<f64>,
}

fn group_index(s: &Spectrum, kind: MatrixKind, choice: EigenChoice) -> Result<Vec<usize>> {
    let k = s.groups.len();
    match choice {
        EigenChoice::Auto => {
            let idx: Vec<usize> = (0..k).filter(|&i| s.groups[i].1 == 3).collect();
            if idx.is_empty() {
                return Err(Error::Numeric("no eigenvalue of multiplicity 3".into()));
            }
            Ok(idx)
        }
        EigenChoice::Fiedler => {
            if k < 2 {
                return Err(Error::Numeric("spectrum has a single eigenvalue".into()));
            }
            Ok(vec![if kind == MatrixKind::L { 1 } else { k - 2 }])
        }
        EigenChoice::Value(v) => s
            .groups
            .iter()
            .position(|g| (g.0 - v).abs() <= MATCH_TOL)
            .map(|i| vec![i])
            .ok_or_else(|| Error::Numeric(format!("{v} is not an eigenvalue"))),
    }
}

/// Largest spread of `m[a][b]` over a single color, with the per-color means.
fn color_means(x: &ColorGraph, m: &DMatrix<f64>) -> (Vec<f64>, f64) {
    let k = x.rank();
    let mut lo = vec![f64::INFINITY; k];
    let mut hi = vec![f64::NEG_INFINITY; k];
    let mut sum = vec![0.0; k];
    for a in 0..x.n() {
        for b in 0..x.n() {
            let c = x.color(a, b);
            let v = m[(a, b)];
            lo[c] = lo[c].min(v);
            hi[c] = hi[c].max(v);
            sum[c] += v;
        }
    }
    let spread = (0..k).map(|c| hi[c] - lo[c]).fold(0.0, f64::max);
    ((0..k).map(|c| sum[c] / x.size(c) as f64).collect(), spread)
}

fn projection_at(x: &ColorGraph, s: &Spectrum, kind: MatrixKind, i: usize) -> Result<Projection> {
    let (lambda, mult) = s.groups[i];
    if mult != 3 {
        return Err(Error::Numeric(format!("eigenvalue {lambda:.9} has multiplicity {mult}, not 3")));
    }
    let basis = s.basis(i);
    let matrix = &basis * basis.transpose();
    let sq = &matrix * &matrix;
    if (&sq - &matrix).amax() > 1e-9 {
        return Err(Error::Numeric("projection is not idempotent".into()));
    }
    if let Some(v) = (0..x.n()).find(|&v| matrix[(v, v)] < 1e-12) {
        return Err(Error::Numeric(format!("projection has a zero column at vertex {v}")));
    }
    let (_, spread) = color_means(x, &matrix);
    if spread > CONSTANCY_TOL {
        return Err(Error::Numeric(format!(
            "projection is not constant on colors (spread {spread:.2e}); numerics disagree with the configuration"
        )));
    }
    Ok(Projection { kind, lambda, basis, matrix })
}

/// Projection onto the chosen multiplicity-3 eigenspace of `L` or `A` of `g`;
/// `x` must be a configuration whose adjacency algebra contains the matrix,
/// normally the coherent closure of `g`.
pub fn projection(x: &ColorGraph, g: &SimpleGraph, kind: MatrixKind, choice: EigenChoice) -> Result<Projection> {
    candidate_projections(x, g, kind, choice)?.into_iter().next().expect("nonempty")
}

fn candidate_projections(
    x: &ColorGraph,
    g: &SimpleGraph,
    kind: MatrixKind,
    choice: EigenChoice,
) -> Result<Vec<Result<Projection>>> {
    if g.n() < 3 {
        return invalid("spherical representations need at least 3 points");
    }
    if x.n() != g.n() {
        return invalid(format!("configuration has {} points, graph has {}", x.n(), g.n()));
    }
    let s = Spectrum::new(graph_matrix(g, kind));
    let idx = group_index(&s, kind, choice)?;
    Ok(idx.into_iter().map(|i| projection_at(x, &s, kind, i)).collect())
}

/// A map from the points to unit vectors in 3-space whose Gram matrix lies in
/// the adjacency algebra.
#[derive(Clone, Debug, Serialize)]
pub struct SphericalRep {
    pub dim: usize,
    pub kind: MatrixKind,
    pub lambda: f64,
    pub points: Vec<[f64; 3]>,
    /// Row-major `n x n` Gram matrix.
    #[serde(skip)]
    pub gram: Vec<f64>,
    /// Distinct Gram values in increasing order; the last is 1.
    pub w: Vec<f64>,
    /// Index into `w` for every color of the configuration.
    pub w_of_color: Vec<usize>,
    pub antipodal: Parabolic,
    /// False when two points share an image; such a map is not a
    /// representation in the strict sense and cannot be certified rigid.
    pub injective: bool,
}

impl SphericalRep {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn gram(&self, a: usize, b: usize) -> f64 {
        self.gram[a * self.n() + b]
    }

    /// Index of the Gram value of `(a, b)` given the configuration.
    pub fn w_index(&self, x: &ColorGraph, a: usize, b: usize) -> usize {
        self.w_of_color[x.color(a, b)]
    }

    pub fn is_antipodal(&self, c: ColorId) -> bool {
        self.antipodal.contains(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Normalized rows of the projection, their Gram values and the induced
/// clustering of colors.
pub fn build_rep(x: &ColorGraph, p: &Projection) -> Result<SphericalRep> {
    let n = x.n();
    let points: Vec<[f64; 3]> = (0..n)
        .map(|v| {
            let r = [p.basis[(v, 0)], p.basis[(v, 1)], p.basis[(v, 2)]];
            let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
            [r[0] / len, r[1] / len, r[2] / len]
        })
        .collect();
    let gm = DMatrix::from_fn(n, n, |a, b| {
        let (u, v) = (points[a], points[b]);
        u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
    });
    let (means, spread) = color_means(x, &gm);
    if spread > CONSTANCY_TOL {
        return Err(Error::Numeric(format!("Gram matrix is not constant on colors (spread {spread:.2e})")));
    }
    let mut order: Vec<ColorId> = (0..x.rank()).collect();
    order.sort_by(|&a, &b| means[a].total_cmp(&means[b]));
    let mut w: Vec<Vec<f64>> = Vec::new();
    let mut w_of_color = vec![0; x.rank()];
    for &c in &order {
        match w.last_mut() {
            Some(cl) if means[c] - cl[cl.len() - 1] <= GRAM_TOL => cl.push(means[c]),
            _ => w.push(vec![means[c]]),
        }
        w_of_color[c] = w.len() - 1;
    }
    let w: Vec<f64> = w.iter().map(|cl| cl.iter().sum::<f64>() / cl.len() as f64).collect();
    if let Some(gap) = w.windows(2).map(|p| p[1] - p[0]).find(|&d| d < 10.0 * GRAM_TOL) {
        return Err(Error::Numeric(format!("ambiguous Gram clustering (gap {gap:.2e})")));
    }
    let one = w.len() - 1;
    if (w[one] - 1.0).abs() > GRAM_TOL {
        return Err(Error::Numeric("largest Gram value is not 1".into()));
    }
    let injective = (0..x.rank()).all(|c| x.is_reflexive(c) || w_of_color[c] != one);
    let minus = w.iter().position(|&v| (v + 1.0).abs() <= GRAM_TOL);
    let mask: Vec<bool> = (0..x.rank()).map(|c| w_of_color[c] == one || Some(w_of_color[c]) == minus).collect();
    let antipodal = Parabolic::from_mask(x, &mask);
    Ok(SphericalRep {
        dim: 2,
        kind: p.kind,
        lambda: p.lambda,
        points,
        gram: gm.as_slice().to_vec(),
        w,
        w_of_color,
        antipodal,
        injective,
    })
}

/// The symmetric rainbow of Gram classes.
#[derive(Clone, Debug, Serialize)]
pub struct RainbowRho {
    pub graph: ColorGraph,
    /// Gram value of each class of `graph`.
    pub w: Vec<f64>,
    /// Number of nonempty sets `s(w) ∩ (Δ×Γ)` over ordered pairs of fibers.
    pub fibered_rank: usize,
}

impl RainbowRho {
    /// `|W|`, the number of classes of the rainbow.
    pub fn rank(&self) -> usize {
        self.graph.rank()
    }
}

pub fn rainbow_rho(x: &ColorGraph, rep: &SphericalRep) -> Result<RainbowRho> {
    let n = x.n();
    let mut color = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let k = rep.w_of_color[x.color(a, b)];
            if (rep.gram(a, b) - rep.w[k]).abs() > GRAM_TOL {
                return Err(Error::Numeric(format!("pair ({a},{b}) is off its Gram cluster")));
            }
            // Coincident images share the value 1 with the diagonal; keep the
            // diagonal apart so the result is still a rainbow.
            color.push(if a == b { rep.w.len() } else { k });
        }
    }
    let graph = ColorGraph::from_matrix(n, color)?;
    let w = (0..graph.rank())
        .map(|c| {
            let (a, b) = graph.rep(c);
            rep.w[rep.w_of_color[x.color(a, b)]]
        })
        .collect();
    let mut fibered: Vec<(usize, usize, usize)> = (0..x.rank())
        .map(|c| {
            let (a, b) = x.fiber_of(c);
            (a, b, rep.w_of_color[c])
        })
        .collect();
    fibered.sort_unstable();
    fibered.dedup();
    Ok(RainbowRho { graph, w, fibered_rank: fibered.len() })
}

/// The closure of the Gram rainbow recovers `x`; it is always coarser, so
/// comparing ranks suffices.
pub fn is_faithful(x: &ColorGraph, rb: &RainbowRho) -> bool {
    wl_close_rainbow(&rb.graph).rank() == x.rank()
}

/// Projection followed by [`build_rep`]. With [`EigenChoice::Auto`] the
/// multiplicity-3 eigenvalues are tried in increasing order and the first
/// representation that is faithful and rigid is returned; failing that, the
/// first valid one.
pub fn representation(x: &ColorGraph, g: &SimpleGraph, kind: MatrixKind, choice: EigenChoice) -> Result<SphericalRep> {
    let cands = candidate_projections(x, g, kind, choice)?;
    if choice != EigenChoice::Auto {
        return build_rep(x, &cands.into_iter().next().expect("nonempty")?);
    }
    let mut fallback = None;
    let mut last_err = None;
    for p in cands {
        match p.and_then(|p| build_rep(x, &p)) {
            Ok(rep) => {
                let good = rainbow_rho(x, &rep).map(|rb| is_faithful(x, &rb)).unwrap_or(false)
                    && matches!(crate::rigidity::find_rigid_color(x, &rep), Ok(Some(_)));
                if good {
                    return Ok(rep);
                }
                fallback.get_or_insert(rep);
            }
            Err(e) => last_err = Some(e),
        }
    }
    fallback.ok_or_else(|| last_err.expect("at least one candidate"))
}

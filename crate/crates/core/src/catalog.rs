//! Built-in data: polyhedral graphs with their spectral hints, the finite
//! spherical groups with point stabilizers of their orbits, and the
//! reference search counts.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::io::parse_edge_list;
use crate::permgrp::{coset_action, disjoint_union, Perm, PermGroup};
use crate::planargraph::SimpleGraph;
use crate::spectral::MatrixKind;

#[derive(Clone, Debug, Serialize)]
pub struct Solid {
    pub name: &'static str,
    /// Catalog group whose orbit configuration this graph realizes.
    pub group: &'static str,
    pub matrix: MatrixKind,
    pub lambda: f64,
    /// The eigenvalue in closed form.
    pub lambda_text: &'static str,
    pub wl_rank: usize,
    pub rho_rank: usize,
    #[serde(skip)]
    source: &'static str,
}

impl Solid {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        parse_edge_list(self.source).expect("bundled edge list parses").1
    }

    pub fn n(&self) -> usize {
        parse_edge_list(self.source).expect("bundled edge list parses").0
    }

    pub fn graph(&self) -> SimpleGraph {
        SimpleGraph::new(self.n(), &self.edges()).expect("bundled graph is simple")
    }

    pub fn edge_list_text(&self) -> &'static str {
        self.source
    }
}

macro_rules! asset {
    ($name:literal) => {
        include_str!(concat!("../assets/solids/", $name, ".edges"))
    };
}

const R5: f64 = 2.236_067_977_499_79;
const R2: f64 = std::f64::consts::SQRT_2;
const R17: f64 = 4.123_105_625_617_66;

#[rustfmt::skip]
const SOLIDS: &[Solid] = &[
    Solid { name: "truncated-tetrahedron", group: "sym4I", matrix: MatrixKind::L, lambda: 1.0, lambda_text: "1", wl_rank: 7, rho_rank: 6, source: asset!("truncated-tetrahedron") },
    Solid { name: "tetrahedron", group: "sym4I", matrix: MatrixKind::L, lambda: 4.0, lambda_text: "4", wl_rank: 2, rho_rank: 2, source: asset!("tetrahedron") },
    Solid { name: "small-rhombicuboctahedron", group: "sym4xC2", matrix: MatrixKind::L, lambda: 1.0, lambda_text: "1", wl_rank: 14, rho_rank: 12, source: asset!("small-rhombicuboctahedron") },
    Solid { name: "truncated-octahedron", group: "sym4xC2", matrix: MatrixKind::L, lambda: 4.0 - R2, lambda_text: "4-sqrt(2)", wl_rank: 16, rho_rank: 11, source: asset!("truncated-octahedron") },
    Solid { name: "cuboctahedron", group: "sym4xC2", matrix: MatrixKind::L, lambda: 2.0, lambda_text: "2", wl_rank: 5, rho_rank: 5, source: asset!("cuboctahedron") },
    Solid { name: "cube", group: "sym4xC2", matrix: MatrixKind::L, lambda: 2.0, lambda_text: "2", wl_rank: 4, rho_rank: 4, source: asset!("cube") },
    Solid { name: "octahedron", group: "sym4xC2", matrix: MatrixKind::L, lambda: 4.0, lambda_text: "4", wl_rank: 3, rho_rank: 3, source: asset!("octahedron") },
    Solid { name: "rhombic-dodecahedron", group: "sym4xC2", matrix: MatrixKind::L, lambda: (7.0 - R17) / 2.0, lambda_text: "(7-sqrt(17))/2", wl_rank: 11, rho_rank: 11, source: asset!("rhombic-dodecahedron") },
    Solid { name: "disdyakis-dodecahedron", group: "sym4xC2", matrix: MatrixKind::A, lambda: 4.0, lambda_text: "4", wl_rank: 28, rho_rank: 25, source: asset!("disdyakis-dodecahedron") },
    Solid { name: "small-rhombicosidodecahedron", group: "alt5xC2", matrix: MatrixKind::L, lambda: (3.0 - R5) / 2.0, lambda_text: "(3-sqrt(5))/2", wl_rank: 32, rho_rank: 22, source: asset!("small-rhombicosidodecahedron") },
    Solid { name: "icosidodecahedron", group: "alt5xC2", matrix: MatrixKind::L, lambda: 3.0 - R5, lambda_text: "3-sqrt(5)", wl_rank: 10, rho_rank: 9, source: asset!("icosidodecahedron") },
    Solid { name: "dodecahedron", group: "alt5xC2", matrix: MatrixKind::L, lambda: 3.0 - R5, lambda_text: "3-sqrt(5)", wl_rank: 6, rho_rank: 6, source: asset!("dodecahedron") },
    Solid { name: "icosahedron", group: "alt5xC2", matrix: MatrixKind::L, lambda: 5.0 - R5, lambda_text: "5-sqrt(5)", wl_rank: 4, rho_rank: 4, source: asset!("icosahedron") },
    Solid { name: "rhombic-triacontahedron", group: "alt5xC2", matrix: MatrixKind::L, lambda: 3.0 - R5, lambda_text: "3-sqrt(5)", wl_rank: 18, rho_rank: 18, source: asset!("rhombic-triacontahedron") },
    Solid { name: "disdyakis-triacontahedron", group: "alt5xC2", matrix: MatrixKind::A, lambda: R5, lambda_text: "sqrt(5)", wl_rank: 52, rho_rank: 49, source: asset!("disdyakis-triacontahedron") },
];

const MOEBIUS_KANTOR: &str = asset!("moebius-kantor");

/// The fifteen polyhedral graphs with hints for a rigid faithful
/// representation.
pub fn solids() -> &'static [Solid] {
    SOLIDS
}

pub fn solid(name: &str) -> Option<&'static Solid> {
    SOLIDS.iter().find(|s| s.name == name)
}

/// The generalized Petersen graph GP(8,3).
pub fn moebius_kantor() -> SimpleGraph {
    let (n, e) = parse_edge_list(MOEBIUS_KANTOR).expect("bundled edge list parses");
    SimpleGraph::new(n, &e).expect("bundled graph is simple")
}

/// Any bundled graph by name, including `moebius-kantor`.
pub fn graph(name: &str) -> Option<SimpleGraph> {
    if name == "moebius-kantor" {
        return Some(moebius_kantor());
    }
    solid(name).map(Solid::graph)
}

pub fn graph_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = SOLIDS.iter().map(|s| s.name).collect();
    v.push("moebius-kantor");
    v
}

/// A group given by a faithful action and the stabilizers of its transitive
/// constituents, keyed by orbit label.
#[derive(Clone, Debug, Serialize)]
pub struct GroupEntry {
    pub name: &'static str,
    pub order: usize,
    pub degree: usize,
    pub generators: &'static [(&'static str, &'static [usize])],
    pub stabilizers: &'static [(&'static str, &'static [&'static str])],
}

impl GroupEntry {
    pub fn group(&self) -> PermGroup {
        let gens = self.generators.iter().map(|(_, im)| Perm::new(im.to_vec()).expect("valid generator")).collect();
        let names = self.generators.iter().map(|(n, _)| n.to_string()).collect();
        PermGroup::with_names(self.degree, gens, names).expect("valid group")
    }

    pub fn orbit_labels(&self) -> Vec<&'static str> {
        self.stabilizers.iter().map(|(l, _)| *l).collect()
    }

    /// Transitive action on the orbit with the given label.
    pub fn constituent(&self, label: &str) -> Result<PermGroup> {
        let Some((_, words)) = self.stabilizers.iter().find(|(l, _)| *l == label) else {
            return invalid(format!("{} has no orbit labelled {label:?}; known: {}", self.name, self.orbit_labels().join(", ")));
        };
        coset_action(&self.group(), words)
    }

    /// Disjoint union of constituents; labels may repeat.
    pub fn on_orbits(&self, labels: &[&str]) -> Result<PermGroup> {
        if labels.is_empty() {
            return invalid("at least one orbit is required");
        }
        let parts = labels.iter().map(|l| self.constituent(l)).collect::<Result<Vec<_>>>()?;
        disjoint_union(&parts)
    }
}

#[rustfmt::skip]
const GROUPS: &[GroupEntry] = &[
    GroupEntry {
        name: "alt4", order: 12, degree: 4,
        generators: &[("r1", &[1, 2, 0, 3]), ("r2", &[0, 2, 3, 1])],
        stabilizers: &[("12", &["1"]), ("6", &["r1*r2"]), ("4", &["r1"])],
    },
    GroupEntry {
        name: "sym4II", order: 24, degree: 4,
        generators: &[("r1", &[0, 3, 1, 2]), ("r2", &[1, 2, 3, 0])],
        stabilizers: &[("24", &["1"]), ("12", &["r1*r2"]), ("8", &["r1"]), ("6", &["r2"])],
    },
    GroupEntry {
        name: "alt5", order: 60, degree: 5,
        generators: &[("r1", &[0, 4, 1, 3, 2]), ("r2", &[1, 2, 3, 4, 0])],
        stabilizers: &[("60", &["1"]), ("30", &["r1*r2"]), ("20", &["r1"]), ("12", &["r2"])],
    },
    GroupEntry {
        name: "sym4I", order: 24, degree: 4,
        generators: &[("t1", &[0, 2, 1, 3]), ("t2", &[1, 0, 2, 3]), ("t3", &[0, 1, 3, 2])],
        stabilizers: &[("24", &["1"]), ("12", &["t1"]), ("6", &["t2", "t3"]), ("4", &["t1", "t2"])],
    },
    GroupEntry {
        name: "alt4xC2", order: 24, degree: 6,
        generators: &[("r", &[1, 2, 0, 3, 4, 5]), ("t", &[1, 0, 3, 2, 4, 5]), ("z", &[0, 1, 2, 3, 5, 4])],
        stabilizers: &[("24", &["1"]), ("12", &["z"]), ("8", &["r"]), ("6", &["z", "t"])],
    },
    GroupEntry {
        name: "sym4xC2", order: 48, degree: 6,
        generators: &[("t1", &[0, 1, 4, 5, 2, 3]), ("t2", &[0, 1, 2, 3, 5, 4]), ("t3", &[2, 3, 0, 1, 4, 5])],
        stabilizers: &[
            ("48", &["1"]), ("24I", &["t1"]), ("24II", &["t2"]),
            ("12", &["t2", "t3"]), ("8", &["t1", "t3"]), ("6", &["t1", "t2"]),
        ],
    },
    GroupEntry {
        name: "alt5xC2", order: 120, degree: 7,
        generators: &[("t1", &[0, 2, 1, 4, 3, 6, 5]), ("t2", &[1, 0, 3, 2, 4, 6, 5]), ("t3", &[3, 2, 1, 0, 4, 6, 5])],
        stabilizers: &[("120", &["1"]), ("60", &["t1"]), ("30", &["t2", "t3"]), ("20", &["t1", "t3"]), ("12", &["t1", "t2"])],
    },
];

pub fn groups() -> &'static [GroupEntry] {
    GROUPS
}

pub fn group_entry(name: &str) -> Option<&'static GroupEntry> {
    GROUPS.iter().find(|g| g.name == name)
}

/// Resolves `NAME` (the defining action) or `NAME/orbits=A+B+...`.
pub fn catalog_group(spec: &str) -> Result<PermGroup> {
    let (name, rest) = match spec.split_once('/') {
        Some((n, r)) => (n, Some(r)),
        None => (spec, None),
    };
    let Some(entry) = group_entry(name) else {
        let known: Vec<&str> = GROUPS.iter().map(|g| g.name).collect();
        return invalid(format!("unknown group {name:?}; known: {}", known.join(", ")));
    };
    match rest {
        None => Ok(entry.group()),
        Some(r) => {
            let Some(list) = r.strip_prefix("orbits=") else {
                return invalid(format!("expected orbits=..., got {r:?}"));
            };
            let labels: Vec<&str> = list.split('+').map(str::trim).collect();
            entry.on_orbits(&labels)
        }
    }
}

/// One row of the reference search table; the counts are absent for rows
/// where the group has a faithful regular orbit elsewhere or none was run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SearchRow {
    pub group: &'static str,
    pub orbits: &'static str,
    pub rank: usize,
    pub aut: &'static str,
    pub candidates: Option<usize>,
    pub closed: Option<usize>,
}

impl SearchRow {
    pub fn spec(&self) -> String {
        format!("{}/orbits={}", self.group, self.orbits)
    }
}

#[rustfmt::skip]
const SEARCH_ROWS: &[SearchRow] = &[
    SearchRow { group: "alt4", orbits: "6", rank: 4, aut: "C2 x alt4", candidates: None, closed: None },
    SearchRow { group: "alt4", orbits: "4", rank: 2, aut: "sym4", candidates: None, closed: None },
    SearchRow { group: "alt4", orbits: "4+4", rank: 8, aut: "sym4", candidates: None, closed: None },
    SearchRow { group: "alt4", orbits: "6+4", rank: 10, aut: "alt4", candidates: Some(19), closed: Some(0) },
    SearchRow { group: "alt4", orbits: "6+4+4", rank: 20, aut: "alt4", candidates: Some(294), closed: Some(0) },
    SearchRow { group: "sym4II", orbits: "6", rank: 3, aut: "C2 x sym4", candidates: None, closed: None },
    SearchRow { group: "sym4II", orbits: "8", rank: 4, aut: "C2 x sym4", candidates: None, closed: None },
    SearchRow { group: "sym4II", orbits: "12+8", rank: 19, aut: "sym4", candidates: Some(330), closed: Some(14) },
    SearchRow { group: "sym4II", orbits: "12+6", rank: 16, aut: "sym4", candidates: Some(148), closed: Some(6) },
    SearchRow { group: "sym4II", orbits: "8+6", rank: 11, aut: "C2 x sym4", candidates: None, closed: None },
    SearchRow { group: "sym4II", orbits: "12+8+6", rank: 32, aut: "sym4", candidates: Some(4827), closed: Some(36) },
    SearchRow { group: "alt5", orbits: "30", rank: 16, aut: "alt5", candidates: Some(52), closed: Some(5) },
    SearchRow { group: "alt5", orbits: "20", rank: 8, aut: "alt5", candidates: Some(10), closed: Some(0) },
    SearchRow { group: "alt5", orbits: "12", rank: 4, aut: "C2 x alt5", candidates: None, closed: None },
    SearchRow { group: "alt5", orbits: "30+20", rank: 44, aut: "alt5", candidates: Some(2385), closed: Some(148) },
    SearchRow { group: "alt5", orbits: "30+12", rank: 32, aut: "alt5", candidates: Some(601), closed: Some(25) },
    SearchRow { group: "alt5", orbits: "20+12", rank: 20, aut: "alt5", candidates: Some(80), closed: Some(1) },
    SearchRow { group: "alt5", orbits: "30+20+12", rank: 68, aut: "alt5", candidates: Some(46631), closed: Some(685) },
];

pub fn search_rows() -> &'static [SearchRow] {
    SEARCH_ROWS
}

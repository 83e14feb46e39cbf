//! Shared inputs for the benchmarks.

use ccwl::catalog;
use ccwl::spectral::{representation, EigenChoice};
use ccwl::wlclosure::wl_close_graph;
use ccwl::{ColorGraph, SimpleGraph, SphericalRep};

/// Solids used across benchmarks, smallest to largest.
pub const SOLIDS: &[&str] = &["icosahedron", "truncated-octahedron", "small-rhombicosidodecahedron"];

pub fn graph(name: &str) -> SimpleGraph {
    catalog::solid(name).expect("catalog solid").graph()
}

/// Closure and hinted representation of a catalog solid.
pub fn prepared(name: &str) -> (ColorGraph, SphericalRep) {
    let s = catalog::solid(name).expect("catalog solid");
    let g = s.graph();
    let x = wl_close_graph(g.n(), &g.edges()).expect("valid graph");
    let rep = representation(&x, &g, s.matrix, EigenChoice::Value(s.lambda)).expect("hinted representation");
    (x, rep)
}

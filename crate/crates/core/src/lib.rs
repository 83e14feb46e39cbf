//! Coherent configurations and the computations around them: 2-dimensional
//! Weisfeiler-Leman closure, orbit configurations of permutation groups,
//! intersection numbers, spherical spectral representations, rigidity
//! certificates, planarity and the polyhedral candidate search.

pub mod candidates;
pub mod catalog;
pub mod ccstruct;
mod error;
pub mod io;
pub mod isomorph;
pub mod limits;
pub mod permgrp;
pub mod planargraph;
pub mod rigidity;
pub mod spectral;
pub mod wlclosure;

pub use candidates::{CandidateSet, EdgeBounds, SearchOptions, StageCounts, Witness};
pub use ccstruct::{
    ColorGraph, ColorId, IntersectionTensor, Parabolic, QuotientMap, ValidationReport, Violation,
};
pub use error::{Error, Result};
pub use isomorph::{AlgebraicAutGroup, AutGroup};
pub use permgrp::{OrbitDecomposition, Perm, PermGroup};
pub use planargraph::SimpleGraph;
pub use rigidity::{ClosureStep, RigidityCertificate, SetRule};
pub use spectral::{EigenChoice, MatrixKind, RainbowRho, SphericalRep};
pub use wlclosure::InitialColoring;

//! Exact optimal transport on the Heisenberg group ℍⁿ with the Korányi metric.
//!
//! Measures are finitely supported. Transport costs are solved exactly by a
//! network simplex, and the rest of the crate builds geodesics, vertical-line
//! projections, plane-map lifts and the rigidity tooling on top of that solver.

pub mod error;
pub mod export;
pub mod geodesic;
pub mod geometry;
pub mod json;
pub mod lifting;
pub mod measure;
pub mod radon;
pub mod rigidity;
mod simplex;
pub mod suite;
pub mod transport;

pub use error::{Error, Result};
pub use export::{export_curve, ExportFormat};
pub use geometry::{
    distance, horizontally_aligned, separating_hyperplane, HeisenbergPoint, HorizontalVector, SeparatingHyperplane,
    VerticalLine,
};
pub use measure::{common_part, jordan_decomposition, Atom, DiscreteMeasure, SignedDecomposition};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
pub use transport::{
    coupling_cost, cyclically_monotone, glue, kr_dual_value, solve_wp, verify_map_optimality, wasserstein, Coupling,
    CycleCertificate, GroundCost, TransportResult,
};

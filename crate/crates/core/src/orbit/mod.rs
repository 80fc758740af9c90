//! Shortest vectors along the diagonal orbit, grid scans of a fundamental
//! domain, visits to the thick part and their distance to `A Z^d`.

mod scan;
mod svp;
mod visits;

pub use scan::{involution_defect, mass_above, periodicity_defect, scan_fundamental_domain, scan_with_sampler, OrbitSampler, OrbitScan};
pub use svp::{brute_force_shortest, lll, shortest_vector, shortest_vector_with_budget, Reduced, ShortestVector, DEFAULT_NODE_BUDGET};
pub use visits::{
    accprop_check, connected_components, diagonal_proximity, visit_localization_check, AccpropReport, Component,
    EomParameters, LocalizationReport, Proximity, VisitReport,
};

//! Discrete trace theorems: semi-norms, extensions, certification of the
//! trace inequalities, spectral equivalence with `L_Γ^{1/2}`, and
//! `M`-aggregation checking.

pub mod aggregation;
pub mod certify;
pub mod equivalence;
pub mod extension;
pub mod projection;
pub mod seminorm;

pub use aggregation::{verify_m_aggregation, AggregationPartition, AggregationReport, Label, Violation};
pub use certify::{
    certify_trace_bounds, spectral_equivalence_constants, InequalityCheck, SeminormReport, TraceConstants,
};
pub use equivalence::{estimate_spectral_equivalence, SpectralEquivalence};
pub use extension::{extension_gkl, harmonic_extension, harmonic_extension_with};
pub use projection::{projection_mass_bound_check, ProjectionCheck};
pub use seminorm::{boundary_seminorm, energy_seminorm, BoundarySeminorm};

//! Flat SU(2) and SU(N) connections on torus bundles: components of the
//! moduli space, their Chern-Simons values, and twisted cohomology
//! dimensions.

mod cocycle;
mod cs;

pub use cocycle::{
    cocycle_matrix, coboundary_matrix, cohomology_dims, generic_triple, growth_rate, growth_rate_seeded,
    kernel_dim, numerical_rank, point_triple, random_su2, CohomologyDims, ConnectionTriple, DEFAULT_SEED,
    RANK_TOLERANCE,
};
pub use cs::{
    cs_set, su2_components, su3_cs_phase_set, sun_cs_completely_reducible, sun_cs_partially_reducible, ComponentKind,
    ModuliComponent,
};

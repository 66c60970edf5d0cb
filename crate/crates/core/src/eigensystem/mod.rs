//! Closed-form eigensystem of the rotated Dirac oscillator, spectral
//! projector norms and the instability of Galerkin eigenvalues.

pub mod block;
pub mod functions;
pub mod instability;
pub mod norms;

pub use block::{block_eigensystem, raw_block_vectors, BlockEigensystem};
pub use functions::{
    eigenfunction_coeff_vector, idempotency_defect, pairing, projector_factors, projector_indices,
    projector_matrix, projector_norm_log_matrix, CoefficientTable, ExactEigenfunction,
};
pub use instability::{
    exact_with_multiplicity, galerkin_instability_profile, match_levels, truncation_eigenvalues,
};
pub use norms::{
    estimate_rate, projector_norm_bounds, projector_norm_log, projector_norm_log_from,
    projector_norm_symmetry_check, projector_rate, ProjectorNormSeries,
};

//! Galerkin truncations of the rotated Schrödinger and Dirac oscillators
//! and their exact algebraic properties.

pub mod builders;
pub mod dirac;
pub mod params;
pub mod spectrum;
pub mod symmetries;
pub mod truncated;

pub use builders::{
    build_dimensionful, build_dirac, build_schrodinger, derivative_matrix, position_matrix,
    positive_mass_projector, spin_sign_matrix, spinor_diagonal, split_symmetric_antisymmetric,
};
pub use dirac::{anticommutator, mul4, DiracMatrices, Mat4};
pub use params::{half_angle, OscillatorParams, RelativisticParams};
pub use spectrum::{
    exact_spectrum, level, numerical_range_imag_extent, numerical_range_support,
    square_identity_defect, square_identity_residual,
};
pub use symmetries::{
    adjoint_deviation, alpha0_anticommutation_deviation, conjugation_similarity_deviation,
    parity_conjugation_deviation,
};
pub use truncated::TruncatedOperator;

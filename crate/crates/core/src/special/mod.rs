//! Hermite functions at complex arguments, Gauss–Hermite quadrature and the
//! norms and coefficients of rotated Hermite functions.

pub mod hermite;
pub mod quadrature;
pub mod rotated;
pub mod scaled;

pub use hermite::{
    hermite_function, hermite_function_sequence, hermite_polynomial, hermite_polynomial_sequence,
    HermiteRecurrence,
};
pub use quadrature::{gauss_hermite, QuadratureRule};
pub use rotated::{
    check_angle, overlap, overlap_column, overlap_column_with_rule, overlap_nodes,
    rotated_norm_sq_log, rotated_norm_sq_log_series,
};
pub use scaled::ScaledComplex;

pub mod dd;
pub mod eigensystem;
pub mod error;
pub mod limits;
pub mod linalg;
pub mod operators;
pub mod pseudospectra;
pub mod scalar;
pub mod special;

pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use scalar::{Real, C};

/// Single precision scalar.
pub type F32 = f32;
/// Double precision scalar.
pub type F64 = f64;
/// Extended precision scalar, about 32 significant digits.
pub type Extended = DoubleDouble;

pub mod cascade;
pub mod erf;
pub mod error;
pub mod filters;
pub mod haar;
pub mod inverse;
pub mod landau;
pub mod line;
pub mod quadrature;
pub mod zak;

pub use error::{Error, Result};

/// Lattice constant of the unit-flux cell, `a = √(2π)`.
pub const LATTICE_A: f64 = 2.5066282746310007;

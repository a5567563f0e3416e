//! Resonance dipole-dipole interaction of two uniformly accelerated atoms,
//! evaluated in the coaccelerated frame, with independent integral oracles
//! for every closed form.

pub mod cli;
pub mod em;
pub mod error;
pub mod kinematics;
pub mod quadrature;
pub mod scalar;
pub mod shift;
pub mod specfun;

pub use error::{Error, Result};

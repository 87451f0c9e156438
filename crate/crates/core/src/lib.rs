pub mod dipole;
pub mod error;
pub mod fock;
pub mod gap;
pub mod harmonics;
pub mod matrix;
pub mod meanfield;
pub mod quadrature;
pub mod sampling;
pub mod so5;
pub mod yangian;

pub use error::{Error, Result};

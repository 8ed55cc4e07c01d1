//! Finite Hilbert transform on (-1, 1).
//!
//! `T(f)(t) = (1/pi) p.v. int_{-1}^{1} f(x) / (x - t) dx`, its
//! pseudo-inverses, the airfoil equation, fine spectra on
//! rearrangement-invariant spaces and a harness for the classical identities.

pub mod airfoil;
pub mod error;
pub mod fht_engine;
pub mod function_rep;
pub mod identity_harness;
pub mod quadrature;
pub mod spectral_atlas;

pub use error::{FhtError, Result};
pub use quadrature::{Estimate, QuadratureConfig};

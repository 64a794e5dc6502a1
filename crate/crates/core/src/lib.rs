//! Numerical companion for heterogeneous quadrature formulae of Hardy's Z.
//!
//! The crate evaluates Z(t) (Riemann–Siegel with an Euler–Maclaurin oracle),
//! solves generalized Gram sequences, builds the disconnected sets G₁…G₄ as
//! interval unions, constructs the Jacob's ladder φ₁ with φ₁' = ω Z², and
//! computes both sides of the correlation-integral identities independently.

pub mod correlation;
pub mod dd;
pub mod error;
pub mod experiments;
pub mod gram;
pub mod ladder;
pub mod quadrature;
pub mod roots;
pub mod scalar;
pub mod sets;
pub mod sum;
pub mod zeta;

pub use error::{Error, Result};

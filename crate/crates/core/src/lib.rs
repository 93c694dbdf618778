//! Quantum state-manifold metrics from Lie-algebraic circuits.
//!
//! A [`manifold::StateManifold`] is a product of exponentials of Hermitian
//! generators applied to a fixed initial state. Its metric can be computed
//! three ways: analytically from state derivatives, from conjugated
//! ("tilde") generators, and by finite differences in [`oracle`].

pub mod cli;
pub mod error;
pub mod geometry;
pub mod liealg;
pub mod linalg;
pub mod manifest;
pub mod manifold;
pub mod models;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};

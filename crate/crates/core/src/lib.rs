//! Subsystem-decomposition ("meronomic") reference frames for finite quantum
//! systems.
//!
//! A meronomic frame is a choice of tensor-product structure on a Hilbert
//! space. This crate provides the numerical machinery to work with such
//! frames and the protocols that depend on them:
//!
//! - [`linalg`]: dense complex states, operators, partial traces, subsystem permutations.
//! - [`frames`]: Schmidt analysis, entanglement classification, the frame group and
//!   membership testing, the Bell and θ frames.
//! - [`random`]: seeded Haar sampling and twirling over the frame group.
//! - [`protocols`]: the orthogonalization (partial superdense) task, Λ-state
//!   Schmidt-parameter estimation, symmetric-subspace reference measurements and
//!   subsystem-ordering discrimination.
//! - [`theorems`]: batch verification suites for the frame-group characterizations.
//! - [`cli`]: the `meronome` command-line driver.

pub mod error;
pub mod linalg;
pub mod frames;
pub mod random;
pub mod protocols;
pub mod theorems;
pub mod cli;

pub use error::{Error, Result};

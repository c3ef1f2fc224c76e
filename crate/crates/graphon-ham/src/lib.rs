//! Hamiltonicity of directed random graphs sampled from step-graphons.
//!
//! The crate is organised the way the analysis flows:
//!
//! * [`graphon`] holds exact step-graphons and the transformations applied to
//!   them (refinement, symmetrization, saturation, self-loop surgery).
//! * [`skeleton`] builds the skeleton digraph, its cycles and incidence
//!   matrix, and decides Conditions A, B, B′ and C.
//! * [`geometry`] is the exact rational linear algebra behind those
//!   conditions: rank and cone membership by simplex.
//! * [`sampling`] draws digraphs and graphs from a step-graphon with
//!   reproducible per-trial streams.
//! * [`hamiltonicity`] decides and constructs Hamiltonian decompositions and
//!   cycles.
//! * [`harness`] glues everything into the operations the CLI exposes.
//!
//! All probabilities and partition points are [`Rational`]s, so every
//! condition check is exact.

pub mod error;
pub mod geometry;
pub mod graphon;
pub mod hamiltonicity;
pub mod harness;
pub mod rational;
pub mod sampling;
pub mod skeleton;

pub use error::{Error, Result};
pub use graphon::{ConcentrationVector, Partition, StepGraphon};
pub use rational::Rational;

//! Exact-arithmetic toolkit for additive k-bases.
//!
//! Everything is computed over the rationals with arbitrary-precision
//! components: k-fold sumsets and membership certificates, an exact
//! minimum-basis solver, constructive upper bounds (rounding, dyadic levels,
//! the AP-approximation recursion), the vector-model verifiers, and seeded
//! instance generators.

pub mod constructions;
pub mod error;
pub mod instances;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod solver;
pub mod sumset;
pub mod vector_model;

pub use error::{Error, Result};
pub use rational::Rational;
pub use sumset::{is_k_basis, k_sum_membership, ElementSet, SumCertificate};

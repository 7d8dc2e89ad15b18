//! Finite real spectral triples for fuzzy tori.
//!
//! The crate builds clock/shift algebras, the scalar Laplacian and the Dirac
//! operator on `C^4 ⊗ M_N(C)`, evaluates their spectra in closed form with
//! quantum integers, checks them against dense diagonalization, verifies the
//! axioms of a real spectral triple of KO-dimension 4 and realises all four
//! spin structures through a four-fold non-commutative covering.

pub mod error;
pub mod linalg;
pub mod qroots;
pub mod metric;
pub mod clockshift;
pub mod bimodule;
pub mod oracle;
pub mod laplace;
pub mod dirac;
pub mod spincover;
pub mod cli;

pub use error::{Error, Result};
pub use metric::IntegerMetric;
pub use qroots::{Phase, RootOfUnity, Sign};

#![allow(clippy::needless_range_loop)] // indexed loops mirror the matrix arithmetic

//! Exact symbolic engine for the extended real Clifford-Dirac operator algebra.
//!
//! The crate builds normal-ordered operators (X-monomials times 4x4 matrices
//! over an exact scalar field, times an optional conjugation flag), constructs
//! the catalog of named gamma-matrix and generator families, and verifies
//! their algebraic relations exactly: structure constants, invariance algebras,
//! similarity transforms and Casimir operators.

pub mod catalog;
pub mod dsl;
pub mod error;
pub mod linalg;
pub mod operator;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

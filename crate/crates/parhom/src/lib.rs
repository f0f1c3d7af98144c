//! Exact computation of Hochschild (co)homology for epsilon-strongly graded
//! algebras, via partial group (co)homology and the globalization functor.
//!
//! Everything is computed over an exact field (Q or GF(p)), so every homology
//! dimension, isomorphism, and splitting is certified by integer equalities.
//! See the `book/` guide for a narrative walkthrough.

mod dense;

pub mod algebra;
pub mod cli;
pub mod complex;
pub mod field;
pub mod graded;
pub mod hochschild;
pub mod group;
pub mod matrix;
pub mod partial;
pub mod resolution;
pub mod spectral;

pub use field::{FieldSpec, Scalar};
pub use matrix::{ExactMatrix, QuotientSpace, RowSpace, Subspace};

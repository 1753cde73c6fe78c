//! Exact symbolic computations around lattices of `Isom(H^n_C)` acting on the
//! boundary sphere: graded polynomial vector fields, jets of transformations,
//! the grading of `su(n+1,1)`, Sternberg normalization and rigidity checks.
//!
//! All arithmetic is over Q or Q(i); nothing is approximated.

pub mod error;
pub mod cmatrix;
pub mod gradedpoly;
pub mod heisenberg;
pub mod jetgroup;
pub mod json;
pub mod linalg;
pub mod normalization;
pub mod rigidity;
pub mod scalar;
pub mod su_grading;
pub mod suites;

pub use error::{Error, Result};
pub use gradedpoly::{Monomial, Poly, PolyVectorField};
pub use scalar::{CQ, Q};

//! Exact arithmetic: rationals, univariate polynomials and their
//! factorization, number fields, dense matrices, integer lattices,
//! truncated q-series, and certified real enclosures.

pub mod certified;
pub mod factor;
pub mod lattice;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod realroots;

pub use certified::{CertifiedReal, Interval};
pub use factor::factor_poly;
pub use matrix::{solve_exact, QMatrix, SolveOutcome, Subspace};
pub use numfield::{NFElem, NumberField};
pub use poly::UniPoly;
pub use qseries::{series_mul, QSeries};
pub use rational::Rational;

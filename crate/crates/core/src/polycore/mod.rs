//! Exact graded polynomials over the rationals.

pub mod graded;
pub mod json;
pub mod render;
pub mod schur;
pub mod series;
pub mod vars;

pub use graded::{vanishes_under, GradedPoly, Substitution};
pub use schur::{schur2, schur2_in, schur3, schur3_in};
pub use series::{chern_assignment, evaluate_at_total, series_inverse, series_quotient};
pub use vars::{Monomial, VarEntry, VarTable};

//! Exact dense linear algebra over arbitrary-precision rationals.

pub mod echelon;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use echelon::{RowEchelon, Solution, SpanCoordinates, SparseRow};
pub use matrix::{b_form, dot, is_positive_definite, nullspace, rank, solve, Matrix};
pub use poly::{char_poly, is_squarefree, Polynomial};
pub use rational::Rational;

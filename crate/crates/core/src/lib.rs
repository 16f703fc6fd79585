//! Two-step nilpotent metric Lie algebras associated with finite simple graphs.
//!
//! The crate builds the graph algebra, its metric invariants (the `J`-operators,
//! the `(A, C)` split, the form `B(K₁, K₂) = −½ tr(K₁K₂)`), its derivation
//! algebra, and decides whether a left-invariant metric is geodesic orbit and
//! naturally reductive. Everything is computed in exact rational arithmetic.

pub mod classify;
pub mod derivations;
pub mod error;
pub mod gonr;
pub mod graph;
pub mod linalg;
pub mod metric;
pub mod nilpotent;
pub mod random;
pub mod report;

pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::{Matrix, Rational};
pub use metric::{Metric, MetricLieAlgebra};
pub use nilpotent::GraphLieAlgebra;

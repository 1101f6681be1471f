//! Computer-algebra kernel for finite decomposition semigroups.
//!
//! - [`semigroup`]: the semigroup abstraction, built-ins, decomposition and units.
//! - [`algebra`]: polynomials over a semigroup, scalar product, coproduct, convolution.
//! - [`qshuffle`]: the recursive quasi-shuffle product and its four instances.
//! - [`ddl`]: disjoint direct limits and the finite-decomposition criterion.
//! - [`structure`]: peeling a semigroup into group layers.
//! - [`analytic`]: polylogarithm and multiple zeta series used as numerical oracles.
//! - [`checks`]: every module's invariants at one bound.

pub mod algebra;
pub mod analytic;
pub mod checks;
pub mod ddl;
pub mod element;
pub mod error;
pub mod qshuffle;
pub mod report;
pub mod semigroup;
pub mod structure;

pub use element::{Element, ElementKind, Monomial, Named};
pub use error::{Error, Result};
pub use ddl::DdlSystem;
pub use report::CheckReport;
pub use semigroup::{builtin, FiniteTable, Semigroup, SemigroupHandle};

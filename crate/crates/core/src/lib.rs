//! Exact computations with finite-dimensional algebras, skew group algebras and the
//! recollements induced by idempotents.
//!
//! Everything works over `ℚ` or a prime field with exact arithmetic. Modules are right
//! modules and matrices act on row vectors.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod group;
pub mod instance;
pub mod linalg;
pub mod module;
pub mod recollement;
pub mod report;
pub mod skew;
pub mod triangular;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar, Subspace};
pub use module::{PdResult, RightModule};

//! Exact computations with bound quiver algebras `kQ/I`: normal forms,
//! modules and resolutions, ray categories, cleaving diagrams and
//! alpha-filtrations of indecomposable projectives.

pub mod algebra;
pub mod certifier;
pub mod cleaving;
pub mod corpus;
pub mod error;
pub mod field;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod random;
pub mod raycat;
pub mod resolution;
pub mod structure;
pub mod text;

pub use algebra::{AlgebraBasis, Element};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Subspace, Vector};
pub use quiver::{Arrow, Path, Presentation, Quiver, Relation};

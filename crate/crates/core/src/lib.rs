//! Exact-arithmetic toolkit for commutative algebraic-group actions on
//! smooth projective quadrics.
//!
//! Layers, bottom up: [`linalg`] (rational matrices, subspaces,
//! polynomials), [`algebra`] (structure constants, radical, generating
//! subspaces), [`bridge`] (representations ↔ algebras), [`quadric`]
//! (compatibility, certificates, catalog, search), and [`verification`]
//! (the end-to-end checks).

pub mod algebra;
pub mod bridge;
pub mod error;
pub mod io;
pub mod linalg;
pub mod quadric;
pub mod verification;

pub use algebra::{split_generating_subspace, Algebra, ElementType, GeneratingSubspace};
pub use bridge::{ht_backward, ht_forward, induced_form, verify_equivalence, CyclicRep, Forward, InducedForm};
pub use error::Error;
pub use linalg::{Matrix, Poly, Rational, Subspace, Vector};
pub use quadric::{QuadricActionData, QuadricForm};

//! Symplectic exterior algebra over prime fields and computable bounds on
//! inflation kernels of extraspecial p-groups.
//!
//! The stable cohomology of an elementary abelian group `E = F_p^{2m}` is
//! modeled as the exterior algebra on the coordinate forms `x1..xm, y1..ym`,
//! with the commutator form `ω = Σ xᵢ∧yᵢ`. The crate computes, degree by
//! degree, the ideal `⟨ω⟩`, the space of classes vanishing on every totally
//! isotropic subspace, and the sl2 structure that controls both.

pub mod error;
pub mod exterior;
pub mod extraspecial;
pub mod inflation;
pub mod isotropic;
pub mod linalg;
pub mod report;
pub mod symplectic;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use symplectic::SymplecticSpace;

//! Finite-quotient machinery for surface groups.
//!
//! Everything here works with finite groups given by permutations whose
//! elements are fully enumerated. A surface group of genus `g` only ever
//! appears through its presentation and through assignments of its `2g`
//! generators into finite groups.

pub mod cosetenum;
pub mod diamond;
pub mod embedding;
mod error;
pub mod fingroup;
pub mod perm;
pub mod supernatural;
pub mod surface;
pub mod wreath;

pub use error::{Error, Result};
pub use fingroup::{FiniteGroup, GroupAction, GroupHom, Limits, Subgroup};
pub use perm::Perm;
pub use supernatural::Supernatural;
pub use surface::{SurfaceAssignment, SurfacePresentation, Word};

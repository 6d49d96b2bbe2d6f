//! Abstract 4-polytopes of type {3,q,3} built from string C-groups and
//! Eisenstein matrix groups, their medial layer graphs, and the symmetry
//! classification of those graphs.

pub mod catalog;
pub mod eisenstein;
pub mod error;
pub mod fpgroup;
pub mod graphsym;
pub mod matgroup;
pub mod permgroup;
pub mod polytope;

pub use eisenstein::Eisenstein;
pub use error::{Error, Result};

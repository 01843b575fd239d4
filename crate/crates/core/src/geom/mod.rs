//! Polyhedral kernel.

pub mod dd;
pub mod integrate;
pub mod linalg;
pub mod polyhedron;

pub use polyhedron::{convex_hull, Halfspace, HalfspaceSystem, HRep, Polyhedron};

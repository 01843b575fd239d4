//! Exact polyhedral convex geometry and valuations on convex functions.

pub mod cli;
pub mod convex;
pub mod dual;
pub mod error;
pub mod geom;
pub mod hessian;
pub mod json;
pub mod random;
pub mod scalar;
pub mod suite;
pub mod valuation;

pub use error::{Error, Result};
pub use scalar::{Mode, Point, Scalar};

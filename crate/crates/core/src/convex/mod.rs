//! Piecewise-linear convex functions, conjugation and cones.

pub mod body;
pub mod cone;
pub mod conjugate;
pub mod dc;
pub mod function;

pub use body::{perturb_bounded, replace_by_body, Perturbation};
pub use cone::{ConeSpec, DualConeSpec, Membership};
pub use conjugate::{conjugate, floor_body, lift_ha, recession_function, support_function, support_lift};
pub use dc::DcPair;
pub use function::{AffineForm, PolyConvexFunction, Value};

//! Exact Laurent polynomial arithmetic in one and two variables, plus the
//! symbolic family-in-`n` representation used by twist-family closed forms.

mod family;
mod homfly;
mod laurent;

pub use family::{geometric_family, FamilyPoly};
pub use homfly::{z_degree_zero, HomflyPoly};
pub use laurent::{unlink_factor, LaurentPoly};

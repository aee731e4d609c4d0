//! Knot-invariant engine: HOMFLYPT and its degree-0 part `F_L`, computed from
//! planar diagrams by memoized skein recursion, together with twist-family
//! induction formulas, a recursion solver, and Dehn-surgery slope arithmetic.

pub mod diagram;
pub mod error;
pub mod families;
pub mod poly;
pub mod skein;
pub mod surgery;
pub mod twist;

pub use error::{Error, Result};

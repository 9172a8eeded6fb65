//! Exact symbolic certificates and numerical constructions for minimal
//! hypersurfaces of space forms that admit a second isometric immersion
//! into a space form of different curvature.

// `!(x > 0.0)` is used on purpose to reject NaN along with non-positive
// values; index loops mirror the tensor formulas they implement.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod geometry;
pub mod jet;
pub mod profile;
pub mod verify;

//! Exact polynomial arithmetic: univariate, bivariate Laurent, and ternary
//! homogeneous, plus the intersection-number machinery built on them.

pub mod bipoly;
mod d5;
pub mod homog;
pub mod intersect;
pub mod laurent;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use homog::{Chart, HomPoly, ProjPoint};
pub use intersect::{
    local_intersection, local_intersection_affine, resultant, torus_intersection_length, Var,
};
pub use laurent::LaurentPoly;
pub use unipoly::UniPoly;

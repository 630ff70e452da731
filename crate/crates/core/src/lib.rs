//! Tropicalization of surfaces in the n-dimensional torus parameterized by
//! bivariate Laurent polynomials with rational coefficients.
//!
//! The output of both pipelines is a weighted graph of lattice points whose
//! cone is a balanced weighted fan: the tropical surface. The generic
//! pipeline reads everything off Newton polygons, refined normal fans and
//! exact intersection counts; the non-generic pipeline compactifies the
//! curve arrangement in the projective plane and resolves excess boundary
//! intersections by iterated point blow-ups. A dimension-agnostic layer
//! realizes weighted boundary complexes as fans and pushes weighted fans
//! forward along monomial maps.

pub mod arith;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod generic;
pub mod graph;
pub mod lattice;
pub mod poly;
pub mod polygon;
pub mod resolution;

pub use arith::{Int, Rat};
pub use error::{Error, Result};

//! Self-intersections of Laurent-polynomial circle maps, and constructive
//! approximation of circle maps by Jordan curves.
//!
//! The library has two halves:
//!
//! * an algebraic half ([`laurent`], [`chebyshev`], [`pairing`],
//!   [`intersect`], [`oracle`]) that enumerates and certifies the
//!   self-intersections of a Laurent polynomial restricted to the unit
//!   circle, via a Chebyshev/Sylvester resultant pipeline plus an
//!   independent brute-force oracle;
//! * a geometric half ([`geometry`], [`embed`]) that approximates an
//!   arbitrary sampled circle map by a simple closed, positively oriented
//!   polyline curve in the L^p norm, by excising the self-intersection
//!   neighborhoods and reconnecting the remaining arcs inside a disk.
//!
//! All operations are pure functions of their inputs; randomized steps are
//! driven by explicit seeds.

pub mod chebyshev;
pub mod embed;
pub mod error;
pub mod geometry;
pub mod intersect;
pub mod laurent;
pub mod oracle;
pub mod pairing;
mod roots;

pub use error::{Error, Result};
pub use laurent::{ExceptionalStatus, LaurentPolynomial, NormalizationLog};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

pub const TAU: f64 = std::f64::consts::TAU;

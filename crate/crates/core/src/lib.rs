//! Exact computations on piecewise-linear downsets, upsets and intervals in `R^n`.
//!
//! Everything is rational: sets are finite unions of cells, each cell a finite
//! conjunction of strict or non-strict affine inequalities, and all set
//! operations go through Fourier-Motzkin elimination.
//!
//! Faces of the positive orthant are coordinate subsets ([`Face`]). The main
//! entry points are [`order`] (tangent shapes and boundaries), [`socle`]
//! (cogenerators, generators, density), [`decompose`] (primary and irreducible
//! decompositions) and [`discrete`] (monomial ideals in `N^n`).

pub mod decompose;
pub mod discrete;
pub mod error;
pub mod face;
pub mod oracle;
pub mod order;
pub mod par;
pub mod qe;
pub mod rational;
pub mod socle;

pub use error::{Error, Result};
pub use face::{Face, Shape};
pub use order::{Downset, Instance, Interval, Upset};
pub use qe::{Cell, HalfSpace, PlSet};
pub use rational::Rational;

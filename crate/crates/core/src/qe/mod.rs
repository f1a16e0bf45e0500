//! Rational quantifier elimination over finite unions of convex cells.

mod cell;
pub mod cone;
mod fm;
mod halfspace;
pub mod json;
mod plset;

pub use cell::Cell;
pub use cone::{CoordCone, Gen};
pub use halfspace::HalfSpace;
pub use plset::{cell_limit, set_cell_limit, PlSet};

use super::{Cell, HalfSpace};
use crate::face::Face;
use crate::rational::Rational;
use num_traits::Zero;

/// One coordinate generator of a product cone: the set of multiples `t e_i`
/// allowed in that coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    /// `t = 0`
    Zero,
    /// `t >= 0`
    Pos,
    /// `t > 0`
    PosOpen,
    /// `t <= 0`
    Neg,
    /// `t < 0`
    NegOpen,
    /// any `t`
    Line,
}

impl Gen {
    fn neg(self) -> Gen {
        match self {
            Gen::Pos => Gen::Neg,
            Gen::PosOpen => Gen::NegOpen,
            Gen::Neg => Gen::Pos,
            Gen::NegOpen => Gen::PosOpen,
            g => g,
        }
    }
}

/// A product of coordinate rays, lines and points, such as `R^n_+`,
/// `sigma° + R^n_+` or `R tau`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordCone {
    pub gens: Vec<Gen>,
}

impl CoordCone {
    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn orthant(n: usize) -> CoordCone {
        CoordCone {
            gens: vec![Gen::Pos; n],
        }
    }

    /// `sigma° + R^n_+ = {x >= 0 : x_i > 0 for i in sigma}`.
    pub fn face_shape(sigma: Face, n: usize) -> CoordCone {
        CoordCone {
            gens: (0..n)
                .map(|i| {
                    if sigma.contains(i) {
                        Gen::PosOpen
                    } else {
                        Gen::Pos
                    }
                })
                .collect(),
        }
    }

    /// The relative interior `sigma°` of the face itself.
    pub fn face_interior(sigma: Face, n: usize) -> CoordCone {
        CoordCone {
            gens: (0..n)
                .map(|i| {
                    if sigma.contains(i) {
                        Gen::PosOpen
                    } else {
                        Gen::Zero
                    }
                })
                .collect(),
        }
    }

    /// The closed face `sigma` (nonnegative span of its coordinates).
    pub fn face(sigma: Face, n: usize) -> CoordCone {
        CoordCone {
            gens: (0..n)
                .map(|i| {
                    if sigma.contains(i) {
                        Gen::Pos
                    } else {
                        Gen::Zero
                    }
                })
                .collect(),
        }
    }

    /// The linear span `R tau`.
    pub fn span(tau: Face, n: usize) -> CoordCone {
        CoordCone {
            gens: (0..n)
                .map(|i| {
                    if tau.contains(i) {
                        Gen::Line
                    } else {
                        Gen::Zero
                    }
                })
                .collect(),
        }
    }

    /// `{q >= 0 : q_j > 0}`: the piece of `R^n_+ \ R tau` indexed by `j`.
    pub fn orthant_open_at(j: usize, n: usize) -> CoordCone {
        CoordCone {
            gens: (0..n)
                .map(|i| if i == j { Gen::PosOpen } else { Gen::Pos })
                .collect(),
        }
    }

    pub fn neg(&self) -> CoordCone {
        CoordCone {
            gens: self.gens.iter().map(|g| g.neg()).collect(),
        }
    }

    pub fn to_cell(&self) -> Cell {
        let n = self.dim();
        let z = Rational::zero;
        let mut cs = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            match g {
                Gen::Zero => {
                    cs.push(HalfSpace::coord(n, i, 1, z(), false));
                    cs.push(HalfSpace::coord(n, i, -1, z(), false));
                }
                Gen::Pos => cs.push(HalfSpace::coord(n, i, -1, z(), false)),
                Gen::PosOpen => cs.push(HalfSpace::coord(n, i, -1, z(), true)),
                Gen::Neg => cs.push(HalfSpace::coord(n, i, 1, z(), false)),
                Gen::NegOpen => cs.push(HalfSpace::coord(n, i, 1, z(), true)),
                Gen::Line => {}
            }
        }
        Cell {
            dim: n,
            constraints: cs,
        }
    }
}

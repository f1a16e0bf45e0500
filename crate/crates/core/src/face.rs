//! Faces of the positive orthant `R^n_+`, identified with coordinate subsets,
//! and tangent shapes (upward-closed sets of faces).

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// A face of `R^n_+`: the coordinates it spans, as a bitmask over `0..n`.
///
/// Serialized and displayed 1-based (`[1, 3]`), stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(pub u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn full(n: usize) -> Face {
        assert!(n <= 31, "dimension too large for a face bitmask");
        Face((1u32 << n) - 1)
    }

    pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> Face {
        Face(coords.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    /// Build from 1-based coordinates, validating against `n`.
    pub fn from_one_based(coords: &[usize], n: usize) -> Result<Face> {
        let mut bits = 0u32;
        for &c in coords {
            if c == 0 || c > n {
                return Err(Error::FaceOutOfRange {
                    face: format!("{coords:?}"),
                    dim: n,
                });
            }
            bits |= 1 << (c - 1);
        }
        Ok(Face(bits))
    }

    pub fn one_based(self) -> Vec<usize> {
        self.coords().map(|i| i + 1).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn coords(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn minus(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Face {
        Face::full(n).minus(self)
    }

    pub fn fits(self, n: usize) -> bool {
        self.is_subset(Face::full(n))
    }

    pub fn check(self, n: usize) -> Result<()> {
        if self.fits(n) {
            Ok(())
        } else {
            Err(Error::FaceOutOfRange {
                face: self.to_string(),
                dim: n,
            })
        }
    }

    /// All faces of `R^n_+`, in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Face> {
        (0..1u32 << n).map(Face)
    }

    /// Faces `sigma` with `self ⊆ sigma ⊆ full(n)`.
    pub fn supersets(self, n: usize) -> impl Iterator<Item = Face> {
        Face::all(n).filter(move |s| self.is_subset(*s))
    }

    /// Image of this face in `R^n / R tau`, with the surviving coordinates
    /// renumbered consecutively.
    pub fn quotient(self, tau: Face, n: usize) -> Face {
        let mut bits = 0;
        let mut k = 0;
        for i in 0..n {
            if tau.contains(i) {
                continue;
            }
            if self.contains(i) {
                bits |= 1 << k;
            }
            k += 1;
        }
        Face(bits)
    }

    /// Indicator vector of the face.
    pub fn indicator(self, n: usize) -> Vec<crate::Rational> {
        (0..n)
            .map(|i| crate::rational::int(self.contains(i) as i64))
            .collect()
    }

    /// JSON-style key used in socle and top tables.
    pub fn pair_key(tau: Face, sigma: Face) -> String {
        format!("tau={tau};sigma={sigma}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.one_based().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", v.join(","))
    }
}

/// An upward-closed set of faces: the faces `sigma` along which a point is
/// approached from inside a downset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub dim: usize,
    pub faces: BTreeSet<Face>,
}

impl Shape {
    pub fn new(dim: usize, faces: BTreeSet<Face>) -> Shape {
        Shape { dim, faces }
    }

    pub fn contains(&self, f: Face) -> bool {
        self.faces.contains(&f)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn is_upward_closed(&self) -> bool {
        self.faces
            .iter()
            .all(|&f| f.supersets(self.dim).all(|g| self.faces.contains(&g)))
    }

    /// Inclusion-minimal faces of the shape.
    pub fn minimal(&self) -> Vec<Face> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| !self.faces.iter().any(|&g| g != f && g.is_subset(f)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_renumbers() {
        let tau = Face::from_coords([1]);
        let sigma = Face::from_coords([0, 1, 2]);
        assert_eq!(sigma.quotient(tau, 3), Face::from_coords([0, 1]));
        assert_eq!(
            Face::from_coords([2]).quotient(tau, 3),
            Face::from_coords([1])
        );
    }

    #[test]
    fn one_based_round_trip() {
        let f = Face::from_one_based(&[3, 1], 3).unwrap();
        assert_eq!(f.one_based(), vec![1, 3]);
        assert_eq!(f.to_string(), "[1,3]");
        assert!(Face::from_one_based(&[4], 3).is_err());
        assert!(Face::from_one_based(&[0], 3).is_err());
    }
}

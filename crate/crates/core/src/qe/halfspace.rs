use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{dot, Rational};

/// `normal · x < offset` when `strict`, else `normal · x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub strict: bool,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, offset: Rational, strict: bool) -> HalfSpace {
        HalfSpace {
            normal,
            offset,
            strict,
        }
    }

    pub fn le(normal: Vec<Rational>, offset: Rational) -> HalfSpace {
        HalfSpace::new(normal, offset, false)
    }

    pub fn lt(normal: Vec<Rational>, offset: Rational) -> HalfSpace {
        HalfSpace::new(normal, offset, true)
    }

    /// `x_i <= c` (or `<`), the workhorse of orthant-shaped cells.
    pub fn coord(n: usize, i: usize, sign: i64, offset: Rational, strict: bool) -> HalfSpace {
        let mut normal = vec![Rational::zero(); n];
        normal[i] = crate::rational::int(sign);
        HalfSpace::new(normal, offset, strict)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let v = self.value(x);
        if self.strict {
            v < self.offset
        } else {
            v <= self.offset
        }
    }

    /// The closed or open complementary half-space.
    pub fn negate(&self) -> HalfSpace {
        HalfSpace::new(
            self.normal.iter().map(|a| -a).collect(),
            -&self.offset,
            !self.strict,
        )
    }

    pub fn relaxed(&self) -> HalfSpace {
        HalfSpace::new(self.normal.clone(), self.offset.clone(), false)
    }

    /// Image under `x -> -x`.
    pub fn reflect(&self) -> HalfSpace {
        HalfSpace::new(
            self.normal.iter().map(|a| -a).collect(),
            self.offset.clone(),
            self.strict,
        )
    }

    pub fn is_zero_normal(&self) -> bool {
        self.normal.iter().all(|a| a.is_zero())
    }

    /// For a zero normal, whether the inequality `0 < b` / `0 <= b` holds.
    pub fn trivial_truth(&self) -> Option<bool> {
        if !self.is_zero_normal() {
            return None;
        }
        Some(if self.strict {
            self.offset.is_positive()
        } else {
            !self.offset.is_negative()
        })
    }

    /// Rescale so the normal is a primitive integer vector.
    pub fn normalized(&self) -> HalfSpace {
        if self.is_zero_normal() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        for a in &self.normal {
            l = l.lcm(a.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for a in &self.normal {
            g = g.gcd(&(a.numer() * (&l / a.denom())));
        }
        let scale = Rational::new(l, g);
        HalfSpace::new(
            self.normal.iter().map(|a| a * &scale).collect(),
            &self.offset * &scale,
            self.strict,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn normalization_is_primitive_and_positive_scaling() {
        let h = HalfSpace::lt(vec![frac(2, 3), frac(-4, 3)], frac(1, 3));
        let n = h.normalized();
        assert_eq!(n.normal, vec![int(1), int(-2)]);
        assert_eq!(n.offset, frac(1, 2));
        assert!(n.strict);
    }

    #[test]
    fn negation_flips_strictness() {
        let h = HalfSpace::le(vec![int(1)], int(0));
        let x = [int(0)];
        assert!(h.contains(&x));
        assert!(!h.negate().contains(&x));
        assert!(h.negate().negate() == h);
    }
}

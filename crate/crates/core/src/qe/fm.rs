//! Fourier-Motzkin elimination with strictness tracking.
//!
//! Rows carry a primitive integer normal and a rational right-hand side.
//! Combining a strict row with anything yields a strict row.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::HalfSpace;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Row {
    pub coef: Vec<BigInt>,
    pub rhs: Rational,
    pub strict: bool,
}

impl Row {
    pub fn from_half_space(h: &HalfSpace) -> Row {
        let mut l = BigInt::one();
        for a in &h.normal {
            l = l.lcm(a.denom());
        }
        let coef: Vec<BigInt> = h
            .normal
            .iter()
            .map(|a| a.numer() * (&l / a.denom()))
            .collect();
        let mut row = Row {
            coef,
            rhs: &h.offset * Rational::from_integer(l),
            strict: h.strict,
        };
        row.normalize();
        row
    }

    pub fn to_half_space(&self) -> HalfSpace {
        HalfSpace::new(
            self.coef
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
            self.rhs.clone(),
            self.strict,
        )
    }

    fn normalize(&mut self) {
        let g = self.coef.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return;
        }
        for c in &mut self.coef {
            *c /= &g;
        }
        self.rhs /= Rational::from_integer(g);
    }

    fn is_zero(&self) -> bool {
        self.coef.iter().all(|c| c.is_zero())
    }

    fn holds_trivially(&self) -> bool {
        if self.strict {
            self.rhs.is_positive()
        } else {
            !self.rhs.is_negative()
        }
    }

    /// Positive combination cancelling column `k`; `self` has a positive and
    /// `other` a negative coefficient there.
    fn combine(&self, other: &Row, k: usize) -> Row {
        let p = &self.coef[k];
        let q = -&other.coef[k];
        let coef = self
            .coef
            .iter()
            .zip(&other.coef)
            .map(|(a, b)| a * &q + b * p)
            .collect();
        let rhs = &self.rhs * Rational::from_integer(q.clone())
            + &other.rhs * Rational::from_integer(p.clone());
        let mut row = Row {
            coef,
            rhs,
            strict: self.strict || other.strict,
        };
        row.normalize();
        row
    }

    fn drop_column(&mut self, k: usize) {
        self.coef.remove(k);
    }
}

/// Drop trivially true rows and keep only the tightest of parallel rows.
/// Returns `None` when a trivially false row is found.
pub(crate) fn reduce(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: HashMap<Vec<BigInt>, (Rational, bool)> = HashMap::with_capacity(rows.len());
    let mut order: Vec<Vec<BigInt>> = Vec::new();
    for r in rows {
        if r.is_zero() {
            if r.holds_trivially() {
                continue;
            }
            return None;
        }
        match best.get_mut(&r.coef) {
            Some(slot) => {
                if r.rhs < slot.0 || (r.rhs == slot.0 && r.strict) {
                    *slot = (r.rhs, r.strict);
                }
            }
            None => {
                order.push(r.coef.clone());
                best.insert(r.coef, (r.rhs, r.strict));
            }
        }
    }
    // opposite parallel rows can already be contradictory
    let mut out = Vec::with_capacity(order.len());
    for coef in order {
        let (rhs, strict) = best[&coef].clone();
        let neg: Vec<BigInt> = coef.iter().map(|c| -c).collect();
        if let Some((nrhs, nstrict)) = best.get(&neg) {
            // coef.x <= rhs and coef.x >= -nrhs
            let lo = -nrhs;
            if lo > rhs || (lo == rhs && (strict || *nstrict)) {
                return None;
            }
        }
        out.push(Row { coef, rhs, strict });
    }
    Some(out)
}

/// One elimination step on column `k`; the column is kept (all zeros).
fn eliminate_step(rows: Vec<Row>, k: usize) -> Option<Vec<Row>> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for r in rows {
        match r.coef[k].sign() {
            num_bigint::Sign::Plus => pos.push(r),
            num_bigint::Sign::Minus => neg.push(r),
            num_bigint::Sign::NoSign => out.push(r),
        }
    }
    for p in &pos {
        for q in &neg {
            out.push(p.combine(q, k));
        }
    }
    reduce(out)
}

fn cost(rows: &[Row], k: usize) -> Option<usize> {
    let (mut p, mut n) = (0usize, 0usize);
    for r in rows {
        match r.coef[k].sign() {
            num_bigint::Sign::Plus => p += 1,
            num_bigint::Sign::Minus => n += 1,
            num_bigint::Sign::NoSign => {}
        }
    }
    if p + n == 0 {
        None
    } else {
        Some(p * n)
    }
}

/// Eliminate the columns in `cols` (in a cheap order) and remove them.
/// `None` means the system is infeasible.
pub(crate) fn project(rows: Vec<Row>, cols: &[usize]) -> Option<Vec<Row>> {
    let mut rows = reduce(rows)?;
    let mut pending: Vec<usize> = cols.to_vec();
    while !pending.is_empty() {
        let (idx, _) = pending
            .iter()
            .enumerate()
            .map(|(i, &k)| (i, cost(&rows, k).unwrap_or(0)))
            .min_by_key(|&(_, c)| c)
            .unwrap();
        let k = pending.swap_remove(idx);
        if cost(&rows, k).is_some() {
            rows = eliminate_step(rows, k)?;
        }
    }
    let mut drop: Vec<usize> = cols.to_vec();
    drop.sort_unstable_by(|a, b| b.cmp(a));
    drop.dedup();
    for r in &mut rows {
        for &k in &drop {
            r.drop_column(k);
        }
    }
    Some(rows)
}

pub(crate) fn is_feasible(rows: Vec<Row>) -> bool {
    let Some(n) = rows.first().map(|r| r.coef.len()) else {
        return true;
    };
    let cols: Vec<usize> = (0..n).collect();
    project(rows, &cols).is_some()
}

/// A rational point satisfying every row, or `None` if there is none.
pub(crate) fn sample(rows: Vec<Row>, n: usize) -> Option<Vec<Rational>> {
    let mut rows = reduce(rows)?;
    // stack[k] is the system in variables 0..=k (higher columns eliminated)
    let mut stack: Vec<Vec<Row>> = vec![Vec::new(); n];
    for k in (0..n).rev() {
        stack[k] = rows.clone();
        if cost(&rows, k).is_some() {
            rows = eliminate_step(rows, k)?;
        }
    }
    let mut x: Vec<Rational> = Vec::with_capacity(n);
    for (k, sys) in stack.iter().enumerate() {
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for r in sys {
            let a = &r.coef[k];
            if a.is_zero() {
                continue;
            }
            let rest: Rational = r.coef[..k]
                .iter()
                .zip(&x)
                .fold(Rational::zero(), |acc, (c, v)| {
                    acc + Rational::from_integer(c.clone()) * v
                });
            let bound = (&r.rhs - rest) / Rational::from_integer(a.clone());
            if a.is_positive() {
                if hi
                    .as_ref()
                    .is_none_or(|(b, s)| bound < *b || (bound == *b && !*s && r.strict))
                {
                    hi = Some((bound, r.strict));
                }
            } else if lo
                .as_ref()
                .is_none_or(|(b, s)| bound > *b || (bound == *b && !*s && r.strict))
            {
                lo = Some((bound, r.strict));
            }
        }
        let v = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some((l, _)), None) => l.floor() + Rational::one(),
            (None, Some((h, _))) => h.ceil() - Rational::one(),
            (Some((l, ls)), Some((h, hs))) => {
                if l == h {
                    if ls || hs {
                        return None;
                    }
                    l
                } else if l > h {
                    return None;
                } else {
                    nice_between(&l, &h)
                }
            }
        };
        x.push(v);
    }
    Some(x)
}

/// A simple rational strictly between `l < h`: an integer if one fits,
/// else the midpoint.
fn nice_between(l: &Rational, h: &Rational) -> Rational {
    let c = l.floor() + Rational::one();
    if &c < h {
        if l.is_negative() && h.is_positive() {
            return Rational::zero();
        }
        return c;
    }
    (l + h) / Rational::from_integer(BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn row(c: &[i64], b: i64, strict: bool) -> Row {
        Row::from_half_space(&HalfSpace::new(
            c.iter().map(|&v| int(v)).collect(),
            int(b),
            strict,
        ))
    }

    #[test]
    fn strict_pair_is_infeasible() {
        // x < 0 and -x < 0
        assert!(!is_feasible(vec![row(&[1], 0, true), row(&[-1], 0, true)]));
        // x <= 0 and -x <= 0 is the point 0
        assert!(is_feasible(vec![row(&[1], 0, false), row(&[-1], 0, false)]));
    }

    #[test]
    fn strictness_propagates_through_elimination() {
        // x + y < 1, -x <= 0, -y <= 0, and x + y >= 1
        let rows = vec![
            row(&[1, 1], 1, true),
            row(&[-1, 0], 0, false),
            row(&[0, -1], 0, false),
            row(&[-1, -1], -1, false),
        ];
        assert!(!is_feasible(rows));
    }

    #[test]
    fn sample_lands_inside() {
        let rows = vec![
            row(&[1, 1], 1, true),
            row(&[-1, 0], 0, true),
            row(&[0, -1], 0, true),
        ];
        let p = sample(rows.clone(), 2).unwrap();
        for r in &rows {
            assert!(r.to_half_space().contains(&p), "{p:?}");
        }
    }
}

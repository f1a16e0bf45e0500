use num_traits::{Signed, Zero};

use super::cone::{CoordCone, Gen};
use super::fm::{self, Row};
use super::HalfSpace;
use crate::face::Face;
use crate::rational::{dot, Rational};
use crate::{Error, Result};

/// A convex cell: the conjunction of finitely many half-spaces in `R^dim`.
/// No constraints means all of `R^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub dim: usize,
    pub constraints: Vec<HalfSpace>,
}

impl Cell {
    pub fn new(dim: usize, constraints: Vec<HalfSpace>) -> Result<Cell> {
        for h in &constraints {
            Error::dims(dim, h.dim())?;
        }
        Ok(Cell { dim, constraints })
    }

    pub fn universe(dim: usize) -> Cell {
        Cell {
            dim,
            constraints: Vec::new(),
        }
    }

    /// The single point `p`.
    pub fn point(p: &[Rational]) -> Cell {
        let n = p.len();
        let mut cs = Vec::with_capacity(2 * n);
        for (i, v) in p.iter().enumerate() {
            cs.push(HalfSpace::coord(n, i, 1, v.clone(), false));
            cs.push(HalfSpace::coord(n, i, -1, -v, false));
        }
        Cell {
            dim: n,
            constraints: cs,
        }
    }

    pub fn with(mut self, h: HalfSpace) -> Cell {
        debug_assert_eq!(h.dim(), self.dim);
        self.constraints.push(h);
        self
    }

    pub fn meet(&self, other: &Cell) -> Cell {
        debug_assert_eq!(self.dim, other.dim);
        let mut cs = self.constraints.clone();
        cs.extend(other.constraints.iter().cloned());
        Cell {
            dim: self.dim,
            constraints: cs,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|h| h.contains(x))
    }

    pub(crate) fn rows(&self) -> Vec<Row> {
        self.constraints.iter().map(Row::from_half_space).collect()
    }

    fn from_rows(dim: usize, rows: Vec<Row>) -> Cell {
        Cell {
            dim,
            constraints: rows.iter().map(Row::to_half_space).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        if self.constraints.is_empty() {
            return false;
        }
        !fm::is_feasible(self.rows())
    }

    pub fn sample_point(&self) -> Option<Vec<Rational>> {
        fm::sample(self.rows(), self.dim)
    }

    /// Existentially quantify the coordinates in `coords`; the result lives in
    /// `R^(dim - |coords|)` with the remaining coordinates in order.
    pub fn eliminate(&self, coords: Face) -> Option<Cell> {
        let cols: Vec<usize> = coords.coords().filter(|&i| i < self.dim).collect();
        let rows = fm::project(self.rows(), &cols)?;
        Some(Cell::from_rows(self.dim - cols.len(), rows))
    }

    /// Inverse image under the projection deleting the coordinates in `tau`:
    /// the constraints are reinterpreted in `R^n` with zero `tau` columns.
    pub fn cylinder(&self, tau: Face, n: usize) -> Cell {
        debug_assert_eq!(self.dim + tau.len(), n);
        let cs = self
            .constraints
            .iter()
            .map(|h| {
                let mut it = h.normal.iter();
                let normal = (0..n)
                    .map(|i| {
                        if tau.contains(i) {
                            Rational::zero()
                        } else {
                            it.next().unwrap().clone()
                        }
                    })
                    .collect();
                HalfSpace::new(normal, h.offset.clone(), h.strict)
            })
            .collect();
        Cell {
            dim: n,
            constraints: cs,
        }
    }

    pub fn closure(&self) -> Cell {
        Cell {
            dim: self.dim,
            constraints: self.constraints.iter().map(HalfSpace::relaxed).collect(),
        }
    }

    pub fn reflect(&self) -> Cell {
        Cell {
            dim: self.dim,
            constraints: self.constraints.iter().map(HalfSpace::reflect).collect(),
        }
    }

    /// Whether `a + eps v` lies in the cell for all sufficiently small `eps > 0`.
    pub fn approaches(&self, a: &[Rational], v: &[Rational]) -> bool {
        self.constraints.iter().all(|h| {
            let la = h.value(a);
            if la < h.offset {
                return true;
            }
            if la > h.offset {
                return false;
            }
            let lv = dot(&h.normal, v);
            lv.is_negative() || (lv.is_zero() && !h.strict)
        })
    }

    /// `{a : a + eps v in cell for all small eps > 0}`, itself a cell: each
    /// constraint is closed if `v` points strictly inward, opened if strictly
    /// outward, and kept if `v` is parallel to it.
    pub fn approach_set(&self, v: &[Rational]) -> Cell {
        let cs = self
            .constraints
            .iter()
            .map(|h| {
                let lv = dot(&h.normal, v);
                let strict = if lv.is_negative() {
                    false
                } else if lv.is_positive() {
                    true
                } else {
                    h.strict
                };
                HalfSpace::new(h.normal.clone(), h.offset.clone(), strict)
            })
            .collect();
        Cell {
            dim: self.dim,
            constraints: cs,
        }
    }

    /// Normalized constraints with parallel duplicates merged; `None` if empty.
    pub fn reduced(&self) -> Option<Cell> {
        let rows = fm::reduce(self.rows())?;
        Some(Cell::from_rows(self.dim, rows))
    }

    /// Remove empty cells (`None`) and redundant constraints.
    pub fn simplify(&self) -> Option<Cell> {
        let mut rows = fm::reduce(self.rows())?;
        if !fm::is_feasible(rows.clone()) {
            return None;
        }
        let mut i = 0;
        while i < rows.len() {
            let mut test: Vec<Row> = rows
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.clone())
                .collect();
            test.push(Row::from_half_space(&rows[i].to_half_space().negate()));
            if fm::is_feasible(test) {
                i += 1;
            } else {
                rows.remove(i);
            }
        }
        rows.sort_by(|a, b| (&a.coef, &a.rhs, a.strict).cmp(&(&b.coef, &b.rhs, b.strict)));
        Some(Cell::from_rows(self.dim, rows))
    }

    /// `self ⊆ h`.
    pub fn implies(&self, h: &HalfSpace) -> bool {
        let mut rows = self.rows();
        rows.push(Row::from_half_space(&h.negate()));
        !fm::is_feasible(rows)
    }

    pub fn is_subset(&self, other: &Cell) -> bool {
        self.is_empty() || other.constraints.iter().all(|h| self.implies(h))
    }

    /// `self \ other` as pairwise disjoint non-empty cells.
    pub fn minus(&self, other: &Cell) -> Vec<Cell> {
        if self.meet(other).is_empty() {
            return if self.is_empty() {
                Vec::new()
            } else {
                vec![self.clone()]
            };
        }
        let mut pieces = Vec::new();
        let mut cur = self.clone();
        for h in &other.constraints {
            if cur.implies(h) {
                continue;
            }
            let piece = cur.clone().with(h.negate());
            if !piece.is_empty() {
                pieces.push(piece);
            }
            cur = cur.with(h.clone());
        }
        pieces
    }

    /// Minkowski sum with a coordinate cone, one generator at a time: for a
    /// ray `t e_i` with `t` in the generator's range, eliminate `t` from
    /// `x - t e_i in cell`.
    pub fn sweep(&self, cone: &CoordCone) -> Option<Cell> {
        debug_assert_eq!(cone.dim(), self.dim);
        let n = self.dim;
        let mut rows = fm::reduce(self.rows())?;
        for (i, g) in cone.gens.iter().enumerate() {
            let (dir, strict) = match g {
                Gen::Zero => continue,
                Gen::Line => {
                    rows = fm::project(rows, &[i])?;
                    for r in &mut rows {
                        r.coef.insert(i, num_bigint::BigInt::zero());
                    }
                    continue;
                }
                Gen::Pos => (1, false),
                Gen::PosOpen => (1, true),
                Gen::Neg => (-1, false),
                Gen::NegOpen => (-1, true),
            };
            // variables (x_0..x_{n-1}, t): row(x - dir t e_i) and -t <(=) 0
            let mut ext: Vec<Row> = rows
                .into_iter()
                .map(|mut r| {
                    let ti = -&r.coef[i] * dir;
                    r.coef.push(ti);
                    r
                })
                .collect();
            let mut t = vec![num_bigint::BigInt::zero(); n + 1];
            t[n] = num_bigint::BigInt::from(-1);
            ext.push(Row {
                coef: t,
                rhs: Rational::zero(),
                strict,
            });
            rows = fm::project(ext, &[n])?;
        }
        Some(Cell::from_rows(n, rows))
    }

    /// Minkowski sum with an arbitrary cell `k`: introduce `y in k`, require
    /// `x - y in self`, and eliminate the `n` auxiliary variables.
    pub fn minkowski(&self, k: &Cell) -> Option<Cell> {
        let n = self.dim;
        let mut rows = Vec::new();
        for h in &self.constraints {
            let mut normal = h.normal.clone();
            normal.extend(h.normal.iter().map(|a| -a));
            rows.push(Row::from_half_space(&HalfSpace::new(
                normal,
                h.offset.clone(),
                h.strict,
            )));
        }
        for h in &k.constraints {
            let mut normal = vec![Rational::zero(); n];
            normal.extend(h.normal.iter().cloned());
            rows.push(Row::from_half_space(&HalfSpace::new(
                normal,
                h.offset.clone(),
                h.strict,
            )));
        }
        let aux: Vec<usize> = (n..2 * n).collect();
        let rows = fm::project(rows, &aux)?;
        Some(Cell::from_rows(n, rows))
    }

    /// Decompose into relatively open pieces: every choice of which
    /// non-strict constraints are tight. Empty pieces are dropped.
    pub fn relatively_open_pieces(&self) -> Vec<Cell> {
        let Some(cell) = self.reduced() else {
            return Vec::new();
        };
        let weak: Vec<usize> = (0..cell.constraints.len())
            .filter(|&i| !cell.constraints[i].strict)
            .collect();
        assert!(
            weak.len() < 24,
            "too many non-strict constraints to enumerate"
        );
        let mut out = Vec::new();
        for mask in 0u32..1 << weak.len() {
            let mut cs = Vec::with_capacity(cell.constraints.len() + weak.len());
            for (i, h) in cell.constraints.iter().enumerate() {
                match weak.iter().position(|&w| w == i) {
                    Some(b) if mask >> b & 1 == 1 => {
                        cs.push(h.clone());
                        cs.push(h.negate().relaxed());
                    }
                    Some(_) => cs.push(HalfSpace::new(h.normal.clone(), h.offset.clone(), true)),
                    None => cs.push(h.clone()),
                }
            }
            let piece = Cell {
                dim: cell.dim,
                constraints: cs,
            };
            if !piece.is_empty() {
                out.push(piece);
            }
        }
        out
    }

    /// The cell `{x : x_i > c_i for i in open, x_i >= c_i otherwise}`-style
    /// translate of a coordinate cone by `apex`.
    pub fn translated_cone(apex: &[Rational], cone: &CoordCone) -> Cell {
        let base = cone.to_cell();
        let cs = base
            .constraints
            .iter()
            .map(|h| HalfSpace::new(h.normal.clone(), &h.offset + h.value(apex), h.strict))
            .collect();
        Cell {
            dim: apex.len(),
            constraints: cs,
        }
    }
}

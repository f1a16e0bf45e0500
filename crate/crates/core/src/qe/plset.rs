use std::sync::atomic::{AtomicUsize, Ordering};

use super::cone::CoordCone;
use super::{Cell, HalfSpace};
use crate::face::Face;
use crate::par;
use crate::rational::Rational;
use crate::{Error, Result};

static CELL_LIMIT: AtomicUsize = AtomicUsize::new(50_000);

/// Cap on the number of cells any single boolean operation may produce.
pub fn set_cell_limit(limit: usize) {
    CELL_LIMIT.store(limit, Ordering::Relaxed);
}

pub fn cell_limit() -> usize {
    CELL_LIMIT.load(Ordering::Relaxed)
}

fn guard(cells: Vec<Cell>) -> Result<Vec<Cell>> {
    let limit = cell_limit();
    if cells.len() > limit {
        return Err(Error::CellLimit {
            count: cells.len(),
            limit,
        });
    }
    Ok(cells)
}

/// A piecewise-linear set: a finite union of [`Cell`]s (disjunctive normal
/// form). Cells may overlap and may be empty until [`PlSet::simplify`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlSet {
    pub dim: usize,
    pub cells: Vec<Cell>,
}

impl PlSet {
    pub fn new(dim: usize, cells: Vec<Cell>) -> Result<PlSet> {
        for c in &cells {
            Error::dims(dim, c.dim)?;
        }
        Ok(PlSet { dim, cells })
    }

    pub fn empty(dim: usize) -> PlSet {
        PlSet {
            dim,
            cells: Vec::new(),
        }
    }

    pub fn universe(dim: usize) -> PlSet {
        PlSet::from(Cell::universe(dim))
    }

    pub fn point(p: &[Rational]) -> PlSet {
        PlSet::from(Cell::point(p))
    }

    /// Convenience constructor from `(normal, offset, strict)` triples per cell.
    pub fn from_constraints(dim: usize, cells: Vec<Vec<HalfSpace>>) -> Result<PlSet> {
        let cells = cells
            .into_iter()
            .map(|cs| Cell::new(dim, cs))
            .collect::<Result<Vec<_>>>()?;
        PlSet::new(dim, cells)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        !par::any(&self.cells, |c| !c.is_empty())
    }

    pub fn sample_point(&self) -> Option<Vec<Rational>> {
        self.cells.iter().find_map(Cell::sample_point)
    }

    pub fn union(&self, other: &PlSet) -> Result<PlSet> {
        Error::dims(self.dim, other.dim)?;
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Ok(PlSet {
            dim: self.dim,
            cells: guard(cells)?,
        })
    }

    pub fn union_all<'a, I: IntoIterator<Item = &'a PlSet>>(dim: usize, sets: I) -> Result<PlSet> {
        let mut out = PlSet::empty(dim);
        for s in sets {
            Error::dims(dim, s.dim)?;
            out.cells.extend(s.cells.iter().cloned());
        }
        out.cells = guard(out.cells)?;
        Ok(out)
    }

    pub fn intersect(&self, other: &PlSet) -> Result<PlSet> {
        Error::dims(self.dim, other.dim)?;
        let pairs: Vec<(&Cell, &Cell)> = self
            .cells
            .iter()
            .flat_map(|a| other.cells.iter().map(move |b| (a, b)))
            .collect();
        let cells: Vec<Cell> = par::map(&pairs, |(a, b)| {
            let m = a.meet(b);
            m.reduced().filter(|c| !c.is_empty())
        })
        .into_iter()
        .flatten()
        .collect();
        Ok(PlSet {
            dim: self.dim,
            cells: guard(cells)?,
        })
    }

    /// `cell \ self` as disjoint cells.
    fn subtract_from(&self, cell: &Cell) -> Result<Vec<Cell>> {
        let limit = cell_limit();
        if self.cells.is_empty() {
            return Ok(if cell.is_empty() {
                Vec::new()
            } else {
                vec![cell.clone()]
            });
        }
        let mut pieces = vec![cell.clone()];
        for b in &self.cells {
            let mut next = Vec::new();
            for p in &pieces {
                next.extend(p.minus(b));
            }
            if next.len() > limit {
                return Err(Error::CellLimit {
                    count: next.len(),
                    limit,
                });
            }
            pieces = next;
            if pieces.is_empty() {
                break;
            }
        }
        Ok(pieces)
    }

    pub fn difference(&self, other: &PlSet) -> Result<PlSet> {
        Error::dims(self.dim, other.dim)?;
        let parts = par::try_map(&self.cells, |c| {
            if c.is_empty() {
                Ok(Vec::new())
            } else {
                other.subtract_from(c)
            }
        })?;
        Ok(PlSet {
            dim: self.dim,
            cells: guard(parts.into_iter().flatten().collect())?,
        })
    }

    pub fn complement(&self) -> Result<PlSet> {
        PlSet::universe(self.dim).difference(self)
    }

    pub fn is_subset(&self, other: &PlSet) -> Result<bool> {
        Error::dims(self.dim, other.dim)?;
        let res = par::try_map(&self.cells, |c| {
            other.subtract_from(c).map(|v| v.is_empty())
        })?;
        Ok(res.into_iter().all(|b| b))
    }

    /// Extensional equality: the symmetric difference is empty.
    pub fn equals(&self, other: &PlSet) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// A point in the symmetric difference, if any.
    pub fn difference_witness(&self, other: &PlSet) -> Result<Option<Vec<Rational>>> {
        if let Some(p) = self.difference(other)?.sample_point() {
            return Ok(Some(p));
        }
        Ok(other.difference(self)?.sample_point())
    }

    /// Existential projection deleting the coordinates in `coords`.
    pub fn eliminate(&self, coords: Face) -> Result<PlSet> {
        coords.check(self.dim)?;
        let cells = par::map(&self.cells, |c| c.eliminate(coords));
        Ok(PlSet {
            dim: self.dim - coords.len(),
            cells: cells.into_iter().flatten().collect(),
        })
    }

    /// Inverse image of a set in `R^(n - |tau|)` under deleting `tau`.
    pub fn cylinder(&self, tau: Face, n: usize) -> Result<PlSet> {
        tau.check(n)?;
        Error::dims(n - tau.len(), self.dim)?;
        Ok(PlSet {
            dim: n,
            cells: self.cells.iter().map(|c| c.cylinder(tau, n)).collect(),
        })
    }

    /// Drop empty cells and relax every strict inequality.
    pub fn closure(&self) -> PlSet {
        PlSet {
            dim: self.dim,
            cells: self
                .cells
                .iter()
                .filter(|c| !c.is_empty())
                .map(Cell::closure)
                .collect(),
        }
    }

    pub fn reflect(&self) -> PlSet {
        PlSet {
            dim: self.dim,
            cells: self.cells.iter().map(Cell::reflect).collect(),
        }
    }

    /// `{a : a + eps v in self for all small eps > 0}`.
    pub fn approach_set(&self, v: &[Rational]) -> Result<PlSet> {
        Error::dims(self.dim, v.len())?;
        Ok(PlSet {
            dim: self.dim,
            cells: self.cells.iter().map(|c| c.approach_set(v)).collect(),
        })
    }

    pub fn directional_limit_member(&self, a: &[Rational], v: &[Rational]) -> Result<bool> {
        Error::dims(self.dim, a.len())?;
        Error::dims(self.dim, v.len())?;
        if v.iter().all(num_traits::Zero::is_zero) {
            return Err(Error::ZeroDirection);
        }
        Ok(self.cells.iter().any(|c| c.approaches(a, v)))
    }

    /// Minkowski sum with a product cone, generator by generator.
    pub fn sweep(&self, cone: &CoordCone) -> Result<PlSet> {
        Error::dims(self.dim, cone.dim())?;
        let cells = par::map(&self.cells, |c| c.sweep(cone));
        Ok(PlSet {
            dim: self.dim,
            cells: cells.into_iter().flatten().collect(),
        })
    }

    /// Minkowski sum with an arbitrary cell via auxiliary variables.
    pub fn minkowski(&self, k: &Cell) -> Result<PlSet> {
        Error::dims(self.dim, k.dim)?;
        let cells = par::map(&self.cells, |c| c.minkowski(k));
        Ok(PlSet {
            dim: self.dim,
            cells: cells.into_iter().flatten().collect(),
        })
    }

    /// Drop empty cells and merge parallel constraints; cheaper than
    /// [`PlSet::simplify`].
    pub fn prune(&self) -> PlSet {
        let cells = par::map(&self.cells, |c| c.reduced().filter(|c| !c.is_empty()));
        PlSet {
            dim: self.dim,
            cells: cells.into_iter().flatten().collect(),
        }
    }

    /// Drop empty cells, strip redundant constraints, and discard cells
    /// contained in another cell.
    pub fn simplify(&self) -> PlSet {
        let mut cells: Vec<Cell> = par::map(&self.cells, Cell::simplify)
            .into_iter()
            .flatten()
            .collect();
        cells.sort_by_key(|c| c.constraints.len());
        cells.dedup();
        let mut keep = vec![true; cells.len()];
        for i in 0..cells.len() {
            for j in 0..cells.len() {
                if i != j && keep[j] && keep[i] && cells[i].is_subset(&cells[j]) {
                    // identical cells were removed above, so this is proper
                    // or extensionally equal with a different description
                    if j < i || !cells[j].is_subset(&cells[i]) {
                        keep[i] = false;
                    }
                }
            }
        }
        PlSet {
            dim: self.dim,
            cells: cells
                .into_iter()
                .zip(keep)
                .filter_map(|(c, k)| k.then_some(c))
                .collect(),
        }
    }
}

impl From<Cell> for PlSet {
    fn from(c: Cell) -> PlSet {
        PlSet {
            dim: c.dim,
            cells: vec![c],
        }
    }
}

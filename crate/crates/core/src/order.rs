//! The order on `R^n` given by the positive cone `R^n_+`: validated downsets,
//! upsets and intervals, tangent shapes, upper and lower boundaries, frontier,
//! localization and quotient-restriction.

use std::collections::BTreeSet;

use crate::face::{Face, Shape};
use crate::par;
use crate::qe::{Cell, CoordCone, PlSet};
use crate::rational::{format_point, Rational};
use crate::{Error, Result};

/// A PL set `D` with `D - R^n_+ = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Downset {
    carrier: PlSet,
}

/// A PL set `U` with `U + R^n_+ = U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Upset {
    carrier: PlSet,
}

/// `U ∩ D` for an upset `U` and a downset `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    upset: PlSet,
    downset: PlSet,
    carrier: PlSet,
}

fn witness(s: &PlSet, closed: &PlSet) -> Result<Option<Vec<String>>> {
    Ok(closed
        .difference(s)?
        .sample_point()
        .map(|p| format_point(&p)))
}

pub fn is_downset(s: &PlSet) -> Result<bool> {
    s.sweep(&CoordCone::orthant(s.dim).neg())?.is_subset(s)
}

pub fn is_upset(s: &PlSet) -> Result<bool> {
    s.sweep(&CoordCone::orthant(s.dim))?.is_subset(s)
}

impl Downset {
    pub fn new(carrier: PlSet) -> Result<Downset> {
        let closed = carrier.sweep(&CoordCone::orthant(carrier.dim).neg())?;
        if !closed.is_subset(&carrier)? {
            return Err(Error::NotDownset {
                witness: witness(&carrier, &closed)?,
            });
        }
        Ok(Downset { carrier })
    }

    /// Wrap a set already known to be a downset.
    pub(crate) fn trusted(carrier: PlSet) -> Downset {
        Downset { carrier }
    }

    /// The downward closure `s - R^n_+`.
    pub fn closure_of(s: &PlSet) -> Result<Downset> {
        Ok(Downset {
            carrier: s.sweep(&CoordCone::orthant(s.dim).neg())?.simplify(),
        })
    }

    pub fn carrier(&self) -> &PlSet {
        &self.carrier
    }

    pub fn into_carrier(self) -> PlSet {
        self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    pub fn reflect(&self) -> Upset {
        Upset {
            carrier: self.carrier.reflect(),
        }
    }
}

impl Upset {
    pub fn new(carrier: PlSet) -> Result<Upset> {
        let closed = carrier.sweep(&CoordCone::orthant(carrier.dim))?;
        if !closed.is_subset(&carrier)? {
            return Err(Error::NotUpset {
                witness: witness(&carrier, &closed)?,
            });
        }
        Ok(Upset { carrier })
    }

    pub(crate) fn trusted(carrier: PlSet) -> Upset {
        Upset { carrier }
    }

    pub fn carrier(&self) -> &PlSet {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    pub fn reflect(&self) -> Downset {
        Downset {
            carrier: self.carrier.reflect(),
        }
    }
}

impl Interval {
    pub fn new(upset: Upset, downset: Downset) -> Result<Interval> {
        Error::dims(upset.dim(), downset.dim())?;
        let carrier = upset.carrier.intersect(&downset.carrier)?.simplify();
        Ok(Interval {
            upset: upset.carrier,
            downset: downset.carrier,
            carrier,
        })
    }

    pub fn carrier(&self) -> &PlSet {
        &self.carrier
    }

    pub fn upset(&self) -> &PlSet {
        &self.upset
    }

    pub fn downset(&self) -> &PlSet {
        &self.downset
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    /// Whether the upset is all of `R^n`, i.e. the interval is a downset.
    pub fn is_downset(&self) -> bool {
        is_universe(&self.upset)
    }

    /// Image under `x -> -x`: upset and downset trade places.
    pub fn reflect(&self) -> Interval {
        Interval {
            upset: self.downset.reflect(),
            downset: self.upset.reflect(),
            carrier: self.carrier.reflect(),
        }
    }

    /// Real parts of an interval whose carrier is known to lie in `U ∩ D`.
    pub(crate) fn trusted(upset: PlSet, downset: PlSet, carrier: PlSet) -> Interval {
        Interval {
            upset,
            downset,
            carrier,
        }
    }
}

fn is_universe(s: &PlSet) -> bool {
    s.cells.iter().any(|c| c.constraints.is_empty())
        || PlSet::universe(s.dim).is_subset(s).unwrap_or(false)
}

impl From<Downset> for Interval {
    fn from(d: Downset) -> Interval {
        let n = d.dim();
        Interval {
            upset: PlSet::universe(n),
            carrier: d.carrier.clone(),
            downset: d.carrier,
        }
    }
}

impl From<Upset> for Interval {
    fn from(u: Upset) -> Interval {
        let n = u.dim();
        Interval {
            downset: PlSet::universe(n),
            carrier: u.carrier.clone(),
            upset: u.carrier,
        }
    }
}

/// `s_sigma`, the sum of the unit vectors in `sigma`.
pub fn face_vector(sigma: Face, n: usize) -> Vec<Rational> {
    sigma.indicator(n)
}

fn neg(v: Vec<Rational>) -> Vec<Rational> {
    v.into_iter().map(|x| -x).collect()
}

pub fn face_interior(sigma: Face, n: usize) -> Cell {
    CoordCone::face_interior(sigma, n).to_cell()
}

/// `Q_∇ = ⋃ sigma°` over the faces of the shape.
pub fn cone_of_shape(shape: &Shape) -> PlSet {
    PlSet {
        dim: shape.dim,
        cells: shape
            .faces
            .iter()
            .map(|&f| face_interior(f, shape.dim))
            .collect(),
    }
}

pub fn open_star(tau: Face, n: usize) -> Shape {
    Shape::new(n, tau.supersets(n).collect())
}

/// The faces `sigma` with `a - sigma° ⊆ D` near `a`. For a downset this is
/// decided by the single ray `a - eps s_sigma`: any point of `sigma°` is
/// dominated by some `eps s_sigma` and conversely, so the ray and the whole
/// relatively open face enter `D` together.
pub fn shape_at(d: &Downset, a: &[Rational]) -> Result<Shape> {
    let n = d.dim();
    Error::dims(n, a.len())?;
    let mut faces = BTreeSet::new();
    for sigma in Face::all(n) {
        let inside = if sigma.is_empty() {
            d.carrier.contains(a)
        } else {
            d.carrier
                .directional_limit_member(a, &neg(face_vector(sigma, n)))?
        };
        if inside {
            faces.insert(sigma);
        }
    }
    let shape = Shape::new(n, faces);
    debug_assert!(shape.is_upward_closed());
    Ok(shape)
}

/// `∂^sigma D = {a : a - sigma° ⊆ D}`, computed cell by cell as the set of
/// points approached from inside along `-s_sigma`.
pub fn upper_boundary(d: &Downset, sigma: Face) -> Result<Downset> {
    let n = d.dim();
    sigma.check(n)?;
    if sigma.is_empty() {
        return Ok(d.clone());
    }
    let v = neg(face_vector(sigma, n));
    Ok(Downset::trusted(d.carrier.approach_set(&v)?.prune()))
}

/// `∂^sigma D` by slice closures: split every cell into relatively open
/// pieces `C` and take `closure(C) ∩ (C + R sigma)`.
pub fn upper_boundary_by_slices(d: &Downset, sigma: Face) -> Result<PlSet> {
    let n = d.dim();
    sigma.check(n)?;
    if sigma.is_empty() {
        return Ok(d.carrier.clone());
    }
    let pieces: Vec<Cell> = d
        .carrier
        .cells
        .iter()
        .flat_map(Cell::relatively_open_pieces)
        .collect();
    let parts = par::try_map(&pieces, |c| -> Result<Vec<Cell>> {
        let Some(image) = c.eliminate(sigma) else {
            return Ok(Vec::new());
        };
        let slab = image.cylinder(sigma, n);
        let piece = c.closure().meet(&slab);
        Ok(piece
            .reduced()
            .filter(|p| !p.is_empty())
            .into_iter()
            .collect())
    })?;
    Ok(PlSet {
        dim: n,
        cells: parts.into_iter().flatten().collect(),
    })
}

/// `λ_xi U`: reflection of the upper boundary of the reflected downset.
pub fn lower_boundary(u: &Upset, xi: Face) -> Result<Upset> {
    let d = upper_boundary(&u.reflect(), xi)?;
    Ok(Upset::trusted(d.carrier.reflect()))
}

/// `λ_xi U = {b : b + xi° ⊆ U}` computed directly from the ray `b + eps s_xi`.
pub fn lower_boundary_direct(u: &Upset, xi: Face) -> Result<Upset> {
    let n = u.dim();
    xi.check(n)?;
    if xi.is_empty() {
        return Ok(u.clone());
    }
    Ok(Upset::trusted(
        u.carrier.approach_set(&face_vector(xi, n))?.prune(),
    ))
}

/// `closure(D) \ D` and `∂^full D \ D`.
pub fn frontier_routes(d: &Downset) -> Result<(PlSet, PlSet)> {
    let n = d.dim();
    let by_closure = d.carrier.closure().difference(&d.carrier)?.simplify();
    let top = upper_boundary(d, Face::full(n))?;
    let by_boundary = top.carrier.difference(&d.carrier)?.simplify();
    Ok((by_closure, by_boundary))
}

/// Points in the topological closure of `D` but outside `D`.
pub fn frontier(d: &Downset) -> Result<PlSet> {
    let (a, b) = frontier_routes(d)?;
    if let Some(p) = a.difference_witness(&b)? {
        return Err(Error::CheckFailed {
            what: "frontier routes disagree".into(),
            witness: Some(format_point(&p)),
        });
    }
    Ok(b)
}

/// `D + R tau`.
pub fn localize(d: &Downset, tau: Face) -> Result<Downset> {
    tau.check(d.dim())?;
    Ok(Downset::trusted(
        d.carrier.sweep(&CoordCone::span(tau, d.dim()))?.prune(),
    ))
}

/// Image of `s` in `R^n / R tau`, coordinates of `tau` deleted.
pub fn project_mod(s: &PlSet, tau: Face) -> Result<PlSet> {
    Ok(s.eliminate(tau)?.simplify())
}

/// Like [`project_mod`] but requires `s + R tau = s`.
pub fn quotient_restrict(s: &PlSet, tau: Face) -> Result<PlSet> {
    tau.check(s.dim)?;
    let spread = s.sweep(&CoordCone::span(tau, s.dim))?;
    if !spread.is_subset(s)? {
        return Err(Error::NotInvariant {
            face: tau.to_string(),
        });
    }
    project_mod(s, tau)
}

/// A validated instance loaded from JSON: `{"kind": "downset", "dim": .., "cells": [..]}`,
/// likewise `"upset"`, or `{"kind": "interval", "upset": PLSet, "downset": PLSet}`.
#[derive(Clone, Debug)]
pub enum Instance {
    Downset(Downset),
    Upset(Upset),
    Interval(Interval),
}

impl Instance {
    pub fn from_json(v: &serde_json::Value) -> Result<Instance> {
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::Parse("missing \"kind\" (downset, upset or interval)".into()))?;
        let plset = |x: &serde_json::Value, what: &str| -> Result<PlSet> {
            let mut x = x.clone();
            if let Some(o) = x.as_object_mut() {
                o.remove("kind");
            }
            serde_json::from_value(x).map_err(|e| Error::Parse(format!("{what}: {e}")))
        };
        match kind {
            "downset" => Ok(Instance::Downset(Downset::new(plset(v, "downset")?)?)),
            "upset" => Ok(Instance::Upset(Upset::new(plset(v, "upset")?)?)),
            "interval" => {
                let u = v
                    .get("upset")
                    .ok_or_else(|| Error::Parse("interval needs \"upset\"".into()))?;
                let d = v
                    .get("downset")
                    .ok_or_else(|| Error::Parse("interval needs \"downset\"".into()))?;
                let u = Upset::new(plset(u, "interval upset")?)?;
                let d = Downset::new(plset(d, "interval downset")?)?;
                Ok(Instance::Interval(Interval::new(u, d)?))
            }
            other => Err(Error::Parse(format!(
                "unknown kind {other:?}, expected downset, upset or interval"
            ))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tagged = |kind: &str, s: &PlSet| {
            let mut v = serde_json::to_value(s).expect("plset serializes");
            v.as_object_mut()
                .unwrap()
                .insert("kind".into(), serde_json::Value::String(kind.into()));
            v
        };
        match self {
            Instance::Downset(d) => tagged("downset", d.carrier()),
            Instance::Upset(u) => tagged("upset", u.carrier()),
            Instance::Interval(i) => serde_json::json!({
                "kind": "interval",
                "upset": i.upset(),
                "downset": i.downset(),
            }),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Downset(_) => "downset",
            Instance::Upset(_) => "upset",
            Instance::Interval(_) => "interval",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Instance::Downset(d) => d.dim(),
            Instance::Upset(u) => u.dim(),
            Instance::Interval(i) => i.dim(),
        }
    }

    pub fn carrier(&self) -> &PlSet {
        match self {
            Instance::Downset(d) => d.carrier(),
            Instance::Upset(u) => u.carrier(),
            Instance::Interval(i) => i.carrier(),
        }
    }

    pub fn to_interval(&self) -> Interval {
        match self {
            Instance::Downset(d) => d.clone().into(),
            Instance::Upset(u) => u.clone().into(),
            Instance::Interval(i) => i.clone(),
        }
    }

    /// The Matlis dual: negate every point.
    pub fn dual(&self) -> Instance {
        match self {
            Instance::Downset(d) => Instance::Upset(d.reflect()),
            Instance::Upset(u) => Instance::Downset(u.reflect()),
            Instance::Interval(i) => Instance::Interval(i.reflect()),
        }
    }
}

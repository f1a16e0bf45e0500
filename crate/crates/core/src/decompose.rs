//! Canonical primary and irreducible decompositions of PL downsets and
//! intervals, coprimarity, minimality diagnostics and fringe presentations.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::face::Face;
use crate::order::{Downset, Interval};
use crate::par;
use crate::qe::{CoordCone, PlSet};
use crate::rational::format_point;
use crate::socle::{self, SocleTable};
use crate::{Error, Result};

/// `A + R tau - (sigma° + R^n_+)`.
pub fn coprincipal(a: &PlSet, tau: Face, sigma: Face) -> Result<Downset> {
    let n = a.dim;
    tau.check(n)?;
    sigma.check(n)?;
    if !tau.is_subset(sigma) {
        return Err(Error::FaceNotContained {
            tau: tau.to_string(),
            sigma: sigma.to_string(),
        });
    }
    let spread = a.sweep(&CoordCone::span(tau, n))?;
    let d = spread
        .sweep(&CoordCone::face_shape(sigma, n).neg())?
        .simplify();
    debug_assert!(crate::order::is_downset(&d).unwrap_or(false));
    Ok(Downset::trusted(d))
}

/// The downset part of the `tau`-primary component, before meeting the base.
fn component_downset(table: &SocleTable, tau: Face) -> Result<PlSet> {
    let n = table.dim;
    let parts: Vec<(Face, &PlSet)> = table
        .entries
        .iter()
        .filter(|(&(t, _), e)| t == tau && !e.is_empty())
        .map(|(&(_, s), e)| (s, &e.degrees))
        .collect();
    let downs = par::try_map(&parts, |&(s, a)| coprincipal(a, tau, s))?;
    PlSet::union_all(n, downs.iter().map(Downset::carrier))
}

/// `⋃_sigma (soc^sigma_tau + R tau - Q_∇sigma) ∩ I`.
pub fn primary_component(m: &Interval, tau: Face, table: &SocleTable) -> Result<Interval> {
    if !table.faces().contains(&tau) {
        return Err(Error::NotAssociated(tau.to_string()));
    }
    let d = component_downset(table, tau)?;
    let down = d.intersect(m.downset())?.simplify();
    Ok(Interval::trusted(
        m.upset().clone(),
        down.clone(),
        down.intersect(m.upset())?.simplify(),
    ))
}

#[derive(Clone, Debug)]
pub struct Component {
    pub carrier: Interval,
    /// `carrier - R^n_+`, the component extended downward in `R^n`.
    pub hull: Downset,
}

#[derive(Clone, Debug)]
pub struct PrimaryDecomposition {
    pub base: Interval,
    pub table: SocleTable,
    pub components: BTreeMap<Face, Component>,
}

pub fn primary_decomposition(m: &Interval) -> Result<PrimaryDecomposition> {
    let table = socle::socle_table(m)?;
    primary_decomposition_with(m, table)
}

pub fn primary_decomposition_with(m: &Interval, table: SocleTable) -> Result<PrimaryDecomposition> {
    let faces: Vec<Face> = table.faces().into_iter().collect();
    let comps = par::try_map(&faces, |&t| -> Result<Component> {
        let carrier = primary_component(m, t, &table)?;
        let hull = Downset::closure_of(carrier.carrier())?;
        Ok(Component { carrier, hull })
    })?;
    let components: BTreeMap<Face, Component> = faces.into_iter().zip(comps).collect();
    let union = PlSet::union_all(m.dim(), components.values().map(|c| c.carrier.carrier()))?;
    if let Some(p) = union.difference_witness(m.carrier())? {
        return Err(Error::CheckFailed {
            what: "primary components do not reunite to the base".into(),
            witness: Some(format_point(&p)),
        });
    }
    Ok(PrimaryDecomposition {
        base: m.clone(),
        table,
        components,
    })
}

impl PrimaryDecomposition {
    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|(t, c)| json!({ "tau": t.one_based(), "carrier": c.carrier.carrier() }))
            .collect();
        let irr = irreducible_family(&self.table);
        json!({
            "components": comps,
            "irreducible": irr.to_json()["irreducible"],
            "checks": { "union": true },
        })
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibleEntry {
    pub tau: Face,
    pub sigma: Face,
    pub degrees: PlSet,
}

#[derive(Clone, Debug)]
pub struct IrreducibleFamily {
    pub dim: usize,
    pub entries: Vec<IrreducibleEntry>,
}

impl IrreducibleFamily {
    pub fn to_json(&self) -> Value {
        let v: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!({ "tau": e.tau.one_based(), "sigma": e.sigma.one_based(), "A": e.degrees }))
            .collect();
        json!({ "irreducible": v })
    }

    /// As a table, for density checks.
    pub fn to_table(&self) -> Result<SocleTable> {
        let mut entries = BTreeMap::new();
        for e in &self.entries {
            let cosets = crate::order::project_mod(&e.degrees, e.tau)?;
            entries.insert(
                (e.tau, e.sigma),
                socle::SocleEntry {
                    degrees: e.degrees.clone(),
                    cosets,
                },
            );
        }
        Ok(SocleTable {
            dim: self.dim,
            entries,
        })
    }
}

/// Every non-empty socle entry, one coprincipal family per `(tau, sigma)`.
pub fn irreducible_family(table: &SocleTable) -> IrreducibleFamily {
    IrreducibleFamily {
        dim: table.dim,
        entries: table
            .nonempty()
            .map(|(&(tau, sigma), e)| IrreducibleEntry {
                tau,
                sigma,
                degrees: e.degrees.clone(),
            })
            .collect(),
    }
}

/// `⋃ (A + R tau - Q_∇sigma) ∩ base` over the family.
pub fn reconstruct(f: &IrreducibleFamily, base: &Interval) -> Result<PlSet> {
    let downs = par::try_map(&f.entries, |e| coprincipal(&e.degrees, e.tau, e.sigma))?;
    let u = PlSet::union_all(f.dim, downs.iter().map(Downset::carrier))?;
    Ok(u.intersect(base.carrier())?.simplify())
}

pub fn is_coprimary(m: &Interval, tau: Face) -> Result<bool> {
    Ok(socle::associated_faces(m)? == BTreeSet::from([tau]))
}

/// Per-entry comparison of base socle cosets against the components'.
#[derive(Clone, Debug)]
pub struct MinimalityEntry {
    pub tau: Face,
    pub sigma: Face,
    /// Component cosets not present in the base, keyed by component face.
    pub extra: Vec<(Face, PlSet)>,
    /// Base cosets covered by no component.
    pub missing: PlSet,
    /// Cosets claimed by two different components.
    pub overlap: PlSet,
}

impl MinimalityEntry {
    pub fn is_equal(&self) -> bool {
        self.extra.is_empty() && self.missing.cells.is_empty() && self.overlap.cells.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub entries: Vec<MinimalityEntry>,
}

impl MinimalityReport {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(MinimalityEntry::is_equal)
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &MinimalityEntry> {
        self.entries.iter().filter(|e| !e.is_equal())
    }

    pub fn to_json(&self) -> Value {
        let v: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "tau": e.tau.one_based(),
                    "sigma": e.sigma.one_based(),
                    "equal": e.is_equal(),
                    "extra": e.extra.iter().map(|(c, s)| json!({ "component": c.one_based(), "cosets": s })).collect::<Vec<_>>(),
                    "missing": e.missing,
                    "overlap": e.overlap,
                })
            })
            .collect();
        json!({ "all_equal": self.all_equal(), "entries": v })
    }
}

/// Compare `soc^sigma_tau` of the base with the direct sum over components.
/// Advisory: the component formula can create socle elements at the closed
/// ends of omitted pieces, which this reports rather than rejects.
pub fn verify_minimality(d: &PrimaryDecomposition) -> Result<MinimalityReport> {
    let comps: Vec<(Face, &Component)> = d.components.iter().map(|(&t, c)| (t, c)).collect();
    let tables = par::try_map(&comps, |(_, c)| socle::socle_table(&c.carrier))?;
    let mut entries = Vec::new();
    for (&(t, s), base) in &d.table.entries {
        let m = d.table.dim - t.len();
        let mut extra = Vec::new();
        let mut covered = PlSet::empty(m);
        let mut overlap = PlSet::empty(m);
        for ((cf, _), tab) in comps.iter().zip(&tables) {
            let Some(e) = tab.get(t, s) else { continue };
            if e.is_empty() {
                continue;
            }
            let x = e.cosets.difference(&base.cosets)?.simplify();
            if !x.cells.is_empty() {
                extra.push((*cf, x));
            }
            let o = e.cosets.intersect(&covered)?.simplify();
            overlap = overlap.union(&o)?;
            covered = covered.union(&e.cosets)?;
        }
        let missing = base.cosets.difference(&covered)?.simplify();
        entries.push(MinimalityEntry {
            tau: t,
            sigma: s,
            extra,
            missing,
            overlap: overlap.simplify(),
        });
    }
    Ok(MinimalityReport { entries })
}

/// A fringe presentation: one upset, the downward hulls of the primary
/// components, and whether `U ∩ ⋃ hulls = I`.
#[derive(Clone, Debug)]
pub struct Fringe {
    pub upset: PlSet,
    pub hull: Vec<(Face, Downset)>,
    pub valid: bool,
}

impl Fringe {
    pub fn to_json(&self) -> Value {
        json!({
            "upset": self.upset,
            "hull": self.hull.iter().map(|(t, d)| json!({ "tau": t.one_based(), "downset": d.carrier() })).collect::<Vec<_>>(),
            "valid": self.valid,
        })
    }
}

pub fn fringe_presentation(i: &Interval) -> Result<Fringe> {
    let d = primary_decomposition(i)?;
    let hull: Vec<(Face, Downset)> = d.components.into_iter().map(|(t, c)| (t, c.hull)).collect();
    let all = PlSet::union_all(i.dim(), hull.iter().map(|(_, h)| h.carrier()))?;
    let image = all.intersect(i.upset())?;
    let valid = image.equals(i.carrier())?;
    Ok(Fringe {
        upset: i.upset().clone(),
        hull,
        valid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Upset;
    use crate::qe::HalfSpace;
    use crate::rational::int;

    fn h(a: &[i64], b: i64, strict: bool) -> HalfSpace {
        HalfSpace::new(a.iter().map(|&x| int(x)).collect(), int(b), strict)
    }

    fn set(n: usize, cells: Vec<Vec<HalfSpace>>) -> PlSet {
        PlSet::from_constraints(n, cells).unwrap()
    }

    fn f(c: &[usize]) -> Face {
        Face::from_coords(c.iter().copied())
    }

    #[test]
    fn coprincipal_examples() {
        let o = PlSet::point(&[int(0), int(0)]);
        let closed = coprincipal(&o, Face::EMPTY, Face::EMPTY).unwrap();
        assert!(closed
            .carrier()
            .equals(&set(
                2,
                vec![vec![h(&[1, 0], 0, false), h(&[0, 1], 0, false)]]
            ))
            .unwrap());
        let half = coprincipal(&o, Face::EMPTY, f(&[0])).unwrap();
        assert!(half
            .carrier()
            .equals(&set(
                2,
                vec![vec![h(&[1, 0], 0, true), h(&[0, 1], 0, false)]]
            ))
            .unwrap());
        assert!(coprincipal(&o, f(&[0]), Face::EMPTY).is_err());
    }

    #[test]
    fn triangle_plus_ray() {
        let u = Upset::new(set(
            2,
            vec![vec![h(&[-1, 0], 0, false), h(&[0, -1], 0, false)]],
        ))
        .unwrap();
        let d = Downset::new(set(
            2,
            vec![vec![h(&[1, 1], 1, false)], vec![h(&[0, 1], 0, false)]],
        ))
        .unwrap();
        let i = Interval::new(u, d).unwrap();
        let dec = primary_decomposition(&i).unwrap();
        assert_eq!(
            dec.components.keys().copied().collect::<Vec<_>>(),
            vec![Face::EMPTY, f(&[0])]
        );
        let c0 = set(
            2,
            vec![vec![
                h(&[-1, 0], 0, false),
                h(&[0, -1], 0, false),
                h(&[1, 1], 1, false),
                h(&[1, 0], 1, true),
            ]],
        );
        assert!(dec.components[&Face::EMPTY]
            .carrier
            .carrier()
            .equals(&c0)
            .unwrap());
        let c1 = set(
            2,
            vec![vec![
                h(&[-1, 0], 0, false),
                h(&[0, 1], 0, false),
                h(&[0, -1], 0, false),
            ]],
        );
        assert!(dec.components[&f(&[0])]
            .carrier
            .carrier()
            .equals(&c1)
            .unwrap());
        assert!(!is_coprimary(&i, Face::EMPTY).unwrap());

        let fr = fringe_presentation(&i).unwrap();
        assert!(fr.valid);
        assert_eq!(fr.hull.len(), 2);
    }
}

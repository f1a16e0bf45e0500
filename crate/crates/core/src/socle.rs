//! Cogenerators of indicator modules: closed socles along faces, the
//! nadir-stratified socle table, associated faces, sigma-closures and density
//! of cogenerator families, and dually tops, generators and attached faces.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::face::Face;
use crate::order::{face_vector, project_mod, Interval};
use crate::par;
use crate::qe::{CoordCone, PlSet};
use crate::rational::{format_point, Rational};
use crate::{Error, Result};

/// Degrees of one `(tau, sigma)` socle entry and their cosets mod `R tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleEntry {
    pub degrees: PlSet,
    pub cosets: PlSet,
}

impl SocleEntry {
    pub fn is_empty(&self) -> bool {
        self.degrees.cells.is_empty()
    }
}

/// All entries `(tau, sigma)` with `tau ⊆ sigma`. The same shape serves for
/// tops, keyed `(rho, xi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleTable {
    pub dim: usize,
    pub entries: BTreeMap<(Face, Face), SocleEntry>,
}

impl SocleTable {
    pub fn get(&self, tau: Face, sigma: Face) -> Option<&SocleEntry> {
        self.entries.get(&(tau, sigma))
    }

    /// Faces `tau` with some non-empty entry.
    pub fn faces(&self) -> BTreeSet<Face> {
        self.entries
            .iter()
            .filter(|(_, e)| !e.is_empty())
            .map(|(&(t, _), _)| t)
            .collect()
    }

    pub fn nonempty(&self) -> impl Iterator<Item = (&(Face, Face), &SocleEntry)> {
        self.entries.iter().filter(|(_, e)| !e.is_empty())
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (&(t, s), e) in &self.entries {
            m.insert(
                Face::pair_key(t, s),
                json!({ "degrees": e.degrees, "cosets": e.cosets }),
            );
        }
        Value::Object(m)
    }

    /// Parse the table form produced by [`SocleTable::to_json`]; `cosets` may
    /// be omitted and is then derived from `degrees`.
    pub fn from_json(v: &Value, dim: usize) -> Result<SocleTable> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("socle table must be a JSON object".into()))?;
        let mut entries = BTreeMap::new();
        for (k, e) in obj {
            let (tau, sigma) = parse_pair_key(k, dim)?;
            if !tau.is_subset(sigma) {
                return Err(Error::FaceNotContained {
                    tau: tau.to_string(),
                    sigma: sigma.to_string(),
                });
            }
            let degrees: PlSet = serde_json::from_value(e["degrees"].clone())
                .map_err(|err| Error::Parse(format!("entry {k}: {err}")))?;
            Error::dims(dim, degrees.dim)?;
            let cosets = match e.get("cosets") {
                Some(c) => serde_json::from_value(c.clone())
                    .map_err(|err| Error::Parse(format!("entry {k}: {err}")))?,
                None => project_mod(&degrees, tau)?,
            };
            entries.insert((tau, sigma), SocleEntry { degrees, cosets });
        }
        Ok(SocleTable { dim, entries })
    }
}

fn parse_pair_key(k: &str, dim: usize) -> Result<(Face, Face)> {
    let bad = || {
        Error::Parse(format!(
            "bad face-pair key {k:?}, expected \"tau=[..];sigma=[..]\""
        ))
    };
    let (t, s) = k.split_once(';').ok_or_else(bad)?;
    let t = t.trim().strip_prefix("tau=").ok_or_else(bad)?;
    let s = s.trim().strip_prefix("sigma=").ok_or_else(bad)?;
    let parse = |x: &str| -> Result<Face> {
        let v: Vec<usize> = serde_json::from_str(x).map_err(|_| bad())?;
        Face::from_one_based(&v, dim)
    };
    Ok((parse(t)?, parse(s)?))
}

fn check_pair(tau: Face, sigma: Face, n: usize) -> Result<()> {
    tau.check(n)?;
    sigma.check(n)?;
    if !tau.is_subset(sigma) {
        return Err(Error::FaceNotContained {
            tau: tau.to_string(),
            sigma: sigma.to_string(),
        });
    }
    Ok(())
}

/// `{a in S : (a + R^n_+) ∩ S = a + tau}`, the degrees of `S` that are
/// maximal except along `tau`.
pub fn max_along(s: &PlSet, tau: Face) -> Result<PlSet> {
    let n = s.dim;
    tau.check(n)?;
    let s = s.simplify();
    if s.cells.is_empty() {
        return Ok(s);
    }
    // E: something strictly above a, off the face tau, stays in S
    let off: Vec<usize> = tau.complement(n).coords().collect();
    let pieces = par::try_map(&off, |&j| s.sweep(&CoordCone::orthant_open_at(j, n).neg()))?;
    let e = PlSet::union_all(n, &pieces)?;
    let mut out = s.difference(&e)?.simplify();
    if !tau.is_empty() && !out.cells.is_empty() {
        // F: some point of a + tau leaves S
        let f = s.complement()?.sweep(&CoordCone::face(tau, n).neg())?;
        out = out.difference(&f)?.simplify();
    }
    Ok(out)
}

/// `{b in S : (b - R^n_+) ∩ S = b - rho}`, written out directly rather than
/// by reflecting [`max_along`].
pub fn min_along(s: &PlSet, rho: Face) -> Result<PlSet> {
    let n = s.dim;
    rho.check(n)?;
    let s = s.simplify();
    if s.cells.is_empty() {
        return Ok(s);
    }
    let mut below = PlSet::empty(n);
    for j in rho.complement(n).coords() {
        let swept = s.sweep(&CoordCone::orthant_open_at(j, n))?;
        below = below.union(&swept)?;
    }
    let mut out = s.difference(&below)?.simplify();
    if !rho.is_empty() && !out.cells.is_empty() {
        let escape = s.complement()?.sweep(&CoordCone::face(rho, n))?;
        out = out.difference(&escape)?.simplify();
    }
    Ok(out)
}

/// Support of `δ^sigma k[I]`: the `a` whose whole tail `a - sigma°` near `a`
/// lies in `I`. With `I = U ∩ D` this is `∂^sigma D ∩ (U + sigma° + R^n_+)`.
pub fn boundary_degrees(m: &Interval, sigma: Face) -> Result<PlSet> {
    let n = m.dim();
    sigma.check(n)?;
    if sigma.is_empty() {
        return Ok(m.carrier().clone());
    }
    let v: Vec<Rational> = face_vector(sigma, n).into_iter().map(|x| -x).collect();
    let top = m.downset().approach_set(&v)?;
    if m.is_downset() {
        return Ok(top.prune());
    }
    let lifted = m.upset().sweep(&CoordCone::face_shape(sigma, n))?;
    Ok(top.intersect(&lifted)?.simplify())
}

/// [`boundary_degrees`] from the tail formula
/// `{a : ∃ s' in sigma°, ∀ s'' in sigma° with s'' <= s', a - s'' in I}`,
/// with both quantifiers eliminated over the carrier only.
pub fn boundary_degrees_by_tails(m: &Interval, sigma: Face) -> Result<PlSet> {
    let n = m.dim();
    sigma.check(n)?;
    if sigma.is_empty() {
        return Ok(m.carrier().clone());
    }
    let k = sigma.len();
    let sc: Vec<usize> = sigma.coords().collect();
    // variables (a, s', s''), dimension n + 2k
    let big = n + 2 * k;
    let embed = |h: &crate::qe::HalfSpace, sign_s: i64, base: usize| {
        // h(a - s'' placed at columns base..)
        let mut normal = vec![Rational::from_integer(0.into()); big];
        normal[..n].clone_from_slice(&h.normal);
        for (t, &i) in sc.iter().enumerate() {
            normal[base + t] = &h.normal[i] * Rational::from_integer(sign_s.into());
        }
        crate::qe::HalfSpace::new(normal, h.offset.clone(), h.strict)
    };
    // bad(a, s', s''): s'' in sigma°, s'' <= s', and a - s'' not in I
    let outside = m.carrier().complement()?;
    let mut bad_cells = Vec::new();
    for c in &outside.cells {
        let mut cs: Vec<_> = c.constraints.iter().map(|h| embed(h, -1, n + k)).collect();
        for t in 0..k {
            let mut pos = vec![Rational::from_integer(0.into()); big];
            pos[n + k + t] = Rational::from_integer((-1).into());
            cs.push(crate::qe::HalfSpace::new(
                pos,
                Rational::from_integer(0.into()),
                true,
            ));
            let mut le = vec![Rational::from_integer(0.into()); big];
            le[n + k + t] = Rational::from_integer(1.into());
            le[n + t] = Rational::from_integer((-1).into());
            cs.push(crate::qe::HalfSpace::new(
                le,
                Rational::from_integer(0.into()),
                false,
            ));
        }
        bad_cells.push(crate::qe::Cell::new(big, cs)?);
    }
    let bad = PlSet::new(big, bad_cells)?;
    let s2 = Face::from_coords(n + k..n + 2 * k);
    // exists s'': bad, then negate to get forall s''
    let some_bad = bad.eliminate(s2)?;
    let good = some_bad.complement()?;
    // s' in sigma°
    let mut sp = Vec::new();
    for t in 0..k {
        let mut pos = vec![Rational::from_integer(0.into()); n + k];
        pos[n + t] = Rational::from_integer((-1).into());
        sp.push(crate::qe::HalfSpace::new(
            pos,
            Rational::from_integer(0.into()),
            true,
        ));
    }
    let good = good.intersect(&PlSet::from(crate::qe::Cell::new(n + k, sp)?))?;
    Ok(good.eliminate(Face::from_coords(n..n + k))?.simplify())
}

/// All boundary-degree sets, indexed by face bitmask.
fn boundaries(m: &Interval) -> Result<Vec<PlSet>> {
    let faces: Vec<Face> = Face::all(m.dim()).collect();
    par::try_map(&faces, |&s| boundary_degrees(m, s))
}

fn stratum_from(b: &[PlSet], tau: Face, sigma: Face) -> Result<PlSet> {
    let n = b[0].dim;
    let lower: Vec<&PlSet> = tau
        .supersets(n)
        .filter(|&s| s.is_subset(sigma) && s != sigma)
        .map(|s| &b[s.0 as usize])
        .collect();
    let minus = PlSet::union_all(n, lower)?;
    Ok(b[sigma.0 as usize].difference(&minus)?.simplify())
}

/// Degrees in `δ^sigma` but in no `δ^sigma'` with `tau ⊆ sigma' ⊊ sigma`.
pub fn socle_stratum(m: &Interval, tau: Face, sigma: Face) -> Result<PlSet> {
    check_pair(tau, sigma, m.dim())?;
    let n = m.dim();
    let mut b = vec![PlSet::empty(n); 1 << n];
    for s in tau.supersets(n).filter(|s| s.is_subset(sigma)) {
        b[s.0 as usize] = boundary_degrees(m, s)?;
    }
    stratum_from(&b, tau, sigma)
}

fn entry(stratum: &PlSet, tau: Face) -> Result<SocleEntry> {
    let degrees = max_along(stratum, tau)?;
    let cosets = project_mod(&degrees, tau)?;
    Ok(SocleEntry { degrees, cosets })
}

pub fn socle(m: &Interval, tau: Face, sigma: Face) -> Result<SocleEntry> {
    entry(&socle_stratum(m, tau, sigma)?, tau)
}

fn pairs(n: usize) -> Vec<(Face, Face)> {
    Face::all(n)
        .flat_map(|t| t.supersets(n).map(move |s| (t, s)))
        .collect()
}

pub fn socle_table(m: &Interval) -> Result<SocleTable> {
    let n = m.dim();
    let b = boundaries(m)?;
    let keys = pairs(n);
    let vals = par::try_map(&keys, |&(t, s)| entry(&stratum_from(&b, t, s)?, t))?;
    Ok(SocleTable {
        dim: n,
        entries: keys.into_iter().zip(vals).collect(),
    })
}

/// Only the closed entries `(tau, tau)`.
pub fn closed_socle_table(m: &Interval) -> Result<SocleTable> {
    let n = m.dim();
    let keys: Vec<(Face, Face)> = Face::all(n).map(|t| (t, t)).collect();
    let vals = par::try_map(&keys, |&(t, _)| {
        let b = boundary_degrees(m, t)?;
        entry(&b, t)
    })?;
    Ok(SocleTable {
        dim: n,
        entries: keys.into_iter().zip(vals).collect(),
    })
}

pub fn associated_faces(m: &Interval) -> Result<BTreeSet<Face>> {
    Ok(socle_table(m)?.faces())
}

/// The `sigma`-closure of `X ⊆ R^n / R tau`: points all of whose
/// `sigma`-vicinities `u + sigma° + R_+` (with `a - u` in `sigma°`) meet `X`.
/// Equals `{a : a - sigma° ⊆ X - (sigma° + R_+)}` in the quotient.
pub fn sigma_closure(x: &PlSet, sigma: Face, tau: Face, n: usize) -> Result<PlSet> {
    check_pair(tau, sigma, n)?;
    let m = n - tau.len();
    Error::dims(m, x.dim)?;
    let sq = sigma.quotient(tau, n);
    let below = x.sweep(&CoordCone::face_shape(sq, m).neg())?;
    if sq.is_empty() {
        return Ok(below.simplify());
    }
    let v: Vec<Rational> = face_vector(sq, m).into_iter().map(|c| -c).collect();
    Ok(below.approach_set(&v)?.simplify())
}

/// Outcome of a density test, with the first entry that fails.
#[derive(Clone, Debug)]
pub struct Density {
    pub dense: bool,
    pub failure: Option<(Face, Face, Vec<Rational>)>,
}

impl Density {
    pub fn to_json(&self) -> Value {
        match &self.failure {
            None => json!({ "dense": self.dense }),
            Some((t, s, p)) => json!({
                "dense": self.dense,
                "tau": t.one_based(),
                "sigma": s.one_based(),
                "witness": format_point(p),
            }),
        }
    }
}

/// Whether the family `b ⊆ a` is dense in `a`: for every entry, the
/// `sigma`-closure of all `b`-cosets along `tau` covers the `a`-cosets.
pub fn is_dense_family(b: &SocleTable, a: &SocleTable) -> Result<Density> {
    Error::dims(a.dim, b.dim)?;
    let n = a.dim;
    for (&(t, s), e) in &b.entries {
        let ambient = a
            .get(t, s)
            .map(|x| x.cosets.clone())
            .unwrap_or_else(|| PlSet::empty(n - t.len()));
        if !e.cosets.is_subset(&ambient)? {
            return Err(Error::FamilyNotContained(Face::pair_key(t, s)));
        }
    }
    let keys: Vec<(Face, Face)> = a.nonempty().map(|(&k, _)| k).collect();
    let results = par::try_map(&keys, |&(t, s)| -> Result<Option<Vec<Rational>>> {
        let parts: Vec<&PlSet> = b
            .entries
            .iter()
            .filter(|(&(bt, _), _)| bt == t)
            .map(|(_, e)| &e.cosets)
            .collect();
        let x = PlSet::union_all(n - t.len(), parts)?;
        let cl = sigma_closure(&x, s, t, n)?;
        let target = &a.entries[&(t, s)].cosets;
        Ok(target.difference(&cl)?.sample_point())
    })?;
    for ((t, s), w) in keys.into_iter().zip(results) {
        if let Some(p) = w {
            return Ok(Density {
                dense: false,
                failure: Some((t, s, p)),
            });
        }
    }
    Ok(Density {
        dense: true,
        failure: None,
    })
}

fn reflect_table(t: SocleTable) -> SocleTable {
    SocleTable {
        dim: t.dim,
        entries: t
            .entries
            .into_iter()
            .map(|(k, e)| {
                (
                    k,
                    SocleEntry {
                        degrees: e.degrees.reflect(),
                        cosets: e.cosets.reflect(),
                    },
                )
            })
            .collect(),
    }
}

/// Generators of `k[I]` along `rho` with zenith `xi`, by Matlis duality:
/// reflect, take the socle, reflect back.
pub fn top(m: &Interval, rho: Face, xi: Face) -> Result<SocleEntry> {
    let e = socle(&m.reflect(), rho, xi)?;
    Ok(SocleEntry {
        degrees: e.degrees.reflect(),
        cosets: e.cosets.reflect(),
    })
}

pub fn top_table(m: &Interval) -> Result<SocleTable> {
    Ok(reflect_table(socle_table(&m.reflect())?))
}

pub fn attached_faces(m: &Interval) -> Result<BTreeSet<Face>> {
    Ok(top_table(m)?.faces())
}

/// Support of `λ_xi k[I]`: `λ_xi U ∩ (D - xi° - R^n_+)`.
pub fn lower_boundary_degrees(m: &Interval, xi: Face) -> Result<PlSet> {
    let n = m.dim();
    xi.check(n)?;
    if xi.is_empty() {
        return Ok(m.carrier().clone());
    }
    let below = m.upset().approach_set(&face_vector(xi, n))?;
    let dropped = m.downset().sweep(&CoordCone::face_shape(xi, n).neg())?;
    Ok(below.intersect(&dropped)?.simplify())
}

/// The top table computed without reflection: lower boundaries, strata and
/// [`min_along`].
pub fn top_table_direct(m: &Interval) -> Result<SocleTable> {
    let n = m.dim();
    let faces: Vec<Face> = Face::all(n).collect();
    let lb = par::try_map(&faces, |&x| lower_boundary_degrees(m, x))?;
    let keys = pairs(n);
    let vals = par::try_map(&keys, |&(rho, xi)| -> Result<SocleEntry> {
        let lower: Vec<&PlSet> = rho
            .supersets(n)
            .filter(|&s| s.is_subset(xi) && s != xi)
            .map(|s| &lb[s.0 as usize])
            .collect();
        let stratum = lb[xi.0 as usize]
            .difference(&PlSet::union_all(n, lower)?)?
            .simplify();
        let degrees = min_along(&stratum, rho)?;
        let cosets = project_mod(&degrees, rho)?;
        Ok(SocleEntry { degrees, cosets })
    })?;
    Ok(SocleTable {
        dim: n,
        entries: keys.into_iter().zip(vals).collect(),
    })
}

/// Tables agree entry by entry; returns the first differing key and a point.
pub fn table_difference(
    a: &SocleTable,
    b: &SocleTable,
) -> Result<Option<(Face, Face, Vec<Rational>)>> {
    for (&(t, s), e) in &a.entries {
        let other = b
            .get(t, s)
            .map(|x| x.degrees.clone())
            .unwrap_or_else(|| PlSet::empty(a.dim));
        if let Some(p) = e.degrees.difference_witness(&other)? {
            return Ok(Some((t, s, p)));
        }
    }
    for (&(t, s), e) in &b.entries {
        if a.get(t, s).is_none() {
            if let Some(p) = e.degrees.sample_point() {
                return Ok(Some((t, s, p)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Downset;
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

    fn down(s: PlSet) -> Interval {
        Downset::new(s).unwrap().into()
    }

    #[test]
    fn max_along_examples() {
        let q = set(2, vec![vec![h(&[1, 0], 0, false), h(&[0, 1], 0, false)]]);
        let m = max_along(&q, Face::EMPTY).unwrap();
        assert!(m.equals(&PlSet::point(&[int(0), int(0)])).unwrap());

        let seg = set(
            2,
            vec![vec![
                h(&[1, 1], 1, false),
                h(&[-1, -1], -1, false),
                h(&[-1, 0], 0, true),
                h(&[1, 0], 1, false),
            ]],
        );
        assert!(max_along(&seg, Face::EMPTY).unwrap().equals(&seg).unwrap());

        let ray = set(
            2,
            vec![vec![
                h(&[0, 1], 0, false),
                h(&[0, -1], 0, false),
                h(&[-1, 0], 0, false),
            ]],
        );
        assert!(max_along(&ray, f(&[0])).unwrap().equals(&ray).unwrap());
    }

    #[test]
    fn min_along_mirrors_max_along() {
        let s = set(
            2,
            vec![vec![
                h(&[1, 1], 1, false),
                h(&[-1, -1], -1, false),
                h(&[-1, 0], 0, true),
                h(&[1, 0], 1, false),
            ]],
        );
        for tau in Face::all(2) {
            let a = max_along(&s, tau).unwrap().reflect();
            let b = min_along(&s.reflect(), tau).unwrap();
            assert!(a.equals(&b).unwrap());
        }
    }

    #[test]
    fn open_half_plane_socle_along_axis() {
        let d = down(set(2, vec![vec![h(&[0, 1], 0, true)]]));
        let x = f(&[0]);
        assert!(socle(&d, x, x).unwrap().is_empty());
        let e = socle(&d, x, f(&[0, 1])).unwrap();
        let want = set(1, vec![vec![h(&[1], 0, false), h(&[-1], 0, false)]]);
        assert!(e.cosets.equals(&want).unwrap());
        let ass = associated_faces(&d).unwrap();
        assert_eq!(ass, [x].into());
    }

    #[test]
    fn whole_space_is_coprimary_for_the_full_face() {
        let d = down(PlSet::universe(2));
        assert_eq!(associated_faces(&d).unwrap(), [Face::full(2)].into());
    }

    #[test]
    fn tail_formula_matches_closed_form() {
        // I = {x>=0, y>=0, x+y<=1} ∪ {x>=0, y=0}
        let u = crate::order::Upset::new(set(
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
        for sigma in Face::all(2) {
            let a = boundary_degrees(&i, sigma).unwrap();
            let b = boundary_degrees_by_tails(&i, sigma).unwrap();
            assert!(a.equals(&b).unwrap(), "sigma {sigma}");
        }
    }

    #[test]
    fn sigma_closure_picks_up_the_corner() {
        let x = set(
            2,
            vec![vec![
                h(&[1, 1], 1, false),
                h(&[-1, -1], -1, false),
                h(&[-1, 0], 0, true),
                h(&[1, 0], 1, true),
            ]],
        );
        let cl = sigma_closure(&x, f(&[0]), Face::EMPTY, 2).unwrap();
        assert!(x.is_subset(&cl).unwrap());
        assert!(cl.contains(&[int(1), int(0)]));
        assert!(!cl.contains(&[int(0), int(1)]));
        let empty = sigma_closure(&PlSet::empty(2), f(&[0]), Face::EMPTY, 2).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn tops_of_simple_upsets() {
        let n = 2;
        let quadrant: Interval =
            crate::order::Upset::new(PlSet::from(CoordCone::orthant(n).to_cell()))
                .unwrap()
                .into();
        assert_eq!(attached_faces(&quadrant).unwrap(), [Face::EMPTY].into());
        let t = top(&quadrant, Face::EMPTY, Face::EMPTY).unwrap();
        assert!(t.degrees.equals(&PlSet::point(&[int(0), int(0)])).unwrap());

        // (1,1) + R x + R^2_+ = {y >= 1}
        let strip: Interval = crate::order::Upset::new(set(2, vec![vec![h(&[0, -1], -1, false)]]))
            .unwrap()
            .into();
        assert_eq!(attached_faces(&strip).unwrap(), [f(&[0])].into());
        assert!(table_difference(
            &top_table(&strip).unwrap(),
            &top_table_direct(&strip).unwrap()
        )
        .unwrap()
        .is_none());
    }
}

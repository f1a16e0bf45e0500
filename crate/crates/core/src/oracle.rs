//! Independent verification: rational grids with epsilon probes, seeded
//! instance generators, and cross-checks between the symbolic pipeline and
//! direct evaluation or the discrete backend.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::decompose;
use crate::discrete::{self, DiscreteIdeal};
use crate::face::Face;
use crate::order::{self, Downset, Instance, Interval, Upset};
use crate::par;
use crate::qe::{Cell, CoordCone, HalfSpace, PlSet};
use crate::rational::{format_point, frac, int, Rational};
use crate::socle;
use crate::{Error, Result};

/// A box of grid points `lo + k * step` and the probe length for
/// directional tests.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
    pub step: Rational,
    pub probe: Rational,
}

impl GridSpec {
    pub fn new(
        lo: Vec<Rational>,
        hi: Vec<Rational>,
        step: Rational,
        probe: Rational,
    ) -> Result<GridSpec> {
        Error::dims(lo.len(), hi.len())?;
        if !step.is_positive() {
            return Err(Error::Parse("grid step must be positive".into()));
        }
        if !probe.is_positive() || probe.clone() * int(2) >= step {
            return Err(Error::Parse("probe must lie in (0, step/2)".into()));
        }
        Ok(GridSpec {
            lo,
            hi,
            step,
            probe,
        })
    }

    /// `[-r, r]^n` with step `1/4` and probe `1/1024`.
    pub fn cube(n: usize, r: i64) -> GridSpec {
        GridSpec::new(vec![int(-r); n], vec![int(r); n], frac(1, 4), frac(1, 1024)).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn points(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![Vec::new()];
        for (l, h) in self.lo.iter().zip(&self.hi) {
            let mut axis = Vec::new();
            let mut x = l.clone();
            while &x <= h {
                axis.push(x.clone());
                x += &self.step;
            }
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// The grid on the coordinates outside `tau`.
    pub fn quotient(&self, tau: Face) -> GridSpec {
        let keep = |v: &Vec<Rational>| -> Vec<Rational> {
            v.iter()
                .enumerate()
                .filter(|(i, _)| !tau.contains(*i))
                .map(|(_, x)| x.clone())
                .collect()
        };
        GridSpec {
            lo: keep(&self.lo),
            hi: keep(&self.hi),
            step: self.step.clone(),
            probe: self.probe.clone(),
        }
    }

    fn probes(&self) -> [Rational; 3] {
        let p = self.probe.clone();
        [p.clone(), p.clone() / int(2), p / int(4)]
    }
}

/// Outcome of a pointwise comparison.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checked: usize,
    pub inconclusive: usize,
    pub mismatches: Vec<Vec<Rational>>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checked": self.checked,
            "inconclusive": self.inconclusive,
            "mismatches": self.mismatches.iter().map(|p| format_point(p)).collect::<Vec<_>>(),
        })
    }
}

/// Compare `points` against two predicates; `None` from `expected` marks an
/// inconclusive point.
fn compare<A, B>(points: &[Vec<Rational>], symbolic: A, expected: B) -> Report
where
    A: Fn(&[Rational]) -> bool + Sync + Send,
    B: Fn(&[Rational]) -> Option<bool> + Sync + Send,
{
    let res = par::map(points, |p| match expected(p) {
        None => (1, None),
        Some(e) if e == symbolic(p) => (0, None),
        Some(_) => (0, Some(p.clone())),
    });
    let mut r = Report {
        checked: points.len(),
        ..Report::default()
    };
    for (inc, bad) in res {
        r.inconclusive += inc;
        r.mismatches.extend(bad);
    }
    r
}

/// Evaluate `l.x` and compare to the offset with plain loops, without the
/// engine's membership code.
fn direct_member(s: &PlSet, x: &[Rational]) -> bool {
    s.cells.iter().any(|c| {
        c.constraints.iter().all(|h| {
            let mut acc = Rational::zero();
            for (a, xi) in h.normal.iter().zip(x) {
                acc += a * xi;
            }
            match acc.cmp(&h.offset) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => !h.strict,
                std::cmp::Ordering::Greater => false,
            }
        })
    })
}

pub fn sample_check_membership(s: &PlSet, g: &GridSpec) -> Report {
    compare(
        &g.points(),
        |p| s.contains(p),
        |p| Some(direct_member(s, p)),
    )
}

fn offset(p: &[Rational], v: &[Rational], eps: &Rational) -> Vec<Rational> {
    p.iter().zip(v).map(|(a, b)| a + b * eps).collect()
}

/// `boundary` against the probe test `a - eps s_sigma in D` for three
/// decreasing `eps`, which must agree.
pub fn probe_boundary(
    d: &PlSet,
    boundary: &PlSet,
    sigma: Face,
    points: &[Vec<Rational>],
    probe: &Rational,
) -> Report {
    let n = d.dim;
    let v: Vec<Rational> = sigma.indicator(n).into_iter().map(|x| -x).collect();
    let eps = [probe.clone(), probe / int(2), probe / int(4)];
    compare(
        points,
        |p| boundary.contains(p),
        |p| {
            if sigma.is_empty() {
                return Some(d.contains(p));
            }
            let votes: Vec<bool> = eps.iter().map(|e| d.contains(&offset(p, &v, e))).collect();
            (votes.iter().all(|&b| b == votes[0])).then_some(votes[0])
        },
    )
}

/// `closure` against direct sampling of `sigma`-vicinities: does
/// `(a - eps s + sigma° + R_+) ∩ X` contain a point, for three `eps`?
pub fn probe_sigma_closure(
    x: &PlSet,
    closure: &PlSet,
    sigma: Face,
    tau: Face,
    n: usize,
    g: &GridSpec,
) -> Report {
    let m = n - tau.len();
    let sq = sigma.quotient(tau, n);
    let v: Vec<Rational> = sq.indicator(m).into_iter().map(|c| -c).collect();
    let shape = CoordCone::face_shape(sq, m);
    let pts = g.quotient(tau).points();
    compare(
        &pts,
        |p| closure.contains(p),
        |p| {
            let votes: Vec<bool> = g
                .probes()
                .iter()
                .map(|e| {
                    let u = offset(p, &v, e);
                    let vic = Cell::translated_cone(&u, &shape);
                    x.cells.iter().any(|c| !c.meet(&vic).is_empty())
                })
                .collect();
            (votes.iter().all(|&b| b == votes[0])).then_some(votes[0])
        },
    )
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn half(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    frac(r.gen_range(2 * lo..=2 * hi), 2)
}

/// Random points with coordinates in `[-r, r]`, multiples of `1/4`, so
/// that they land on boundaries of generated instances often.
pub fn random_points(seed: u64, n: usize, count: usize, r: i64) -> Vec<Vec<Rational>> {
    let mut g = rng(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| frac(g.gen_range(-4 * r..=4 * r), 4))
                .collect()
        })
        .collect()
}

fn random_cell(g: &mut ChaCha8Rng, n: usize) -> Cell {
    match g.gen_range(0..3) {
        0 => {
            // apex - (sigma° + R^n_+)
            let apex: Vec<Rational> = (0..n).map(|_| half(g, -2, 2)).collect();
            let sigma = Face(g.gen_range(0..1u32 << n));
            Cell::translated_cone(&apex, &CoordCone::face_shape(sigma, n).neg())
        }
        1 => {
            // a stack of half-spaces with nonnegative normals
            let k = g.gen_range(1..=n + 1);
            let cs = (0..k)
                .map(|_| {
                    let mut normal: Vec<Rational> =
                        (0..n).map(|_| int(g.gen_range(0..=2))).collect();
                    if normal.iter().all(Zero::is_zero) {
                        let i = g.gen_range(0..n);
                        normal[i] = Rational::one();
                    }
                    HalfSpace::new(normal, half(g, -2, 3), g.gen_bool(0.5))
                })
                .collect();
            Cell {
                dim: n,
                constraints: cs,
            }
        }
        _ => {
            // a bounded piece of a hyperplane, closed downward later
            let p: Vec<Rational> = (0..n).map(|_| half(g, -2, 2)).collect();
            let normal: Vec<Rational> = (0..n).map(|_| int(g.gen_range(1..=2))).collect();
            let level: Rational = normal.iter().zip(&p).map(|(a, b)| a * b).sum();
            let mut c = Cell::universe(n)
                .with(HalfSpace::new(normal.clone(), level.clone(), false))
                .with(HalfSpace::new(
                    normal.iter().map(|a| -a).collect(),
                    -level,
                    false,
                ));
            for (i, pi) in p.iter().enumerate() {
                c = c.with(HalfSpace::coord(n, i, -1, -pi + int(1), g.gen_bool(0.5)));
            }
            c
        }
    }
}

/// A random PL downset with at most `budget` cells: random cells closed
/// downward, strictness flags shuffled, then canonicalized.
pub fn random_downset(seed: u64, n: usize, budget: usize) -> Downset {
    let mut g = rng(seed);
    let k = g.gen_range(1..=budget.max(1));
    let cells: Vec<Cell> = (0..k).map(|_| random_cell(&mut g, n)).collect();
    let closed = PlSet { dim: n, cells }
        .sweep(&CoordCone::orthant(n).neg())
        .expect("dimensions agree")
        .simplify();
    let mut cells = closed.cells;
    for c in &mut cells {
        for h in &mut c.constraints {
            if g.gen_bool(0.3) {
                h.strict = !h.strict;
            }
        }
    }
    let mut s = PlSet { dim: n, cells }.simplify();
    s.cells.truncate(budget);
    Downset::new(s).expect("generated set is a downset")
}

pub fn random_upset(seed: u64, n: usize, budget: usize) -> Upset {
    random_downset(seed, n, budget).reflect()
}

/// A random non-empty interval; retries with derived seeds until the
/// upset and downset meet.
pub fn random_interval(seed: u64, n: usize, budget: usize) -> Interval {
    for k in 0u64.. {
        let s = seed.wrapping_mul(0x9e37_79b9).wrapping_add(k);
        let d = random_downset(s, n, budget);
        let u = random_upset(s ^ 0x5555, n, budget);
        let i = Interval::new(u, d).expect("dimensions agree");
        if !i.carrier().cells.is_empty() {
            return i;
        }
    }
    unreachable!()
}

pub fn random_ideal(seed: u64, n: usize, max_gens: usize) -> DiscreteIdeal {
    let mut g = rng(seed);
    let k = g.gen_range(1..=max_gens.max(1));
    let top = if n <= 2 { 4 } else { 3 };
    let gens = (0..k)
        .map(|_| (0..n).map(|_| g.gen_range(0..=top)).collect())
        .collect();
    DiscreteIdeal::new(n, gens).expect("generated ideal is valid")
}

/// The closed real staircase `⋃ (a + R tau - R^n_+)` over the discrete
/// cogenerators `a` along every face `tau`.
pub fn real_staircase(ideal: &DiscreteIdeal) -> Result<Downset> {
    let n = ideal.n;
    let mut parts = Vec::new();
    for (tau, apexes) in discrete::discrete_primary_decomposition(ideal).components {
        for a in apexes {
            let p: Vec<Rational> = a.iter().map(|&x| int(x)).collect();
            let cone = CoordCone {
                gens: (0..n)
                    .map(|i| {
                        if tau.contains(i) {
                            crate::qe::Gen::Line
                        } else {
                            crate::qe::Gen::Neg
                        }
                    })
                    .collect(),
            };
            parts.push(Cell::translated_cone(&p, &cone));
        }
    }
    Ok(Downset::trusted(
        PlSet {
            dim: n,
            cells: parts,
        }
        .simplify(),
    ))
}

/// The real closed socle strata of the real staircase against the discrete
/// cogenerator cosets; returns the faces that disagree.
pub fn real_discrete_mismatches(ideal: &DiscreteIdeal) -> Result<Vec<Face>> {
    let d = real_staircase(ideal)?;
    let table = socle::closed_socle_table(&d.into())?;
    let mut bad = Vec::new();
    for tau in Face::all(ideal.n) {
        let cosets: Vec<Cell> = discrete::closed_cogenerators_discrete(ideal, tau)
            .iter()
            .map(|a| {
                let c: Vec<Rational> = discrete::coset(a, tau).iter().map(|&x| int(x)).collect();
                Cell::point(&c)
            })
            .collect();
        let want = PlSet {
            dim: ideal.n - tau.len(),
            cells: cosets,
        };
        let got = &table.entries[&(tau, tau)].cosets;
        if !got.equals(&want)? {
            bad.push(tau);
        }
    }
    Ok(bad)
}

/// One named check in a verification run.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Advisory checks are reported but do not fail the run.
    pub advisory: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.advisory)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.advisory)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "advisory": c.advisory,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: Value) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            advisory: false,
            detail,
        });
    }

    fn report(&mut self, name: impl Into<String>, r: &Report) {
        self.push(name, r.passed(), r.to_json());
    }

    fn witness(&mut self, name: impl Into<String>, w: Option<Vec<Rational>>) {
        let detail = match &w {
            Some(p) => json!({ "witness": format_point(p) }),
            None => json!({}),
        };
        self.push(name, w.is_none(), detail);
    }
}

/// Boundary laws for one face: sandwich, downset-ness, idempotence and the
/// slice-closure route. Each law maps to a witness when violated.
pub fn boundary_laws(d: &Downset, sigma: Face) -> Result<Vec<(String, Option<Vec<Rational>>)>> {
    let b = order::upper_boundary(d, sigma)?;
    let closure = d.carrier().closure();
    let mut out = Vec::new();
    let tag = |s: &str| format!("boundary {sigma}: {s}");
    out.push((
        tag("contains D"),
        d.carrier().difference(b.carrier())?.sample_point(),
    ));
    out.push((
        tag("inside closure"),
        b.carrier().difference(&closure)?.sample_point(),
    ));
    let swept = b.carrier().sweep(&CoordCone::orthant(d.dim()).neg())?;
    out.push((
        tag("downset"),
        swept.difference(b.carrier())?.sample_point(),
    ));
    let twice = order::upper_boundary(&b, sigma)?;
    out.push((
        tag("idempotent"),
        twice.carrier().difference_witness(b.carrier())?,
    ));
    let slices = order::upper_boundary_by_slices(d, sigma)?;
    out.push((tag("slice route"), slices.difference_witness(b.carrier())?));
    Ok(out)
}

/// First point where `shape_at` disagrees with membership in the symbolic
/// boundaries `∂^sigma D`.
pub fn shape_mismatch(d: &Downset, points: &[Vec<Rational>]) -> Result<Option<Vec<Rational>>> {
    let n = d.dim();
    let bs: Vec<PlSet> = Face::all(n)
        .map(|s| order::upper_boundary(d, s).map(Downset::into_carrier))
        .collect::<Result<_>>()?;
    let bad = par::try_map(points, |p| {
        let shape = order::shape_at(d, p)?;
        Ok(Face::all(n)
            .any(|s| shape.contains(s) != bs[s.0 as usize].contains(p))
            .then(|| p.clone()))
    })?;
    Ok(bad.into_iter().flatten().next())
}

/// Nesting `∂^sigma' D ⊆ ∂^sigma D` for `sigma' ⊆ sigma`.
pub fn nesting_violation(d: &Downset) -> Result<Option<Vec<Rational>>> {
    let n = d.dim();
    let bs: Vec<PlSet> = Face::all(n)
        .map(|s| order::upper_boundary(d, s).map(Downset::into_carrier))
        .collect::<Result<_>>()?;
    for s in Face::all(n) {
        for i in s.coords() {
            let smaller = Face(s.0 & !(1 << i));
            if let Some(p) = bs[smaller.0 as usize]
                .difference(&bs[s.0 as usize])?
                .sample_point()
            {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

/// Two points of the cosets, one strictly above the other in the quotient.
pub fn antichain_violation(cosets: &PlSet) -> Result<Option<Vec<Rational>>> {
    let m = cosets.dim;
    for j in 0..m {
        let above = cosets.sweep(&CoordCone::orthant_open_at(j, m))?;
        if let Some(p) = above.intersect(cosets)?.sample_point() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// The full oracle suite on one instance.
pub fn verify_instance(inst: &Instance, g: &GridSpec) -> Result<VerifyReport> {
    let mut r = VerifyReport::default();
    let n = inst.dim();
    Error::dims(n, g.dim())?;
    r.push("valid", true, json!({ "kind": inst.kind(), "dim": n }));
    r.report("membership", &sample_check_membership(inst.carrier(), g));

    if let Instance::Downset(d) = inst {
        let pts = g.points();
        for sigma in Face::all(n) {
            for (name, w) in boundary_laws(d, sigma)? {
                r.witness(name, w);
            }
            let b = order::upper_boundary(d, sigma)?;
            r.report(
                format!("boundary {sigma}: probes"),
                &probe_boundary(d.carrier(), b.carrier(), sigma, &pts, &g.probe),
            );
        }
        r.witness("boundary nesting", nesting_violation(d)?);
        r.witness("shape agreement", shape_mismatch(d, &pts)?);
        let (a, b) = order::frontier_routes(d)?;
        r.witness("frontier routes", a.difference_witness(&b)?);
    }

    let base = inst.to_interval();
    let table = socle::socle_table(&base)?;
    r.push(
        "associated faces",
        true,
        json!(table
            .faces()
            .iter()
            .map(|f| f.one_based())
            .collect::<Vec<_>>()),
    );
    for (&(t, s), e) in table.nonempty() {
        r.witness(
            format!("socle {t} {s}: antichain"),
            antichain_violation(&e.cosets)?,
        );
        let b = socle::boundary_degrees(&base, s)?;
        r.witness(
            format!("socle {t} {s}: inside boundary"),
            e.degrees.difference(&b)?.sample_point(),
        );
        if t == s {
            r.witness(
                format!("socle {t} {s}: closed degrees in base"),
                e.degrees.difference(base.carrier())?.sample_point(),
            );
        }
        let family: Vec<&PlSet> = table
            .entries
            .iter()
            .filter(|(&(bt, _), _)| bt == t)
            .map(|(_, x)| &x.cosets)
            .collect();
        let x = PlSet::union_all(n - t.len(), family)?;
        let cl = socle::sigma_closure(&x, s, t, n)?;
        r.report(
            format!("sigma-closure {t} {s}: vicinity probes"),
            &probe_sigma_closure(&x, &cl, s, t, n, g),
        );
    }

    match decompose::primary_decomposition_with(&base, table.clone()) {
        Ok(dec) => {
            r.push(
                "primary union",
                true,
                json!({ "components": dec.components.len() }),
            );
            let keys: Vec<Face> = dec.components.keys().copied().collect();
            let bad: Vec<Vec<usize>> = keys
                .iter()
                .filter(|t| {
                    !decompose::is_coprimary(&dec.components[t].carrier, **t).unwrap_or(false)
                })
                .map(|t| t.one_based())
                .collect();
            r.push(
                "components coprimary",
                bad.is_empty(),
                json!({ "failing": bad }),
            );
            let fam = decompose::irreducible_family(&table);
            let rec = decompose::reconstruct(&fam, &base)?;
            r.witness(
                "irreducible reconstruct",
                rec.difference_witness(base.carrier())?,
            );
            let dense = socle::is_dense_family(&table, &table)?;
            r.push("canonical family dense", dense.dense, dense.to_json());
            let m = decompose::verify_minimality(&dec)?;
            r.checks.push(Check {
                name: "minimality".into(),
                passed: m.all_equal(),
                advisory: true,
                detail: m.to_json(),
            });
        }
        Err(e) if e.is_check_failure() => {
            r.push("primary union", false, json!({ "error": e.to_string() }))
        }
        Err(e) => return Err(e),
    }

    if matches!(inst, Instance::Upset(_) | Instance::Interval(_)) {
        let a = socle::top_table(&base)?;
        let b = socle::top_table_direct(&base)?;
        let diff = socle::table_difference(&a, &b)?;
        r.witness("tops by reflection vs direct", diff.map(|(_, _, p)| p));
    }
    Ok(r)
}

/// Run [`verify_instance`] over `count` random downsets.
pub fn fuzz(
    seed: u64,
    n: usize,
    budget: usize,
    count: usize,
    g: &GridSpec,
) -> Result<Vec<(u64, VerifyReport)>> {
    let seeds: Vec<u64> = (0..count as u64).map(|k| seed.wrapping_add(k)).collect();
    par::try_map(&seeds, |&s| {
        let d = random_downset(s, n, budget);
        Ok((s, verify_instance(&Instance::Downset(d), g)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_and_valid() {
        for seed in 0..10 {
            let a = random_downset(seed, 2, 4);
            let b = random_downset(seed, 2, 4);
            assert_eq!(a, b);
            assert!(a.carrier().cells.len() <= 4);
            assert!(order::is_downset(a.carrier()).unwrap());
        }
        assert_eq!(random_ideal(7, 3, 6), random_ideal(7, 3, 6));
    }

    #[test]
    fn membership_self_check() {
        let d = random_downset(3, 2, 3);
        assert!(sample_check_membership(d.carrier(), &GridSpec::cube(2, 2)).passed());
    }

    #[test]
    fn grid_spec_rejects_large_probe() {
        assert!(GridSpec::new(vec![int(0)], vec![int(1)], frac(1, 4), frac(1, 8)).is_err());
        assert!(GridSpec::new(vec![int(0)], vec![int(1)], frac(1, 4), frac(1, 9)).is_ok());
    }
}

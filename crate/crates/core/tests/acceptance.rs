//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use staircase_core::decompose::{self, IrreducibleFamily};
use staircase_core::discrete::{self, DiscreteIdeal};
use staircase_core::oracle;
use staircase_core::rational::{format_point, frac, int};
use staircase_core::socle::{self, SocleTable};
use staircase_core::{order, Downset, Face, HalfSpace, Interval, PlSet, Rational, Result, Upset};

fn pt(p: &[Rational]) -> String {
    format!("({})", format_point(p).join(", "))
}

type Outcome = Result<std::result::Result<String, String>>;
type Criterion<'a> = (&'a str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn h(a: &[i64], b: i64, strict: bool) -> HalfSpace {
    HalfSpace::new(a.iter().map(|&x| int(x)).collect(), int(b), strict)
}

fn hq(a: &[i64], b: Rational, strict: bool) -> HalfSpace {
    HalfSpace::new(a.iter().map(|&x| int(x)).collect(), b, strict)
}

fn set(cells: Vec<Vec<HalfSpace>>) -> PlSet {
    PlSet::from_constraints(2, cells).unwrap()
}

fn f(c: &[usize]) -> Face {
    Face::from_coords(c.iter().copied())
}

fn triangle() -> Downset {
    Downset::new(set(vec![vec![
        h(&[1, 0], 1, true),
        h(&[0, 1], 1, true),
        h(&[1, 1], 1, true),
    ]]))
    .unwrap()
}

fn half_plane() -> Downset {
    Downset::new(set(vec![vec![h(&[1, 1], 1, true)]])).unwrap()
}

fn triangle_plus_ray() -> Interval {
    let u = Upset::new(set(vec![vec![
        h(&[-1, 0], 0, false),
        h(&[0, -1], 0, false),
    ]]))
    .unwrap();
    let d = Downset::new(set(vec![
        vec![h(&[1, 1], 1, false)],
        vec![h(&[0, 1], 0, false)],
    ]))
    .unwrap();
    Interval::new(u, d).unwrap()
}

/// The segment of `x + y = 1` over `lo < x < hi`, with each end closed
/// unless flagged strict.
fn hypotenuse(lo: i64, lo_strict: bool, hi: i64, hi_strict: bool) -> PlSet {
    set(vec![vec![
        h(&[1, 1], 1, false),
        h(&[-1, -1], -1, false),
        h(&[-1, 0], -lo, lo_strict),
        h(&[1, 0], hi, hi_strict),
    ]])
}

fn corpus() -> Vec<Downset> {
    let mut v: Vec<Downset> = (0..100).map(|s| oracle::random_downset(s, 2, 8)).collect();
    v.extend((0..25).map(|s| oracle::random_downset(1000 + s, 3, 5)));
    v
}

fn c1_triangle() -> Outcome {
    let d: Interval = triangle().into();
    let t = socle::socle_table(&d)?;
    let mut expected = vec![
        ((Face::EMPTY, f(&[0])), hypotenuse(0, true, 1, false)),
        ((Face::EMPTY, f(&[1])), hypotenuse(0, false, 1, true)),
    ];
    for tau in Face::all(2) {
        for sigma in tau.supersets(2) {
            if !expected.iter().any(|(k, _)| *k == (tau, sigma)) {
                expected.push(((tau, sigma), PlSet::empty(2)));
            }
        }
    }
    for ((tau, sigma), want) in &expected {
        let got = &t.get(*tau, *sigma).expect("entry present").degrees;
        if let Some(p) = got.difference_witness(want)? {
            return Ok(Err(format!("entry ({tau},{sigma}) differs at {}", pt(&p))));
        }
    }
    let closed = socle::closed_socle_table(&d)?;
    if closed.nonempty().next().is_some() {
        return Ok(Err("closed socle not empty".into()));
    }
    let ass = socle::associated_faces(&d)?;
    if ass.into_iter().collect::<Vec<_>>() != vec![Face::EMPTY] {
        return Ok(Err("ass != {[]}".into()));
    }
    Ok(Ok("9 entries exact, closed socle empty, ass = {[]}".into()))
}

fn c2_reconstruction(corpus: &[Downset]) -> Outcome {
    for (k, d) in corpus.iter().enumerate() {
        let i: Interval = d.clone().into();
        let dec = match decompose::primary_decomposition(&i) {
            Ok(x) => x,
            Err(e) if e.is_check_failure() => return Ok(Err(format!("instance {k}: {e}"))),
            Err(e) => return Err(e),
        };
        let parts: Vec<&PlSet> = dec
            .components
            .values()
            .map(|c| c.carrier.carrier())
            .collect();
        let union = PlSet::union_all(d.dim(), parts)?;
        if let Some(p) = union.difference_witness(d.carrier())? {
            return Ok(Err(format!("instance {k}: union differs at {}", pt(&p))));
        }
        let rec = decompose::reconstruct(&decompose::irreducible_family(&dec.table), &i)?;
        if let Some(p) = rec.difference_witness(d.carrier())? {
            return Ok(Err(format!(
                "instance {k}: reconstruction differs at {}",
                pt(&p)
            )));
        }
    }
    Ok(Ok(format!("{} instances exact", corpus.len())))
}

fn c3_boundary_laws(corpus: &[Downset]) -> Outcome {
    let mut checked = 0;
    for (k, d) in corpus.iter().enumerate() {
        let n = d.dim();
        for sigma in Face::all(n) {
            for (law, w) in oracle::boundary_laws(d, sigma)? {
                if let Some(p) = w {
                    return Ok(Err(format!("instance {k}, {law} at {}", pt(&p))));
                }
                checked += 1;
            }
        }
        if let Some(p) = oracle::nesting_violation(d)? {
            return Ok(Err(format!("instance {k}: nesting at {}", pt(&p))));
        }
        let pts = oracle::random_points(k as u64, n, 1000, 3);
        if let Some(p) = oracle::shape_mismatch(d, &pts)? {
            return Ok(Err(format!(
                "instance {k}: shape_at disagrees at {}",
                pt(&p)
            )));
        }
    }
    Ok(Ok(format!(
        "{checked} law checks, 1000 shape points per instance"
    )))
}

fn c4_frontier(corpus: &[Downset]) -> Outcome {
    for (k, d) in corpus.iter().enumerate() {
        let (a, b) = order::frontier_routes(d)?;
        if let Some(p) = a.difference_witness(&b)? {
            return Ok(Err(format!("instance {k}: routes differ at {}", pt(&p))));
        }
    }
    Ok(Ok(format!("{} instances, both routes equal", corpus.len())))
}

/// The triangle table with `cut` removed from both hypotenuse strata.
fn without(t: &SocleTable, cut: &PlSet) -> Result<SocleTable> {
    let mut b = t.clone();
    for sigma in [f(&[0]), f(&[1])] {
        let e = b.entries.get_mut(&(Face::EMPTY, sigma)).unwrap();
        e.degrees = e.degrees.difference(cut)?;
        e.cosets = e.cosets.difference(cut)?;
    }
    Ok(b)
}

fn reconstructs(fam: &IrreducibleFamily, base: &Interval) -> Result<Option<Vec<Rational>>> {
    decompose::reconstruct(fam, base)?.difference_witness(base.carrier())
}

fn c5_density() -> Outcome {
    let base: Interval = triangle().into();
    let a = socle::socle_table(&base)?;
    let mid = PlSet::point(&[frac(1, 2), frac(1, 2)]);
    let b = without(&a, &mid)?;
    let dense = socle::is_dense_family(&b, &a)?;
    if !dense.dense {
        return Ok(Err("point deletion reported not dense".into()));
    }
    if let Some(p) = reconstructs(&decompose::irreducible_family(&b), &base)? {
        return Ok(Err(format!(
            "point deletion breaks reconstruction at {}",
            pt(&p)
        )));
    }
    let gap = set(vec![vec![
        hq(&[-1, 0], -frac(1, 4), true),
        hq(&[1, 0], frac(3, 4), true),
    ]]);
    let c = without(&a, &gap)?;
    let dense = socle::is_dense_family(&c, &a)?;
    let Some((_, _, wd)) = dense.failure.filter(|_| !dense.dense) else {
        return Ok(Err("segment deletion reported dense".into()));
    };
    let Some(wr) = reconstructs(&decompose::irreducible_family(&c), &base)? else {
        return Ok(Err("segment deletion still reconstructs".into()));
    };
    let on_hypotenuse = [f(&[0]), f(&[1])]
        .iter()
        .any(|&s| a.get(Face::EMPTY, s).unwrap().cosets.contains(&wd));
    if !base.carrier().contains(&wr) || !on_hypotenuse {
        return Ok(Err("witness points are not where they should be".into()));
    }
    Ok(Ok(format!(
        "point: dense + exact; segment: density witness {}, reconstruction witness {}",
        pt(&wd),
        pt(&wr)
    )))
}

fn c6_discrete() -> Outcome {
    let mut k = 0;
    for seed in 0..200u64 {
        let n = if seed % 2 == 0 { 2 } else { 3 };
        let ideal = oracle::random_ideal(seed, n, 6);
        let d = discrete::discrete_primary_decomposition(&ideal);
        let parts = discrete::discrete_irreducible_decomposition(&ideal);
        if !discrete::is_irredundant(&ideal, &parts) {
            return Ok(Err(format!("seed {seed}: redundant decomposition")));
        }
        if !discrete::union_matches_symbolically(&ideal, &parts)
            || !discrete::union_matches_on_box(&ideal, &d)
        {
            return Ok(Err(format!(
                "seed {seed}: intersection differs from the ideal"
            )));
        }
        let ours: std::collections::BTreeSet<DiscreteIdeal> =
            parts.iter().map(|p| p.ideal()).collect();
        if ours != discrete::irreducible_by_splitting(&ideal) {
            return Ok(Err(format!(
                "seed {seed}: differs from the splitting decomposition"
            )));
        }
        for tau in Face::all(n) {
            let listed: std::collections::BTreeSet<_> =
                discrete::closed_cogenerators_discrete(&ideal, tau)
                    .iter()
                    .map(|a| discrete::coset(a, tau))
                    .collect();
            if listed != discrete::brute_force_cogenerators(&ideal, tau) {
                return Ok(Err(format!(
                    "seed {seed}: cogenerators along {tau} differ from brute force"
                )));
            }
        }
        if !discrete::socle_isomorphism_check_discrete(&ideal, &d) {
            return Ok(Err(format!("seed {seed}: socle isomorphism check failed")));
        }
        k += 1;
    }
    let ideal = DiscreteIdeal::new(2, vec![vec![2, 0], vec![1, 1]])?;
    let got: std::collections::BTreeSet<DiscreteIdeal> =
        discrete::discrete_irreducible_decomposition(&ideal)
            .iter()
            .map(|p| p.ideal())
            .collect();
    let want: std::collections::BTreeSet<DiscreteIdeal> = [
        DiscreteIdeal::new(2, vec![vec![1, 0]])?,
        DiscreteIdeal::new(2, vec![vec![2, 0], vec![0, 1]])?,
    ]
    .into();
    if got != want {
        return Ok(Err("(x^2, xy) is not (x) ∩ (x^2, y)".into()));
    }
    Ok(Ok(format!("{k} ideals; (x^2, xy) = (x) ∩ (x^2, y)")))
}

fn c7_real_discrete() -> Outcome {
    for seed in 0..50u64 {
        let n = if seed % 2 == 0 { 2 } else { 3 };
        let ideal = oracle::random_ideal(5000 + seed, n, 4);
        let bad = oracle::real_discrete_mismatches(&ideal)?;
        if !bad.is_empty() {
            return Ok(Err(format!(
                "seed {seed}: faces {:?} disagree",
                bad.iter().map(|f| f.to_string()).collect::<Vec<_>>()
            )));
        }
    }
    Ok(Ok("50 instances, zero mismatches".into()))
}

fn c8_matlis() -> Outcome {
    for seed in 0..20u64 {
        let n = if seed < 14 { 2 } else { 3 };
        let u = oracle::random_upset(7000 + seed, n, if n == 2 { 6 } else { 4 });
        let i: Interval = u.into();
        let a = socle::top_table(&i)?;
        let b = socle::top_table_direct(&i)?;
        if let Some((rho, xi, p)) = socle::table_difference(&a, &b)? {
            return Ok(Err(format!(
                "seed {seed}: ({rho},{xi}) differs at {}",
                pt(&p)
            )));
        }
    }
    Ok(Ok("20 upsets, both routes equal".into()))
}

fn c9_minimality() -> Outcome {
    for (name, d) in [("triangle", triangle()), ("half-plane", half_plane())] {
        let dec = decompose::primary_decomposition(&d.into())?;
        if !decompose::verify_minimality(&dec)?.all_equal() {
            return Ok(Err(format!("{name} not all-equal")));
        }
    }
    let dec = decompose::primary_decomposition(&triangle_plus_ray())?;
    let rep = decompose::verify_minimality(&dec)?;
    let bad: Vec<_> = rep.discrepancies().collect();
    let corner = PlSet::point(&[int(1), int(0)]);
    let pinned = bad.len() == 1
        && bad[0].tau == Face::EMPTY
        && bad[0].sigma == f(&[0])
        && bad[0].missing.is_empty()
        && bad[0].overlap.is_empty()
        && bad[0].extra.len() == 1
        && bad[0].extra[0].0 == Face::EMPTY
        && bad[0].extra[0].1.equals(&corner)?;
    if !pinned {
        return Ok(Err(format!("unexpected report: {}", rep.to_json())));
    }
    Ok(Ok("triangle and half-plane all-equal; triangle-plus-ray: extra (1,0) at ([],[1]) in component []".into()))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        (
            "triangle quotient socle table",
            Some(Duration::from_secs(1)),
            Box::new(c1_triangle),
        ),
        (
            "reconstruction exactness",
            Some(Duration::from_secs(600)),
            Box::new(|| c2_reconstruction(&corpus)),
        ),
        (
            "boundary functor laws",
            None,
            Box::new(|| c3_boundary_laws(&corpus)),
        ),
        (
            "frontier two-route agreement",
            None,
            Box::new(|| c4_frontier(&corpus)),
        ),
        ("density semantics", None, Box::new(c5_density)),
        (
            "discrete oracle",
            Some(Duration::from_secs(60)),
            Box::new(c6_discrete),
        ),
        (
            "real/discrete correspondence",
            None,
            Box::new(c7_real_discrete),
        ),
        ("Matlis duality", None, Box::new(c8_matlis)),
        ("minimality diagnostic", None, Box::new(c9_minimality)),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let dt = t.elapsed();
        let (ok, detail) = match out {
            Ok(Ok(d)) => (true, d),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        let late = limit.is_some_and(|l| dt > l);
        let ok = ok && !late;
        let budget = limit
            .map(|l| format!(" (limit {:.0?})", l))
            .unwrap_or_default();
        println!(
            "criterion {}: {} {name}: {detail} [{dt:.2?}{budget}]",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
        );
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}

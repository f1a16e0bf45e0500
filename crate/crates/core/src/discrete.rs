//! Monomial ideals in `k[N^n]` and their staircases `N^n \ (I + N^n)`:
//! closed cogenerators along faces, canonical primary and irreducible
//! decompositions, and the checks that tie them together.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use serde_json::{json, Value};

use crate::face::Face;
use crate::par;
use crate::{Error, Result};

pub type Exp = Vec<i64>;

/// A monomial ideal given by exponent vectors, kept as a sorted antichain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteIdeal {
    pub n: usize,
    pub generators: Vec<Exp>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealRepr {
    n: usize,
    generators: Vec<Vec<i64>>,
}

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Keep the minimal elements, sorted and deduplicated.
pub fn minimalize(mut gens: Vec<Exp>) -> Vec<Exp> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = gens
        .iter()
        .map(|g| !gens.iter().any(|h| h != g && leq(h, g)))
        .collect();
    gens.into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}

impl DiscreteIdeal {
    pub fn new(n: usize, generators: Vec<Exp>) -> Result<DiscreteIdeal> {
        for g in &generators {
            Error::dims(n, g.len())?;
            if g.iter().any(|&x| x < 0) {
                return Err(Error::Parse(format!(
                    "negative exponent in generator {g:?}"
                )));
            }
        }
        Ok(DiscreteIdeal {
            n,
            generators: minimalize(generators),
        })
    }

    pub fn from_json(v: &Value) -> Result<DiscreteIdeal> {
        let r: IdealRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        DiscreteIdeal::new(r.n, r.generators)
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "generators": self.generators })
    }

    /// Whether the monomial `x^a` lies in the ideal.
    pub fn contains(&self, a: &[i64]) -> bool {
        self.generators.iter().any(|g| leq(g, a))
    }

    /// Whether `a` is a standard monomial (in the staircase).
    pub fn in_staircase(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x >= 0) && !self.contains(a)
    }

    /// Componentwise maximum `B` of the generators.
    pub fn bound(&self) -> Exp {
        (0..self.n)
            .map(|i| self.generators.iter().map(|g| g[i]).max().unwrap_or(0))
            .collect()
    }

    /// Generators of the intersection: pairwise lcms, minimalized.
    pub fn intersect(&self, other: &DiscreteIdeal) -> DiscreteIdeal {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
            }
        }
        DiscreteIdeal {
            n: self.n,
            generators: minimalize(gens),
        }
    }

    pub fn sum(&self, other: &DiscreteIdeal) -> DiscreteIdeal {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        DiscreteIdeal {
            n: self.n,
            generators: minimalize(gens),
        }
    }

    pub fn unit(n: usize) -> DiscreteIdeal {
        DiscreteIdeal {
            n,
            generators: vec![vec![0; n]],
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &DiscreteIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }
}

fn unit_step(a: &[i64], j: usize) -> Exp {
    let mut b = a.to_vec();
    b[j] += 1;
    b
}

/// Every point of the box `lo..=hi`.
fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Exp> {
    let mut out = vec![Vec::new()];
    for (l, h) in lo.iter().zip(hi) {
        let mut next = Vec::with_capacity(out.len() * (h - l + 1).max(0) as usize);
        for p in &out {
            for v in *l..=*h {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Closed cogenerators along `tau`: staircase points `a` with `a + N tau`
/// inside the staircase and `a + e_j` outside for every `j` off `tau`.
/// Representatives have their `tau` coordinates set to `B + 1`, where no
/// generator can constrain them; the other coordinates range over `[-1, B_j]`.
pub fn closed_cogenerators_discrete(ideal: &DiscreteIdeal, tau: Face) -> Vec<Exp> {
    let n = ideal.n;
    let b = ideal.bound();
    let lo: Exp = (0..n)
        .map(|i| if tau.contains(i) { b[i] + 1 } else { -1 })
        .collect();
    let hi: Exp = (0..n)
        .map(|i| if tau.contains(i) { b[i] + 1 } else { b[i] })
        .collect();
    box_points(&lo, &hi)
        .into_iter()
        .filter(|a| {
            ideal.in_staircase(a)
                && tau
                    .complement(n)
                    .coords()
                    .all(|j| !ideal.in_staircase(&unit_step(a, j)))
        })
        .collect()
}

/// Drop the `tau` coordinates: the coset of `a` modulo `Z tau`.
pub fn coset(a: &[i64], tau: Face) -> Exp {
    a.iter()
        .enumerate()
        .filter(|(i, _)| !tau.contains(*i))
        .map(|(_, &x)| x)
        .collect()
}

/// The irreducible ideal `(x_j^(a_j + 1) : j not in tau)` whose staircase is
/// `(a + Z tau - N^n) ∩ N^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Irreducible {
    pub tau: Face,
    pub apex: Exp,
}

impl Irreducible {
    pub fn ideal(&self) -> DiscreteIdeal {
        let n = self.apex.len();
        let gens = self
            .tau
            .complement(n)
            .coords()
            .map(|j| {
                let mut g = vec![0; n];
                g[j] = self.apex[j] + 1;
                g
            })
            .collect();
        DiscreteIdeal {
            n,
            generators: minimalize(gens),
        }
    }

    pub fn covers(&self, b: &[i64]) -> bool {
        b.iter()
            .enumerate()
            .all(|(j, &x)| self.tau.contains(j) || x <= self.apex[j])
    }
}

/// Cogenerator representatives per face; the keys are the associated faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteDecomposition {
    pub n: usize,
    pub components: BTreeMap<Face, Vec<Exp>>,
}

impl DiscreteDecomposition {
    pub fn irreducibles(&self) -> Vec<Irreducible> {
        self.components
            .iter()
            .flat_map(|(&tau, apexes)| {
                apexes.iter().map(move |a| Irreducible {
                    tau,
                    apex: a.clone(),
                })
            })
            .collect()
    }

    /// Membership in the `tau` component `⋃ (a + Z tau - N^n) ∩ I`.
    pub fn component_contains(&self, ideal: &DiscreteIdeal, tau: Face, b: &[i64]) -> bool {
        ideal.in_staircase(b)
            && self.components.get(&tau).is_some_and(|v| {
                v.iter().any(|a| {
                    Irreducible {
                        tau,
                        apex: a.clone(),
                    }
                    .covers(b)
                })
            })
    }

    /// The ideal whose staircase is the `tau` component.
    pub fn component_ideal(&self, ideal: &DiscreteIdeal, tau: Face) -> DiscreteIdeal {
        let mut j = DiscreteIdeal::unit(self.n);
        for a in self.components.get(&tau).into_iter().flatten() {
            j = j.intersect(
                &Irreducible {
                    tau,
                    apex: a.clone(),
                }
                .ideal(),
            );
        }
        j.sum(ideal)
    }
}

pub fn discrete_primary_decomposition(ideal: &DiscreteIdeal) -> DiscreteDecomposition {
    let faces: Vec<Face> = Face::all(ideal.n).collect();
    let found = par::map(&faces, |&t| closed_cogenerators_discrete(ideal, t));
    DiscreteDecomposition {
        n: ideal.n,
        components: faces
            .into_iter()
            .zip(found)
            .filter(|(_, v)| !v.is_empty())
            .collect(),
    }
}

pub fn discrete_irreducible_decomposition(ideal: &DiscreteIdeal) -> Vec<Irreducible> {
    discrete_primary_decomposition(ideal).irreducibles()
}

/// Intersection of the irreducible ideals.
pub fn intersection(n: usize, parts: &[Irreducible]) -> DiscreteIdeal {
    parts
        .iter()
        .fold(DiscreteIdeal::unit(n), |acc, p| acc.intersect(&p.ideal()))
}

/// Union check on the box `[-2, B + 2]^n`.
pub fn union_matches_on_box(ideal: &DiscreteIdeal, d: &DiscreteDecomposition) -> bool {
    let b = ideal.bound();
    let lo = vec![-2; ideal.n];
    let hi: Exp = b.iter().map(|x| x + 2).collect();
    box_points(&lo, &hi).into_iter().all(|p| {
        let inside = d
            .components
            .keys()
            .any(|&t| d.component_contains(ideal, t, &p));
        inside == ideal.in_staircase(&p)
    })
}

/// Union check through generator arithmetic: the irreducible ideals
/// intersect to the ideal.
pub fn union_matches_symbolically(ideal: &DiscreteIdeal, parts: &[Irreducible]) -> bool {
    intersection(ideal.n, parts) == *ideal
}

/// No irreducible piece can be dropped.
pub fn is_irredundant(ideal: &DiscreteIdeal, parts: &[Irreducible]) -> bool {
    (0..parts.len()).all(|k| {
        let rest: Vec<Irreducible> = parts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, p)| p.clone())
            .collect();
        intersection(ideal.n, &rest) != *ideal
    })
}

/// Cogenerator cosets of the base equal the disjoint union of those of the
/// components, face by face, and each component is coprimary for its key.
pub fn socle_isomorphism_check_discrete(ideal: &DiscreteIdeal, d: &DiscreteDecomposition) -> bool {
    let n = ideal.n;
    let mut from_parts: BTreeMap<Face, Vec<Exp>> = BTreeMap::new();
    for &tau in d.components.keys() {
        let j = d.component_ideal(ideal, tau);
        for face in Face::all(n) {
            let cogens = closed_cogenerators_discrete(&j, face);
            if cogens.is_empty() {
                continue;
            }
            if face != tau {
                return false;
            }
            from_parts
                .entry(face)
                .or_default()
                .extend(cogens.iter().map(|a| coset(a, face)));
        }
    }
    for face in Face::all(n) {
        let mut base: Vec<Exp> = closed_cogenerators_discrete(ideal, face)
            .iter()
            .map(|a| coset(a, face))
            .collect();
        let mut parts = from_parts.remove(&face).unwrap_or_default();
        base.sort();
        parts.sort();
        if base != parts {
            return false;
        }
    }
    true
}

/// Irreducible decomposition by repeated splitting of mixed generators,
/// `(I', x_i^c m) = (I', x_i^c) ∩ (I', m)`, followed by removal of pieces
/// that contain another piece. Independent of the cogenerator enumeration.
pub fn irreducible_by_splitting(ideal: &DiscreteIdeal) -> BTreeSet<DiscreteIdeal> {
    fn go(gens: Vec<Exp>, n: usize, out: &mut Vec<DiscreteIdeal>) {
        let gens = minimalize(gens);
        let mixed = gens
            .iter()
            .position(|g| g.iter().filter(|&&x| x > 0).count() > 1);
        match mixed {
            // the unit ideal is not proper; it contributes no piece
            None if gens.iter().any(|g| g.iter().all(|&x| x == 0)) => {}
            None => out.push(DiscreteIdeal {
                n,
                generators: gens,
            }),
            Some(k) => {
                let g = &gens[k];
                let i = g.iter().position(|&x| x > 0).unwrap();
                let mut pure = vec![0; n];
                pure[i] = g[i];
                let mut rest = g.clone();
                rest[i] = 0;
                let mut left = gens.clone();
                left[k] = pure;
                let mut right = gens.clone();
                right[k] = rest;
                go(left, n, out);
                go(right, n, out);
            }
        }
    }
    let mut pieces = Vec::new();
    go(ideal.generators.clone(), ideal.n, &mut pieces);
    pieces.sort_by(|a, b| a.generators.cmp(&b.generators));
    pieces.dedup();
    pieces
        .iter()
        .filter(|p| !pieces.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect()
}

/// Cogenerators by direct scan: staircase points of a larger box whose
/// whole `tau` box of `B + 2` steps stays in the staircase.
pub fn brute_force_cogenerators(ideal: &DiscreteIdeal, tau: Face) -> BTreeSet<Exp> {
    let n = ideal.n;
    let b = ideal.bound();
    let lo = vec![-1; n];
    let hi: Exp = b.iter().map(|x| x + 2).collect();
    let reach = b.iter().max().copied().unwrap_or(0) + 2;
    let steps: Exp = (0..n)
        .map(|i| if tau.contains(i) { reach } else { 0 })
        .collect();
    let walks = box_points(&vec![0; n], &steps);
    box_points(&lo, &hi)
        .into_iter()
        .filter(|a| {
            walks.iter().all(|w| {
                let p: Exp = a.iter().zip(w).map(|(x, y)| x + y).collect();
                ideal.in_staircase(&p)
            }) && tau
                .complement(n)
                .coords()
                .all(|j| ideal.contains(&unit_step(a, j)))
        })
        .map(|a| coset(&a, tau))
        .collect()
}

pub fn decomposition_json(ideal: &DiscreteIdeal, d: &DiscreteDecomposition) -> Value {
    let comps: Vec<Value> = d
        .components
        .iter()
        .map(|(t, v)| {
            json!({
                "tau": t.one_based(),
                "cogenerators": v,
                "cosets": v.iter().map(|a| coset(a, *t)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let irr = d.irreducibles();
    let irr_json: Vec<Value> = irr
        .iter()
        .map(|p| json!({ "tau": p.tau.one_based(), "apex": p.apex, "generators": p.ideal().generators }))
        .collect();
    json!({
        "components": comps,
        "irreducible": irr_json,
        "checks": {
            "union_box": union_matches_on_box(ideal, d),
            "union_symbolic": union_matches_symbolically(ideal, &irr),
            "irredundant": is_irredundant(ideal, &irr),
            "socle_isomorphism": socle_isomorphism_check_discrete(ideal, d),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, g: &[&[i64]]) -> DiscreteIdeal {
        DiscreteIdeal::new(n, g.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn f(c: &[usize]) -> Face {
        Face::from_coords(c.iter().copied())
    }

    #[test]
    fn x_squared_xy() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(
            closed_cogenerators_discrete(&i, Face::EMPTY),
            vec![vec![1, 0]]
        );
        let col = closed_cogenerators_discrete(&i, f(&[1]));
        assert_eq!(
            col.iter().map(|a| coset(a, f(&[1]))).collect::<Vec<_>>(),
            vec![vec![0]]
        );
        assert!(closed_cogenerators_discrete(&i, f(&[0])).is_empty());

        let irr = discrete_irreducible_decomposition(&i);
        let ideals: BTreeSet<DiscreteIdeal> = irr.iter().map(Irreducible::ideal).collect();
        let want: BTreeSet<DiscreteIdeal> =
            [ideal(2, &[&[1, 0]]), ideal(2, &[&[2, 0], &[0, 1]])].into();
        assert_eq!(ideals, want);
        assert_eq!(irreducible_by_splitting(&i), want);
    }

    #[test]
    fn principal_x_has_a_column() {
        let i = ideal(2, &[&[1, 0]]);
        let col = closed_cogenerators_discrete(&i, f(&[1]));
        assert_eq!(
            col.iter().map(|a| coset(a, f(&[1]))).collect::<Vec<_>>(),
            vec![vec![0]]
        );
        assert_eq!(discrete_primary_decomposition(&i).components.len(), 1);
    }

    #[test]
    fn maximal_ideal_is_artinian() {
        let i = ideal(2, &[&[1, 0], &[0, 1]]);
        let d = discrete_primary_decomposition(&i);
        assert_eq!(
            d.components.keys().copied().collect::<Vec<_>>(),
            vec![Face::EMPTY]
        );
        assert_eq!(d.components[&Face::EMPTY], vec![vec![0, 0]]);
        assert!(socle_isomorphism_check_discrete(&i, &d));
    }

    #[test]
    fn three_associated_faces() {
        let i = ideal(2, &[&[2, 1], &[1, 2]]);
        let d = discrete_primary_decomposition(&i);
        let keys: BTreeSet<Face> = d.components.keys().copied().collect();
        assert_eq!(keys, [Face::EMPTY, f(&[0]), f(&[1])].into());
        assert!(union_matches_on_box(&i, &d));
        assert!(socle_isomorphism_check_discrete(&i, &d));
    }

    #[test]
    fn dropping_a_corner_breaks_the_socle_check() {
        let i = ideal(2, &[&[2, 1], &[1, 2]]);
        let mut d = discrete_primary_decomposition(&i);
        d.components.remove(&Face::EMPTY);
        assert!(!socle_isomorphism_check_discrete(&i, &d));
        assert!(!union_matches_on_box(&i, &d));
    }
}

use proptest::prelude::*;
use staircase_core::oracle;
use staircase_core::rational::{frac, int};
use staircase_core::{order, Face, HalfSpace, PlSet, Rational};

fn half_space() -> impl Strategy<Value = HalfSpace> {
    (-2i64..=2, -2i64..=2, -3i64..=3, any::<bool>())
        .prop_filter("non-zero normal", |(a, b, _, _)| *a != 0 || *b != 0)
        .prop_map(|(a, b, c, s)| HalfSpace::new(vec![int(a), int(b)], frac(c, 2), s))
}

fn plset() -> impl Strategy<Value = PlSet> {
    prop::collection::vec(prop::collection::vec(half_space(), 1..4), 0..3)
        .prop_map(|cells| PlSet::from_constraints(2, cells).unwrap())
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-8i64..=8).prop_map(|k| frac(k, 4)), 2)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    /// Boolean operations agree with pointwise logic.
    #[test]
    fn boolean_ops_are_pointwise(a in plset(), b in plset(), pts in prop::collection::vec(point(), 16)) {
        let diff = a.difference(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        let comp = a.complement().unwrap();
        for p in &pts {
            let (x, y) = (a.contains(p), b.contains(p));
            prop_assert_eq!(diff.contains(p), x && !y);
            prop_assert_eq!(meet.contains(p), x && y);
            prop_assert_eq!(comp.contains(p), !x);
        }
        prop_assert!(a.union(&b).unwrap().equals(&b.union(&a).unwrap()).unwrap());
    }

    /// Upper boundaries sit between D and its closure and match shape_at.
    #[test]
    fn boundary_sandwich_and_shape(seed in any::<u64>(), pts in prop::collection::vec(point(), 12)) {
        let d = oracle::random_downset(seed, 2, 4);
        let closure = d.carrier().closure();
        for sigma in Face::all(2) {
            let b = order::upper_boundary(&d, sigma).unwrap();
            prop_assert!(d.carrier().is_subset(b.carrier()).unwrap());
            prop_assert!(b.carrier().is_subset(&closure).unwrap());
            for p in &pts {
                let shape = order::shape_at(&d, p).unwrap();
                prop_assert_eq!(shape.contains(sigma), b.carrier().contains(p));
            }
        }
    }
}

use std::collections::BTreeSet;

use distq::exactq::{enumerate_in, Interval, OrderMap, Orientation, Rational};
use num_bigint::BigUint;
use proptest::prelude::*;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

/// Levels of the extended Stern–Brocot tree, built by inserting mediants
/// between neighbours of the sequence -1/0, 0/1, 1/0. Level `d` holds the
/// rationals of depth `d` in increasing order.
fn mediant_levels(max_depth: usize) -> Vec<Vec<Rational>> {
    // fractions as (numerator, denominator) with the two infinities
    let mut seq: Vec<(i64, i64)> = vec![(-1, 0), (0, 1), (1, 0)];
    let mut levels = vec![vec![Rational::zero()]];
    for _ in 0..max_depth {
        let mut next = Vec::with_capacity(seq.len() * 2);
        let mut fresh = Vec::new();
        for w in seq.windows(2) {
            next.push(w[0]);
            let m = (w[0].0 + w[1].0, w[0].1 + w[1].1);
            fresh.push(r(m.0, m.1));
            next.push(m);
        }
        next.push(*seq.last().unwrap());
        seq = next;
        levels.push(fresh);
    }
    levels
}

fn oracle_enumeration(i: &Interval, levels: &[Vec<Rational>]) -> Vec<Rational> {
    levels
        .iter()
        .flat_map(|level| level.iter().filter(|q| i.contains(q)).cloned())
        .collect()
}

#[test]
fn enumeration_matches_mediant_levels() {
    let levels = mediant_levels(11);
    let intervals = [
        Interval::all(),
        Interval::open(r(0, 1), r(1, 1)).unwrap(),
        Interval::open(r(-3, 1), r(2, 1)).unwrap(),
        Interval::open(r(1, 3), r(1, 2)).unwrap(),
        Interval::open(r(2, 7), r(3, 7)).unwrap(),
        Interval::new(Some(r(5, 2)), None).unwrap(),
        Interval::new(None, Some(r(-4, 3))).unwrap(),
    ];
    for i in &intervals {
        let expected = oracle_enumeration(i, &levels);
        // only the part of the oracle that is complete up to its last level
        let n = expected.len().min(200);
        assert!(n > 20, "{i}: oracle too shallow");
        assert_eq!(enumerate_in(i, n), expected[..n], "{i}");
    }
}

#[test]
fn depth_matches_mediant_levels() {
    for (d, level) in mediant_levels(9).iter().enumerate() {
        for q in level {
            assert_eq!(q.stern_brocot_depth(), BigUint::from(d), "{q}");
        }
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=40).prop_map(|(p, q)| r(p, q))
}

fn interval() -> impl Strategy<Value = Interval> {
    (small_rational(), small_rational(), 0u8..4).prop_filter_map("empty", |(a, b, kind)| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        match kind {
            0 => Interval::open(lo, hi).ok(),
            1 => Interval::new(Some(lo), None).ok(),
            2 => Interval::new(None, Some(hi)).ok(),
            _ => Some(Interval::all()),
        }
    })
}

/// Increasing or decreasing piecewise-linear bijection from a random anchor
/// list.
fn order_map() -> impl Strategy<Value = OrderMap> {
    (
        prop::collection::btree_set(-100i64..100, 0..6),
        prop::collection::vec(1i64..30, 6),
        any::<bool>(),
        1i64..5,
        1i64..5,
    )
        .prop_map(|(xs, steps, decreasing, l, rr)| {
            let mut y = r(0, 1);
            let mut anchors = Vec::new();
            for (x, s) in xs.into_iter().zip(steps) {
                y = &y + &r(s, 3);
                anchors.push((r(x, 2), if decreasing { -y.clone() } else { y.clone() }));
            }
            let orientation = if decreasing {
                Orientation::Decreasing
            } else {
                Orientation::Increasing
            };
            OrderMap::new(anchors, orientation, r(l, 1), r(rr, 2)).unwrap()
        })
}

proptest! {
    #[test]
    fn field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        prop_assert_eq!(&a + &(-&a), Rational::zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert_eq!(&b * &b.recip().unwrap(), Rational::one());
        }
    }

    #[test]
    fn text_and_json_round_trip(a in small_rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
    }

    #[test]
    fn enumeration_is_deterministic_distinct_and_inside(i in interval(), n in 1usize..150) {
        let first = enumerate_in(&i, n);
        prop_assert_eq!(first.len(), n);
        prop_assert_eq!(&first, &enumerate_in(&i, n));
        prop_assert!(first.iter().all(|q| i.contains(q)));
        prop_assert_eq!(first.iter().collect::<BTreeSet<_>>().len(), n);
        prop_assert_eq!(&first[0], &i.simplest());
        // depth never decreases along the enumeration
        prop_assert!(first.windows(2).all(|w| w[0].stern_brocot_depth() <= w[1].stern_brocot_depth()));
        let longer = enumerate_in(&i, n + 10);
        prop_assert_eq!(&longer[..n], &first[..]);
    }

    #[test]
    fn order_maps_are_monotone_bijections(m in order_map()) {
        let samples = enumerate_in(&Interval::open(r(-80, 1), r(80, 1)).unwrap(), 200);
        let inv = m.invert();
        let mut sorted = samples.clone();
        sorted.sort();
        let images: Vec<Rational> = sorted.iter().map(|x| m.apply(x)).collect();
        let increasing = m.orientation() == Orientation::Increasing;
        prop_assert!(images.windows(2).all(|w| (w[0] < w[1]) == increasing));
        for x in &samples {
            prop_assert_eq!(&inv.apply(&m.apply(x)), x);
            prop_assert_eq!(&m.apply(&inv.apply(x)), x);
        }
        prop_assert!(m.compose(&inv).is_identity());
        prop_assert!(inv.compose(&m).is_identity());
    }

    #[test]
    fn composition_applies_inner_first(a in order_map(), b in order_map(), x in small_rational()) {
        prop_assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
    }
}

//! Lazy back-and-forth construction of a non-trivial, colour-preserving
//! order automorphism of ℚ.
//!
//! A [`LazyAut`] is the identity outside a dense region `I*` and, inside it,
//! a finite monotone partial isomorphism (the anchors) that is extended on
//! demand: every image or preimage query for an unseen point picks the
//! first same-coloured rational between the images of its neighbours. Since
//! every colour occurring in `I*` is dense there, each step succeeds, and the
//! union of all extensions is an automorphism of `(ℚ, <)` preserving the
//! colouring.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{
    colour_of, dense_interval, find_in, Colour, ColouringError, ColouringSpec, DenseRegion,
};
use crate::exactq::{Interval, Rational, SternBrocotIter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackForthError {
    #[error(transparent)]
    Inconclusive(#[from] ColouringError),
    #[error("no rational of colour {} found in {interval} within budget {budget} (query {query})", colour.id)]
    BudgetExhausted {
        query: Rational,
        colour: Colour,
        interval: Box<Interval>,
        budget: usize,
    },
    #[error("partial isomorphism invariant broken: {0}")]
    Audit(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Image,
    Preimage,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub direction: Direction,
    pub input: Rational,
    pub output: Rational,
    /// Whether answering the query created a new anchor.
    pub extended: bool,
}

/// Lazily revealed order automorphism of ℚ. Queries mutate the anchor memo,
/// so a value must not be queried from two threads at once.
#[derive(Clone, Debug)]
pub struct LazyAut {
    spec: ColouringSpec,
    region: DenseRegion,
    anchors: Vec<(Rational, Rational)>,
    seed: (Rational, Rational),
    budget: usize,
    log: Vec<QueryRecord>,
    audited_insertions: usize,
}

/// Counters from [`LazyAut::verify`]. Passing means no violations and at
/// least one moved point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutReport {
    pub queries: usize,
    pub order_violations: usize,
    pub colour_violations: usize,
    pub inverse_violations: usize,
    pub moved_points: usize,
}

impl AutReport {
    pub fn passes(&self) -> bool {
        self.order_violations == 0
            && self.colour_violations == 0
            && self.inverse_violations == 0
            && self.moved_points >= 1
    }
}

/// Full replayable record of a refutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub spec: ColouringSpec,
    pub region: DenseRegion,
    pub seed: (Rational, Rational),
    pub budget: usize,
    pub anchors: Vec<(Rational, Rational)>,
    pub queries: Vec<QueryRecord>,
    pub report: AutReport,
}

/// Seeds a lazy automorphism on `region`: `x0` is the first enumerated
/// point of the region, `y0` the first other point of the same colour,
/// searched to the right of `x0` first.
pub fn seed_aut(
    spec: &ColouringSpec,
    region: &DenseRegion,
    budget: usize,
) -> Result<LazyAut, BackForthError> {
    let interval = &region.interval;
    let x0 = interval.simplest();
    let k = colour_of(spec, &x0);
    let right = Interval::new(Some(x0.clone()), interval.upper().cloned())
        .expect("seed lies inside the region");
    let left = Interval::new(interval.lower().cloned(), Some(x0.clone()))
        .expect("seed lies inside the region");
    let y0 = find_in(spec, k, &right, budget)
        .or_else(|| find_in(spec, k, &left, budget))
        .ok_or_else(|| BackForthError::BudgetExhausted {
            query: x0.clone(),
            colour: k,
            interval: Box::new(interval.clone()),
            budget,
        })?;
    let mut aut = LazyAut {
        spec: spec.clone(),
        region: region.clone(),
        anchors: Vec::new(),
        seed: (x0.clone(), y0.clone()),
        budget,
        log: Vec::new(),
        audited_insertions: 0,
    };
    aut.insert(0, x0, y0)?;
    Ok(aut)
}

/// Extracts a dense region for `spec` and seeds a lazy automorphism on it:
/// a non-trivial automorphism of `(ℚ, <)` preserving the colouring.
pub fn refute_order_colouring(
    spec: &ColouringSpec,
    budget: usize,
) -> Result<LazyAut, BackForthError> {
    let region = dense_interval(spec, budget)?;
    seed_aut(spec, &region, budget)
}

impl LazyAut {
    pub fn spec(&self) -> &ColouringSpec {
        &self.spec
    }

    pub fn region(&self) -> &DenseRegion {
        &self.region
    }

    pub fn anchors(&self) -> &[(Rational, Rational)] {
        &self.anchors
    }

    pub fn seed(&self) -> &(Rational, Rational) {
        &self.seed
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn query_log(&self) -> &[QueryRecord] {
        &self.log
    }

    /// Number of anchor insertions checked by the incremental audit.
    pub fn audited_insertions(&self) -> usize {
        self.audited_insertions
    }

    pub fn image(&mut self, q: &Rational) -> Result<Rational, BackForthError> {
        self.query(Direction::Image, q)
    }

    pub fn preimage(&mut self, q: &Rational) -> Result<Rational, BackForthError> {
        self.query(Direction::Preimage, q)
    }

    fn query(&mut self, direction: Direction, q: &Rational) -> Result<Rational, BackForthError> {
        let (output, extended) = self.resolve(direction, q)?;
        self.log.push(QueryRecord {
            direction,
            input: q.clone(),
            output: output.clone(),
            extended,
        });
        Ok(output)
    }

    fn resolve(
        &mut self,
        direction: Direction,
        q: &Rational,
    ) -> Result<(Rational, bool), BackForthError> {
        let interval = &self.region.interval;
        if !interval.contains(q) {
            return Ok((q.clone(), false));
        }
        let key = |a: &(Rational, Rational)| -> Rational {
            match direction {
                Direction::Image => a.0.clone(),
                Direction::Preimage => a.1.clone(),
            }
        };
        let other = |a: &(Rational, Rational)| -> Rational {
            match direction {
                Direction::Image => a.1.clone(),
                Direction::Preimage => a.0.clone(),
            }
        };
        // anchors are sorted in both coordinates
        let idx = self.anchors.partition_point(|a| match direction {
            Direction::Image => a.0 < *q,
            Direction::Preimage => a.1 < *q,
        });
        if let Some(a) = self.anchors.get(idx).filter(|a| key(a) == *q) {
            return Ok((other(a), false));
        }
        let lower = match idx.checked_sub(1) {
            Some(i) => Some(other(&self.anchors[i])),
            None => interval.lower().cloned(),
        };
        let upper = match self.anchors.get(idx) {
            Some(a) => Some(other(a)),
            None => interval.upper().cloned(),
        };
        let gap = Interval::new(lower, upper).map_err(|e| BackForthError::Audit(e.to_string()))?;
        let k = colour_of(&self.spec, q);
        let partner = find_in(&self.spec, k, &gap, self.budget).ok_or_else(|| {
            BackForthError::BudgetExhausted {
                query: q.clone(),
                colour: k,
                interval: Box::new(gap.clone()),
                budget: self.budget,
            }
        })?;
        let pair = match direction {
            Direction::Image => (q.clone(), partner.clone()),
            Direction::Preimage => (partner.clone(), q.clone()),
        };
        self.insert(idx, pair.0, pair.1)?;
        Ok((partner, true))
    }

    fn insert(&mut self, idx: usize, x: Rational, y: Rational) -> Result<(), BackForthError> {
        self.anchors.insert(idx, (x, y));
        if let Err(e) = self.audit_insertion(idx) {
            self.anchors.remove(idx);
            return Err(e);
        }
        self.audited_insertions += 1;
        Ok(())
    }

    /// Local form of the invariants, sufficient when they held before the
    /// insertion at `idx`.
    fn audit_insertion(&self, idx: usize) -> Result<(), BackForthError> {
        let (x, y) = &self.anchors[idx];
        let interval = &self.region.interval;
        if !interval.contains(x) || !interval.contains(y) {
            return Err(BackForthError::Audit(format!(
                "anchor ({x}, {y}) outside {interval}"
            )));
        }
        if colour_of(&self.spec, x) != colour_of(&self.spec, y) {
            return Err(BackForthError::Audit(format!(
                "anchor ({x}, {y}) changes colour"
            )));
        }
        let neighbours = [idx.checked_sub(1), Some(idx + 1)];
        for (n, &other) in neighbours.iter().enumerate() {
            let Some((ox, oy)) = other.and_then(|i| self.anchors.get(i)) else {
                continue;
            };
            let sorted = if n == 0 {
                ox < x && oy < y
            } else {
                x < ox && y < oy
            };
            if !sorted {
                return Err(BackForthError::Audit(format!(
                    "anchors ({ox}, {oy}) and ({x}, {y}) not doubly sorted"
                )));
            }
        }
        if self.seed.0 == self.seed.1 {
            return Err(BackForthError::Audit("seed does not move".into()));
        }
        Ok(())
    }

    /// Full check of the partial-isomorphism invariants over all anchors.
    pub fn audit(&self) -> Result<(), BackForthError> {
        for idx in 0..self.anchors.len() {
            self.audit_insertion(idx)?;
        }
        if !self.anchors.contains(&self.seed) {
            return Err(BackForthError::Audit("seed anchor missing".into()));
        }
        Ok(())
    }

    /// Window twice the width of `I*` on each side, so samples fall both
    /// inside and outside the region.
    fn sample_window(&self) -> Interval {
        let i = &self.region.interval;
        match (i.lower(), i.upper()) {
            (Some(a), Some(b)) => {
                let w = b - a;
                Interval::open(a - &w, b + &w).expect("positive width")
            }
            _ => Interval::all(),
        }
    }

    /// Audits the map on `sample_count` deterministic sample points: order
    /// and colour preservation, image/preimage round trips, and movement.
    pub fn verify(&mut self, sample_count: usize) -> Result<AutReport, BackForthError> {
        let samples: Vec<Rational> = SternBrocotIter::new(&self.sample_window())
            .take(sample_count.max(2))
            .collect();
        let mut report = AutReport::default();
        let mut moved: BTreeSet<Rational> = BTreeSet::new();
        let mut pairs = Vec::with_capacity(samples.len());
        for x in &samples {
            let y = self.image(x)?;
            report.queries += 1;
            if colour_of(&self.spec, x) != colour_of(&self.spec, &y) {
                report.colour_violations += 1;
            }
            if self.preimage(&y)? != *x {
                report.inverse_violations += 1;
            }
            let back = self.preimage(x)?;
            report.queries += 2;
            if self.image(&back)? != *x {
                report.inverse_violations += 1;
            }
            report.queries += 1;
            if y != *x {
                moved.insert(x.clone());
            }
            pairs.push((x.clone(), y));
        }
        report.order_violations = order_violations(pairs);
        moved.extend(
            self.anchors
                .iter()
                .filter(|(x, y)| x != y)
                .map(|(x, _)| x.clone()),
        );
        report.moved_points = moved.len();
        Ok(report)
    }

    pub fn transcript(&self, report: AutReport) -> Transcript {
        Transcript {
            spec: self.spec.clone(),
            region: self.region.clone(),
            seed: self.seed.clone(),
            budget: self.budget,
            anchors: self.anchors.clone(),
            queries: self.log.clone(),
            report,
        }
    }
}

/// Number of pairs `x < x'` among the samples whose images are not in
/// strictly increasing order.
pub fn order_violations(mut pairs: Vec<(Rational, Rational)>) -> usize {
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    pairs.dedup_by(|a, b| a.0 == b.0);
    let mut images: Vec<Rational> = pairs.into_iter().map(|(_, y)| y).collect();
    count_non_increasing_pairs(&mut images)
}

/// Counts pairs `i < j` with `v[i] >= v[j]` by merge sort.
fn count_non_increasing_pairs(v: &mut [Rational]) -> usize {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count =
        count_non_increasing_pairs(&mut v[..mid]) + count_non_increasing_pairs(&mut v[mid..]);
    let mut merged = Vec::with_capacity(n);
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if v[i] < v[j] {
            merged.push(v[i].clone());
            i += 1;
        } else {
            // v[i..mid] are all >= v[j]
            count += mid - i;
            merged.push(v[j].clone());
            j += 1;
        }
    }
    merged.extend_from_slice(&v[i..mid]);
    merged.extend_from_slice(&v[j..n]);
    v.clone_from_slice(&merged);
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{DenomMod, Piecewise};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn three_pieces() -> ColouringSpec {
        Piecewise::new(vec![r("0"), r("1")], vec![0, 1, 0], vec![0, 0], 2)
            .unwrap()
            .into()
    }

    #[test]
    fn seed_is_first_enumerated_pair() {
        let spec = three_pieces();
        let mut aut = refute_order_colouring(&spec, 100).unwrap();
        assert_eq!(aut.seed(), &(r("1/2"), r("2/3")));
        assert_eq!(aut.image(&r("1/2")).unwrap(), r("2/3"));
        assert_eq!(aut.preimage(&r("2/3")).unwrap(), r("1/2"));
    }

    #[test]
    fn identity_outside_region() {
        let mut aut = refute_order_colouring(&three_pieces(), 100).unwrap();
        for q in ["-1", "0", "1", "5/2"] {
            assert_eq!(aut.image(&r(q)).unwrap(), r(q));
            assert_eq!(aut.preimage(&r(q)).unwrap(), r(q));
        }
        assert_eq!(aut.anchors().len(), 1);
    }

    #[test]
    fn constant_colouring_seeds_with_tiny_budget() {
        let spec: ColouringSpec = Piecewise::constant(0, 1).unwrap().into();
        let aut = refute_order_colouring(&spec, 2).unwrap();
        assert_ne!(aut.seed().0, aut.seed().1);
    }

    #[test]
    fn parity_seed_keeps_denominator_parity() {
        let spec: ColouringSpec = DenomMod::new(2, vec![0, 1], 2).unwrap().into();
        let aut = refute_order_colouring(&spec, 1000).unwrap();
        let (x, y) = aut.seed();
        assert_eq!(colour_of(&spec, x), colour_of(&spec, y));
        assert_ne!(x, y);
    }

    #[test]
    fn memoized_queries_replay_identically() {
        let spec: ColouringSpec = DenomMod::new(3, vec![0, 1, 2], 3).unwrap().into();
        let mut aut = refute_order_colouring(&spec, 10_000).unwrap();
        let points: Vec<Rational> = SternBrocotIter::new(&Interval::open(r("-1"), r("2")).unwrap())
            .take(100)
            .collect();
        let first: Vec<Rational> = points.iter().map(|q| aut.image(q).unwrap()).collect();
        let anchors = aut.anchors().len();
        let again: Vec<Rational> = points.iter().map(|q| aut.image(q).unwrap()).collect();
        assert_eq!(first, again);
        assert_eq!(aut.anchors().len(), anchors);
        aut.audit().unwrap();
    }

    #[test]
    fn verify_passes_on_piecewise() {
        let mut aut = refute_order_colouring(&three_pieces(), 100).unwrap();
        let report = aut.verify(200).unwrap();
        assert!(report.passes(), "{report:?}");
        assert!(report.moved_points >= 1);
        assert!(aut.audited_insertions() > 1);
        aut.audit().unwrap();
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        // colour 1 only on denominators divisible by 7; a tiny budget cannot
        // find a partner for 1/7
        let spec: ColouringSpec = DenomMod::new(7, vec![1, 0, 0, 0, 0, 0, 0], 2)
            .unwrap()
            .into();
        let mut aut = refute_order_colouring(&spec, 5000).unwrap();
        aut.budget = 1;
        let err = aut.image(&r("3/7"));
        assert!(
            matches!(err, Err(BackForthError::BudgetExhausted { .. })),
            "{err:?}"
        );
    }

    #[test]
    fn counts_inversions() {
        let v = |xs: &[i64]| xs.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        assert_eq!(count_non_increasing_pairs(&mut v(&[1, 2, 3])), 0);
        assert_eq!(count_non_increasing_pairs(&mut v(&[3, 2, 1])), 3);
        assert_eq!(count_non_increasing_pairs(&mut v(&[1, 1])), 1);
        assert_eq!(count_non_increasing_pairs(&mut v(&[2, 1, 3, 0])), 4);
    }
}

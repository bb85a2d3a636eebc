//! Exact rationals, open intervals, Stern–Brocot enumeration and
//! piecewise-affine monotone bijections of the rationals.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("empty interval: lower bound {lower} is not below upper bound {upper}")]
    EmptyInterval { lower: String, upper: String },
    #[error("invalid order map: {0}")]
    InvalidOrderMap(String),
}

/// An exact rational number, always held in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

/// Canonical constructor: `p/q` reduced, sign carried by the numerator.
pub fn rat(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Rational, ExactError> {
    Rational::new(p, q)
}

impl Rational {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, ExactError> {
        let q = q.into();
        if q.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(p.into(), q)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Rational(self.0.recip()))
    }

    /// Midpoint of two rationals.
    pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
        (a + b) / Rational::integer(2)
    }

    /// Depth in the Stern–Brocot tree extended to all of ℚ (root `0/1`,
    /// `±1/1` at depth 1). Equals the sum of the partial quotients of `|q|`.
    pub fn stern_brocot_depth(&self) -> BigUint {
        let mut a = self.numer().abs();
        let mut b = self.denom().clone();
        let mut depth = BigInt::zero();
        while !b.is_zero() {
            let (quot, rem) = a.div_rem(&b);
            depth += quot;
            a = b;
            b = rem;
        }
        depth
            .to_biguint()
            .expect("partial quotients are nonnegative")
    }

    fn from_big(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse =
            |t: &str| BigInt::from_str(t.trim()).map_err(|_| ExactError::Parse(s.to_string()));
        match s.split_once('/') {
            Some((p, q)) => Rational::new(parse(p)?, parse(q)?),
            None => Ok(Rational::integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational::from_big($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational::from_big($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational::from_big($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational::from_big($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the underlying big rationals.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// An open interval of ℚ; `None` bounds stand for ∓∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lower: Option<Rational>,
    upper: Option<Rational>,
}

impl Interval {
    pub fn new(lower: Option<Rational>, upper: Option<Rational>) -> Result<Self, ExactError> {
        if let (Some(a), Some(b)) = (&lower, &upper) {
            if a >= b {
                return Err(ExactError::EmptyInterval {
                    lower: a.to_string(),
                    upper: b.to_string(),
                });
            }
        }
        Ok(Interval { lower, upper })
    }

    pub fn open(lower: Rational, upper: Rational) -> Result<Self, ExactError> {
        Interval::new(Some(lower), Some(upper))
    }

    pub fn all() -> Self {
        Interval {
            lower: None,
            upper: None,
        }
    }

    pub fn lower(&self) -> Option<&Rational> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&Rational> {
        self.upper.as_ref()
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|a| a < q) && self.upper.as_ref().is_none_or(|b| q < b)
    }

    /// Intersection of two open intervals, `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lower = match (&self.lower, &other.lower) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        let upper = match (&self.upper, &other.upper) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        Interval::new(lower, upper).ok()
    }

    /// The rational of least Stern–Brocot depth inside the interval.
    pub fn simplest(&self) -> Rational {
        SbNode::simplest_in(self).value()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            Some(a) => write!(f, "({a}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match &self.upper {
            Some(b) => write!(f, "{b})"),
            None => write!(f, "+inf)"),
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.lower, &self.upper).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (lower, upper) = <(Option<Rational>, Option<Rational>)>::deserialize(deserializer)?;
        Interval::new(lower, upper).map_err(serde::de::Error::custom)
    }
}

/// Stern–Brocot fraction `p/q` with `q >= 0`; `±1/0` are the infinities.
#[derive(Clone, Debug)]
struct Frac {
    p: BigInt,
    q: BigInt,
}

impl Frac {
    fn neg_inf() -> Self {
        Frac {
            p: BigInt::from(-1),
            q: BigInt::zero(),
        }
    }

    fn pos_inf() -> Self {
        Frac {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    fn zero() -> Self {
        Frac {
            p: BigInt::zero(),
            q: BigInt::one(),
        }
    }

    fn add_scaled(&self, k: &BigInt, other: &Frac) -> Frac {
        Frac {
            p: &self.p + k * &other.p,
            q: &self.q + k * &other.q,
        }
    }

    fn mediant(&self, other: &Frac) -> Frac {
        self.add_scaled(&BigInt::one(), other)
    }

    fn cmp_rational(&self, r: &Rational) -> Ordering {
        (&self.p * r.denom()).cmp(&(r.numer() * &self.q))
    }

    fn to_rational(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("finite Stern–Brocot node")
    }
}

/// A node of the extended Stern–Brocot tree, given by the two fractions
/// bounding its subtree. Its value is their mediant (or `0/1` at the root).
#[derive(Clone, Debug)]
struct SbNode {
    left: Frac,
    right: Frac,
}

impl SbNode {
    fn root() -> Self {
        SbNode {
            left: Frac::neg_inf(),
            right: Frac::pos_inf(),
        }
    }

    fn is_root(&self) -> bool {
        self.left.q.is_zero() && self.right.q.is_zero()
    }

    fn value_frac(&self) -> Frac {
        if self.is_root() {
            Frac::zero()
        } else {
            self.left.mediant(&self.right)
        }
    }

    fn value(&self) -> Rational {
        self.value_frac().to_rational()
    }

    fn children(&self) -> (SbNode, SbNode) {
        let m = self.value_frac();
        (
            SbNode {
                left: self.left.clone(),
                right: m.clone(),
            },
            SbNode {
                left: m,
                right: self.right.clone(),
            },
        )
    }

    /// Whether the open range of this subtree meets the interval.
    fn meets(&self, i: &Interval) -> bool {
        i.upper
            .as_ref()
            .is_none_or(|b| self.left.cmp_rational(b) == Ordering::Less)
            && i.lower
                .as_ref()
                .is_none_or(|a| self.right.cmp_rational(a) == Ordering::Greater)
    }

    /// Descends to the shallowest node inside `i`, skipping runs of
    /// same-direction moves in one step.
    fn simplest_in(i: &Interval) -> SbNode {
        let zero = Rational::zero();
        if i.contains(&zero) {
            return SbNode::root();
        }
        let mut node = if i.lower.as_ref().is_some_and(|a| *a >= zero) {
            SbNode {
                left: Frac::zero(),
                right: Frac::pos_inf(),
            }
        } else {
            SbNode {
                left: Frac::neg_inf(),
                right: Frac::zero(),
            }
        };
        loop {
            let m = node.value_frac();
            if let Some(a) = i
                .lower
                .as_ref()
                .filter(|a| m.cmp_rational(a) != Ordering::Greater)
            {
                // least k >= 1 with left + k*right > a
                let (n, d) = (a.numer(), a.denom());
                let num = n * &node.left.q - d * &node.left.p;
                let den = d * &node.right.p - n * &node.right.q;
                let k = num.div_floor(&den) + 1;
                node.left = node.left.add_scaled(&(k - 1), &node.right);
            } else if let Some(b) = i
                .upper
                .as_ref()
                .filter(|b| m.cmp_rational(b) != Ordering::Less)
            {
                // least k >= 1 with k*left + right < b
                let (n, d) = (b.numer(), b.denom());
                let num = d * &node.right.p - n * &node.right.q;
                let den = n * &node.left.q - d * &node.left.p;
                let k = num.div_floor(&den) + 1;
                node.right = node.right.add_scaled(&(k - 1), &node.left);
            } else {
                return node;
            }
        }
    }
}

/// Lazy breadth-first Stern–Brocot enumeration of the rationals inside an
/// interval. Values come out in increasing (depth, value) order, and every
/// rational of the interval is eventually produced.
#[derive(Clone, Debug)]
pub struct SternBrocotIter {
    interval: Interval,
    queue: VecDeque<SbNode>,
}

impl SternBrocotIter {
    pub fn new(interval: &Interval) -> Self {
        let mut queue = VecDeque::new();
        queue.push_back(SbNode::simplest_in(interval));
        SternBrocotIter {
            interval: interval.clone(),
            queue,
        }
    }
}

impl Iterator for SternBrocotIter {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        // the queue never empties: every queued subtree meets the interval
        while let Some(node) = self.queue.pop_front() {
            let (l, r) = node.children();
            if l.meets(&self.interval) {
                self.queue.push_back(l);
            }
            if r.meets(&self.interval) {
                self.queue.push_back(r);
            }
            let v = node.value();
            if self.interval.contains(&v) {
                return Some(v);
            }
        }
        None
    }
}

/// The first `budget` rationals of the deterministic enumeration of `i`.
pub fn enumerate_in(i: &Interval, budget: usize) -> Vec<Rational> {
    SternBrocotIter::new(i).take(budget).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Increasing,
    Decreasing,
}

impl Orientation {
    fn sign(self) -> Rational {
        match self {
            Orientation::Increasing => Rational::one(),
            Orientation::Decreasing => -Rational::one(),
        }
    }

    fn compose(self, other: Orientation) -> Orientation {
        if self == other {
            Orientation::Increasing
        } else {
            Orientation::Decreasing
        }
    }
}

/// A strictly monotone, continuous, piecewise-affine bijection of ℚ.
///
/// Between consecutive anchors the map interpolates linearly; beyond the
/// outermost anchors it continues with the (unsigned) tail slopes, signed by
/// the orientation. An empty anchor list is read as the single anchor
/// `(0, 0)`, so the identity is `{[], increasing, 1, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOrderMap")]
pub struct OrderMap {
    anchors: Vec<(Rational, Rational)>,
    orientation: Orientation,
    left_slope: Rational,
    right_slope: Rational,
}

#[derive(Deserialize)]
struct RawOrderMap {
    anchors: Vec<(Rational, Rational)>,
    orientation: Orientation,
    left_slope: Rational,
    right_slope: Rational,
}

impl TryFrom<RawOrderMap> for OrderMap {
    type Error = ExactError;
    fn try_from(raw: RawOrderMap) -> Result<Self, Self::Error> {
        OrderMap::new(
            raw.anchors,
            raw.orientation,
            raw.left_slope,
            raw.right_slope,
        )
    }
}

impl OrderMap {
    pub fn new(
        anchors: Vec<(Rational, Rational)>,
        orientation: Orientation,
        left_slope: Rational,
        right_slope: Rational,
    ) -> Result<Self, ExactError> {
        if !left_slope.is_positive() || !right_slope.is_positive() {
            return Err(ExactError::InvalidOrderMap(
                "tail slopes must be positive".into(),
            ));
        }
        for w in anchors.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            if x0 >= x1 {
                return Err(ExactError::InvalidOrderMap(format!(
                    "anchor x-coordinates not strictly increasing at {x0}, {x1}"
                )));
            }
            let monotone = match orientation {
                Orientation::Increasing => y0 < y1,
                Orientation::Decreasing => y0 > y1,
            };
            if !monotone {
                return Err(ExactError::InvalidOrderMap(format!(
                    "anchor y-coordinates not strictly {orientation:?} at {y0}, {y1}"
                )));
            }
        }
        Ok(OrderMap {
            anchors,
            orientation,
            left_slope,
            right_slope,
        }
        .normalized())
    }

    pub fn identity() -> Self {
        OrderMap {
            anchors: Vec::new(),
            orientation: Orientation::Increasing,
            left_slope: Rational::one(),
            right_slope: Rational::one(),
        }
    }

    /// `x ↦ slope·x + intercept`; the slope must be nonzero.
    pub fn affine(slope: Rational, intercept: Rational) -> Result<Self, ExactError> {
        let orientation = if slope.is_positive() {
            Orientation::Increasing
        } else if slope.is_negative() {
            Orientation::Decreasing
        } else {
            return Err(ExactError::InvalidOrderMap("zero slope".into()));
        };
        let s = slope.abs();
        OrderMap::new(
            vec![(Rational::zero(), intercept)],
            orientation,
            s.clone(),
            s,
        )
    }

    /// `x ↦ −x`.
    pub fn negation() -> Self {
        OrderMap::affine(-Rational::one(), Rational::zero()).expect("nonzero slope")
    }

    pub fn anchors(&self) -> &[(Rational, Rational)] {
        &self.anchors
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn left_slope(&self) -> &Rational {
        &self.left_slope
    }

    pub fn right_slope(&self) -> &Rational {
        &self.right_slope
    }

    pub fn is_identity(&self) -> bool {
        *self == OrderMap::identity()
    }

    fn effective_anchors(&self) -> std::borrow::Cow<'_, [(Rational, Rational)]> {
        if self.anchors.is_empty() {
            std::borrow::Cow::Owned(vec![(Rational::zero(), Rational::zero())])
        } else {
            std::borrow::Cow::Borrowed(&self.anchors)
        }
    }

    /// Exact image of `q`.
    pub fn apply(&self, q: &Rational) -> Rational {
        let anchors = self.effective_anchors();
        let sign = self.orientation.sign();
        let (first, last) = (&anchors[0], &anchors[anchors.len() - 1]);
        if *q <= first.0 {
            return &first.1 + &sign * &self.left_slope * (q - &first.0);
        }
        if *q >= last.0 {
            return &last.1 + &sign * &self.right_slope * (q - &last.0);
        }
        let idx = anchors.partition_point(|(x, _)| x <= q);
        let (x0, y0) = &anchors[idx - 1];
        let (x1, y1) = &anchors[idx];
        y0 + (y1 - y0) * (q - x0) / (x1 - x0)
    }

    /// Exact inverse map.
    pub fn invert(&self) -> OrderMap {
        let mut anchors: Vec<_> = self
            .anchors
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        let (left, right) = match self.orientation {
            Orientation::Increasing => (&self.left_slope, &self.right_slope),
            Orientation::Decreasing => {
                anchors.reverse();
                (&self.right_slope, &self.left_slope)
            }
        };
        OrderMap {
            anchors,
            orientation: self.orientation,
            left_slope: left.recip().expect("positive slope"),
            right_slope: right.recip().expect("positive slope"),
        }
        .normalized()
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &OrderMap) -> OrderMap {
        // an empty anchor list still breaks at the implicit anchor (0, 0)
        let mut xs: Vec<Rational> = inner
            .effective_anchors()
            .iter()
            .map(|(x, _)| x.clone())
            .collect();
        let inner_inv = inner.invert();
        xs.extend(
            self.effective_anchors()
                .iter()
                .map(|(x, _)| inner_inv.apply(x)),
        );
        xs.sort();
        xs.dedup();
        let orientation = self.orientation.compose(inner.orientation);
        let anchors: Vec<_> = xs
            .into_iter()
            .map(|x| {
                let y = self.apply(&inner.apply(&x));
                (x, y)
            })
            .collect();
        let (outer_left, outer_right) = match inner.orientation {
            Orientation::Increasing => (&self.left_slope, &self.right_slope),
            Orientation::Decreasing => (&self.right_slope, &self.left_slope),
        };
        OrderMap {
            anchors,
            orientation,
            left_slope: outer_left * &inner.left_slope,
            right_slope: outer_right * &inner.right_slope,
        }
        .normalized()
    }

    /// Drops anchors where the slope does not change, and rewrites a purely
    /// affine map to its canonical anchor at `x = 0`.
    fn normalized(mut self) -> OrderMap {
        let sign = self.orientation.sign();
        let abs_slope = |a: &(Rational, Rational), b: &(Rational, Rational)| {
            ((&b.1 - &a.1) / (&b.0 - &a.0)) * &sign
        };
        let mut kept: Vec<(Rational, Rational)> = Vec::with_capacity(self.anchors.len());
        let n = self.anchors.len();
        for idx in 0..n {
            let before = match kept.last() {
                Some(prev) => abs_slope(prev, &self.anchors[idx]),
                None => self.left_slope.clone(),
            };
            let after = if idx + 1 < n {
                abs_slope(&self.anchors[idx], &self.anchors[idx + 1])
            } else {
                self.right_slope.clone()
            };
            if before != after {
                kept.push(self.anchors[idx].clone());
            }
        }
        // every anchor was collinear: the map is affine
        if kept.is_empty() && n > 0 {
            let (x, y) = &self.anchors[0];
            let intercept = y - &sign * &self.left_slope * x;
            if !intercept.is_zero() {
                kept.push((Rational::zero(), intercept));
            }
        }
        if kept.len() == 1
            && self.left_slope == self.right_slope
            && kept[0].0.is_zero()
            && kept[0].1.is_zero()
        {
            kept.clear();
        }
        self.anchors = kept;
        self
    }
}

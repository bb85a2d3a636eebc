//! The half-graph on two copies of ℚ, with `q+ ~ r-` exactly when `q < r`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autgrp::{automorphisms, AutError, Permutation, DEFAULT_ORDER_CAP};
use crate::backforth::{refute_order_colouring, AutReport, BackForthError, LazyAut, Transcript};
use crate::colouring::{colour_of, pair_colouring, ColouringSpec};
use crate::exactq::{ExactError, Interval, OrderMap, Orientation, Rational, SternBrocotIter};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("support must be nonempty and strictly increasing")]
    BadSupport,
    #[error("target {0} is not an arc of the half-graph")]
    NotAnArc(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    BackForth(#[from] BackForthError),
    #[error(transparent)]
    Aut(#[from] AutError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub q: Rational,
    pub side: Side,
}

impl Vertex {
    pub fn plus(q: Rational) -> Self {
        Vertex {
            q,
            side: Side::Plus,
        }
    }

    pub fn minus(q: Rational) -> Self {
        Vertex {
            q,
            side: Side::Minus,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Plus => '+',
            Side::Minus => '-',
        };
        write!(f, "{}{s}", self.q)
    }
}

/// The edge rule of the half-graph.
pub fn half_graph_adjacent(u: &Vertex, v: &Vertex) -> bool {
    match (u.side, v.side) {
        (Side::Plus, Side::Minus) => u.q < v.q,
        (Side::Minus, Side::Plus) => v.q < u.q,
        _ => false,
    }
}

/// A finite simple graph on `0..n`, optionally labelled by half-graph
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    labels: Option<Vec<Vertex>>,
    neighbours: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl FiniteGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut matrix = vec![false; n * n];
        let mut neighbours = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::Invalid(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(GraphError::Invalid(format!("loop at vertex {u}")));
            }
            if matrix[u * n + v] {
                return Err(GraphError::Invalid(format!("repeated edge ({u}, {v})")));
            }
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
            neighbours[u].push(v);
            neighbours[v].push(u);
        }
        for list in &mut neighbours {
            list.sort_unstable();
        }
        Ok(FiniteGraph {
            labels: None,
            neighbours,
            matrix,
        })
    }

    /// Labelled graph; without explicit edges they are generated from the
    /// half-graph rule.
    pub fn labelled(
        vertices: Vec<Vertex>,
        edges: Option<&[(usize, usize)]>,
    ) -> Result<Self, GraphError> {
        if vertices.iter().collect::<BTreeSet<_>>().len() != vertices.len() {
            return Err(GraphError::Invalid("duplicate vertex label".into()));
        }
        let generated;
        let edges = match edges {
            Some(e) => e,
            None => {
                generated = rule_edges(&vertices);
                &generated
            }
        };
        let mut g = FiniteGraph::new(vertices.len(), edges)?;
        g.labels = Some(vertices);
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        FiniteGraph::new(n, &edges).expect("simple graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        FiniteGraph::new(n, &edges).expect("simple graph")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        FiniteGraph::new(n, &edges).expect("simple graph")
    }

    pub fn n(&self) -> usize {
        self.neighbours.len()
    }

    pub fn labels(&self) -> Option<&[Vertex]> {
        self.labels.as_deref()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n() + v]
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.neighbours[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.neighbours[u]
                    .iter()
                    .filter(move |&&v| u < v)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Whether `p` maps edges onto edges (and hence non-edges onto non-edges).
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.len() == self.n()
            && self
                .edges()
                .into_iter()
                .all(|(u, v)| self.adjacent(p.apply(u), p.apply(v)))
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|w| w == v)
    }

    pub fn to_file(&self) -> GraphFile {
        let edges = self.edges().into_iter().map(|(u, v)| [u, v]).collect();
        match &self.labels {
            Some(vertices) => GraphFile::Labelled {
                vertices: vertices.clone(),
                edges: Some(edges),
            },
            None => GraphFile::Plain { n: self.n(), edges },
        }
    }
}

fn rule_edges(vertices: &[Vertex]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        for (j, v) in vertices.iter().enumerate().skip(i + 1) {
            if half_graph_adjacent(u, v) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// JSON graph formats: labelled half-graph vertices, or a plain edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphFile {
    Labelled {
        vertices: Vec<Vertex>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edges: Option<Vec<[usize; 2]>>,
    },
    Plain {
        n: usize,
        edges: Vec<[usize; 2]>,
    },
}

impl TryFrom<GraphFile> for FiniteGraph {
    type Error = GraphError;
    fn try_from(file: GraphFile) -> Result<Self, GraphError> {
        let pairs =
            |edges: Vec<[usize; 2]>| edges.into_iter().map(|[u, v]| (u, v)).collect::<Vec<_>>();
        match file {
            GraphFile::Labelled { vertices, edges } => {
                let edges = edges.map(pairs);
                FiniteGraph::labelled(vertices, edges.as_deref())
            }
            GraphFile::Plain { n, edges } => FiniteGraph::new(n, &pairs(edges)),
        }
    }
}

fn check_support(support: &[Rational]) -> Result<(), GraphError> {
    if support.is_empty() || support.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GraphError::BadSupport);
    }
    Ok(())
}

/// Induced subgraph on `{q+ : q ∈ plus} ∪ {r- : r ∈ minus}`; plus copies
/// come first, each side in increasing order.
pub fn truncation_asymmetric(
    plus: &[Rational],
    minus: &[Rational],
) -> Result<FiniteGraph, GraphError> {
    check_support(plus)?;
    check_support(minus)?;
    let vertices: Vec<Vertex> = plus
        .iter()
        .cloned()
        .map(Vertex::plus)
        .chain(minus.iter().cloned().map(Vertex::minus))
        .collect();
    FiniteGraph::labelled(vertices, None)
}

/// Truncation on both copies of the same support: vertex `i` is
/// `support[i]+` and vertex `n + i` is `support[i]-`.
pub fn truncation(support: &[Rational]) -> Result<FiniteGraph, GraphError> {
    truncation_asymmetric(support, support)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavour {
    /// `q± ↦ γ(q)±`
    Up,
    /// `q+ ↦ (−γ(q))-`, `q- ↦ (−γ(q))+`
    Down,
}

#[derive(Clone, Debug)]
pub enum OrderPart {
    Map(OrderMap),
    Lazy(Box<LazyAut>),
}

impl OrderPart {
    fn image(&mut self, q: &Rational) -> Result<Rational, BackForthError> {
        match self {
            OrderPart::Map(m) => Ok(m.apply(q)),
            OrderPart::Lazy(a) => a.image(q),
        }
    }
}

/// Automorphism of the half-graph lifted from an order automorphism `γ`.
#[derive(Clone, Debug)]
pub struct GraphAut {
    pub order_part: OrderPart,
    pub flavour: Flavour,
}

impl GraphAut {
    pub fn new(gamma: OrderMap, flavour: Flavour) -> Result<Self, GraphError> {
        if gamma.orientation() != Orientation::Increasing {
            return Err(GraphError::Invalid(
                "order part of a lift must be increasing".into(),
            ));
        }
        Ok(GraphAut {
            order_part: OrderPart::Map(gamma),
            flavour,
        })
    }

    pub fn lazy(aut: LazyAut, flavour: Flavour) -> Self {
        GraphAut {
            order_part: OrderPart::Lazy(Box::new(aut)),
            flavour,
        }
    }

    pub fn order_map(&self) -> Option<&OrderMap> {
        match &self.order_part {
            OrderPart::Map(m) => Some(m),
            OrderPart::Lazy(_) => None,
        }
    }

    pub fn apply(&mut self, v: &Vertex) -> Result<Vertex, BackForthError> {
        let g = self.order_part.image(&v.q)?;
        Ok(match self.flavour {
            Flavour::Up => Vertex { q: g, side: v.side },
            Flavour::Down => Vertex {
                q: -g,
                side: v.side.other(),
            },
        })
    }
}

pub fn aut_apply(a: &mut GraphAut, v: &Vertex) -> Result<Vertex, BackForthError> {
    a.apply(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcKind {
    /// the arc `(q+, r-)`, present when `q < r`
    PlusToMinus,
    /// the arc `(q-, r+)`, present when `r < q`
    MinusToPlus,
}

/// Lift mapping the base arc `(0+, 1-)` onto the given arc.
pub fn arc_witness(q: &Rational, r: &Rational, kind: ArcKind) -> Result<GraphAut, GraphError> {
    let not_arc = || {
        let (a, b) = match kind {
            ArcKind::PlusToMinus => (Vertex::plus(q.clone()), Vertex::minus(r.clone())),
            ArcKind::MinusToPlus => (Vertex::minus(q.clone()), Vertex::plus(r.clone())),
        };
        GraphError::NotAnArc(format!("({a}, {b})"))
    };
    match kind {
        ArcKind::PlusToMinus => {
            if q >= r {
                return Err(not_arc());
            }
            // γ(x) = q + (r − q)x
            GraphAut::new(OrderMap::affine(r - q, q.clone())?, Flavour::Up)
        }
        ArcKind::MinusToPlus => {
            if r >= q {
                return Err(not_arc());
            }
            // γ(x) = −q + (q − r)x
            GraphAut::new(OrderMap::affine(q - r, -q)?, Flavour::Down)
        }
    }
}

/// Whether the lift maps the truncation on `support` edge-bijectively onto
/// the truncation on the image support (`γ(S)` for `Up`, `−γ(S)` for `Down`).
pub fn lift_maps_truncation(a: &mut GraphAut, support: &[Rational]) -> Result<bool, GraphError> {
    let g = truncation(support)?;
    let labels = g.labels().expect("truncations are labelled");
    let images = labels
        .iter()
        .map(|v| a.apply(v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut image_support: Vec<Rational> = images.iter().map(|v| v.q.clone()).collect();
    image_support.sort();
    image_support.dedup();
    let target = truncation(&image_support)?;
    let Some(index) = images
        .iter()
        .map(|v| target.index_of(v))
        .collect::<Option<Vec<usize>>>()
    else {
        return Ok(false);
    };
    let Ok(p) = Permutation::from_images(index) else {
        return Ok(false);
    };
    let preserved = (0..g.n())
        .all(|u| (0..g.n()).all(|v| g.adjacent(u, v) == target.adjacent(p.apply(u), p.apply(v))));
    Ok(preserved && g.edge_count() == target.edge_count())
}

/// Per-item results of the structural checks on one truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub support: Vec<Rational>,
    pub bipartite: bool,
    pub order_neighbourhood: bool,
    pub minus_intersection: bool,
    pub predicted_group: bool,
    pub group_order: usize,
    pub predicted_order: usize,
    /// Pairs `(q, r)` where `q ≥ r ⇔ N(q+) ⊆ N(r+)` fails.
    pub order_failures: Vec<(Rational, Rational)>,
    /// Support points where the minus-neighbourhood identity fails.
    pub intersection_failures: Vec<Rational>,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.bipartite
            && self.order_neighbourhood
            && self.minus_intersection
            && self.predicted_group
    }
}

/// Expected automorphism group of a symmetric truncation on `n` points:
/// identity, the swap of the isolated vertices `max+` and `min-`, the
/// reversal `q_i± ↦ q_{n+1-i}∓`, and their product.
pub fn predicted_group(n: usize) -> Vec<Permutation> {
    let swap = Permutation::from_images((0..2 * n).map(|v| {
        if v == n - 1 {
            n
        } else if v == n {
            n - 1
        } else {
            v
        }
    }))
    .expect("transposition");
    let reversal = Permutation::from_images((0..2 * n).map(|v| {
        if v < n {
            n + (n - 1 - v)
        } else {
            n - 1 - (v - n)
        }
    }))
    .expect("involution");
    let mut group: BTreeSet<Permutation> = BTreeSet::new();
    group.insert(Permutation::identity(2 * n));
    group.insert(swap.then(&reversal));
    group.insert(swap);
    group.insert(reversal);
    group.into_iter().collect()
}

pub fn check_structure(support: &[Rational]) -> Result<StructureReport, GraphError> {
    let g = truncation(support)?;
    let n = support.len();
    let plus = |i: usize| i;
    let minus = |i: usize| n + i;
    let nbhd = |v: usize| g.neighbours(v).iter().copied().collect::<BTreeSet<usize>>();

    let bipartite = g.edges().into_iter().all(|(u, v)| (u < n) != (v < n));

    let mut order_failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let contained = nbhd(plus(i)).is_subset(&nbhd(plus(j)));
            if (support[i] >= support[j]) != contained {
                order_failures.push((support[i].clone(), support[j].clone()));
            }
        }
    }

    let mut intersection_failures = Vec::new();
    for (i, q) in support.iter().enumerate().take(n - 1) {
        let mut common: Option<BTreeSet<usize>> = None;
        for &v in g.neighbours(plus(i)) {
            let nv = nbhd(v);
            common = Some(match common {
                Some(c) => c.intersection(&nv).copied().collect(),
                None => nv,
            });
        }
        let mut common = common.expect("non-maximal point has a neighbour");
        common.remove(&plus(i));
        if common != nbhd(minus(i)) {
            intersection_failures.push(q.clone());
        }
    }

    let group = automorphisms(&g, DEFAULT_ORDER_CAP)?;
    let predicted = predicted_group(n);
    Ok(StructureReport {
        support: support.to_vec(),
        bipartite,
        order_neighbourhood: order_failures.is_empty(),
        minus_intersection: intersection_failures.is_empty(),
        predicted_group: group.elements() == predicted.as_slice(),
        group_order: group.order(),
        predicted_order: predicted.len(),
        order_failures,
        intersection_failures,
    })
}

/// Sampled audit of a graph automorphism against the vertex colouring
/// `q+ ↦ cplus(q)`, `q- ↦ cminus(q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphAutReport {
    pub vertex_samples: usize,
    pub colour_violations: usize,
    /// Ordered (plus, minus) sample pairs whose adjacency is not preserved.
    pub adjacency_violations: usize,
    pub moved_vertices: usize,
    pub pair_alphabet: u32,
    pub alphabet_bound: u32,
}

impl GraphAutReport {
    pub fn passes(&self) -> bool {
        self.colour_violations == 0
            && self.adjacency_violations == 0
            && self.moved_vertices >= 1
            && self.pair_alphabet <= self.alphabet_bound
    }
}

pub struct GraphRefutation {
    pub witness: GraphAut,
    pub order_report: AutReport,
    pub graph_report: GraphAutReport,
}

impl GraphRefutation {
    pub fn passes(&self) -> bool {
        self.order_report.passes() && self.graph_report.passes()
    }

    /// Transcript of the underlying lazy order automorphism.
    pub fn transcript(&self) -> Option<Transcript> {
        match &self.witness.order_part {
            OrderPart::Lazy(a) => Some(a.transcript(self.order_report.clone())),
            OrderPart::Map(_) => None,
        }
    }
}

/// Builds a non-trivial `γ↑` preserving both colourings, by refuting the
/// pair colouring `q ↦ (cplus(q), cminus(q))` as a colouring of `(ℚ, <)`,
/// and audits it on `samples` vertices of each side.
pub fn refute_graph_colouring(
    cplus: &ColouringSpec,
    cminus: &ColouringSpec,
    budget: usize,
    samples: usize,
) -> Result<GraphRefutation, GraphError> {
    let pair = pair_colouring(cplus, cminus);
    let mut lazy = refute_order_colouring(&pair, budget)?;
    let order_report = lazy.verify(samples)?;
    let n = cplus.alphabet().max(cminus.alphabet());

    let window = {
        let i = &lazy.region().interval;
        match (i.lower(), i.upper()) {
            (Some(a), Some(b)) => {
                let w = b - a;
                Interval::open(a - &w, b + &w)?
            }
            _ => Interval::all(),
        }
    };
    let points: Vec<Rational> = SternBrocotIter::new(&window).take(samples.max(2)).collect();
    let mut witness = GraphAut::lazy(lazy, Flavour::Up);
    let mut report = GraphAutReport {
        pair_alphabet: pair.alphabet(),
        alphabet_bound: n * n,
        ..GraphAutReport::default()
    };
    let colour = |v: &Vertex| match v.side {
        Side::Plus => colour_of(cplus, &v.q),
        Side::Minus => colour_of(cminus, &v.q),
    };
    let mut images: BTreeMap<Rational, Rational> = BTreeMap::new();
    for q in &points {
        for v in [Vertex::plus(q.clone()), Vertex::minus(q.clone())] {
            let w = witness.apply(&v)?;
            report.vertex_samples += 1;
            if colour(&v) != colour(&w) {
                report.colour_violations += 1;
            }
            if v != w {
                report.moved_vertices += 1;
            }
            images.insert(v.q.clone(), w.q);
        }
    }
    // q+ ~ r- iff q < r, so adjacency between sampled plus and minus copies
    // is preserved exactly when the order on samples is.
    let mut adjacency_violations = 0;
    let sampled: Vec<(&Rational, &Rational)> = images.iter().collect();
    for (i, &(q, gq)) in sampled.iter().enumerate() {
        for &(r, gr) in &sampled[i + 1..] {
            // (q+, r-) and (r+, q-)
            if (q < r) != (gq < gr) {
                adjacency_violations += 1;
            }
            if (r < q) != (gr < gq) {
                adjacency_violations += 1;
            }
        }
    }
    report.adjacency_violations = adjacency_violations;
    Ok(GraphRefutation {
        witness,
        order_report,
        graph_report: report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{DenomMod, Piecewise};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn support(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| r(s)).collect()
    }

    #[test]
    fn truncation_edges_follow_rule() {
        let g = truncation(&support(&["1", "2", "3"])).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edges(), vec![(0, 4), (0, 5), (1, 5)]);
        let single = truncation(&support(&["7/2"])).unwrap();
        assert_eq!(single.edge_count(), 0);
        assert!(truncation(&support(&["2", "1"])).is_err());
        assert!(truncation(&support(&["1", "1"])).is_err());
        assert!(truncation(&[]).is_err());
    }

    #[test]
    fn figure_shape_edges_go_from_smaller_plus_to_larger_minus() {
        let s = support(&["-1", "0", "1/3", "1/2", "1", "5/2"]);
        let g = truncation(&s).unwrap();
        assert_eq!(g.edge_count(), 15);
        let labels = g.labels().unwrap();
        for (u, v) in g.edges() {
            let (a, b) = (&labels[u], &labels[v]);
            assert_eq!((a.side, b.side), (Side::Plus, Side::Minus));
            assert!(a.q < b.q);
        }
    }

    #[test]
    fn asymmetric_truncation() {
        let g = truncation_asymmetric(&support(&["0"]), &support(&["1", "2"])).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn lifts_act_per_flavour() {
        let mut up_id = GraphAut::new(OrderMap::identity(), Flavour::Up).unwrap();
        let v = Vertex::plus(r("3/4"));
        assert_eq!(up_id.apply(&v).unwrap(), v);

        let mut down_id = GraphAut::new(OrderMap::identity(), Flavour::Down).unwrap();
        assert_eq!(down_id.apply(&v).unwrap(), Vertex::minus(r("-3/4")));

        let mut up = GraphAut::new(OrderMap::affine(r("3"), r("2")).unwrap(), Flavour::Up).unwrap();
        assert_eq!(
            up.apply(&Vertex::plus(r("0"))).unwrap(),
            Vertex::plus(r("2"))
        );
        assert_eq!(
            up.apply(&Vertex::minus(r("1"))).unwrap(),
            Vertex::minus(r("5"))
        );

        assert!(GraphAut::new(OrderMap::negation(), Flavour::Up).is_err());
    }

    #[test]
    fn arc_witness_examples() {
        let mut w = arc_witness(&r("2"), &r("5"), ArcKind::PlusToMinus).unwrap();
        assert_eq!(
            w.order_map().unwrap(),
            &OrderMap::affine(r("3"), r("2")).unwrap()
        );
        assert_eq!(
            w.apply(&Vertex::plus(r("0"))).unwrap(),
            Vertex::plus(r("2"))
        );
        assert_eq!(
            w.apply(&Vertex::minus(r("1"))).unwrap(),
            Vertex::minus(r("5"))
        );

        let id = arc_witness(&r("0"), &r("1"), ArcKind::PlusToMinus).unwrap();
        assert!(id.order_map().unwrap().is_identity());

        // (5-, 2+) is an arc since 2 < 5; γ(x) = −5 + 3x
        let mut w = arc_witness(&r("5"), &r("2"), ArcKind::MinusToPlus).unwrap();
        assert_eq!(w.flavour, Flavour::Down);
        assert_eq!(
            w.order_map().unwrap(),
            &OrderMap::affine(r("3"), r("-5")).unwrap()
        );
        assert_eq!(
            w.apply(&Vertex::plus(r("0"))).unwrap(),
            Vertex::minus(r("5"))
        );
        assert_eq!(
            w.apply(&Vertex::minus(r("1"))).unwrap(),
            Vertex::plus(r("2"))
        );

        for support in [support(&["0", "1"]), support(&["-3", "1/7", "2", "9/2"])] {
            assert!(lift_maps_truncation(&mut w, &support).unwrap());
        }

        assert!(arc_witness(&r("5"), &r("2"), ArcKind::PlusToMinus).is_err());
        assert!(arc_witness(&r("2"), &r("5"), ArcKind::MinusToPlus).is_err());
        assert!(arc_witness(&r("2"), &r("2"), ArcKind::PlusToMinus).is_err());
    }

    #[test]
    fn structure_small_supports() {
        let report = check_structure(&support(&["1", "2", "3"])).unwrap();
        assert!(report.passes(), "{report:?}");
        assert_eq!(report.group_order, 4);
        let report = check_structure(&support(&["1/2"])).unwrap();
        assert!(report.passes(), "{report:?}");
        assert_eq!(report.group_order, 2);
    }

    #[test]
    fn graph_file_formats() {
        let g = truncation(&support(&["0", "1/2"])).unwrap();
        let json = serde_json::to_string(&g.to_file()).unwrap();
        assert_eq!(
            json,
            r#"{"vertices":[{"q":"0/1","side":"+"},{"q":"1/2","side":"+"},{"q":"0/1","side":"-"},{"q":"1/2","side":"-"}],"edges":[[0,3]]}"#
        );
        let back: GraphFile = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteGraph::try_from(back).unwrap(), g);

        let no_edges = r#"{"vertices":[{"q":"0/1","side":"+"},{"q":"1/2","side":"+"},{"q":"0/1","side":"-"},{"q":"1/2","side":"-"}]}"#;
        let parsed: GraphFile = serde_json::from_str(no_edges).unwrap();
        assert_eq!(FiniteGraph::try_from(parsed).unwrap(), g);

        let plain: GraphFile = serde_json::from_str(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(FiniteGraph::try_from(plain).unwrap(), FiniteGraph::path(3));

        for bad in [
            r#"{"n":2,"edges":[[0,0]]}"#,
            r#"{"n":2,"edges":[[0,1],[1,0]]}"#,
            r#"{"n":2,"edges":[[0,2]]}"#,
        ] {
            let f: GraphFile = serde_json::from_str(bad).unwrap();
            assert!(FiniteGraph::try_from(f).is_err(), "{bad}");
        }
    }

    #[test]
    fn graph_refutation_step_colouring() {
        let cplus: ColouringSpec = Piecewise::new(vec![r("0")], vec![0, 1], vec![1], 2)
            .unwrap()
            .into();
        let cminus: ColouringSpec = Piecewise::constant(0, 2).unwrap().into();
        let refutation = refute_graph_colouring(&cplus, &cminus, 1000, 200).unwrap();
        assert!(refutation.passes(), "{:?}", refutation.graph_report);
        assert_eq!(refutation.witness.flavour, Flavour::Up);
        assert_eq!(refutation.graph_report.pair_alphabet, 4);
    }

    #[test]
    fn graph_refutation_parity() {
        let parity: ColouringSpec = DenomMod::new(2, vec![0, 1], 2).unwrap().into();
        let refutation = refute_graph_colouring(&parity, &parity, 10_000, 100).unwrap();
        assert!(refutation.passes(), "{:?}", refutation.graph_report);
        assert_eq!(refutation.graph_report.pair_alphabet, 4);
    }
}

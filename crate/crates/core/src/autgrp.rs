//! Automorphism groups of finite graphs by partition refinement with
//! individualization, and the quantities defined through them: orbits,
//! point stabilizers, motion and distinguishing number.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::halfgraph::FiniteGraph;

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;
pub const DEFAULT_SEARCH_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("automorphism group has more than {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("colouring search exceeded {cap} nodes")]
    SearchCapExceeded { cap: u64 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("colouring has {got} entries for {n} vertices")]
    ColouringLength { got: usize, n: usize },
}

/// A bijection of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: impl IntoIterator<Item = usize>) -> Result<Self, AutError> {
        let images: Vec<usize> = images.into_iter().collect();
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(AutError::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&v| next.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(v, &w)| v == w)
    }

    /// Number of points not fixed.
    pub fn motion(&self) -> usize {
        self.0.iter().enumerate().filter(|&(v, &w)| v != w).count()
    }
}

/// A fully enumerated permutation group: elements in lexicographic order
/// (identity first) and a generating subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermGroup {
    /// Wraps a complete, closed element list.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let generators = greedy_generators(degree, &elements);
        PermGroup {
            degree,
            elements,
            generators,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Identity present, closed under products and inverses, and generated
    /// by `generators`.
    pub fn satisfies_axioms(&self) -> bool {
        let has_identity = self.elements.first() == Some(&Permutation::identity(self.degree));
        let closed = self.elements.iter().all(|a| {
            self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.then(b)))
        });
        let generated = closure(self.degree, &self.generators).len() == self.order();
        has_identity && closed && generated
    }
}

fn closure(degree: usize, generators: &[Permutation]) -> HashSet<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen
}

fn greedy_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut generators = Vec::new();
    let mut generated = closure(degree, &generators);
    for p in elements {
        if !generated.contains(p) {
            generators.push(p.clone());
            generated = closure(degree, &generators);
        }
    }
    generators
}

type Cells = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into each splitter cell until the
/// partition is equitable. New cells are ordered by count, so the result
/// is independent of vertex names.
fn refine(g: &FiniteGraph, mut cells: Cells) -> Cells {
    let n = g.n();
    let mut in_splitter = vec![false; n];
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            in_splitter.iter_mut().for_each(|b| *b = false);
            for &v in &cells[s] {
                in_splitter[v] = true;
            }
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in cells.drain(..) {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut by_count: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for &v in &cell {
                    let c = g.neighbours(v).iter().filter(|&&w| in_splitter[w]).count();
                    by_count.entry(c).or_default().push(v);
                }
                if by_count.len() > 1 {
                    changed = true;
                }
                next.extend(by_count.into_values());
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

fn individualize(cells: &Cells, target: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (i, cell) in cells.iter().enumerate() {
        if i == target {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

fn same_shape(a: &Cells, b: &Cells) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.len() == y.len())
}

struct Search<'a> {
    g: &'a FiniteGraph,
    found: Vec<Permutation>,
    cap: usize,
}

impl Search<'_> {
    fn run(&mut self, domain: &Cells, image: &Cells) -> Result<(), AutError> {
        if domain.iter().all(|c| c.len() == 1) {
            let mut images = vec![0; self.g.n()];
            for (d, i) in domain.iter().zip(image) {
                images[d[0]] = i[0];
            }
            let p = Permutation(images);
            if self.g.is_automorphism(&p) {
                self.found.push(p);
                if self.found.len() > self.cap {
                    return Err(AutError::OrderCapExceeded { cap: self.cap });
                }
            }
            return Ok(());
        }
        // first cell of maximum size
        let size = domain
            .iter()
            .map(Vec::len)
            .max()
            .expect("nonempty partition");
        let target = domain
            .iter()
            .position(|c| c.len() == size)
            .expect("maximum exists");
        let v = domain[target][0];
        let next_domain = refine(self.g, individualize(domain, target, v));
        for &w in &image[target] {
            let next_image = refine(self.g, individualize(image, target, w));
            if same_shape(&next_domain, &next_image) {
                self.run(&next_domain, &next_image)?;
            }
        }
        Ok(())
    }
}

fn initial_cells(g: &FiniteGraph, colours: Option<&[u32]>) -> Cells {
    let mut classes: BTreeMap<(u32, usize), Vec<usize>> = BTreeMap::new();
    for v in 0..g.n() {
        let c = colours.map_or(0, |c| c[v]);
        classes.entry((c, g.degree(v))).or_default().push(v);
    }
    classes.into_values().collect()
}

fn search_group(
    g: &FiniteGraph,
    colours: Option<&[u32]>,
    order_cap: usize,
) -> Result<PermGroup, AutError> {
    if g.n() == 0 {
        return Ok(PermGroup::from_elements(0, vec![Permutation::identity(0)]));
    }
    let start = refine(g, initial_cells(g, colours));
    let mut search = Search {
        g,
        found: Vec::new(),
        cap: order_cap,
    };
    search.run(&start, &start)?;
    Ok(PermGroup::from_elements(g.n(), search.found))
}

/// The full automorphism group of `g`; fails if it has more than
/// `order_cap` elements.
pub fn automorphisms(g: &FiniteGraph, order_cap: usize) -> Result<PermGroup, AutError> {
    search_group(g, None, order_cap)
}

/// Automorphisms of `g` that also preserve a vertex colouring.
pub fn colour_preserving_automorphisms(
    g: &FiniteGraph,
    colouring: &VertexColouring,
    order_cap: usize,
) -> Result<PermGroup, AutError> {
    colouring.check_len(g.n())?;
    search_group(g, Some(&colouring.0), order_cap)
}

/// Minimum number of moved points over non-identity elements; `None` for
/// the trivial group, where motion is undefined.
pub fn motion(group: &PermGroup) -> Option<usize> {
    group
        .elements()
        .iter()
        .filter(|p| !p.is_identity())
        .map(Permutation::motion)
        .min()
}

fn orbits_of<'a>(
    degree: usize,
    elements: impl Iterator<Item = &'a Permutation>,
) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], v: usize) -> usize {
        let mut root = v;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = v;
        while parent[cur] != root {
            cur = std::mem::replace(&mut parent[cur], root);
        }
        root
    }
    for p in elements {
        for v in 0..degree {
            let (a, b) = (find(&mut parent, v), find(&mut parent, p.apply(v)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..degree {
        let root = find(&mut parent, v);
        classes.entry(root).or_default().push(v);
    }
    classes.into_values().collect()
}

/// Orbit partition, each orbit sorted, orbits ordered by least element.
pub fn orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    orbits_of(group.degree(), group.generators().iter())
}

/// Orbits of the stabilizer of `v`.
pub fn stabilizer_orbits(group: &PermGroup, v: usize) -> Vec<Vec<usize>> {
    orbits_of(
        group.degree(),
        group.elements().iter().filter(|p| p.apply(v) == v),
    )
}

/// A colour per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexColouring(pub Vec<u32>);

impl VertexColouring {
    fn check_len(&self, n: usize) -> Result<(), AutError> {
        if self.0.len() != n {
            return Err(AutError::ColouringLength {
                got: self.0.len(),
                n,
            });
        }
        Ok(())
    }

    pub fn preserved_by(&self, p: &Permutation) -> bool {
        (0..self.0.len()).all(|v| self.0[p.apply(v)] == self.0[v])
    }

    pub fn colour_count(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }
}

/// Whether no non-identity element of `group` preserves `c`.
pub fn is_distinguishing(group: &PermGroup, c: &VertexColouring) -> Result<bool, AutError> {
    c.check_len(group.degree())?;
    Ok(group
        .elements()
        .iter()
        .all(|p| p.is_identity() || !c.preserved_by(p)))
}

/// Independent route: the colour-constrained automorphism search returns
/// only the identity.
pub fn is_distinguishing_by_search(g: &FiniteGraph, c: &VertexColouring) -> Result<bool, AutError> {
    Ok(colour_preserving_automorphisms(g, c, DEFAULT_ORDER_CAP)?.order() == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistinguishingNumber {
    /// Least number of colours, with a distinguishing colouring using them.
    Exactly {
        colours: usize,
        colouring: VertexColouring,
    },
    Exceeded {
        max_colours: usize,
    },
}

impl DistinguishingNumber {
    pub fn value(&self) -> Option<usize> {
        match self {
            DistinguishingNumber::Exactly { colours, .. } => Some(*colours),
            DistinguishingNumber::Exceeded { .. } => None,
        }
    }
}

struct ColouringSearch<'a> {
    n: usize,
    elements: Vec<(&'a Permutation, Permutation)>,
    colours: Vec<u32>,
    k: u32,
    nodes: u64,
    cap: u64,
}

impl ColouringSearch<'_> {
    /// Colours vertex `v` onwards in first-occurrence order; `alive` holds
    /// indices of non-identity elements still consistent with the prefix.
    fn run(&mut self, v: usize, used: u32, alive: &[usize]) -> Result<bool, AutError> {
        if alive.is_empty() {
            self.colours[v..].iter_mut().for_each(|c| *c = 0);
            return Ok(true);
        }
        if v == self.n {
            return Ok(false);
        }
        for c in 0..(used + 1).min(self.k) {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(AutError::SearchCapExceeded { cap: self.cap });
            }
            self.colours[v] = c;
            let survivors: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&e| {
                    let (p, inv) = &self.elements[e];
                    let fwd = p.apply(v);
                    let back = inv.apply(v);
                    (fwd > v || self.colours[fwd] == c) && (back > v || self.colours[back] == c)
                })
                .collect();
            if self.run(v + 1, used.max(c + 1), &survivors)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Least `k <= max_colours` admitting a distinguishing `k`-colouring, by
/// exhaustive search over colourings in first-occurrence canonical form.
pub fn distinguishing_number(
    group: &PermGroup,
    max_colours: usize,
    search_cap: u64,
) -> Result<DistinguishingNumber, AutError> {
    let n = group.degree();
    let elements: Vec<(&Permutation, Permutation)> = group
        .elements()
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| (p, p.inverse()))
        .collect();
    let alive: Vec<usize> = (0..elements.len()).collect();
    let mut search = ColouringSearch {
        n,
        elements,
        colours: vec![0; n],
        k: 0,
        nodes: 0,
        cap: search_cap,
    };
    for k in 1..=max_colours {
        search.k = k as u32;
        if search.run(0, 0, &alive)? {
            return Ok(DistinguishingNumber::Exactly {
                colours: k,
                colouring: VertexColouring(search.colours.clone()),
            });
        }
    }
    Ok(DistinguishingNumber::Exceeded { max_colours })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::Rational;
    use crate::halfgraph::truncation;

    fn support(n: usize) -> Vec<Rational> {
        (1..=n as i64).map(Rational::from).collect()
    }

    /// Asymmetric tree on 7 vertices: a path 0-1-2-3-4-5 with a leaf 6 on 2.
    fn rigid_tree() -> FiniteGraph {
        FiniteGraph::new(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_images([1, 2, 0]).unwrap();
        assert_eq!(p.then(&p.inverse()), Permutation::identity(3));
        assert_eq!(p.motion(), 3);
        assert!(Permutation::from_images([0, 0]).is_err());
        assert!(Permutation::from_images([2, 0]).is_err());
    }

    #[test]
    fn small_groups() {
        assert_eq!(
            automorphisms(&truncation(&support(3)).unwrap(), 100)
                .unwrap()
                .order(),
            4
        );
        assert_eq!(
            automorphisms(&FiniteGraph::complete(4), 100)
                .unwrap()
                .order(),
            24
        );
        assert_eq!(
            automorphisms(&FiniteGraph::path(4), 100).unwrap().order(),
            2
        );
        assert_eq!(
            automorphisms(&FiniteGraph::cycle(5), 100).unwrap().order(),
            10
        );
        assert_eq!(automorphisms(&rigid_tree(), 100).unwrap().order(), 1);
        assert_eq!(
            automorphisms(&FiniteGraph::new(0, &[]).unwrap(), 1)
                .unwrap()
                .order(),
            1
        );
    }

    #[test]
    fn order_cap_aborts() {
        let err = automorphisms(&FiniteGraph::complete(5), 100).unwrap_err();
        assert_eq!(err, AutError::OrderCapExceeded { cap: 100 });
    }

    #[test]
    fn identity_first_and_axioms_hold() {
        let group = automorphisms(&FiniteGraph::cycle(6), 1000).unwrap();
        assert!(group.elements()[0].is_identity());
        assert!(group.satisfies_axioms());
        assert!(group.generators().len() <= 2);
    }

    #[test]
    fn motion_examples() {
        let t = automorphisms(&truncation(&support(5)).unwrap(), 100).unwrap();
        assert_eq!(motion(&t), Some(2));
        let k4 = automorphisms(&FiniteGraph::complete(4), 100).unwrap();
        assert_eq!(motion(&k4), Some(2));
        let rigid = automorphisms(&rigid_tree(), 100).unwrap();
        assert_eq!(motion(&rigid), None);
    }

    #[test]
    fn orbit_examples() {
        let k4 = automorphisms(&FiniteGraph::complete(4), 100).unwrap();
        assert_eq!(orbits(&k4), vec![vec![0, 1, 2, 3]]);
        assert_eq!(stabilizer_orbits(&k4, 2), vec![vec![0, 1, 3], vec![2]]);

        // support of size 4: vertex 3 is max+ and vertex 4 is min-, both isolated
        let n = 4;
        let t = automorphisms(&truncation(&support(n)).unwrap(), 100).unwrap();
        let orbs = orbits(&t);
        assert!(orbs.contains(&vec![n - 1, n]));
        assert!(orbs.iter().all(|o| o.len() == 2));
        let stab = stabilizer_orbits(&t, n - 1);
        assert!(stab.contains(&vec![n]));
    }

    #[test]
    fn distinguishing_checks() {
        let g = truncation(&support(3)).unwrap();
        let group = automorphisms(&g, 100).unwrap();
        let all_distinct = VertexColouring((0..6).collect());
        assert!(is_distinguishing(&group, &all_distinct).unwrap());
        let constant = VertexColouring(vec![0; 6]);
        assert!(!is_distinguishing(&group, &constant).unwrap());
        // vertices: 0..3 = 1+,2+,3+ and 3..6 = 1-,2-,3-; colour 3+ (max+) apart
        // from 1- (min-) and 1+ apart from 3-
        let breaking = VertexColouring(vec![1, 0, 1, 0, 0, 0]);
        let swap_only = VertexColouring(vec![0, 0, 1, 0, 0, 0]);
        assert!(!is_distinguishing(&group, &swap_only).unwrap());
        assert!(is_distinguishing(&group, &breaking).unwrap());
        assert!(is_distinguishing_by_search(&g, &breaking).unwrap());
        assert!(!is_distinguishing_by_search(&g, &constant).unwrap());
        assert!(is_distinguishing(&group, &VertexColouring(vec![0; 5])).is_err());
    }

    #[test]
    fn distinguishing_number_examples() {
        let k4 = automorphisms(&FiniteGraph::complete(4), 100).unwrap();
        assert_eq!(
            distinguishing_number(&k4, 6, DEFAULT_SEARCH_CAP)
                .unwrap()
                .value(),
            Some(4)
        );
        let single = automorphisms(&FiniteGraph::new(1, &[]).unwrap(), 10).unwrap();
        assert_eq!(
            distinguishing_number(&single, 3, DEFAULT_SEARCH_CAP)
                .unwrap()
                .value(),
            Some(1)
        );
        let k4_short = distinguishing_number(&k4, 3, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(k4_short, DistinguishingNumber::Exceeded { max_colours: 3 });
        let t = automorphisms(&truncation(&support(4)).unwrap(), 100).unwrap();
        match distinguishing_number(&t, 3, DEFAULT_SEARCH_CAP).unwrap() {
            DistinguishingNumber::Exactly { colours, colouring } => {
                assert_eq!(colours, 2);
                assert!(is_distinguishing(&t, &colouring).unwrap());
            }
            other => panic!("{other:?}"),
        }
        let k5 = automorphisms(&FiniteGraph::complete(6), 1000).unwrap();
        assert_eq!(
            distinguishing_number(&k5, 6, 10),
            Err(AutError::SearchCapExceeded { cap: 10 })
        );
    }
}

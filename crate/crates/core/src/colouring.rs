//! Finitely described colourings of ℚ, witness search and extraction of an
//! interval on which every remaining colour is dense.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactq::{Interval, Rational, SternBrocotIter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("invalid colouring: {0}")]
    Invalid(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

/// A colour drawn from a finite alphabet `0..alphabet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Colour {
    pub id: u32,
    pub alphabet: u32,
}

impl Colour {
    pub fn new(id: u32, alphabet: u32) -> Result<Self, ColouringError> {
        if id >= alphabet {
            return Err(ColouringError::Invalid(format!(
                "colour {id} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Colour { id, alphabet })
    }
}

/// Colour constant on each open piece between consecutive cuts, with the
/// cut points carrying their own colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piecewise {
    cuts: Vec<Rational>,
    pieces: Vec<u32>,
    cut_colours: Vec<u32>,
    alphabet: u32,
}

impl Piecewise {
    pub fn new(
        cuts: Vec<Rational>,
        pieces: Vec<u32>,
        cut_colours: Vec<u32>,
        alphabet: u32,
    ) -> Result<Self, ColouringError> {
        if alphabet == 0 {
            return Err(ColouringError::Invalid("empty alphabet".into()));
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ColouringError::Invalid(
                "cuts must be strictly increasing".into(),
            ));
        }
        if pieces.len() != cuts.len() + 1 || cut_colours.len() != cuts.len() {
            return Err(ColouringError::Invalid(format!(
                "{} cuts need {} piece colours and {} cut colours, got {} and {}",
                cuts.len(),
                cuts.len() + 1,
                cuts.len(),
                pieces.len(),
                cut_colours.len()
            )));
        }
        if let Some(c) = pieces.iter().chain(&cut_colours).find(|&&c| c >= alphabet) {
            return Err(ColouringError::Invalid(format!(
                "colour {c} outside alphabet of size {alphabet}"
            )));
        }
        Ok(Piecewise {
            cuts,
            pieces,
            cut_colours,
            alphabet,
        })
    }

    pub fn constant(colour: u32, alphabet: u32) -> Result<Self, ColouringError> {
        Piecewise::new(Vec::new(), vec![colour], Vec::new(), alphabet)
    }

    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    pub fn pieces(&self) -> &[u32] {
        &self.pieces
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn cut_colours(&self) -> &[u32] {
        &self.cut_colours
    }

    fn colour_id(&self, q: &Rational) -> u32 {
        match self.cuts.binary_search(q) {
            Ok(i) => self.cut_colours[i],
            Err(i) => self.pieces[i],
        }
    }

    /// Open piece `idx` as an interval (piece 0 is unbounded below).
    fn piece_interval(&self, idx: usize) -> Interval {
        let lower = idx.checked_sub(1).map(|i| self.cuts[i].clone());
        let upper = self.cuts.get(idx).cloned();
        Interval::new(lower, upper).expect("cuts strictly increasing")
    }

    /// Exact first witness of colour `k` in `i`, in enumeration order.
    fn find_exact(&self, k: u32, i: &Interval) -> Option<Rational> {
        let from_pieces = (0..self.pieces.len())
            .filter(|&j| self.pieces[j] == k)
            .filter_map(|j| self.piece_interval(j).intersect(i))
            .map(|sub| sub.simplest());
        let from_cuts = self
            .cuts
            .iter()
            .zip(&self.cut_colours)
            .filter(|(c, &colour)| colour == k && i.contains(c))
            .map(|(c, _)| c.clone());
        from_pieces.chain(from_cuts).min_by(|a, b| {
            a.stern_brocot_depth()
                .cmp(&b.stern_brocot_depth())
                .then_with(|| a.cmp(b))
        })
    }

    /// Merges two piecewise colourings into the piecewise form of their
    /// pair product.
    fn product(first: &Piecewise, second: &Piecewise) -> Piecewise {
        let mut cuts: Vec<Rational> = first.cuts.iter().chain(&second.cuts).cloned().collect();
        cuts.sort();
        cuts.dedup();
        let encode = |q: &Rational| first.colour_id(q) * second.alphabet + second.colour_id(q);
        let pieces = (0..=cuts.len())
            .map(|j| {
                let lower = j.checked_sub(1).map(|i| cuts[i].clone());
                let upper = cuts.get(j).cloned();
                let inside = Interval::new(lower, upper)
                    .expect("merged cuts strictly increasing")
                    .simplest();
                encode(&inside)
            })
            .collect();
        let cut_colours = cuts.iter().map(encode).collect();
        Piecewise {
            cuts,
            pieces,
            cut_colours,
            alphabet: first.alphabet * second.alphabet,
        }
    }
}

/// Colour determined by the residue of the denominator modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenomMod {
    m: u32,
    residues: Vec<u32>,
    alphabet: u32,
}

impl DenomMod {
    pub fn new(m: u32, residues: Vec<u32>, alphabet: u32) -> Result<Self, ColouringError> {
        if m < 2 {
            return Err(ColouringError::Invalid("modulus must be at least 2".into()));
        }
        if residues.len() != m as usize {
            return Err(ColouringError::Invalid(format!(
                "modulus {m} needs {m} residue colours, got {}",
                residues.len()
            )));
        }
        if alphabet == 0 {
            return Err(ColouringError::Invalid("empty alphabet".into()));
        }
        if let Some(c) = residues.iter().find(|&&c| c >= alphabet) {
            return Err(ColouringError::Invalid(format!(
                "colour {c} outside alphabet of size {alphabet}"
            )));
        }
        Ok(DenomMod {
            m,
            residues,
            alphabet,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    fn colour_id(&self, q: &Rational) -> u32 {
        let r = (q.denom() % BigInt::from(self.m))
            .to_usize()
            .expect("residue below modulus");
        self.residues[r]
    }
}

/// Row-major pair of two colourings; the product id is
/// `first * second.alphabet + second`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairProduct {
    first: Box<ColouringSpec>,
    second: Box<ColouringSpec>,
    flat: Option<Piecewise>,
}

impl PairProduct {
    pub fn first(&self) -> &ColouringSpec {
        &self.first
    }

    pub fn second(&self) -> &ColouringSpec {
        &self.second
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecFile", into = "SpecFile")]
pub enum ColouringSpec {
    Piecewise(Piecewise),
    DenomMod(DenomMod),
    Pair(PairProduct),
}

/// On-disk form of a colouring description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SpecFile {
    Piecewise {
        cuts: Vec<Rational>,
        pieces: Vec<u32>,
        cut_colours: Vec<u32>,
        alphabet: u32,
    },
    DenomMod {
        m: u32,
        residues: Vec<u32>,
        alphabet: u32,
    },
    Pair {
        first: Box<ColouringSpec>,
        second: Box<ColouringSpec>,
    },
}

impl TryFrom<SpecFile> for ColouringSpec {
    type Error = ColouringError;
    fn try_from(file: SpecFile) -> Result<Self, Self::Error> {
        Ok(match file {
            SpecFile::Piecewise {
                cuts,
                pieces,
                cut_colours,
                alphabet,
            } => ColouringSpec::Piecewise(Piecewise::new(cuts, pieces, cut_colours, alphabet)?),
            SpecFile::DenomMod {
                m,
                residues,
                alphabet,
            } => ColouringSpec::DenomMod(DenomMod::new(m, residues, alphabet)?),
            SpecFile::Pair { first, second } => pair_colouring(&first, &second),
        })
    }
}

impl From<ColouringSpec> for SpecFile {
    fn from(spec: ColouringSpec) -> Self {
        match spec {
            ColouringSpec::Piecewise(p) => SpecFile::Piecewise {
                cuts: p.cuts,
                pieces: p.pieces,
                cut_colours: p.cut_colours,
                alphabet: p.alphabet,
            },
            ColouringSpec::DenomMod(d) => SpecFile::DenomMod {
                m: d.m,
                residues: d.residues,
                alphabet: d.alphabet,
            },
            ColouringSpec::Pair(p) => SpecFile::Pair {
                first: p.first,
                second: p.second,
            },
        }
    }
}

impl From<Piecewise> for ColouringSpec {
    fn from(p: Piecewise) -> Self {
        ColouringSpec::Piecewise(p)
    }
}

impl From<DenomMod> for ColouringSpec {
    fn from(d: DenomMod) -> Self {
        ColouringSpec::DenomMod(d)
    }
}

impl ColouringSpec {
    pub fn alphabet(&self) -> u32 {
        match self {
            ColouringSpec::Piecewise(p) => p.alphabet,
            ColouringSpec::DenomMod(d) => d.alphabet,
            ColouringSpec::Pair(p) => p.first.alphabet() * p.second.alphabet(),
        }
    }

    /// Equivalent piecewise description, when one exists. Witness search
    /// and density are exact for these.
    pub fn exact_form(&self) -> Option<&Piecewise> {
        match self {
            ColouringSpec::Piecewise(p) => Some(p),
            ColouringSpec::DenomMod(_) => None,
            ColouringSpec::Pair(p) => p.flat.as_ref(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact_form().is_some()
    }

    fn colour_id(&self, q: &Rational) -> u32 {
        match self {
            ColouringSpec::Piecewise(p) => p.colour_id(q),
            ColouringSpec::DenomMod(d) => d.colour_id(q),
            ColouringSpec::Pair(p) => {
                p.first.colour_id(q) * p.second.alphabet() + p.second.colour_id(q)
            }
        }
    }

    /// Splits a product colour into its two components. `None` unless this
    /// is a pair spec and the colour belongs to its alphabet.
    pub fn decode(&self, c: Colour) -> Option<(Colour, Colour)> {
        let ColouringSpec::Pair(p) = self else {
            return None;
        };
        if c.alphabet != self.alphabet() {
            return None;
        }
        let (a, b) = (p.first.alphabet(), p.second.alphabet());
        Some((
            Colour {
                id: c.id / b,
                alphabet: a,
            },
            Colour {
                id: c.id % b,
                alphabet: b,
            },
        ))
    }
}

pub fn colour_of(spec: &ColouringSpec, q: &Rational) -> Colour {
    Colour {
        id: spec.colour_id(q),
        alphabet: spec.alphabet(),
    }
}

/// First rational of colour `k` strictly inside `i`, in the enumeration
/// order of [`SternBrocotIter`]. Exact for piecewise-expressible specs (the
/// budget is unused and `None` means no such point exists); otherwise a scan
/// of the first `budget` enumerated rationals.
pub fn find_in(spec: &ColouringSpec, k: Colour, i: &Interval, budget: usize) -> Option<Rational> {
    if k.alphabet != spec.alphabet() || k.id >= k.alphabet {
        return None;
    }
    match spec.exact_form() {
        Some(p) => p.find_exact(k.id, i),
        None => find_by_scan(spec, k, i, budget),
    }
}

/// Budgeted enumeration scan, regardless of whether an exact form exists.
pub fn find_by_scan(
    spec: &ColouringSpec,
    k: Colour,
    i: &Interval,
    budget: usize,
) -> Option<Rational> {
    SternBrocotIter::new(i)
        .take(budget)
        .find(|q| colour_of(spec, q) == k)
}

pub fn pair_colouring(cplus: &ColouringSpec, cminus: &ColouringSpec) -> ColouringSpec {
    let flat = match (cplus.exact_form(), cminus.exact_form()) {
        (Some(a), Some(b)) => Some(Piecewise::product(a, b)),
        _ => None,
    };
    ColouringSpec::Pair(PairProduct {
        first: Box::new(cplus.clone()),
        second: Box::new(cminus.clone()),
        flat,
    })
}

/// An interval on which exactly the colours in `colours` occur, each of
/// them densely (exactly for piecewise specs, up to the sampling budget
/// otherwise).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseRegion {
    pub interval: Interval,
    pub colours: Vec<Colour>,
    pub witnesses: BTreeMap<u32, Vec<Rational>>,
    pub refinements: usize,
    pub exact: bool,
}

pub const WITNESSES_PER_COLOUR: usize = 3;

fn initial_window() -> Interval {
    Interval::open(Rational::zero(), Rational::one()).expect("0 < 1")
}

/// Refines the initial window `(0, 1)` until every colour still present in
/// it is dense there. Each refinement discards at least one colour, so the
/// loop runs at most `alphabet` times.
pub fn dense_interval(spec: &ColouringSpec, budget: usize) -> Result<DenseRegion, ColouringError> {
    let budget = budget.max(1);
    match spec.exact_form() {
        Some(p) => Ok(dense_exact(spec, p)),
        None => dense_sampled(spec, budget),
    }
}

fn dense_exact(spec: &ColouringSpec, p: &Piecewise) -> DenseRegion {
    let mut window = initial_window();
    let mut refinements = 0;
    let colours = loop {
        let inner: Vec<&Rational> = p.cuts.iter().filter(|c| window.contains(c)).collect();
        let mut bounds = vec![window.lower().cloned()];
        bounds.extend(inner.iter().map(|c| Some((*c).clone())));
        bounds.push(window.upper().cloned());
        let components: Vec<Interval> = bounds
            .windows(2)
            .map(|w| Interval::new(w[0].clone(), w[1].clone()).expect("ordered cuts"))
            .collect();
        let piece_colours: BTreeSet<u32> = components
            .iter()
            .map(|c| p.colour_id(&c.simplest()))
            .collect();
        let cut_colours: BTreeSet<u32> = inner.iter().map(|c| p.colour_id(c)).collect();
        if piece_colours.len() == 1 && cut_colours.is_subset(&piece_colours) {
            break piece_colours;
        }
        refinements += 1;
        assert!(
            refinements <= p.alphabet as usize,
            "refinement loop exceeded the alphabet size"
        );
        window = components
            .into_iter()
            .next()
            .expect("at least one component");
    };
    let colours: Vec<Colour> = colours
        .into_iter()
        .map(|id| Colour {
            id,
            alphabet: spec.alphabet(),
        })
        .collect();
    let witnesses = colours
        .iter()
        .map(|&k| {
            let mut found = Vec::with_capacity(WITNESSES_PER_COLOUR);
            let mut rest = window.clone();
            while found.len() < WITNESSES_PER_COLOUR {
                let w = p
                    .find_exact(k.id, &rest)
                    .expect("colour is dense in the window");
                rest = Interval::new(Some(w.clone()), window.upper().cloned())
                    .expect("witness lies inside the window");
                found.push(w);
            }
            (k.id, found)
        })
        .collect();
    DenseRegion {
        interval: window,
        colours,
        witnesses,
        refinements,
        exact: true,
    }
}

fn dense_sampled(spec: &ColouringSpec, budget: usize) -> Result<DenseRegion, ColouringError> {
    let alphabet = spec.alphabet();
    let mut window = initial_window();
    let mut discarded: BTreeSet<u32> = BTreeSet::new();
    let mut refinements = 0usize;
    loop {
        let mut witnesses: BTreeMap<u32, Vec<Rational>> = BTreeMap::new();
        for q in SternBrocotIter::new(&window).take(budget) {
            witnesses.entry(spec.colour_id(&q)).or_default().push(q);
        }
        if let Some(c) = witnesses.keys().find(|c| discarded.contains(c)) {
            return Err(ColouringError::Inconclusive(format!(
                "colour {c} was not found densely but reappears in {window}"
            )));
        }
        for list in witnesses.values_mut() {
            list.truncate(WITNESSES_PER_COLOUR);
        }
        let failure = certify(spec, &window, &witnesses, budget);
        match failure {
            None => {
                let colours = witnesses
                    .keys()
                    .map(|&id| Colour { id, alphabet })
                    .collect();
                return Ok(DenseRegion {
                    interval: window,
                    colours,
                    witnesses,
                    refinements,
                    exact: false,
                });
            }
            Some((colour, sub)) => {
                refinements += 1;
                if refinements > alphabet as usize {
                    return Err(ColouringError::Inconclusive(format!(
                        "no density certificate after {} refinements",
                        refinements - 1
                    )));
                }
                discarded.insert(colour);
                window = sub;
            }
        }
    }
}

/// Checks that each colour has its full witness quota and is found by
/// `find_in` in every gap between consecutive witnesses. Returns the first
/// failing colour and gap.
fn certify(
    spec: &ColouringSpec,
    window: &Interval,
    witnesses: &BTreeMap<u32, Vec<Rational>>,
    budget: usize,
) -> Option<(u32, Interval)> {
    let gaps = witness_gaps(window, witnesses);
    for (&colour, list) in witnesses {
        let k = Colour {
            id: colour,
            alphabet: spec.alphabet(),
        };
        if list.len() < WITNESSES_PER_COLOUR {
            // too sparse to certify: drop it by moving between its witnesses
            let sub = gaps
                .iter()
                .find(|g| list.iter().all(|w| !g.contains(w)))
                .cloned()
                .unwrap_or_else(|| gaps[0].clone());
            return Some((colour, sub));
        }
        if let Some(gap) = gaps.iter().find(|g| find_in(spec, k, g, budget).is_none()) {
            return Some((colour, gap.clone()));
        }
    }
    None
}

/// Open intervals between consecutive witnesses (of all colours), including
/// the two end gaps against the window bounds.
pub fn witness_gaps(window: &Interval, witnesses: &BTreeMap<u32, Vec<Rational>>) -> Vec<Interval> {
    let mut points: Vec<Rational> = witnesses.values().flatten().cloned().collect();
    points.sort();
    points.dedup();
    let mut bounds = vec![window.lower().cloned()];
    bounds.extend(points.into_iter().map(Some));
    bounds.push(window.upper().cloned());
    bounds
        .windows(2)
        .map(|w| Interval::new(w[0].clone(), w[1].clone()).expect("sorted distinct witnesses"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn iv(a: &str, b: &str) -> Interval {
        Interval::open(r(a), r(b)).unwrap()
    }

    const A: u32 = 0;
    const B: u32 = 1;

    fn step_at_zero() -> ColouringSpec {
        Piecewise::new(vec![r("0")], vec![A, B], vec![A], 2)
            .unwrap()
            .into()
    }

    fn parity() -> ColouringSpec {
        DenomMod::new(2, vec![0, 1], 2).unwrap().into()
    }

    fn col(id: u32, alphabet: u32) -> Colour {
        Colour::new(id, alphabet).unwrap()
    }

    #[test]
    fn piecewise_reads_pieces_and_cuts() {
        let s = step_at_zero();
        assert_eq!(colour_of(&s, &r("-3")).id, A);
        assert_eq!(colour_of(&s, &r("0")).id, A);
        assert_eq!(colour_of(&s, &r("1/2")).id, B);
    }

    #[test]
    fn denom_mod_reads_denominator() {
        let s = parity();
        assert_eq!(colour_of(&s, &r("1/2")).id, 0);
        assert_eq!(colour_of(&s, &r("1/3")).id, 1);
        assert_eq!(colour_of(&s, &r("4")).id, 1);
    }

    #[test]
    fn pair_alphabet_is_product() {
        let p = pair_colouring(&step_at_zero(), &parity());
        assert_eq!(p.alphabet(), 4);
        let c = colour_of(&p, &r("1/2"));
        assert_eq!(c, col(B * 2, 4));
        assert_eq!(p.decode(c), Some((col(B, 2), col(0, 2))));
        let constants = pair_colouring(
            &Piecewise::constant(1, 2).unwrap().into(),
            &Piecewise::constant(2, 3).unwrap().into(),
        );
        assert!(constants.is_exact());
        assert_eq!(constants.exact_form().unwrap().pieces(), &[5]);
    }

    #[test]
    fn find_in_examples() {
        let s = step_at_zero();
        assert_eq!(find_in(&s, col(B, 2), &iv("-1", "1"), 1), Some(r("1/2")));
        assert_eq!(find_in(&s, col(B, 2), &iv("-5", "-1"), 1_000_000), None);
        assert_eq!(
            find_in(&parity(), col(0, 2), &iv("0", "1"), 10),
            Some(r("1/2"))
        );
        assert_eq!(find_in(&parity(), col(0, 3), &iv("0", "1"), 10), None);
    }

    #[test]
    fn find_in_prefers_cut_when_simpler() {
        let s: ColouringSpec = Piecewise::new(vec![r("1/2")], vec![A, A], vec![B], 2)
            .unwrap()
            .into();
        assert_eq!(find_in(&s, col(B, 2), &iv("0", "1"), 1), Some(r("1/2")));
        assert_eq!(find_in(&s, col(A, 2), &iv("0", "1"), 1), Some(r("1/3")));
    }

    #[test]
    fn dense_interval_examples() {
        let s: ColouringSpec = Piecewise::new(vec![r("0"), r("1")], vec![A, B, A], vec![A, A], 2)
            .unwrap()
            .into();
        let region = dense_interval(&s, 10).unwrap();
        assert_eq!(region.interval, iv("0", "1"));
        assert_eq!(region.colours, vec![col(B, 2)]);
        assert!(region.exact);

        let region = dense_interval(&parity(), 1000).unwrap();
        assert_eq!(region.interval, iv("0", "1"));
        assert_eq!(region.colours, vec![col(0, 2), col(1, 2)]);
        assert!(!region.exact);

        let constant: ColouringSpec = Piecewise::constant(0, 1).unwrap().into();
        let region = dense_interval(&constant, 1).unwrap();
        assert_eq!(region.interval, iv("0", "1"));
        assert_eq!(region.colours, vec![col(0, 1)]);
        assert_eq!(region.refinements, 0);
    }

    #[test]
    fn dense_interval_refines_to_leftmost_piece() {
        let s: ColouringSpec =
            Piecewise::new(vec![r("1/3"), r("1/2")], vec![A, B, A], vec![B, A], 2)
                .unwrap()
                .into();
        let region = dense_interval(&s, 10).unwrap();
        assert_eq!(region.interval, iv("0", "1/3"));
        assert_eq!(region.colours, vec![col(A, 2)]);
        assert_eq!(region.refinements, 1);

        // a cut of the piece colour does not force a refinement
        let s: ColouringSpec = Piecewise::new(vec![r("1/2")], vec![A, A], vec![A], 2)
            .unwrap()
            .into();
        assert_eq!(dense_interval(&s, 10).unwrap().interval, iv("0", "1"));
    }

    #[test]
    fn dense_interval_witnesses_have_their_colour() {
        for spec in [
            step_at_zero(),
            parity(),
            pair_colouring(&parity(), &parity()),
        ] {
            let region = dense_interval(&spec, 2000).unwrap();
            for (id, list) in &region.witnesses {
                assert_eq!(list.len(), WITNESSES_PER_COLOUR);
                for w in list {
                    assert!(region.interval.contains(w));
                    assert_eq!(colour_of(&spec, w).id, *id);
                }
            }
        }
    }

    #[test]
    fn sparse_colour_is_inconclusive_or_excluded() {
        // residue 0 mod 7 is still dense: certified with enough budget
        let s: ColouringSpec = DenomMod::new(7, vec![1, 0, 0, 0, 0, 0, 0], 2)
            .unwrap()
            .into();
        let region = dense_interval(&s, 5000).unwrap();
        assert_eq!(region.colours.len(), 2);
        // too small a sample never sees it
        let region = dense_interval(&s, 3).unwrap();
        assert_eq!(region.colours, vec![col(0, 2)]);
        // seen, discarded as sparse, then seen again in the refined window
        assert!(matches!(
            dense_interval(&s, 9),
            Err(ColouringError::Inconclusive(_))
        ));
    }

    #[test]
    fn spec_files_round_trip_and_validate() {
        let json = r#"{"kind":"piecewise","cuts":["0/1","1/1"],"pieces":[0,1,0],"cut_colours":[0,0],"alphabet":2}"#;
        let s: ColouringSpec = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), json);
        let pair = format!(
            r#"{{"kind":"pair","first":{json},"second":{{"kind":"denom_mod","m":2,"residues":[0,1],"alphabet":2}}}}"#
        );
        let p: ColouringSpec = serde_json::from_str(&pair).unwrap();
        assert_eq!(p.alphabet(), 4);
        assert_eq!(serde_json::to_string(&p).unwrap(), pair);

        for bad in [
            r#"{"kind":"piecewise","cuts":["1/1","0/1"],"pieces":[0,1,0],"cut_colours":[0,0],"alphabet":2}"#,
            r#"{"kind":"piecewise","cuts":[],"pieces":[2],"cut_colours":[],"alphabet":2}"#,
            r#"{"kind":"piecewise","cuts":["0/1"],"pieces":[0],"cut_colours":[0],"alphabet":2}"#,
            r#"{"kind":"denom_mod","m":1,"residues":[0],"alphabet":1}"#,
            r#"{"kind":"denom_mod","m":2,"residues":[0],"alphabet":2}"#,
        ] {
            assert!(serde_json::from_str::<ColouringSpec>(bad).is_err(), "{bad}");
        }
    }
}

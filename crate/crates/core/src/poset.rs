//! Labeled posets on `{0, .., n-1}` stored as a transitively closed strict order.
//!
//! Elements are 0-based in the API. The JSON form uses 1-based labels and lists
//! only covering pairs; the reader closes the relation again.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};

/// A raw binary relation, not necessarily an order. Input to [`validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    bits: BitMatrix,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Self {
            bits: BitMatrix::new(n),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut r = Self::empty(n);
        for (i, j) in pairs {
            r.insert(i, j)?;
        }
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.bits.dim()
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.n();
        for x in [i, j] {
            if x >= n {
                return Err(Error::OutOfRange { x, n });
            }
        }
        self.bits.set(i, j);
        Ok(())
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits.get(i, j)
    }

    /// Warshall closure on bit rows.
    pub fn close_transitively(&mut self) {
        let n = self.n();
        for k in 0..n {
            for i in 0..n {
                if self.bits.get(i, k) {
                    self.bits.or_row_into(k, i);
                }
            }
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={}, {:?})", self.n(), self.bits)
    }
}

/// The first order axiom a relation fails, with a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    Irreflexivity { x: usize },
    Antisymmetry { x: usize, y: usize },
    Transitivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Irreflexivity { x } => write!(f, "irreflexivity fails: {x} < {x}"),
            Violation::Antisymmetry { x, y } => {
                write!(f, "antisymmetry fails: {x} < {y} and {y} < {x}")
            }
            Violation::Transitivity { x, y, z } => {
                write!(f, "transitivity fails: {x} < {y} < {z} but not {x} < {z}")
            }
        }
    }
}

/// Checks the strict-order axioms in the order irreflexivity, antisymmetry,
/// transitivity. The witness is the lexicographically first one.
pub fn validate(rel: &Relation) -> std::result::Result<(), Violation> {
    let n = rel.n();
    if let Some(x) = (0..n).find(|&x| rel.contains(x, x)) {
        return Err(Violation::Irreflexivity { x });
    }
    for x in 0..n {
        for y in rel.bits.iter_row(x) {
            if y > x && rel.contains(y, x) {
                return Err(Violation::Antisymmetry { x, y });
            }
        }
    }
    for x in 0..n {
        for y in rel.bits.iter_row(x) {
            if let Some(z) = rel.bits.iter_row(y).find(|&z| !rel.contains(x, z)) {
                return Err(Violation::Transitivity { x, y, z });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthClass {
    One,
    Two,
    AtLeastThree,
}

/// A valid labeled poset. `succ[i]` holds the elements above `i`, `pred[i]` the
/// elements below it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    succ: BitMatrix,
    pred: BitMatrix,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n(), self.covering_pairs())
    }
}

impl Poset {
    /// Validates `rel` as given (no closure is applied).
    pub fn from_relation(rel: Relation) -> Result<Self> {
        if rel.n() == 0 {
            return Err(Error::EmptyGroundSet);
        }
        validate(&rel).map_err(Error::InvalidPoset)?;
        Ok(Self::from_closed(rel.bits))
    }

    /// Closes `pairs` transitively, then validates.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rel = Relation::from_pairs(n, pairs)?;
        rel.close_transitively();
        Self::from_relation(rel)
    }

    pub(crate) fn from_closed(succ: BitMatrix) -> Self {
        let pred = succ.transpose();
        Self { succ, pred }
    }

    pub fn chain(n: usize) -> Result<Self> {
        let mut rel = Relation::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                rel.bits.set(i, j);
            }
        }
        Self::from_relation(rel)
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_relation(Relation::empty(n))
    }

    pub fn n(&self) -> usize {
        self.succ.dim()
    }

    /// `i ≺ j`.
    #[inline]
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.succ.get(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.succ.get(i, j) || self.succ.get(j, i)
    }

    fn check(&self, x: usize) -> Result<()> {
        if x >= self.n() {
            Err(Error::OutOfRange { x, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred.iter_row(x)
    }

    pub fn above(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ.iter_row(x)
    }

    /// Number of elements incomparable to `x`.
    pub fn window(&self, x: usize) -> Result<usize> {
        self.check(x)?;
        Ok(self.window_unchecked(x))
    }

    fn window_unchecked(&self, x: usize) -> usize {
        self.n() - 1 - self.succ.row_count(x) - self.pred.row_count(x)
    }

    /// `|{y : y ⪯ x}|`.
    pub fn tau(&self, x: usize) -> Result<usize> {
        self.check(x)?;
        Ok(self.pred.row_count(x) + 1)
    }

    pub fn incomparability_graph(&self) -> IncompGraph {
        let n = self.n();
        let mut adj = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if !self.comparable(i, j) {
                    adj.set(i, j);
                }
            }
        }
        IncompGraph { adj }
    }

    pub fn has_incomparable_pair(&self) -> bool {
        (0..self.n()).any(|x| self.window_unchecked(x) > 0)
    }

    pub fn width_class(&self) -> WidthClass {
        if !self.has_incomparable_pair() {
            return WidthClass::One;
        }
        let g = self.incomparability_graph();
        let n = self.n();
        for i in 0..n {
            for j in g.adj.iter_row(i).filter(|&j| j > i) {
                if g.adj.rows_intersect(i, j) {
                    return WidthClass::AtLeastThree;
                }
            }
        }
        WidthClass::Two
    }

    /// Size of the largest antichain.
    pub fn width(&self) -> usize {
        match self.width_class() {
            WidthClass::One => 1,
            WidthClass::Two => 2,
            WidthClass::AtLeastThree => self.width_by_matching(),
        }
    }

    /// Dilworth via König: width = n − maximum matching in the comparability
    /// bipartite graph (left copy x, right copy y, edge when x ≺ y).
    pub fn width_by_matching(&self) -> usize {
        let n = self.n();
        let mut match_right: Vec<Option<usize>> = vec![None; n];
        let mut matched = 0;
        for x in 0..n {
            let mut seen = vec![false; n];
            if self.augment(x, &mut seen, &mut match_right) {
                matched += 1;
            }
        }
        n - matched
    }

    fn augment(&self, x: usize, seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
        for y in self.succ.iter_row(x) {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            let free = match match_right[y] {
                None => true,
                Some(x2) => self.augment(x2, seen, match_right),
            };
            if free {
                match_right[y] = Some(x);
                return true;
            }
        }
        false
    }

    /// Longest chain, by a longest-path pass in order of increasing down-set size.
    pub fn height(&self) -> usize {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.pred.row_count(x));
        let mut len = vec![1usize; n];
        for &y in &order {
            let best = self.pred.iter_row(y).map(|x| len[x]).max().unwrap_or(0);
            len[y] = best + 1;
        }
        len.into_iter().max().unwrap_or(0)
    }

    /// Restriction to `elements`, relabeled `0..elements.len()` in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Result<Poset> {
        for &x in elements {
            self.check(x)?;
        }
        let mut succ = BitMatrix::new(elements.len());
        for (a, &x) in elements.iter().enumerate() {
            for (b, &y) in elements.iter().enumerate() {
                if self.less(x, y) {
                    succ.set(a, b);
                }
            }
        }
        if elements.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        Ok(Self::from_closed(succ))
    }

    /// Factors in increasing order: connected components of the
    /// incomparability graph, each restricted and relabeled.
    pub fn factors(&self) -> Vec<Factor> {
        let g = self.incomparability_graph();
        let mut comps = g.components();
        // Every element of a lower factor is below every element of a higher
        // one, so any representative's down-set size orders the factors.
        comps.sort_by_key(|c| self.pred.row_count(c[0]));
        comps
            .into_iter()
            .map(|elements| {
                let poset = self.restrict(&elements).expect("component is non-empty");
                Factor { elements, poset }
            })
            .collect()
    }

    pub fn factor_count(&self) -> usize {
        self.incomparability_graph().components().len()
    }

    pub fn is_one_factor(&self) -> bool {
        self.incomparability_graph().is_connected()
    }

    /// Pairs `(i, j)` with `i ≺ j` and nothing strictly between.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in self.succ.iter_row(i) {
                if !self.succ.rows_intersect_with(i, &self.pred, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.n(),
            rel: self
                .covering_pairs()
                .into_iter()
                .map(|(i, j)| [i + 1, j + 1])
                .collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        let mut pairs = Vec::with_capacity(json.rel.len());
        for &[i, j] in &json.rel {
            if i == 0 || j == 0 {
                return Err(Error::Parse("poset labels are 1-based".into()));
            }
            pairs.push((i - 1, j - 1));
        }
        Self::from_pairs(json.n, pairs)
    }
}

/// Wire form of a poset: 1-based covering pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub rel: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    /// Original labels, ascending.
    pub elements: Vec<usize>,
    pub poset: Poset,
}

/// Incomparability graph: an edge joins every incomparable pair.
#[derive(Debug, Clone)]
pub struct IncompGraph {
    adj: BitMatrix,
}

impl IncompGraph {
    pub fn n(&self) -> usize {
        self.adj.dim()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj.row_count(x)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|x| self.degree(x)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter_row(x)
    }

    /// Connected components, each sorted ascending, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![];
            while let Some(x) = stack.pop() {
                comp.push(x);
                for y in self.adj.iter_row(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Two-factor poset on 5 elements (0-based): 0 ≺ 3, 1 ≺ 2 ≺ 4, 0 ≺ 4, 2 ≺ 3.
    pub(crate) fn five_element() -> Poset {
        Poset::from_pairs(5, [(0, 3), (1, 2), (2, 4), (0, 4), (2, 3)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate(&Relation::empty(3)), Ok(()));
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(validate(&r), Err(Violation::Transitivity { x: 0, y: 1, z: 2 }));
        let r = Relation::from_pairs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(validate(&r), Err(Violation::Antisymmetry { x: 0, y: 1 }));
        let r = Relation::from_pairs(2, [(1, 1)]).unwrap();
        assert_eq!(validate(&r), Err(Violation::Irreflexivity { x: 1 }));
    }

    #[test]
    fn zero_elements_rejected() {
        assert_eq!(Poset::antichain(0).unwrap_err(), Error::EmptyGroundSet);
    }

    #[test]
    fn width_examples() {
        assert_eq!(Poset::chain(4).unwrap().width(), 1);
        assert_eq!(Poset::antichain(2).unwrap().width(), 2);
        assert_eq!(five_element().width(), 2);
        assert_eq!(Poset::antichain(5).unwrap().width(), 5);
        assert_eq!(Poset::chain(1).unwrap().width(), 1);
    }

    #[test]
    fn width_by_matching_agrees() {
        for p in [five_element(), Poset::chain(6).unwrap(), Poset::antichain(4).unwrap()] {
            assert_eq!(p.width_by_matching(), p.width());
        }
    }

    #[test]
    fn window_examples() {
        let c = Poset::chain(5).unwrap();
        assert!((0..5).all(|x| c.window(x).unwrap() == 0));
        let a = Poset::antichain(3).unwrap();
        assert!((0..3).all(|x| a.window(x).unwrap() == 2));
        assert_eq!(a.window(3), Err(Error::OutOfRange { x: 3, n: 3 }));
    }

    #[test]
    fn tau_examples() {
        let c = Poset::chain(6).unwrap();
        assert_eq!(c.tau(0).unwrap(), 1);
        assert_eq!(c.tau(5).unwrap(), 6);
        let a = Poset::antichain(4).unwrap();
        assert!((0..4).all(|x| a.tau(x).unwrap() == 1));
    }

    #[test]
    fn factor_examples() {
        let f = Poset::chain(3).unwrap().factors();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|f| f.elements.len() == 1));
        assert_eq!(Poset::antichain(2).unwrap().factors().len(), 1);

        // antichain {0,1} entirely below antichain {2,3}
        let p = Poset::from_pairs(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let f = p.factors();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].elements, vec![0, 1]);
        assert_eq!(f[1].elements, vec![2, 3]);

        // same, but labels placed so the upper factor has the smaller labels
        let p = Poset::from_pairs(4, [(2, 0), (2, 1), (3, 0), (3, 1)]).unwrap();
        let f = p.factors();
        assert_eq!(f[0].elements, vec![2, 3]);
        assert_eq!(f[1].elements, vec![0, 1]);
    }

    #[test]
    fn height_examples() {
        assert_eq!(Poset::chain(7).unwrap().height(), 7);
        assert_eq!(Poset::antichain(7).unwrap().height(), 1);
        assert_eq!(Poset::antichain(2).unwrap().height(), 1);
        assert_eq!(five_element().height(), 3);
    }

    #[test]
    fn json_keeps_covering_pairs_only() {
        let p = Poset::chain(4).unwrap();
        let j = p.to_json();
        assert_eq!(j.rel, vec![[1, 2], [2, 3], [3, 4]]);
        assert_eq!(Poset::from_json(&j).unwrap(), p);
        let text = serde_json::to_string(&five_element().to_json()).unwrap();
        let back: PosetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Poset::from_json(&back).unwrap(), five_element());
    }

    #[test]
    fn cyclic_pairs_rejected() {
        let err = Poset::from_pairs(3, [(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidPoset(Violation::Irreflexivity { .. })));
    }
}

//! Canonical two-chain covers, the cover set of a one-factor poset, greedy
//! pairs of linear extensions, and the bijection between one-factor covers
//! and non-hitting walk pairs.
//!
//! A canonical cover on `n` elements with first chain of size `k` uses labels
//! `0..k` for `a_1 ≺ … ≺ a_k` and `k..n` for `b_1 ≺ … ≺ b_{n-k}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::poset::{Poset, Relation};
use crate::walk::WalkPair;

/// An element of a canonical cover, 0-based within its chain:
/// `A(0)` is `a_1`, `B(2)` is `b_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverElement {
    A(usize),
    B(usize),
}

impl fmt::Display for CoverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverElement::A(i) => write!(f, "a{}", i + 1),
            CoverElement::B(j) => write!(f, "b{}", j + 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoChainCover {
    k: usize,
    poset: Poset,
}

impl fmt::Debug for TwoChainCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TwoChainCover(n={}, k={}, cross={:?})",
            self.n(),
            self.k,
            self.cross_pairs()
        )
    }
}

impl TwoChainCover {
    /// Builds the canonical cover with chains `0..k` and `k..n` plus the given
    /// cross relations `(x, y)` meaning `x ≺ y` in canonical labels. The
    /// relation is closed transitively and validated.
    pub fn new(n: usize, k: usize, cross: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidCover(format!("k = {k} exceeds n = {n}")));
        }
        let mut rel = Relation::empty(n);
        for i in 0..k.saturating_sub(1) {
            rel.insert(i, i + 1)?;
        }
        for j in k..n.saturating_sub(1) {
            rel.insert(j, j + 1)?;
        }
        for (x, y) in cross {
            if x >= n || y >= n {
                return Err(Error::OutOfRange { x: x.max(y), n });
            }
            if (x < k) == (y < k) {
                return Err(Error::InvalidCover(format!(
                    "({x}, {y}) is not a cross-chain pair"
                )));
            }
            rel.insert(x, y)?;
        }
        rel.close_transitively();
        let poset = Poset::from_relation(rel)?;
        Ok(Self { k, poset })
    }

    /// Wraps a poset in which `0..k` and `k..n` are chains in label order.
    pub fn from_poset(k: usize, poset: Poset) -> Result<Self> {
        let n = poset.n();
        if k > n {
            return Err(Error::InvalidCover(format!("k = {k} exceeds n = {n}")));
        }
        let chains_ok = (1..k).all(|i| poset.less(i - 1, i)) && (k + 1..n).all(|j| poset.less(j - 1, j));
        if !chains_ok {
            return Err(Error::InvalidCover("chains are not in canonical order".into()));
        }
        Ok(Self { k, poset })
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    /// Size of chain A.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn label(&self, e: CoverElement) -> usize {
        match e {
            CoverElement::A(i) => i,
            CoverElement::B(j) => self.k + j,
        }
    }

    pub fn element(&self, label: usize) -> CoverElement {
        if label < self.k {
            CoverElement::A(label)
        } else {
            CoverElement::B(label - self.k)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = CoverElement> + '_ {
        (0..self.n()).map(|x| self.element(x))
    }

    fn in_a(&self, label: usize) -> bool {
        label < self.k
    }

    /// All cross-chain pairs `(x, y)` with `x ≺ y`, canonical labels.
    pub fn cross_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.poset.above(x) {
                if self.in_a(x) != self.in_a(y) {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_one_factor(&self) -> bool {
        self.poset.is_one_factor()
    }

    pub fn window(&self, e: CoverElement) -> usize {
        self.poset.window(self.label(e)).expect("label in range")
    }

    pub fn to_json(&self) -> CoverJson {
        CoverJson {
            n: self.n(),
            k: self.k,
            cross: self.cross_pairs().into_iter().map(|(x, y)| [x + 1, y + 1]).collect(),
        }
    }

    pub fn from_json(json: &CoverJson) -> Result<Self> {
        let mut cross = Vec::with_capacity(json.cross.len());
        for &[x, y] in &json.cross {
            if x == 0 || y == 0 {
                return Err(Error::Parse("cover labels are 1-based".into()));
            }
            cross.push((x - 1, y - 1));
        }
        Self::new(json.n, json.k, cross)
    }
}

/// Wire form of a cover. `cross` lists every cross-chain relation `x ≺ y` in
/// 1-based canonical labels; chain order is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub n: usize,
    pub k: usize,
    pub cross: Vec<[usize; 2]>,
}

/// A cover of a labeled poset together with the isomorphism onto its
/// canonical representative: `alpha[x]` is the canonical element of poset
/// element `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWithMap {
    pub cover: TwoChainCover,
    pub alpha: Vec<CoverElement>,
}

/// Canonical form of the labeled cover `(chain_a, chain_b)` of `p`. Both
/// chains must already be sorted in the order of `p`.
pub(crate) fn canonicalize(p: &Poset, chain_a: &[usize], chain_b: &[usize]) -> CoverWithMap {
    let n = p.n();
    let k = chain_a.len();
    let order: Vec<usize> = chain_a.iter().chain(chain_b).copied().collect();
    let mut alpha = vec![CoverElement::A(0); n];
    for (i, &x) in chain_a.iter().enumerate() {
        alpha[x] = CoverElement::A(i);
    }
    for (j, &x) in chain_b.iter().enumerate() {
        alpha[x] = CoverElement::B(j);
    }
    let poset = p.restrict(&order).expect("cover spans the ground set");
    CoverWithMap {
        cover: TwoChainCover { k, poset },
        alpha,
    }
}

/// Unlabeled two-chain covers of a one-factor poset of width at most 2.
///
/// The chain partitions of such a poset are exactly the proper 2-colorings of
/// its (connected) incomparability graph, so there are two ordered partitions,
/// `(A, B)` and `(B, A)`. The result has one entry when they are isomorphic.
pub fn psi(p: &Poset) -> Result<Vec<TwoChainCover>> {
    Ok(psi_with_maps(p)?.into_iter().map(|c| c.cover).collect())
}

pub fn psi_with_maps(p: &Poset) -> Result<Vec<CoverWithMap>> {
    let factors = p.incomparability_graph().components().len();
    if factors != 1 {
        return Err(Error::NotOneFactor { factors });
    }
    cover_classes_with_maps(p)
}

/// Largest factor count accepted by [`cover_classes`].
pub const MAX_COVER_CLASS_FACTORS: usize = 20;

/// Unlabeled two-chain covers of any poset of width at most 2.
///
/// Each factor can be oriented independently, so a poset with `f` factors has
/// `2^f` ordered chain partitions; isomorphic ones are merged. For one-factor
/// posets this is [`psi`].
pub fn cover_classes(p: &Poset) -> Result<Vec<TwoChainCover>> {
    Ok(cover_classes_with_maps(p)?.into_iter().map(|c| c.cover).collect())
}

pub fn cover_classes_with_maps(p: &Poset) -> Result<Vec<CoverWithMap>> {
    let n = p.n();
    let g = p.incomparability_graph();
    let comps = g.components();
    if comps.len() > MAX_COVER_CLASS_FACTORS {
        return Err(Error::TooLarge {
            what: "factor count for cover classes",
            n: comps.len(),
            limit: MAX_COVER_CLASS_FACTORS,
            flag: None,
        });
    }
    // color[x] is x's side when every factor keeps its base orientation
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut comp_of = vec![0usize; n];
    for (ci, comp) in comps.iter().enumerate() {
        let root = comp[0];
        color[root] = Some(false);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            comp_of[x] = ci;
            let c = color[x].expect("colored when pushed");
            for y in g.neighbors(x) {
                match color[y] {
                    None => {
                        color[y] = Some(!c);
                        stack.push(y);
                    }
                    Some(cy) if cy == c => {
                        return Err(Error::WidthTooLarge { width: p.width() });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let by_tau = |x: &usize| p.tau(*x).expect("in range");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(by_tau);

    let mut out: Vec<CoverWithMap> = Vec::new();
    for flips in 0u64..(1u64 << comps.len()) {
        let side = |x: usize| color[x].expect("colored") ^ (flips >> comp_of[x] & 1 == 1);
        let chain_a: Vec<usize> = order.iter().copied().filter(|&x| !side(x)).collect();
        let chain_b: Vec<usize> = order.iter().copied().filter(|&x| side(x)).collect();
        let c = canonicalize(p, &chain_a, &chain_b);
        if !out.iter().any(|o| o.cover == c.cover) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| {
        a.cover
            .k
            .cmp(&b.cover.k)
            .then_with(|| a.cover.cross_pairs().cmp(&b.cover.cross_pairs()))
    });
    Ok(out)
}

/// The two extremal linear extensions of a cover: `lambda` puts `a` before
/// `b` whenever they are incomparable, `delta` puts `b` first. Entries are
/// canonical labels in position order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GreedyPair {
    pub k: usize,
    pub lambda: Vec<usize>,
    pub delta: Vec<usize>,
}

fn ranks(order: &[usize]) -> Vec<usize> {
    let mut r = vec![0; order.len()];
    for (pos, &x) in order.iter().enumerate() {
        r[x] = pos + 1;
    }
    r
}

impl GreedyPair {
    pub fn rank_lambda(&self) -> Vec<usize> {
        ranks(&self.lambda)
    }

    pub fn rank_delta(&self) -> Vec<usize> {
        ranks(&self.delta)
    }

    /// `rank_λ(a) ≤ rank_δ(a)` on A, `rank_δ(b) ≤ rank_λ(b)` on B, and
    /// `rank_δ(a) < rank_δ(b) ⇒ rank_λ(a) < rank_λ(b)` for every cross pair.
    pub fn satisfies_greedy_condition(&self) -> bool {
        let n = self.lambda.len();
        if self.delta.len() != n || self.k > n {
            return false;
        }
        let rl = self.rank_lambda();
        let rd = self.rank_delta();
        let a_ok = (0..self.k).all(|a| rl[a] <= rd[a]);
        let b_ok = (self.k..n).all(|b| rd[b] <= rl[b]);
        let cross_ok = (0..self.k).all(|a| (self.k..n).all(|b| rd[a] >= rd[b] || rl[a] < rl[b]));
        a_ok && b_ok && cross_ok
    }

    /// `x ≺ y` iff `x` precedes `y` in both orders.
    pub fn reconstruct(&self) -> Result<TwoChainCover> {
        let n = self.lambda.len();
        let rl = self.rank_lambda();
        let rd = self.rank_delta();
        let mut bits = BitMatrix::new(n);
        for x in 0..n {
            for y in 0..n {
                if rl[x] < rl[y] && rd[x] < rd[y] {
                    bits.set(x, y);
                }
            }
        }
        let poset = Poset::from_closed(bits);
        TwoChainCover::from_poset(self.k, poset)
    }
}

pub fn greedy_pair(c: &TwoChainCover) -> GreedyPair {
    GreedyPair {
        k: c.k,
        lambda: greedy_merge(c, true),
        delta: greedy_merge(c, false),
    }
}

/// Merges the two chains, taking from the preferred chain whenever its next
/// element is not above the other chain's next element.
fn greedy_merge(c: &TwoChainCover, prefer_a: bool) -> Vec<usize> {
    let (n, k) = (c.n(), c.k);
    let p = &c.poset;
    let (mut i, mut j) = (0, k);
    let mut out = Vec::with_capacity(n);
    while i < k || j < n {
        let take_a = if i == k {
            false
        } else if j == n {
            true
        } else if prefer_a {
            !p.less(j, i)
        } else {
            p.less(i, j)
        };
        if take_a {
            out.push(i);
            i += 1;
        } else {
            out.push(j);
            j += 1;
        }
    }
    out
}

/// Maps a one-factor cover to its walk pair: `V` steps up where `λ_t ∈ A`,
/// `W` steps up where `δ_t ∈ A`.
pub fn gamma(c: &TwoChainCover) -> Result<WalkPair> {
    let g = greedy_pair(c);
    let k = c.k;
    let v: Vec<i8> = g.lambda.iter().map(|&x| if x < k { 1 } else { -1 }).collect();
    let w: Vec<i8> = g.delta.iter().map(|&x| if x < k { 1 } else { -1 }).collect();
    WalkPair::from_steps(&v, &w).map_err(|_| Error::NotOneFactor {
        factors: c.poset.factor_count(),
    })
}

/// Inverse of [`gamma`]: `k` is the number of up-steps of `V`; `λ` lists
/// `a_1..a_k` at the up-steps of `V` and `b_1..` at its down-steps, `δ` does
/// the same with `W`.
pub fn gamma_inverse(w: &WalkPair) -> TwoChainCover {
    let n = w.n();
    let k = w.up_steps();
    let place = |steps: &mut dyn Iterator<Item = i8>| -> Vec<usize> {
        let (mut a, mut b) = (0, k);
        steps
            .map(|s| {
                if s > 0 {
                    a += 1;
                    a - 1
                } else {
                    b += 1;
                    b - 1
                }
            })
            .collect()
    };
    let lambda = place(&mut w.v_steps());
    let delta = place(&mut w.w_steps());
    debug_assert_eq!(lambda.len(), n);
    GreedyPair { k, lambda, delta }
        .reconstruct()
        .expect("walk pairs yield valid greedy pairs")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cover::CoverElement::{A, B};

    /// The seven-element worked example: b₁ ≺ a₃, b₂ ≺ a₄, a₂ ≺ b₃.
    pub(crate) fn seven_element() -> TwoChainCover {
        // a_i -> i-1, b_j -> 4 + j-1
        TwoChainCover::new(7, 4, [(4, 2), (5, 3), (1, 6)]).unwrap()
    }

    fn labels(c: &TwoChainCover, es: &[CoverElement]) -> Vec<usize> {
        es.iter().map(|&e| c.label(e)).collect()
    }

    #[test]
    fn seven_element_greedy_pair() {
        let c = seven_element();
        let g = greedy_pair(&c);
        assert_eq!(g.lambda, labels(&c, &[A(0), A(1), B(0), A(2), B(1), A(3), B(2)]));
        assert_eq!(g.delta, labels(&c, &[B(0), B(1), A(0), A(1), B(2), A(2), A(3)]));
        assert!(g.satisfies_greedy_condition());
        assert_eq!(g.reconstruct().unwrap(), c);
    }

    #[test]
    fn seven_element_walks_round_trip() {
        let c = seven_element();
        let w = gamma(&c).unwrap();
        assert_eq!(w.to_text(), "++-+-+-\n--++-++");
        assert_eq!(w.v_at(7), 1);
        assert_eq!(w.w_at(7), 1);
        assert!((1..7).all(|t| w.v_at(t) > w.w_at(t)));
        assert_eq!(gamma_inverse(&w), c);
    }

    #[test]
    fn single_chain_greedy_pair() {
        let c = TwoChainCover::new(4, 4, []).unwrap();
        let g = greedy_pair(&c);
        assert_eq!(g.lambda, vec![0, 1, 2, 3]);
        assert_eq!(g.delta, vec![0, 1, 2, 3]);
    }

    #[test]
    fn two_element_antichain() {
        let c = TwoChainCover::new(2, 1, []).unwrap();
        let g = greedy_pair(&c);
        assert_eq!(g.lambda, vec![0, 1]);
        assert_eq!(g.delta, vec![1, 0]);
        let w = gamma(&c).unwrap();
        assert_eq!(w.to_text(), "+-\n-+");
        assert_eq!(gamma_inverse(&w), c);
    }

    #[test]
    fn one_element_covers() {
        let up = WalkPair::from_steps(&[1], &[1]).unwrap();
        let c = gamma_inverse(&up);
        assert_eq!((c.n(), c.k()), (1, 1));
        assert_eq!(gamma(&c).unwrap(), up);
        let down = WalkPair::from_steps(&[-1], &[-1]).unwrap();
        assert_eq!(gamma_inverse(&down).k(), 0);
    }

    #[test]
    fn multi_factor_cover_rejected() {
        // a1 ≺ b1 ... with a1,b1 below a2,b2 and each level incomparable
        let c = TwoChainCover::new(4, 2, [(0, 3), (2, 1)]).unwrap();
        assert!(!c.is_one_factor());
        assert!(matches!(gamma(&c), Err(Error::NotOneFactor { factors: 2 })));
        let chain = TwoChainCover::new(3, 3, []).unwrap();
        assert!(gamma(&chain).is_err());
    }

    #[test]
    fn psi_of_singleton_and_pair() {
        let one = Poset::chain(1).unwrap();
        let covers = psi(&one).unwrap();
        assert_eq!(covers.len(), 2);
        assert_eq!(covers.iter().map(|c| c.k()).collect::<Vec<_>>(), vec![0, 1]);

        let two = Poset::antichain(2).unwrap();
        let covers = psi(&two).unwrap();
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].k(), 1);
    }

    #[test]
    fn psi_of_two_factor_poset_has_two_classes() {
        let p = crate::poset::tests::five_element();
        assert_eq!(psi(&p).unwrap_err(), Error::NotOneFactor { factors: 2 });
        let covers = cover_classes_with_maps(&p).unwrap();
        assert_eq!(covers.len(), 2);
        // C̄: A = {1,4} (0-based {0,3}), B = {2,3,5}; C̄': the swap.
        let ks: Vec<usize> = covers.iter().map(|c| c.cover.k()).collect();
        assert_eq!(ks, vec![2, 3]);
        let c = &covers[0];
        assert_eq!(c.alpha[0], A(0));
        assert_eq!(c.alpha[3], A(1));
        assert_eq!(c.alpha[1], B(0));
        assert_eq!(c.alpha[2], B(1));
        assert_eq!(c.alpha[4], B(2));
        for cw in &covers {
            for x in 0..5 {
                assert_eq!(p.window(x).unwrap(), cw.cover.window(cw.alpha[x]));
            }
        }
    }

    #[test]
    fn psi_rejects_bad_input() {
        let three = Poset::antichain(3).unwrap();
        assert!(matches!(psi(&three), Err(Error::WidthTooLarge { width: 3 })));
        let chain = Poset::chain(3).unwrap();
        assert!(matches!(psi(&chain), Err(Error::NotOneFactor { factors: 3 })));
    }

    #[test]
    fn non_greedy_pair_fails_condition() {
        // n=2 antichain cover with λ and δ swapped: a after b in λ, before in δ
        let g = GreedyPair {
            k: 1,
            lambda: vec![1, 0],
            delta: vec![0, 1],
        };
        assert!(!g.satisfies_greedy_condition());
    }

    #[test]
    fn cover_json_round_trip() {
        let c = seven_element();
        let j = c.to_json();
        assert_eq!(j.k, 4);
        let text = serde_json::to_string(&j).unwrap();
        let back: CoverJson = serde_json::from_str(&text).unwrap();
        assert_eq!(TwoChainCover::from_json(&back).unwrap(), c);
    }

    #[test]
    fn within_chain_cross_pair_rejected() {
        assert!(TwoChainCover::new(3, 2, [(0, 1)]).is_err());
    }
}

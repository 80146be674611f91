//! Brute-force enumeration for small `n` and exact checks built on it.
//!
//! Everything here favours transparency over speed: posets are generated by
//! extending a poset on `0..j` with a new element `j` in every consistent way,
//! covers are generated directly from their cross relations, and walk pairs by
//! a depth-first search over joint steps. None of these go through the
//! bijection, so they can be used to test it.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmat::BitMatrix;
use crate::count::binomial;
use crate::cover::{gamma, gamma_inverse, greedy_pair, psi, psi_with_maps, TwoChainCover};
use crate::error::{Error, Result};
use crate::poset::{Poset, Relation};
use crate::walk::{JointStep, WalkPair};

pub const MAX_POSET_N: usize = 7;
pub const MAX_COVER_N: usize = 10;
pub const MAX_WALK_N: usize = 12;
pub const MAX_FIRST_RETURN_K: usize = 12;
pub const MAX_REJECTION_N: usize = 64;

fn check_n(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if n > limit {
        return Err(Error::TooLarge {
            what,
            n,
            limit,
            flag: None,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosetFilter {
    All,
    WidthAtMost2,
    /// Width exactly 2.
    Width2,
    /// Width at most 2 and a connected incomparability graph.
    OneFactor,
}

impl std::str::FromStr for PosetFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(PosetFilter::All),
            "width_at_most2" | "width-at-most2" => Ok(PosetFilter::WidthAtMost2),
            "width2" => Ok(PosetFilter::Width2),
            "one_factor" | "one-factor" => Ok(PosetFilter::OneFactor),
            other => Err(Error::InvalidArgument(format!("unknown poset filter {other:?}"))),
        }
    }
}

/// Poset on at most 16 elements as bit masks: `up[i]` holds the elements
/// strictly above `i`, `down[i]` those strictly below.
#[derive(Debug, Clone, Copy)]
struct Small {
    n: usize,
    up: [u16; MAX_POSET_N],
    down: [u16; MAX_POSET_N],
}

impl Small {
    fn singleton() -> Self {
        Small {
            n: 1,
            up: [0; MAX_POSET_N],
            down: [0; MAX_POSET_N],
        }
    }

    fn all(&self) -> u16 {
        ((1u32 << self.n) - 1) as u16
    }

    fn incomp(&self, i: usize) -> u16 {
        self.all() & !(self.up[i] | self.down[i] | (1 << i))
    }

    fn has_incomparable_pair(&self) -> bool {
        (0..self.n).any(|i| self.incomp(i) != 0)
    }

    fn has_three_antichain(&self) -> bool {
        (0..self.n).any(|i| {
            let inc = self.incomp(i);
            bits(inc).any(|j| j > i && self.incomp(j) & inc & !((1u16 << (j + 1)) - 1) != 0)
        })
    }

    /// Sizes of the connected components of the incomparability graph.
    fn factor_sizes(&self) -> Vec<usize> {
        let mut seen = 0u16;
        let mut sizes = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u16 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u16;
                for x in bits(frontier) {
                    next |= self.incomp(x);
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            sizes.push(comp.count_ones() as usize);
        }
        sizes
    }

    fn to_poset(self) -> Poset {
        let mut m = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in bits(self.up[i]) {
                m.set(i, j);
            }
        }
        Poset::from_closed(m)
    }

    /// Calls `f` on every extension by element `j = self.n`, in lexicographic
    /// order of the assignment `(pair (0,j), pair (1,j), …)` with digits
    /// 0 = incomparable, 1 = `i ≺ j`, 2 = `j ≺ i`.
    fn extensions(&self, width2_only: bool, mut f: impl FnMut(Small)) {
        let j = self.n;
        let all = self.all();
        let total = 3usize.pow(j as u32);
        let mut digits = vec![0u8; j];
        for code in 0..total {
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = (c % 3) as u8;
                c /= 3;
            }
            let (mut down, mut up) = (0u16, 0u16);
            for (i, &d) in digits.iter().enumerate() {
                match d {
                    1 => down |= 1 << i,
                    2 => up |= 1 << i,
                    _ => {}
                }
            }
            let ok = bits(down).all(|i| self.down[i] & !down == 0 && self.up[i] & up == up)
                && bits(up).all(|i| self.up[i] & !up == 0);
            if !ok {
                continue;
            }
            if width2_only {
                let inc = all & !(down | up);
                if bits(inc).any(|i| self.incomp(i) & inc != 0) {
                    continue;
                }
            }
            let mut next = *self;
            next.n = j + 1;
            for i in bits(down) {
                next.up[i] |= 1 << j;
            }
            for i in bits(up) {
                next.down[i] |= 1 << j;
            }
            next.up[j] = up;
            next.down[j] = down;
            f(next);
        }
    }

    fn accepts(&self, filter: PosetFilter) -> bool {
        match filter {
            PosetFilter::All => true,
            PosetFilter::WidthAtMost2 => !self.has_three_antichain(),
            PosetFilter::Width2 => !self.has_three_antichain() && self.has_incomparable_pair(),
            PosetFilter::OneFactor => !self.has_three_antichain() && self.factor_sizes().len() == 1,
        }
    }
}

fn bits(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn dfs(p: Small, n: usize, width2_only: bool, f: &mut dyn FnMut(&Small)) {
    if p.n == n {
        f(&p);
        return;
    }
    p.extensions(width2_only, |q| dfs(q, n, width2_only, f));
}

/// Folds over the posets on `n` elements passing `filter`, in enumeration
/// order. Work is split at a fixed prefix depth and recombined in prefix
/// order, so the result does not depend on the thread count.
fn fold_posets<T, F, R>(n: usize, filter: PosetFilter, init: impl Fn() -> T + Sync, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    F: Fn(&mut T, &Small) + Sync,
    R: Fn(T, T) -> T,
{
    check_n("poset enumeration", n, MAX_POSET_N)?;
    let width2_only = filter != PosetFilter::All;
    let depth = n.min(4);
    let mut prefixes = Vec::new();
    dfs(Small::singleton(), depth, width2_only, &mut |p| prefixes.push(*p));
    let parts: Vec<T> = prefixes
        .par_iter()
        .map(|&prefix| {
            let mut acc = init();
            dfs(prefix, n, width2_only, &mut |p| {
                if p.accepts(filter) {
                    fold(&mut acc, p);
                }
            });
            acc
        })
        .collect();
    Ok(parts.into_iter().fold(init(), reduce))
}

/// All labeled posets on `0..n` passing `filter`, in lexicographic order of
/// their pair assignments.
pub fn enumerate_posets(n: usize, filter: PosetFilter) -> Result<Vec<Poset>> {
    fold_posets(
        n,
        filter,
        Vec::new,
        |acc, p| acc.push(p.to_poset()),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )
}

pub fn count_posets(n: usize, filter: PosetFilter) -> Result<u64> {
    fold_posets(n, filter, || 0u64, |acc, _| *acc += 1, |a, b| a + b)
}

/// Every canonical one-factor two-chain cover on `n` elements, generated from
/// its cross relations: `a_i ≺ b_j` iff `j ≥ u(i)` and `b_j ≺ a_i` iff
/// `i ≥ v(j)` for nondecreasing thresholds `u`, `v`. Candidates are validated
/// as relations, so nothing here relies on the greedy-pair theory.
pub fn enumerate_covers(n: usize) -> Result<Vec<TwoChainCover>> {
    check_n("cover enumeration", n, MAX_COVER_N)?;
    let mut out = Vec::new();
    for k in 0..=n {
        let m = n - k;
        let us = monotone_sequences(k, m);
        let vs = monotone_sequences(m, k);
        for u in &us {
            for v in &vs {
                let mut rel = Relation::empty(n);
                for (i, &ui) in u.iter().enumerate() {
                    for i2 in i + 1..k {
                        rel.insert(i, i2)?;
                    }
                    for j in ui..m {
                        rel.insert(i, k + j)?;
                    }
                }
                for (j, &vj) in v.iter().enumerate() {
                    for j2 in j + 1..m {
                        rel.insert(k + j, k + j2)?;
                    }
                    for i in vj..k {
                        rel.insert(k + j, i)?;
                    }
                }
                let Ok(poset) = Poset::from_relation(rel) else {
                    continue;
                };
                if poset.is_one_factor() && poset.width() <= 2 {
                    out.push(TwoChainCover::from_poset(k, poset)?);
                }
            }
        }
    }
    Ok(out)
}

/// Nondecreasing sequences of length `len` with values in `0..=max`.
fn monotone_sequences(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, max: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in lo..=max {
            cur.push(x);
            rec(len, max, x, cur, out);
            cur.pop();
        }
    }
    rec(len, max, 0, &mut cur, &mut out);
    out
}

/// All of `B_n` by depth-first search over joint steps, pruning states that
/// can no longer close the gap in time.
pub fn enumerate_walk_pairs(n: usize) -> Result<Vec<WalkPair>> {
    check_n("walk-pair enumeration", n, MAX_WALK_N)?;
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n);
    fn rec(n: usize, d: i32, steps: &mut Vec<JointStep>, out: &mut Vec<WalkPair>) {
        let t = steps.len();
        if t == n {
            out.push(WalkPair::from_joint_unchecked(steps.iter().copied()));
            return;
        }
        for s in JointStep::ALL {
            let nd = d + s.gap_change();
            let t1 = t + 1;
            let ok = if t1 == n { nd == 0 } else { nd >= 1 && nd as usize <= n - t1 };
            if ok {
                steps.push(s);
                rec(n, nd, steps, out);
                steps.pop();
            }
        }
    }
    rec(n, 0, &mut steps, &mut out);
    Ok(out)
}

/// `|B_n|` by testing all `4^n` joint step sequences.
pub fn brute_force_walk_count(n: usize) -> Result<u64> {
    check_n("brute-force walk count", n, MAX_WALK_N)?;
    let count = (0u64..1 << (2 * n))
        .into_par_iter()
        .filter(|&code| {
            let (mut v, mut w) = (0i32, 0i32);
            for t in 0..n {
                let bits = (code >> (2 * t)) & 3;
                v += if bits & 1 == 1 { 1 } else { -1 };
                w += if bits & 2 == 2 { 1 } else { -1 };
                if t + 1 < n && v <= w {
                    return false;
                }
            }
            v == w
        })
        .count();
    Ok(count as u64)
}

/// Uniform draw from `B_n` by proposing uniform joint steps and restarting on
/// the first violation. Kept as a slow reference for the exact samplers.
pub fn sample_by_rejection<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<WalkPair> {
    check_n("rejection sampling", n, MAX_REJECTION_N)?;
    'outer: loop {
        let mut steps = Vec::with_capacity(n);
        let mut d = 0i32;
        for t in 1..=n {
            let s = JointStep::ALL[rng.gen_range(0..4)];
            d += s.gap_change();
            let ok = if t == n { d == 0 } else { d >= 1 };
            if !ok {
                continue 'outer;
            }
            steps.push(s);
        }
        return Ok(WalkPair::from_joint_unchecked(steps));
    }
}

/// Every ordered partition `(A, B)` of `p` into two chains (either may be
/// empty), found by testing all `2^n` subsets. Chains are listed bottom-up.
pub fn two_chain_partitions(p: &Poset) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    check_n("chain partition search", p.n(), 20)?;
    let n = p.n();
    let is_chain = |xs: &[usize]| xs.iter().enumerate().all(|(i, &x)| xs[i + 1..].iter().all(|&y| p.comparable(x, y)));
    let by_tau = |x: &usize| p.tau(*x).expect("in range");
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let mut a: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let mut b: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 0).collect();
        if is_chain(&a) && is_chain(&b) {
            a.sort_by_key(by_tau);
            b.sort_by_key(by_tau);
            out.push((a, b));
        }
    }
    Ok(out)
}

/// Counts of the small-`n` objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub posets: u64,
    pub posets_width_at_most2: u64,
    pub posets_width2: u64,
    pub posets_one_factor: u64,
    pub covers: u64,
    pub walk_pairs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub counts: CensusCounts,
    /// Number of one-factor posets with `|Ψ(P)| = s`, keyed by `s`.
    pub psi_split: BTreeMap<usize, u64>,
}

impl Census {
    pub fn compute(n: usize) -> Result<Self> {
        check_n("census", n, MAX_POSET_N)?;
        let posets = count_posets(n, PosetFilter::All)?;
        let posets_width_at_most2 = count_posets(n, PosetFilter::WidthAtMost2)?;
        let posets_width2 = count_posets(n, PosetFilter::Width2)?;
        let psi_split = fold_posets(
            n,
            PosetFilter::OneFactor,
            BTreeMap::new,
            |acc: &mut BTreeMap<usize, u64>, p| {
                let s = psi(&p.to_poset()).expect("one-factor width-2 poset").len();
                *acc.entry(s).or_default() += 1;
            },
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            },
        )?;
        let posets_one_factor = psi_split.values().sum();
        let covers = enumerate_covers(n)?.len() as u64;
        let walk_pairs = enumerate_walk_pairs(n)?.len() as u64;
        Ok(Self {
            n,
            counts: CensusCounts {
                posets,
                posets_width_at_most2,
                posets_width2,
                posets_one_factor,
                covers,
                walk_pairs,
            },
            psi_split,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Committed census files for `n = 1..=6`.
pub fn golden_census(n: usize) -> Option<&'static str> {
    match n {
        1 => Some(include_str!("../golden/census_n1.json")),
        2 => Some(include_str!("../golden/census_n2.json")),
        3 => Some(include_str!("../golden/census_n3.json")),
        4 => Some(include_str!("../golden/census_n4.json")),
        5 => Some(include_str!("../golden/census_n5.json")),
        6 => Some(include_str!("../golden/census_n6.json")),
        _ => None,
    }
}

/// Outcome of one exact check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check: String,
    pub n: usize,
    pub passed: bool,
    pub checked: u64,
    pub failures: u64,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl VerifyReport {
    pub fn summary(&self) -> String {
        format!(
            "{} {} n={} checked={} failures={}{}{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check,
            self.n,
            self.checked,
            self.failures,
            if self.detail.is_empty() { String::new() } else { format!(" ({})", self.detail) },
            self.first_failure.as_ref().map(|f| format!(" first failure: {f}")).unwrap_or_default(),
        )
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(msg());
            }
        }
    }

    fn report(self, check: &str, n: usize, detail: String) -> VerifyReport {
        VerifyReport {
            check: check.to_string(),
            n,
            passed: self.failures == 0,
            checked: self.checked,
            failures: self.failures,
            detail,
            first_failure: self.first,
        }
    }
}

/// `Γ` and `Γ⁻¹` invert each other on independently enumerated `C_1` and `B_n`,
/// and the two sets have the same size.
pub fn verify_bijection(n: usize) -> Result<VerifyReport> {
    check_n("bijection check", n, MAX_COVER_N.min(MAX_WALK_N))?;
    let covers = enumerate_covers(n)?;
    let walks = enumerate_walk_pairs(n)?;
    let walk_set: HashSet<&WalkPair> = walks.iter().collect();
    let mut tally = Tally::default();
    let mut image = HashSet::new();
    for c in &covers {
        let g = greedy_pair(c);
        tally.record(g.satisfies_greedy_condition(), || format!("greedy condition fails for {c:?}"));
        match gamma(c) {
            Ok(w) => {
                tally.record(gamma_inverse(&w) == *c, || format!("Γ⁻¹(Γ(C)) ≠ C for {c:?}"));
                tally.record(walk_set.contains(&w), || format!("Γ(C) = {w:?} not enumerated"));
                image.insert(w);
            }
            Err(e) => tally.record(false, || format!("Γ fails on {c:?}: {e}")),
        }
    }
    for w in &walks {
        let c = gamma_inverse(w);
        tally.record(c.is_one_factor(), || format!("Γ⁻¹({w:?}) has several factors"));
        tally.record(gamma(&c).ok().as_ref() == Some(w), || format!("Γ(Γ⁻¹(W)) ≠ W for {w:?}"));
    }
    tally.record(covers.len() == walks.len(), || {
        format!("|C_1| = {} but |B_n| = {}", covers.len(), walks.len())
    });
    tally.record(image.len() == covers.len(), || "Γ is not injective".into());
    let detail = format!("|C_1| = {}, |B_n| = {}", covers.len(), walks.len());
    Ok(tally.report("bijection", n, detail))
}

/// The measure on covers induced by a uniform one-factor poset and a uniform
/// choice from `Ψ(P)` is uniform on `C_1`, and its image under `Γ` is uniform on
/// `B_n`. Exact rational arithmetic.
pub fn verify_uniform_cover_measure(n: usize) -> Result<VerifyReport> {
    check_n("uniform cover measure", n, 6)?;
    let posets = enumerate_posets(n, PosetFilter::OneFactor)?;
    let n_posets = BigInt::from(posets.len());
    let mut measure: HashMap<TwoChainCover, BigRational> = HashMap::new();
    for p in &posets {
        let covers = psi(p)?;
        let share = BigRational::new(BigInt::one(), &n_posets * BigInt::from(covers.len()));
        for c in covers {
            *measure.entry(c).or_insert_with(BigRational::zero) += &share;
        }
    }
    let all_covers = enumerate_covers(n)?;
    let walks = enumerate_walk_pairs(n)?;
    let mut tally = Tally::default();
    let target = BigRational::new(BigInt::one(), BigInt::from(all_covers.len()));
    tally.record(measure.len() == all_covers.len(), || {
        format!("Ψ reaches {} covers, C_1 has {}", measure.len(), all_covers.len())
    });
    for c in &all_covers {
        let got = measure.get(c).cloned().unwrap_or_else(BigRational::zero);
        tally.record(got == target, || format!("P_walk({c:?}) = {got}, expected {target}"));
    }
    let mut walk_measure: HashMap<WalkPair, BigRational> = HashMap::new();
    for (c, m) in &measure {
        let w = gamma(c)?;
        *walk_measure.entry(w).or_insert_with(BigRational::zero) += m;
    }
    let walk_target = BigRational::new(BigInt::one(), BigInt::from(walks.len()));
    for w in &walks {
        let got = walk_measure.get(w).cloned().unwrap_or_else(BigRational::zero);
        tally.record(got == walk_target, || format!("P_cov({w:?}) = {got}, expected {walk_target}"));
    }
    let detail = format!(
        "|P_1| = {}, |C_1| = {}, every cover has measure {}",
        posets.len(),
        all_covers.len(),
        if tally.failures == 0 { target.to_string() } else { "(not uniform)".into() }
    );
    Ok(tally.report("uniform", n, detail))
}

/// Height histograms summed over `B_n`: at `τ(c)` over all elements `c`, at
/// each time `t = 1..=n`, and at `max(H(t−1), H(t))`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrizationTables {
    pub at_tau: BTreeMap<u32, u64>,
    pub at_time: BTreeMap<u32, u64>,
    pub at_step_max: BTreeMap<u32, u64>,
    pub multiplicity_failures: u64,
}

pub fn symmetrization_tables(n: usize) -> Result<SymmetrizationTables> {
    let walks = enumerate_walk_pairs(n)?;
    let mut t = SymmetrizationTables::default();
    for w in &walks {
        let mut per_time = vec![0usize; n + 1];
        for (_, tau, _) in w.all_tau_windows() {
            per_time[tau] += 1;
            *t.at_tau.entry(w.height(tau)?).or_default() += 1;
        }
        for (time, &hits) in per_time.iter().enumerate().skip(1) {
            let h = w.height(time)?;
            *t.at_time.entry(h).or_default() += 1;
            *t.at_step_max.entry(h.max(w.height(time - 1)?)).or_default() += 1;
            if hits != w.joint_step(time).tau_multiplicity() {
                t.multiplicity_failures += 1;
            }
        }
    }
    Ok(t)
}

fn histogram_diff(a: &BTreeMap<u32, u64>, b: &BTreeMap<u32, u64>) -> Vec<(u32, u64, u64)> {
    let keys: std::collections::BTreeSet<u32> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter()
        .map(|m| (m, a.get(&m).copied().unwrap_or(0), b.get(&m).copied().unwrap_or(0)))
        .filter(|(_, x, y)| x != y)
        .collect()
}

/// For every even `m`: `Σ_W Σ_c 1[H(τ(c)) = m] = Σ_W Σ_{t=1..n} 1[H(t) = m]`,
/// plus the per-step multiplicities of `τ`.
pub fn verify_symmetrization(n: usize) -> Result<VerifyReport> {
    check_n("symmetrization check", n, MAX_WALK_N)?;
    let t = symmetrization_tables(n)?;
    let mut tally = Tally::default();
    tally.record(t.multiplicity_failures == 0, || {
        format!("{} steps with the wrong number of τ values", t.multiplicity_failures)
    });
    let diff = histogram_diff(&t.at_tau, &t.at_time);
    let keys: std::collections::BTreeSet<u32> = t.at_tau.keys().chain(t.at_time.keys()).copied().collect();
    for m in keys {
        let x = t.at_tau.get(&m).copied().unwrap_or(0);
        let y = t.at_time.get(&m).copied().unwrap_or(0);
        tally.record(x == y, || format!("m = {m}: at τ {x}, at uniform time {y}"));
    }
    let detail = if diff.is_empty() {
        "distributions agree for every m".into()
    } else {
        format!("{} heights differ", diff.len())
    };
    Ok(tally.report("symmetry", n, detail))
}

/// The exact identity that does hold: the height at `τ(U)` has the law of
/// `max(H(t−1), H(t))` at a uniform step `t`.
pub fn verify_symmetrization_step_max(n: usize) -> Result<VerifyReport> {
    check_n("symmetrization check", n, MAX_WALK_N)?;
    let t = symmetrization_tables(n)?;
    let mut tally = Tally::default();
    let keys: std::collections::BTreeSet<u32> = t.at_tau.keys().chain(t.at_step_max.keys()).copied().collect();
    for m in keys {
        let x = t.at_tau.get(&m).copied().unwrap_or(0);
        let y = t.at_step_max.get(&m).copied().unwrap_or(0);
        tally.record(x == y, || format!("m = {m}: at τ {x}, step maximum {y}"));
    }
    Ok(tally.report("symmetry-step-max", n, String::new()))
}

/// Area equals the sum of windows, and every element satisfies
/// `|I − H(τ)| ≤ Err`. Returns a description of the first violation.
pub fn check_walk_identities(w: &WalkPair) -> std::result::Result<(), String> {
    let windows = w.intercept_windows();
    if w.area() != windows.total() {
        return Err(format!("{w:?}: area {} ≠ Σ windows {}", w.area(), windows.total()));
    }
    for (e, tau, window) in w.all_tau_windows() {
        let h = w.height(tau).map_err(|e| e.to_string())? as i64;
        let bound = w.err_bound(tau, window).map_err(|e| e.to_string())? as i64;
        if (window as i64 - h).abs() > bound {
            return Err(format!("{w:?}, {e}: |I − H(τ)| = |{window} − {h}| > {bound}"));
        }
    }
    Ok(())
}

pub fn verify_area(n: usize) -> Result<VerifyReport> {
    check_n("area identity check", n, MAX_WALK_N)?;
    let mut tally = Tally::default();
    for w in enumerate_walk_pairs(n)? {
        let total = w.intercept_windows().total();
        tally.record(w.area() == total, || format!("{w:?}: area {} ≠ Σ windows {total}", w.area()));
    }
    Ok(tally.report("area", n, String::new()))
}

pub fn verify_err_bound(n: usize) -> Result<VerifyReport> {
    check_n("error bound check", n, MAX_WALK_N)?;
    let mut tally = Tally::default();
    for w in enumerate_walk_pairs(n)? {
        let r = check_walk_identities(&w);
        tally.record(r.is_ok(), || r.unwrap_err());
    }
    Ok(tally.report("errbound", n, String::new()))
}

/// `ι` maps `B_n` into itself, squares to the identity, is injective and
/// reverses heights.
pub fn verify_involution(n: usize) -> Result<VerifyReport> {
    check_n("involution check", n, MAX_WALK_N)?;
    let walks = enumerate_walk_pairs(n)?;
    let set: HashSet<&WalkPair> = walks.iter().collect();
    let mut image = HashSet::new();
    let mut tally = Tally::default();
    for w in &walks {
        let iw = w.involute();
        tally.record(set.contains(&iw), || format!("ι({w:?}) = {iw:?} is not in B_n"));
        tally.record(iw.involute() == *w, || format!("ι²({w:?}) ≠ id"));
        let heights_ok = (0..=n).all(|t| iw.height(n - t).ok() == w.height(t).ok());
        tally.record(heights_ok, || format!("heights of ι({w:?}) are not reversed"));
        image.insert(iw);
    }
    tally.record(image.len() == walks.len(), || "ι is not injective".into());
    Ok(tally.report("involution", n, String::new()))
}

/// Poset-side windows and `τ` agree with the walk-side values under the
/// canonical isomorphism, for every one-factor poset and each of its covers.
pub fn verify_window_identity(n: usize) -> Result<VerifyReport> {
    check_n("window identity check", n, MAX_POSET_N)?;
    let mut tally = Tally::default();
    for p in enumerate_posets(n, PosetFilter::OneFactor)? {
        for cw in psi_with_maps(&p)? {
            let w = gamma(&cw.cover)?;
            for x in 0..n {
                let e = cw.alpha[x];
                let (pw, ww) = (p.window(x)?, w.window_of(e)?);
                tally.record(pw == ww, || format!("{p:?}, x = {x}: I_P = {pw}, walk window {ww}"));
                let (pt, wt) = (p.tau(x)?, w.tau(e)?);
                tally.record(pt == wt, || format!("{p:?}, x = {x}: τ_P = {pt}, walk τ {wt}"));
            }
        }
    }
    Ok(tally.report("windows", n, String::new()))
}

/// First return of a simple random walk at time `2k` has probability
/// `Binom(2k, k) / ((2k − 1) 2^{2k})`; compared exactly with a count over all
/// `2^{2k}` paths for `k = 1..=kmax`.
pub fn verify_first_return(kmax: usize) -> Result<VerifyReport> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    if kmax > MAX_FIRST_RETURN_K {
        return Err(Error::TooLarge {
            what: "first-return check",
            n: kmax,
            limit: MAX_FIRST_RETURN_K,
            flag: None,
        });
    }
    let mut tally = Tally::default();
    let mut values = Vec::new();
    for k in 1..=kmax {
        let len = 2 * k;
        let hits = (0u64..1 << len)
            .into_par_iter()
            .filter(|&path| {
                let mut s = 0i32;
                for t in 0..len {
                    s += if path >> t & 1 == 1 { 1 } else { -1 };
                    if s == 0 {
                        return t + 1 == len;
                    }
                }
                false
            })
            .count();
        let denom = BigInt::one() << len;
        let brute = BigRational::new(BigInt::from(hits), denom.clone());
        let formula = BigRational::new(
            BigInt::from(binomial(len as u64, k as u64)),
            BigInt::from(len as u64 - 1) * denom,
        );
        values.push(format!("k={k}: {brute}"));
        tally.record(brute == formula, || format!("k = {k}: brute force {brute}, formula {formula}"));
    }
    Ok(tally.report("firstreturn", kmax, values.join(", ")))
}

/// Fraction of width-2 posets on `n` elements whose largest factor has at
/// least `n − ln n` elements. Informational: always passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorDominance {
    pub n: usize,
    pub threshold: f64,
    pub posets_width2: u64,
    pub dominant: u64,
    pub fraction: f64,
}

pub fn factor_dominance(n: usize) -> Result<FactorDominance> {
    if n < 2 {
        return Err(Error::InvalidArgument("width-2 posets need n >= 2".into()));
    }
    let threshold = n as f64 - (n as f64).ln();
    let (total, dominant) = fold_posets(
        n,
        PosetFilter::Width2,
        || (0u64, 0u64),
        |acc, p| {
            acc.0 += 1;
            let largest = p.factor_sizes().into_iter().max().unwrap_or(0);
            if largest as f64 >= threshold {
                acc.1 += 1;
            }
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    )?;
    Ok(FactorDominance {
        n,
        threshold,
        posets_width2: total,
        dominant,
        fraction: dominant as f64 / total as f64,
    })
}

pub fn verify_factor_dominance(n: usize) -> Result<VerifyReport> {
    let f = factor_dominance(n)?;
    Ok(VerifyReport {
        check: "factors".into(),
        n,
        passed: true,
        checked: f.posets_width2,
        failures: 0,
        detail: format!(
            "{}/{} = {:.6} have a factor of size >= {:.3}",
            f.dominant, f.posets_width2, f.fraction, f.threshold
        ),
        first_failure: None,
    })
}

/// Recomputes the census and compares it with the committed file.
pub fn verify_census(n: usize) -> Result<VerifyReport> {
    let census = Census::compute(n)?;
    let mut tally = Tally::default();
    tally.record(census.counts.covers == census.counts.walk_pairs, || {
        format!("{} covers but {} walk pairs", census.counts.covers, census.counts.walk_pairs)
    });
    tally.record(census.psi_split.keys().all(|&s| s == 1 || s == 2), || {
        format!("|Ψ| outside {{1, 2}}: {:?}", census.psi_split)
    });
    let detail = match golden_census(n) {
        Some(text) => {
            let golden = Census::from_json_str(text)?;
            tally.record(golden == census, || {
                format!("census differs from golden file: {}", serde_json::to_string(&census).unwrap_or_default())
            });
            "matches golden file".to_string()
        }
        None => "no golden file for this n".to_string(),
    };
    Ok(tally.report("census", n, detail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count;
    use crate::cover::{canonicalize, cover_classes};
    use crate::poset::WidthClass;

    #[test]
    fn labeled_poset_counts() {
        let got: Vec<u64> = (1..=6).map(|n| count_posets(n, PosetFilter::All).unwrap()).collect();
        assert_eq!(got, vec![1, 3, 19, 219, 4231, 130023]);
    }

    #[test]
    fn three_element_width_split() {
        let all = enumerate_posets(3, PosetFilter::All).unwrap();
        let by = |c: WidthClass| all.iter().filter(|p| p.width_class() == c).count();
        assert_eq!(by(WidthClass::One), 6);
        assert_eq!(by(WidthClass::AtLeastThree), 1);
        assert_eq!(by(WidthClass::Two), 12);
        assert_eq!(count_posets(3, PosetFilter::Width2).unwrap(), 12);
    }

    #[test]
    fn filters_agree_with_poset_methods() {
        for n in 1..=5 {
            let all = enumerate_posets(n, PosetFilter::All).unwrap();
            let w2 = all.iter().filter(|p| p.width_by_matching() <= 2).count() as u64;
            let one = all
                .iter()
                .filter(|p| p.width_by_matching() <= 2 && p.is_one_factor())
                .count() as u64;
            assert_eq!(count_posets(n, PosetFilter::WidthAtMost2).unwrap(), w2);
            assert_eq!(count_posets(n, PosetFilter::OneFactor).unwrap(), one);
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let all = enumerate_posets(5, PosetFilter::All).unwrap();
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn small_one_factor_cases() {
        assert_eq!(enumerate_posets(2, PosetFilter::OneFactor).unwrap(), vec![Poset::antichain(2).unwrap()]);
        assert_eq!(count_posets(1, PosetFilter::OneFactor).unwrap(), 1);
        assert!(enumerate_posets(8, PosetFilter::All).is_err());
    }

    #[test]
    fn walk_enumeration_matches_counts() {
        for n in 1..=12 {
            let walks = enumerate_walk_pairs(n).unwrap();
            let expect: u64 = count(n).unwrap().try_into().unwrap();
            assert_eq!(walks.len() as u64, expect, "n = {n}");
            assert_eq!(brute_force_walk_count(n).unwrap(), expect, "n = {n}");
            assert!(walks.windows(2).all(|p| p[0] != p[1]));
        }
        assert!(enumerate_walk_pairs(13).is_err());
    }

    #[test]
    fn cover_enumeration_matches_walks() {
        for n in 1..=8 {
            assert_eq!(enumerate_covers(n).unwrap().len(), enumerate_walk_pairs(n).unwrap().len());
        }
    }

    #[test]
    fn brute_force_partitions_agree_with_cover_classes() {
        for p in enumerate_posets(5, PosetFilter::WidthAtMost2).unwrap() {
            let parts = two_chain_partitions(&p).unwrap();
            let mut brute: Vec<TwoChainCover> = Vec::new();
            for (a, b) in &parts {
                let c = canonicalize(&p, a, b).cover;
                if !brute.contains(&c) {
                    brute.push(c);
                }
            }
            let mut fast = cover_classes(&p).unwrap();
            let key = |c: &TwoChainCover| (c.k(), c.cross_pairs());
            brute.sort_by_key(key);
            fast.sort_by_key(key);
            assert_eq!(brute, fast, "{p:?}");
        }
    }

    #[test]
    fn bijection_small() {
        for n in 1..=6 {
            let r = verify_bijection(n).unwrap();
            assert!(r.passed, "{}", r.summary());
        }
    }

    #[test]
    fn uniform_measure_small() {
        for n in 1..=5 {
            let r = verify_uniform_cover_measure(n).unwrap();
            assert!(r.passed, "{}", r.summary());
        }
    }

    #[test]
    fn symmetrization_as_stated_fails_beyond_n1() {
        assert!(verify_symmetrization(1).unwrap().passed);
        let r = verify_symmetrization(2).unwrap();
        assert!(!r.passed);
        let t = symmetrization_tables(2).unwrap();
        assert_eq!(t.at_tau, BTreeMap::from([(2, 2)]));
        assert_eq!(t.at_time, BTreeMap::from([(0, 1), (2, 1)]));
    }

    #[test]
    fn symmetrization_with_step_maximum_holds() {
        for n in 1..=10 {
            let r = verify_symmetrization_step_max(n).unwrap();
            assert!(r.passed, "{}", r.summary());
            assert_eq!(symmetrization_tables(n).unwrap().multiplicity_failures, 0);
        }
    }

    #[test]
    fn identities_and_involution() {
        for n in 1..=8 {
            for r in [verify_area(n), verify_err_bound(n), verify_involution(n), verify_window_identity(n.min(6))] {
                let r = r.unwrap();
                assert!(r.passed, "{}", r.summary());
            }
        }
    }

    #[test]
    fn first_return_values() {
        let r = verify_first_return(5).unwrap();
        assert!(r.passed, "{}", r.summary());
        assert!(r.detail.starts_with("k=1: 1/2, k=2: 1/8"));
        assert!(verify_first_return(13).is_err());
    }

    #[test]
    fn factor_dominance_n2() {
        let f = factor_dominance(2).unwrap();
        assert_eq!((f.posets_width2, f.dominant), (1, 1));
    }

    #[test]
    fn golden_census_files_match() {
        for n in 1..=5 {
            let r = verify_census(n).unwrap();
            assert!(r.passed, "{}", r.summary());
        }
    }

    #[test]
    fn rejection_sampler_is_valid() {
        let mut rng = crate::rng::stream(4, 0);
        for _ in 0..50 {
            let w = sample_by_rejection(12, &mut rng).unwrap();
            assert!(check_walk_identities(&w).is_ok());
        }
    }
}

//! Exact uniform samplers for non-hitting walk pairs.
//!
//! [`DpSampler`] unranks a uniform big integer against the suffix counts of a
//! [`CountTable`]. [`DecomposedSampler`] draws the half-gap walk as a lazy
//! excursion (number of nonzero steps, their positions, a uniform Dyck path
//! through the cycle lemma) and then fair signs on the flat steps; it needs
//! only O(n) memory and works far beyond the table cap.

use std::sync::Arc;

use num_bigint::RandBigInt;
use rand::Rng;

use crate::count::{CountTable, DEFAULT_DP_CAP};
use crate::error::{Error, Result};
use crate::walk::{JointStep, WalkPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerMethod {
    Dp,
    #[default]
    Decomposed,
}

impl std::str::FromStr for SamplerMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(SamplerMethod::Dp),
            "decomposed" => Ok(SamplerMethod::Decomposed),
            other => Err(Error::InvalidArgument(format!("unknown sampler method {other:?}"))),
        }
    }
}

/// Uniform sampler backed by exact suffix counts. The table is shared
/// read-only, so clones are cheap and can move to worker threads.
#[derive(Debug, Clone)]
pub struct DpSampler {
    table: Arc<CountTable>,
}

impl DpSampler {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_DP_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        Ok(Self::from_table(Arc::new(CountTable::with_cap(n, cap)?)))
    }

    pub fn from_table(table: Arc<CountTable>) -> Self {
        Self { table }
    }

    pub fn table(&self) -> &CountTable {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> WalkPair {
        let n = self.n();
        let mut rank = rng.gen_biguint_below(self.table.total());
        let mut d = 0usize;
        let mut steps = Vec::with_capacity(n);
        for t in 0..n {
            let mut chosen = None;
            for step in JointStep::ALL {
                let nd = d as i64 + step.gap_change() as i64;
                if nd < 0 {
                    continue;
                }
                let Some(c) = self.table.get_ref(t + 1, nd as usize) else {
                    continue;
                };
                if &rank < c {
                    chosen = Some((step, nd as usize));
                    break;
                }
                rank -= c;
            }
            let (step, nd) = chosen.expect("rank is below the state count");
            steps.push(step);
            d = nd;
        }
        WalkPair::from_joint_unchecked(steps)
    }
}

/// One uniform draw from `B_n` via the count table.
pub fn sample_dp<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<WalkPair> {
    Ok(DpSampler::new(n)?.sample(rng))
}

/// Steps `x_i ∈ {−1, 0, +1}` of a lazy walk that is positive on `(0, n)` and
/// returns to 0 at `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazyExcursion {
    steps: Vec<i8>,
}

impl LazyExcursion {
    pub fn new(steps: Vec<i8>) -> Result<Self> {
        let e = Self { steps };
        if e.is_valid() {
            Ok(e)
        } else {
            Err(Error::InvalidArgument("not a strictly positive lazy excursion".into()))
        }
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    /// Number of nonzero steps.
    pub fn nonzero_count(&self) -> usize {
        self.steps.iter().filter(|&&x| x != 0).count()
    }

    pub fn partial_sums(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.n() + 1);
        let mut s = 0i64;
        out.push(0);
        for &x in &self.steps {
            s += x as i64;
            out.push(s);
        }
        out
    }

    fn is_valid(&self) -> bool {
        let n = self.n();
        if n < 2 || self.steps.iter().any(|x| !(-1..=1).contains(x)) {
            return false;
        }
        let s = self.partial_sums();
        s[n] == 0 && s[1..n].iter().all(|&h| h > 0)
    }

    /// Walk pair with `(V − W) / 2` equal to this excursion; flat steps become
    /// `(+,+)` or `(−,−)` by a fair coin.
    pub fn lift<R: Rng + ?Sized>(&self, rng: &mut R) -> WalkPair {
        let n = self.n();
        let mut v = vec![0i32; n + 1];
        let mut w = vec![0i32; n + 1];
        let (mut cv, mut cw) = (0i32, 0i32);
        let (mut coins, mut left) = (0u64, 0u32);
        // branch-free: step kinds and coins are unpredictable
        for (t, &x) in self.steps.iter().enumerate() {
            if left == 0 {
                coins = rng.next_u64();
                left = 64;
            }
            let flat = (x == 0) as u32;
            let coin = (coins & 1) as i32 * 2 - 1;
            coins >>= flat;
            left -= flat;
            let x = x as i32;
            cv += if flat == 1 { coin } else { x };
            cw += if flat == 1 { coin } else { -x };
            v[t + 1] = cv;
            w[t + 1] = cw;
        }
        WalkPair::from_positions_unchecked(v, w)
    }
}

/// Uniform integer in `0..s` by multiply-and-reject (Lemire 2019); exact,
/// and cheaper than `gen_range` in the hot loops below.
#[inline]
fn below<R: Rng + ?Sized>(rng: &mut R, s: u32) -> u32 {
    let mut m = rng.next_u32() as u64 * s as u64;
    if (m as u32) < s {
        let t = s.wrapping_neg() % s;
        while (m as u32) < t {
            m = rng.next_u32() as u64 * s as u64;
        }
    }
    (m >> 32) as u32
}

/// Uniform Dyck path of the given semilength (steps ±1, never below 0).
///
/// Cycle lemma: a sequence of `r` ups and `r + 1` downs has exactly one
/// rotation whose proper prefixes are all non-negative, namely the one starting
/// right after the first global minimum of its prefix sums. Dropping that
/// rotation's final down-step leaves a Dyck path, and each Dyck path arises
/// from exactly `2r + 1` sequences.
pub fn uniform_dyck_path<R: Rng + ?Sized>(semilength: usize, rng: &mut R) -> Vec<i8> {
    let r = semilength;
    assert!(2 * r < u32::MAX as usize, "semilength {r} too large");
    let mut seq: Vec<i8> = std::iter::repeat_n(1, r).chain(std::iter::repeat_n(-1, r + 1)).collect();
    for i in (1..seq.len()).rev() {
        seq.swap(i, below(rng, i as u32 + 1) as usize);
    }
    let mut s = 0i64;
    let mut min = 0i64;
    let mut cut = 0usize;
    for (i, &x) in seq.iter().enumerate() {
        s += x as i64;
        if s < min {
            min = s;
            cut = i + 1;
        }
    }
    seq.rotate_left(cut);
    let last = seq.pop();
    debug_assert_eq!(last, Some(-1));
    seq
}

/// Sampler through the lazy-excursion decomposition of the half gap.
///
/// The nonzero-step count `m` (even, `2 ≤ m ≤ n`) has weight
/// `Binom(n−2, m−2) · Catalan(m/2 − 1) · 2^{n−m}`. Log-weights come from the
/// exact step ratio `w(m+2) / w(m) = (n−m)(n−m−1) / (m(m+2))`, so the only
/// error is floating-point rounding in the selection probabilities.
#[derive(Debug, Clone)]
pub struct DecomposedSampler {
    n: usize,
    ms: Vec<usize>,
    cdf: Vec<f64>,
}

impl DecomposedSampler {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "decomposed sampler needs n >= 2, got {n}"
            )));
        }
        if n > u32::MAX as usize {
            return Err(Error::TooLarge {
                what: "decomposed sampler",
                n,
                limit: u32::MAX as usize,
                flag: None,
            });
        }
        let ms: Vec<usize> = (2..=n).step_by(2).collect();
        let mut logw = Vec::with_capacity(ms.len());
        let mut cur = (n - 2) as f64 * std::f64::consts::LN_2;
        for &m in &ms {
            logw.push(cur);
            if m + 2 <= n {
                let num = ((n - m) * (n - m - 1)) as f64;
                let den = (m * (m + 2)) as f64;
                cur += (num / den).ln();
            }
        }
        let max = logw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = logw.iter().map(|l| (l - max).exp()).collect();
        let total = kahan_sum(weights.iter().copied());
        let mut cdf = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        let mut comp = 0.0;
        for w in &weights {
            let y = w / total - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            cdf.push(acc);
        }
        if let Some(last) = cdf.last_mut() {
            *last = 1.0;
        }
        Ok(Self { n, ms, cdf })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(m, P(m))` for every admissible nonzero-step count.
    pub fn nonzero_count_law(&self) -> Vec<(usize, f64)> {
        let mut prev = 0.0;
        self.ms
            .iter()
            .zip(&self.cdf)
            .map(|(&m, &c)| {
                let p = c - prev;
                prev = c;
                (m, p)
            })
            .collect()
    }

    pub fn sample_nonzero_count<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let idx = self.cdf.partition_point(|&c| c <= u).min(self.ms.len() - 1);
        self.ms[idx]
    }

    pub fn sample_excursion<R: Rng + ?Sized>(&self, rng: &mut R) -> LazyExcursion {
        let n = self.n;
        let m = self.sample_nonzero_count(rng);
        let mut steps = vec![0i8; n];
        steps[0] = 1;
        steps[n - 1] = -1;
        if m > 2 {
            // selection sampling: positions come out in increasing order
            let mut dyck = uniform_dyck_path((m - 2) / 2, rng);
            dyck.push(0);
            let interior = (n - 2) as u32;
            let mut need = (m - 2) as u32;
            let mut next = 0usize;
            for i in 0..interior {
                if need == 0 {
                    break;
                }
                let chosen = below(rng, interior - i) < need;
                steps[i as usize + 1] = if chosen { dyck[next] } else { 0 };
                next += chosen as usize;
                need -= chosen as u32;
            }
        }
        LazyExcursion { steps }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> WalkPair {
        self.sample_excursion(rng).lift(rng)
    }
}

fn kahan_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in xs {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

pub fn sample_decomposed<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<WalkPair> {
    Ok(DecomposedSampler::new(n)?.sample(rng))
}

/// Either sampler behind one interface.
#[derive(Debug, Clone)]
pub enum WalkSampler {
    Dp(DpSampler),
    Decomposed(DecomposedSampler),
}

impl WalkSampler {
    pub fn new(n: usize, method: SamplerMethod, dp_cap: usize) -> Result<Self> {
        Ok(match method {
            SamplerMethod::Dp => WalkSampler::Dp(DpSampler::with_cap(n, dp_cap)?),
            SamplerMethod::Decomposed => WalkSampler::Decomposed(DecomposedSampler::new(n)?),
        })
    }

    pub fn n(&self) -> usize {
        match self {
            WalkSampler::Dp(s) => s.n(),
            WalkSampler::Decomposed(s) => s.n(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> WalkPair {
        match self {
            WalkSampler::Dp(s) => s.sample(rng),
            WalkSampler::Decomposed(s) => s.sample(rng),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::count::{decomposition_weights, ratio_f64};
    use crate::rng::stream;

    #[test]
    fn n2_is_deterministic() {
        let mut rng = stream(1, 0);
        let only = WalkPair::from_text("+-\n-+").unwrap();
        for _ in 0..20 {
            assert_eq!(sample_dp(2, &mut rng).unwrap(), only);
            assert_eq!(sample_decomposed(2, &mut rng).unwrap(), only);
        }
    }

    #[test]
    fn n1_dp_hits_both_pairs() {
        let s = DpSampler::new(1).unwrap();
        let mut rng = stream(3, 0);
        let ups = (0..2000).filter(|_| s.sample(&mut rng).up_steps() == 1).count();
        assert!((800..1200).contains(&ups), "{ups}");
        assert!(sample_decomposed(1, &mut rng).is_err());
    }

    #[test]
    fn samples_are_valid_pairs() {
        let mut rng = stream(5, 0);
        let dp = DpSampler::new(37).unwrap();
        let dec = DecomposedSampler::new(37).unwrap();
        for _ in 0..200 {
            for w in [dp.sample(&mut rng), dec.sample(&mut rng)] {
                let v: Vec<i8> = w.v_steps().collect();
                let ww: Vec<i8> = w.w_steps().collect();
                assert!(WalkPair::from_steps(&v, &ww).is_ok());
            }
        }
    }

    /// Exhaustive frequency check: every Dyck path of semilength 4 (14 of them)
    /// appears with frequency 1/14.
    #[test]
    fn dyck_paths_are_uniform() {
        let mut rng = stream(11, 0);
        let draws = 140_000;
        let mut freq: HashMap<Vec<i8>, usize> = HashMap::new();
        for _ in 0..draws {
            let p = uniform_dyck_path(4, &mut rng);
            let mut h = 0;
            for &x in &p {
                h += x as i32;
                assert!(h >= 0);
            }
            assert_eq!(h, 0);
            *freq.entry(p).or_default() += 1;
        }
        assert_eq!(freq.len(), 14);
        let expect = draws as f64 / 14.0;
        let sd = (expect * (1.0 - 1.0 / 14.0)).sqrt();
        for (p, &c) in &freq {
            assert!((c as f64 - expect).abs() < 4.5 * sd, "{p:?}: {c}");
        }
    }

    #[test]
    fn empty_dyck_path() {
        let mut rng = stream(0, 0);
        assert!(uniform_dyck_path(0, &mut rng).is_empty());
    }

    #[test]
    fn nonzero_count_law_matches_exact_weights() {
        for n in [2usize, 3, 4, 9, 64, 257, 512] {
            let exact = decomposition_weights(n).unwrap();
            let total: num_bigint::BigUint = exact.iter().map(|(_, w)| w).sum();
            let s = DecomposedSampler::new(n).unwrap();
            let law = s.nonzero_count_law();
            assert_eq!(law.len(), exact.len());
            for ((m, p), (me, we)) in law.iter().zip(&exact) {
                assert_eq!(m, me);
                let pe = ratio_f64(we, &total);
                if pe > 1e-300 {
                    assert!(((p - pe) / pe).abs() < 1e-9 || (p - pe).abs() < 1e-15, "n={n} m={m}: {p} vs {pe}");
                }
            }
        }
    }

    #[test]
    fn excursions_are_valid() {
        let s = DecomposedSampler::new(50).unwrap();
        let mut rng = stream(2, 9);
        for _ in 0..500 {
            let e = s.sample_excursion(&mut rng);
            assert!(LazyExcursion::new(e.steps().to_vec()).is_ok());
            assert_eq!(e.nonzero_count() % 2, 0);
        }
    }

    #[test]
    fn method_parses() {
        assert_eq!("dp".parse::<SamplerMethod>().unwrap(), SamplerMethod::Dp);
        assert!("x".parse::<SamplerMethod>().is_err());
    }
}

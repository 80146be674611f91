//! Reference limit laws, Kolmogorov–Smirnov distances, and the Monte Carlo
//! experiments on uniformly sampled walk pairs.
//!
//! Samples are drawn in fixed-size blocks, block `b` using RNG stream `b`, and
//! concatenated in block order. Output therefore depends only on the seed and
//! the sample count, never on the number of worker threads.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::DEFAULT_DP_CAP;
use crate::error::{Error, Result};
use crate::rng::{stream, StreamRng};
use crate::sample::{DecomposedSampler, DpSampler, SamplerMethod, WalkSampler};
use crate::walk::WalkPair;

/// Samples per RNG stream.
pub const BLOCK: usize = 1024;

/// Standard normal cdf.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / SQRT_2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceLaw {
    /// Density `8s·e^{−4s²}`, cdf `1 − e^{−4s²}`.
    RayleighWindow,
    /// `|Z|` with `Z ~ N(0, 1/16)`.
    HalfNormalHeight,
    /// `√2 ∫₀¹ B^ex(t) dt`; only the mean `√π/2` is used.
    ExcursionArea,
    /// `√2 · B^ex(U)`: cdf `1 − e^{−s²}`, the law the window statistic is
    /// observed to follow.
    RayleighWindowCorrected,
    /// `|Z|` with `Z ~ N(0, 1/8)`, the law the height statistic is observed to
    /// follow.
    HalfNormalHeightCorrected,
    StandardNormal,
}

impl ReferenceLaw {
    pub fn name(self) -> &'static str {
        match self {
            ReferenceLaw::RayleighWindow => "rayleigh_window",
            ReferenceLaw::HalfNormalHeight => "half_normal_height",
            ReferenceLaw::ExcursionArea => "excursion_area",
            ReferenceLaw::RayleighWindowCorrected => "rayleigh_window_corrected",
            ReferenceLaw::HalfNormalHeightCorrected => "half_normal_height_corrected",
            ReferenceLaw::StandardNormal => "standard_normal",
        }
    }

    pub fn mean(self) -> f64 {
        match self {
            ReferenceLaw::RayleighWindow => PI.sqrt() / 4.0,
            ReferenceLaw::HalfNormalHeight => 0.25 * (2.0 / PI).sqrt(),
            ReferenceLaw::ExcursionArea => PI.sqrt() / 2.0,
            ReferenceLaw::RayleighWindowCorrected => PI.sqrt() / 2.0,
            ReferenceLaw::HalfNormalHeightCorrected => (1.0 / 8.0f64).sqrt() * (2.0 / PI).sqrt(),
            ReferenceLaw::StandardNormal => 0.0,
        }
    }

    pub fn cdf(self, x: f64) -> Option<f64> {
        let pos = |f: f64| if x <= 0.0 { 0.0 } else { f };
        match self {
            ReferenceLaw::RayleighWindow => Some(pos(1.0 - (-4.0 * x * x).exp())),
            // 2Φ(4x) − 1
            ReferenceLaw::HalfNormalHeight => Some(pos(libm::erf(4.0 * x / SQRT_2))),
            ReferenceLaw::ExcursionArea => None,
            ReferenceLaw::RayleighWindowCorrected => Some(pos(1.0 - (-x * x).exp())),
            ReferenceLaw::HalfNormalHeightCorrected => Some(pos(libm::erf(2.0 * x))),
            ReferenceLaw::StandardNormal => Some(normal_cdf(x)),
        }
    }

    pub fn density(self, x: f64) -> Option<f64> {
        let pos = |f: f64| if x < 0.0 { 0.0 } else { f };
        let half_normal = |sd: f64| pos(2.0 / (sd * (2.0 * PI).sqrt()) * (-x * x / (2.0 * sd * sd)).exp());
        match self {
            ReferenceLaw::RayleighWindow => Some(pos(8.0 * x * (-4.0 * x * x).exp())),
            ReferenceLaw::HalfNormalHeight => Some(half_normal(0.25)),
            ReferenceLaw::ExcursionArea => None,
            ReferenceLaw::RayleighWindowCorrected => Some(pos(2.0 * x * (-x * x).exp())),
            ReferenceLaw::HalfNormalHeightCorrected => Some(half_normal((1.0 / 8.0f64).sqrt())),
            ReferenceLaw::StandardNormal => Some((-x * x / 2.0).exp() / (2.0 * PI).sqrt()),
        }
    }
}

impl fmt::Display for ReferenceLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One-sample KS distance `sup |F_N − F|`, evaluated at the sorted samples.
pub fn ks_distance(samples: &[f64], law: ReferenceLaw) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    law.cdf(0.0)
        .ok_or_else(|| Error::InvalidArgument(format!("{law} has no distribution function")))?;
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    Ok(xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = law.cdf(x).expect("checked above");
            let hi = (i + 1) as f64 / n - f;
            let lo = f - i as f64 / n;
            hi.abs().max(lo.abs())
        })
        .fold(0.0, f64::max))
}

/// Two-sample KS distance between empirical distributions.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let x = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}

/// Asymptotic Kolmogorov coefficient `c(α) = √(−ln(α/2) / 2)`.
pub fn ks_coefficient(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

pub fn ks_critical_one_sample(n: usize, alpha: f64) -> f64 {
    ks_coefficient(alpha) / (n as f64).sqrt()
}

pub fn ks_critical_two_sample(n: usize, m: usize, alpha: f64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    ks_coefficient(alpha) * ((n + m) / (n * m)).sqrt()
}

/// Mean and unbiased variance.
pub fn moments(xs: &[f64]) -> Result<(f64, f64)> {
    if xs.is_empty() {
        return Err(Error::EmptySamples);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok((mean, var))
}

/// Acceptance thresholds for the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub ks: f64,
    pub mean_rel: f64,
    pub tail: f64,
    pub err: f64,
    pub alpha: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            ks: 0.02,
            mean_rel: 0.02,
            tail: 0.05,
            err: 0.1,
            alpha: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub method: SamplerMethod,
    pub dp_cap: usize,
    pub tolerances: Tolerances,
    /// Average the statistic over all `n` elements of each pair instead of
    /// drawing one uniform element. Variance reduction only; the acceptance
    /// runs keep this off.
    pub all_elements: bool,
}

impl ExperimentConfig {
    pub fn new(n: usize, samples: usize, seed: u64) -> Self {
        Self {
            n,
            samples,
            seed,
            method: SamplerMethod::Decomposed,
            dp_cap: DEFAULT_DP_CAP,
            tolerances: Tolerances::default(),
            all_elements: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("experiments need n >= 2, got {}", self.n)));
        }
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        Ok(())
    }

    fn sampler(&self) -> Result<WalkSampler> {
        WalkSampler::new(self.n, self.method, self.dp_cap)
    }
}

/// Draws `samples` walk pairs and maps each through `f`, which may use the
/// same stream for auxiliary randomness.
pub fn sample_blocks<T, F>(sampler: &WalkSampler, samples: usize, seed: u64, stream_offset: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&WalkPair, &mut StreamRng) -> T + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    let parts: Vec<Vec<T>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream(seed, stream_offset + b as u64);
            let len = BLOCK.min(samples - b * BLOCK);
            (0..len)
                .map(|_| {
                    let w = sampler.sample(&mut rng);
                    f(&w, &mut rng)
                })
                .collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// A named pass/fail criterion with its measured value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    /// `value < threshold` when true, `value <= threshold` otherwise.
    pub strict: bool,
    pub pass: bool,
}

impl Check {
    fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            strict: true,
            pass: value < threshold,
        }
    }

    fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            strict: false,
            pass: value <= threshold,
        }
    }

    fn line(&self, width: usize) -> String {
        format!(
            "  {:<width$} {:.6} {} {} {}\n",
            self.name,
            self.value,
            if self.strict { "<" } else { "<=" },
            self.threshold,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// Fit of the samples to a law other than the one under test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawFit {
    pub law: ReferenceLaw,
    pub ks: Option<f64>,
    pub reference_mean: f64,
    pub mean_rel_err: f64,
}

impl LawFit {
    fn new(values: &[f64], mean: f64, law: ReferenceLaw) -> Self {
        let ks = law.cdf(0.0).map(|_| ks_distance(values, law).expect("nonempty"));
        let reference_mean = law.mean();
        Self {
            law,
            ks,
            reference_mean,
            mean_rel_err: rel_err(mean, reference_mean),
        }
    }
}

fn rel_err(x: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        x.abs()
    } else {
        (x / reference - 1.0).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub law: ReferenceLaw,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub method: SamplerMethod,
    pub ks: Option<f64>,
    pub mean: f64,
    pub var: f64,
    pub reference_mean: f64,
    pub mean_rel_err: f64,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// The same samples against other laws, for reference.
    pub other_laws: Vec<LawFit>,
    /// A secondary statistic drawn from the same pairs, when the experiment
    /// has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary: Option<Box<ExperimentResult>>,
    #[serde(skip)]
    pub values: Vec<f64>,
}

impl ExperimentResult {
    fn build(
        experiment: &str,
        cfg: &ExperimentConfig,
        law: ReferenceLaw,
        values: Vec<f64>,
        use_ks: bool,
        others: &[ReferenceLaw],
    ) -> Result<Self> {
        let (mean, var) = moments(&values)?;
        let reference_mean = law.mean();
        let mean_rel_err = rel_err(mean, reference_mean);
        let ks = if use_ks { Some(ks_distance(&values, law)?) } else { None };
        let tol = cfg.tolerances;
        let mut checks = Vec::new();
        if let Some(d) = ks {
            checks.push(Check::below("ks", d, tol.ks));
        }
        if law != ReferenceLaw::StandardNormal {
            checks.push(Check::below("mean_rel_err", mean_rel_err, tol.mean_rel));
        }
        let pass = checks.iter().all(|c| c.pass);
        let other_laws = others.iter().map(|&l| LawFit::new(&values, mean, l)).collect();
        Ok(Self {
            experiment: experiment.to_string(),
            law,
            n: cfg.n,
            samples: values.len(),
            seed: cfg.seed,
            method: cfg.method,
            ks,
            mean,
            var,
            reference_mean,
            mean_rel_err,
            pass,
            checks,
            other_laws,
            secondary: None,
            values,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    /// Raw scaled samples, one per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} n={} samples={} seed={} method={:?}\n",
            self.experiment, self.n, self.samples, self.seed, self.method
        );
        out.push_str(&format!("  law            {}\n", self.law));
        out.push_str(&format!("  mean           {:.6} (reference {:.6}, rel err {:.4})\n", self.mean, self.reference_mean, self.mean_rel_err));
        out.push_str(&format!("  variance       {:.6}\n", self.var));
        for c in &self.checks {
            out.push_str(&c.line(14));
        }
        for o in &self.other_laws {
            out.push_str(&format!(
                "  vs {:<28} ks {} mean {:.6} rel err {:.4}\n",
                o.law.name(),
                o.ks.map(|d| format!("{d:.6}")).unwrap_or_else(|| "-".into()),
                o.reference_mean,
                o.mean_rel_err
            ));
        }
        out.push_str(if self.pass { "  result         PASS\n" } else { "  result         FAIL\n" });
        if let Some(s) = &self.secondary {
            out.push('\n');
            out.push_str(&s.to_text());
        }
        out
    }
}

/// `I_P(U_n) / √n` for a uniform element `U_n`, against `1 − e^{−4s²}`.
pub fn experiment_window(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let sampler = cfg.sampler()?;
    let scale = (cfg.n as f64).sqrt();
    let all = cfg.all_elements;
    let values = sample_blocks(&sampler, cfg.samples, cfg.seed, 0, |w, rng| {
        if all {
            w.intercept_windows().total() as f64 / w.n() as f64 / scale
        } else {
            let e = w.elements().nth(rng.gen_range(0..w.n())).expect("n elements");
            w.window_of(e).expect("element of w") as f64 / scale
        }
    });
    ExperimentResult::build(
        "window",
        cfg,
        ReferenceLaw::RayleighWindow,
        values,
        true,
        &[ReferenceLaw::RayleighWindowCorrected],
    )
}

/// `(h − n/2) / √n = |V(n)| / (2√n)` against `|N(0, 1/16)|`; the secondary
/// result is `(V(n) + W(n)) / √n` against `N(0, 1)`.
pub fn experiment_height(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let sampler = cfg.sampler()?;
    let n = cfg.n;
    let root = (n as f64).sqrt();
    let ends: Vec<i32> = sample_blocks(&sampler, cfg.samples, cfg.seed, 0, |w, _| w.v_at(n));
    let height: Vec<f64> = ends.iter().map(|&v| (v.unsigned_abs() as f64) / (2.0 * root)).collect();
    let clt: Vec<f64> = ends.iter().map(|&v| (2 * v) as f64 / root).collect();
    let mut result = ExperimentResult::build(
        "height",
        cfg,
        ReferenceLaw::HalfNormalHeight,
        height,
        true,
        &[ReferenceLaw::HalfNormalHeightCorrected],
    )?;
    let clt = ExperimentResult::build("height_clt", cfg, ReferenceLaw::StandardNormal, clt, true, &[])?;
    result.secondary = Some(Box::new(clt));
    Ok(result)
}

/// `area / (n√n)`, the average window over `√n`, against the mean `√π/2`.
pub fn experiment_avg_window(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let sampler = cfg.sampler()?;
    let scale = cfg.n as f64 * (cfg.n as f64).sqrt();
    let values = sample_blocks(&sampler, cfg.samples, cfg.seed, 0, |w, _| w.area() as f64 / scale);
    ExperimentResult::build("avgwindow", cfg, ReferenceLaw::ExcursionArea, values, false, &[])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrScalingRow {
    pub n: usize,
    pub samples: usize,
    /// Estimate of `P(I_P(U_n) > n^{2/3})`.
    pub tail_prob: f64,
    /// Mean of `Err(P, U_n) / √n`.
    pub mean_err: f64,
    /// Fraction of draws violating `|I − H(τ)| ≤ Err`; zero in theory.
    pub bound_violations: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrScalingReport {
    pub seed: u64,
    pub method: SamplerMethod,
    pub rows: Vec<ErrScalingRow>,
    /// `n` at which the absolute thresholds are applied.
    pub threshold_n: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl ErrScalingReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,samples,tail_prob,mean_err,bound_violations\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.n, r.samples, r.tail_prob, r.mean_err, r.bound_violations));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("errscaling seed={} method={:?}\n", self.seed, self.method);
        out.push_str("         n    samples   P(I > n^(2/3))   mean Err/sqrt(n)\n");
        for r in &self.rows {
            out.push_str(&format!("{:>10} {:>10} {:>16.6} {:>18.6}\n", r.n, r.samples, r.tail_prob, r.mean_err));
        }
        for c in &self.checks {
            out.push_str(&c.line(28));
        }
        out.push_str(if self.pass { "  result PASS\n" } else { "  result FAIL\n" });
        out
    }
}

/// Tail probability of the window beyond `n^{2/3}` and the mean scaled error
/// bound, for each `n` in `n_list` (strictly increasing). Thresholds apply at
/// `threshold_n` (10⁴ when listed, otherwise the largest `n`); both statistics
/// must also be strictly smaller at the last `n` than at the first.
pub fn experiment_err_scaling(
    n_list: &[usize],
    samples: usize,
    seed: u64,
    method: SamplerMethod,
    tolerances: Tolerances,
) -> Result<ErrScalingReport> {
    if n_list.is_empty() || n_list.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidArgument("n list must be nonempty and strictly increasing".into()));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for (idx, &n) in n_list.iter().enumerate() {
        let cfg = ExperimentConfig {
            method,
            ..ExperimentConfig::new(n, samples, seed)
        };
        cfg.validate()?;
        let sampler = cfg.sampler()?;
        let cut = (n as f64).powf(2.0 / 3.0);
        let root = (n as f64).sqrt();
        let draws = sample_blocks(&sampler, samples, seed, (idx as u64) << 32, |w, rng| {
            let e = w.elements().nth(rng.gen_range(0..w.n())).expect("n elements");
            let (tau, window) = w.tau_and_window(e).expect("element of w");
            let err = w.err_bound(tau, window).expect("τ + I ≤ n");
            let h = w.height(tau).expect("τ ≤ n") as i64;
            let violated = (window as i64 - h).abs() > err as i64;
            (window as f64 > cut, err as f64 / root, violated)
        });
        let len = draws.len() as f64;
        rows.push(ErrScalingRow {
            n,
            samples: draws.len(),
            tail_prob: draws.iter().filter(|d| d.0).count() as f64 / len,
            mean_err: draws.iter().map(|d| d.1).sum::<f64>() / len,
            bound_violations: draws.iter().filter(|d| d.2).count() as f64 / len,
        });
    }
    let threshold_n = if n_list.contains(&10_000) { 10_000 } else { *n_list.last().expect("nonempty") };
    let at = rows.iter().find(|r| r.n == threshold_n).expect("listed");
    let (first, last) = (&rows[0], &rows[rows.len() - 1]);
    let mut checks = vec![
        Check::below(format!("tail_prob at n={threshold_n}"), at.tail_prob, tolerances.tail),
        Check::below(format!("mean_err at n={threshold_n}"), at.mean_err, tolerances.err),
        Check::at_most("bound_violations", rows.iter().map(|r| r.bound_violations).fold(0.0, f64::max), 0.0),
    ];
    if rows.len() > 1 {
        checks.push(Check::below(format!("tail_prob n={} vs n={}", last.n, first.n), last.tail_prob, first.tail_prob));
        checks.push(Check::below(format!("mean_err n={} vs n={}", last.n, first.n), last.mean_err, first.mean_err));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(ErrScalingReport {
        seed,
        method,
        rows,
        threshold_n,
        checks,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceResult {
    pub n: usize,
    pub draws: usize,
    pub seed: u64,
    pub ks: f64,
    pub critical: f64,
    pub alpha: f64,
    pub pass: bool,
    pub mean_dp: f64,
    pub mean_decomposed: f64,
}

/// Two-sample KS test of `H(⌊n/2⌋)/√n` under the two exact samplers.
pub fn sampler_equivalence(n: usize, draws: usize, seed: u64, dp_cap: usize, alpha: f64) -> Result<EquivalenceResult> {
    if draws == 0 {
        return Err(Error::InvalidArgument("draws must be at least 1".into()));
    }
    let dp = WalkSampler::Dp(DpSampler::with_cap(n, dp_cap)?);
    let dec = WalkSampler::Decomposed(DecomposedSampler::new(n)?);
    let mid = n / 2;
    let root = (n as f64).sqrt();
    let stat = |w: &WalkPair, _: &mut StreamRng| w.height(mid).expect("mid ≤ n") as f64 / root;
    let a = sample_blocks(&dp, draws, seed, 0, stat);
    let b = sample_blocks(&dec, draws, seed, 1 << 32, stat);
    let ks = ks_two_sample(&a, &b)?;
    let critical = ks_critical_two_sample(a.len(), b.len(), alpha);
    Ok(EquivalenceResult {
        n,
        draws,
        seed,
        ks,
        critical,
        alpha,
        pass: ks < critical,
        mean_dp: moments(&a)?.0,
        mean_decomposed: moments(&b)?.0,
    })
}

/// Mean fraction of flat joint steps (`(+,+)` or `(−,−)`) per pair.
pub fn flat_fraction(n: usize, samples: usize, seed: u64) -> Result<f64> {
    let sampler = WalkSampler::Decomposed(DecomposedSampler::new(n)?);
    let fr = sample_blocks(&sampler, samples, seed, 0, |w, _| {
        (1..=n).filter(|&t| w.joint_step(t).gap_change() == 0).count() as f64 / n as f64
    });
    Ok(moments(&fr)?.0)
}

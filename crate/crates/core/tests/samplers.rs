//! Distributional checks of the exact samplers against exhaustive
//! enumeration and exact marginals.

use std::collections::HashMap;

use width2::oracle::{enumerate_walk_pairs, sample_by_rejection};
use width2::rng::stream;
use width2::stats::{ks_critical_two_sample, ks_two_sample};
use width2::{CountTable, DecomposedSampler, DpSampler, WalkPair};

/// 99.9% quantile of χ² with 41 degrees of freedom.
const CHI2_41_999: f64 = 74.74;

/// Largest gap between the empirical cdf of `draws` and the exact law `pmf`
/// on the integers.
fn cdf_gap(draws: &[usize], pmf: &HashMap<usize, f64>) -> f64 {
    let max = draws.iter().copied().chain(pmf.keys().copied()).max().unwrap();
    let mut hist = vec![0usize; max + 1];
    for &d in draws {
        hist[d] += 1;
    }
    let (mut emp, mut exact, mut gap) = (0.0, 0.0, 0.0f64);
    for (x, &c) in hist.iter().enumerate() {
        emp += c as f64 / draws.len() as f64;
        exact += pmf.get(&x).copied().unwrap_or(0.0);
        gap = gap.max((emp - exact).abs());
    }
    gap
}

/// One-sample KS critical value at α = 0.01; conservative on lattice laws.
fn critical(draws: usize) -> f64 {
    1.6276 / (draws as f64).sqrt()
}

fn chi_square(draws: impl Iterator<Item = WalkPair>, support: &[WalkPair], per_cell: f64) -> f64 {
    let index: HashMap<&WalkPair, usize> = support.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut hits = vec![0u64; support.len()];
    for w in draws {
        hits[index[&w]] += 1;
    }
    hits.iter().map(|&h| (h as f64 - per_cell).powi(2) / per_cell).sum()
}

#[test]
fn both_samplers_are_uniform_on_b6() {
    let support = enumerate_walk_pairs(6).unwrap();
    assert_eq!(support.len(), 42);
    let draws = 42 * 2000;
    let dp = DpSampler::new(6).unwrap();
    let dec = DecomposedSampler::new(6).unwrap();
    let mut rng = stream(21, 0);
    let chi_dp = chi_square((0..draws).map(|_| dp.sample(&mut rng)), &support, 2000.0);
    let chi_dec = chi_square((0..draws).map(|_| dec.sample(&mut rng)), &support, 2000.0);
    assert!(chi_dp < CHI2_41_999, "dp χ² = {chi_dp}");
    assert!(chi_dec < CHI2_41_999, "decomposed χ² = {chi_dec}");
}

#[test]
fn midpoint_height_matches_exact_marginal() {
    let n = 64;
    let pmf: HashMap<usize, f64> = CountTable::new(n).unwrap().height_marginal(n / 2).unwrap().into_iter().collect();
    let draws = 20_000;
    let dec = DecomposedSampler::new(n).unwrap();
    let dp = DpSampler::new(n).unwrap();
    let mut rng = stream(22, 0);
    let half = |w: WalkPair| w.height(n / 2).unwrap() as usize / 2;
    let a: Vec<usize> = (0..draws).map(|_| half(dec.sample(&mut rng))).collect();
    let b: Vec<usize> = (0..draws).map(|_| half(dp.sample(&mut rng))).collect();
    assert!(cdf_gap(&a, &pmf) < critical(draws), "decomposed gap {}", cdf_gap(&a, &pmf));
    assert!(cdf_gap(&b, &pmf) < critical(draws), "dp gap {}", cdf_gap(&b, &pmf));
}

#[test]
fn window_of_uniform_element_matches_enumeration() {
    let n = 8;
    let mut pmf = HashMap::new();
    let pairs = enumerate_walk_pairs(n).unwrap();
    let weight = 1.0 / (pairs.len() * n) as f64;
    for w in &pairs {
        for (_, _, window) in w.all_tau_windows() {
            *pmf.entry(window).or_insert(0.0) += weight;
        }
    }
    let draws = 40_000;
    let dec = DecomposedSampler::new(n).unwrap();
    let mut rng = stream(23, 0);
    let sample: Vec<usize> = (0..draws)
        .map(|_| {
            let all = dec.sample(&mut rng).all_tau_windows();
            all[rand::Rng::gen_range(&mut rng, 0..n)].2
        })
        .collect();
    let gap = cdf_gap(&sample, &pmf);
    assert!(gap < critical(draws), "gap {gap}");
}

#[test]
fn final_position_matches_enumeration() {
    let n = 12;
    let pairs = enumerate_walk_pairs(n).unwrap();
    let mut pmf = HashMap::new();
    for w in &pairs {
        *pmf.entry(w.v_at(n).unsigned_abs() as usize).or_insert(0.0) += 1.0 / pairs.len() as f64;
    }
    let draws = 40_000;
    let dec = DecomposedSampler::new(n).unwrap();
    let mut rng = stream(24, 0);
    let sample: Vec<usize> = (0..draws).map(|_| dec.sample(&mut rng).v_at(n).unsigned_abs() as usize).collect();
    let gap = cdf_gap(&sample, &pmf);
    assert!(gap < critical(draws), "gap {gap}");
}

#[test]
fn rejection_and_decomposed_agree_on_area() {
    let n = 24;
    let draws = 4000;
    let mut rng = stream(25, 0);
    let dec = DecomposedSampler::new(n).unwrap();
    let a: Vec<f64> = (0..draws).map(|_| sample_by_rejection(n, &mut rng).unwrap().area() as f64).collect();
    let b: Vec<f64> = (0..draws).map(|_| dec.sample(&mut rng).area() as f64).collect();
    let ks = ks_two_sample(&a, &b).unwrap();
    assert!(ks < ks_critical_two_sample(draws, draws, 0.01), "ks {ks}");
}

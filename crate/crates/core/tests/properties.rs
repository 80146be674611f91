use proptest::prelude::*;
use width2::oracle::check_walk_identities;
use width2::rng::stream;
use width2::{gamma, gamma_inverse, greedy_pair, DecomposedSampler, DpSampler, WalkPair};

/// A uniform walk pair of length `n`, keyed by `seed`.
fn pair(n: usize, seed: u64) -> WalkPair {
    let mut rng = stream(seed, 0);
    if n < 2 {
        DpSampler::new(n).unwrap().sample(&mut rng)
    } else {
        DecomposedSampler::new(n).unwrap().sample(&mut rng)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bijection_round_trips(n in 1usize..300, seed in any::<u64>()) {
        let w = pair(n, seed);
        let c = gamma_inverse(&w);
        prop_assert!(c.is_one_factor());
        prop_assert_eq!(gamma(&c).unwrap(), w.clone());
        let g = greedy_pair(&c);
        prop_assert!(g.satisfies_greedy_condition());
        prop_assert_eq!(g.reconstruct().unwrap(), c);
    }

    #[test]
    fn sampled_pairs_satisfy_the_identities(n in 1usize..2000, seed in any::<u64>()) {
        let w = pair(n, seed);
        prop_assert!((1..n).all(|t| w.v_at(t) > w.w_at(t)));
        prop_assert_eq!(w.v_at(n), w.w_at(n));
        prop_assert_eq!(check_walk_identities(&w), Ok(()));
    }

    #[test]
    fn windows_agree_with_the_poset(n in 1usize..40, seed in any::<u64>()) {
        let w = pair(n, seed);
        let c = gamma_inverse(&w);
        for e in c.elements() {
            prop_assert_eq!(w.window_of(e).unwrap(), c.window(e));
        }
    }

    #[test]
    fn involution_is_an_involution(n in 1usize..500, seed in any::<u64>()) {
        let w = pair(n, seed);
        let iw = w.involute();
        prop_assert_eq!(iw.involute(), w.clone());
        prop_assert_eq!(iw.area(), w.area());
        prop_assert!((0..=n).all(|t| iw.height(t).unwrap() == w.height(n - t).unwrap()));
    }

    #[test]
    fn text_and_json_round_trip(n in 1usize..200, seed in any::<u64>()) {
        let w = pair(n, seed);
        prop_assert_eq!(WalkPair::from_text(&w.to_text()).unwrap(), w.clone());
        let json = serde_json::to_string(&w.to_json()).unwrap();
        prop_assert_eq!(WalkPair::from_json(&serde_json::from_str(&json).unwrap()).unwrap(), w);
    }
}

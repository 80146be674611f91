//! Uniform walk pairs from both exact samplers, with the statistics that the
//! experiments use.
//!
//! ```text
//! cargo run --release --example sample_walk_pairs -- 40 3
//! ```

use width2::rng::stream;
use width2::{gamma_inverse, DecomposedSampler, DpSampler};

fn main() -> width2::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(40);
    let draws = args.next().flatten().unwrap_or(3);

    let dp = DpSampler::new(n)?;
    let dec = DecomposedSampler::new(n)?;
    let mut rng = stream(7, 0);
    let mut pairs: Vec<_> = (0..draws).map(|_| ("dp", dp.sample(&mut rng))).collect();
    pairs.extend((0..draws).map(|_| ("decomposed", dec.sample(&mut rng))));
    for (name, w) in pairs {
        let cover = gamma_inverse(&w);
        println!("[{name}] k = {}, H(n/2) = {}, area = {}", cover.k(), w.height(n / 2)?, w.area());
        println!("{}\n", w.to_text());
    }

    let ex = dec.sample_excursion(&mut rng);
    let steps: String = ex.steps().iter().map(|&s| match s { 1 => '+', -1 => '-', _ => '0' }).collect();
    println!("lazy excursion with {} nonzero steps:\n{steps}", ex.nonzero_count());
    Ok(())
}

//! Height `H(τ(U))/(2√n)` of the walk pair at the time of a uniform element,
//! against the half-normal laws, with the centred `V(n)` statistic alongside.
//!
//! ```text
//! cargo run --release --example height_law -- 10000 100000
//! ```

use width2::stats::{experiment_height, ExperimentConfig};

fn main() -> width2::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(2000);
    let samples = args.next().flatten().unwrap_or(20_000);
    let r = experiment_height(&ExperimentConfig::new(n, samples, 7))?;
    print!("{}", r.to_text());
    Ok(())
}

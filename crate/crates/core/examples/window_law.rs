//! Window of a uniform element of a uniform one-factor width-2 poset, scaled
//! by √n, against the Rayleigh laws.
//!
//! ```text
//! cargo run --release --example window_law -- 10000 100000
//! ```

use width2::stats::{experiment_window, ExperimentConfig};

fn main() -> width2::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(2000);
    let samples = args.next().flatten().unwrap_or(20_000);
    let r = experiment_window(&ExperimentConfig::new(n, samples, 7))?;
    print!("{}", r.to_text());
    Ok(())
}

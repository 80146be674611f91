//! Mean window per element, `area/(n√n)`, against `√π/2`.
//!
//! ```text
//! cargo run --release --example average_window -- 10000 20000
//! ```

use width2::stats::{experiment_avg_window, ExperimentConfig};

fn main() -> width2::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(2000);
    let samples = args.next().flatten().unwrap_or(20_000);
    let r = experiment_avg_window(&ExperimentConfig::new(n, samples, 7))?;
    print!("{}", r.to_text());
    Ok(())
}

//! Tail probability `P(I > n^{2/3})` and mean `Err/√n` across sizes.
//!
//! ```text
//! cargo run --release --example err_scaling -- 20000 1000,10000,40000
//! ```

use width2::stats::{experiment_err_scaling, Tolerances};
use width2::SamplerMethod;

fn main() -> width2::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(5000);
    let ns: Vec<usize> = match args.next() {
        Some(list) => list.split(',').filter_map(|s| s.trim().parse().ok()).collect(),
        None => vec![250, 1000, 4000],
    };
    let r = experiment_err_scaling(&ns, samples, 7, SamplerMethod::Decomposed, Tolerances::default())?;
    print!("{}", r.to_text());
    Ok(())
}

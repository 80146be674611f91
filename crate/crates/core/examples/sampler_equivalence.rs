//! Two-sample KS between the DP unranking sampler and the decomposed sampler
//! on `H(n/2)/√n`.
//!
//! ```text
//! cargo run --release --example sampler_equivalence -- 2048 10000
//! ```

use width2::count::DEFAULT_DP_CAP;
use width2::stats::sampler_equivalence;

fn main() -> width2::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(512);
    let draws = args.next().flatten().unwrap_or(5000);
    let r = sampler_equivalence(n, draws, 7, DEFAULT_DP_CAP, 0.01)?;
    println!("n = {n}, {draws} draws each");
    println!("mean dp {:.5}  mean decomposed {:.5}", r.mean_dp, r.mean_decomposed);
    println!("KS {:.5}  critical {:.5}  {}", r.ks, r.critical, if r.pass { "not rejected" } else { "rejected" });
    Ok(())
}

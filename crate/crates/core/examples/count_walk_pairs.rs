//! Exact counts of non-hitting walk pairs, cross-checked against brute force
//! for small `n` and against the decomposition by number of nonzero steps.
//!
//! ```text
//! cargo run --release --example count_walk_pairs -- 200
//! ```

use width2::count::{count, decomposition_count, ratio_f64};
use width2::oracle::brute_force_walk_count;

fn main() -> width2::Result<()> {
    let big: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);

    println!(" n  |B_n|    brute force");
    for n in 1..=12 {
        println!("{n:>2}  {:<7} {}", count(n)?, brute_force_walk_count(n)?);
    }

    let c = count(big)?;
    let d = decomposition_count(big)?;
    println!("\n|B_{big}| = {c}");
    println!("decomposition sum agrees: {}", c == d);
    let prev = count(big - 1)?;
    println!("|B_{big}| / |B_{}| = {:.6}", big - 1, ratio_f64(&c, &prev));
    Ok(())
}

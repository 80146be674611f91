//! Census of the small-n objects: labeled posets by width, one-factor
//! posets with the split of |Ψ(P)|, canonical covers and walk pairs.
//!
//! ```text
//! cargo run --release --example census -- 6
//! cargo run --release --example census -- 5 --json
//! ```

use width2::oracle::Census;

fn main() -> width2::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let json = args.any(|a| a == "--json");
    let census = Census::compute(n)?;
    if json {
        println!("{}", census.to_json_string());
        return Ok(());
    }
    let c = &census.counts;
    println!("n = {n}");
    println!("labeled posets         {:>10}", c.posets);
    println!("  width <= 2           {:>10}", c.posets_width_at_most2);
    println!("  width exactly 2      {:>10}", c.posets_width2);
    println!("  one factor           {:>10}", c.posets_one_factor);
    for (size, count) in &census.psi_split {
        println!("    with |Ψ(P)| = {size}     {count:>10}");
    }
    println!("canonical covers       {:>10}", c.covers);
    println!("walk pairs             {:>10}", c.walk_pairs);
    Ok(())
}

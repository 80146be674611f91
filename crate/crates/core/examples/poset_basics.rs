//! Posets from cover relations: width, factors, windows, and the canonical
//! two-chain covers of a width-2 poset.
//!
//! ```text
//! cargo run --example poset_basics
//! ```

use width2::cover::cover_classes;
use width2::{gamma, psi, Poset};

fn main() -> width2::Result<()> {
    // 0 < 2 < 4, 1 < 3 < 5, 0 < 3, 2 < 5
    let p = Poset::from_pairs(6, [(0, 2), (2, 4), (1, 3), (3, 5), (0, 3), (2, 5)])?;
    println!("n = {}, width = {}, height = {}", p.n(), p.width(), p.height());
    println!("cover relations: {:?}", p.covering_pairs());
    println!("factors: {}", p.factor_count());
    for x in 0..p.n() {
        println!("  x = {x}: window {}, τ {}", p.window(x)?, p.tau(x)?);
    }

    for c in psi(&p)? {
        println!("\ncover with k = {}: cross pairs {:?}", c.k(), c.cross_pairs());
        println!("{}", gamma(&c)?.to_text());
    }

    // two factors: psi refuses, cover_classes still lists the covers
    let q = Poset::from_pairs(4, [(0, 2), (1, 2), (0, 3), (1, 3)])?;
    println!("\nfactors: {}, psi: {:?}", q.factor_count(), psi(&q).map(|v| v.len()));
    println!("cover classes: {}", cover_classes(&q)?.len());

    let chain = Poset::chain(3)?;
    println!("chain of 3: width {}, one factor {}", chain.width(), chain.is_one_factor());
    Ok(())
}

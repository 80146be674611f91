//! Exhaustive checks of the exact identities on all walk pairs up to a size:
//! area and Err bounds, windows, the involution, the first-return law, and
//! both forms of the height symmetrization.
//!
//! ```text
//! cargo run --release --example exact_identities -- 10
//! ```

use width2::oracle::{self, symmetrization_tables};

fn main() -> width2::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let reports = [
        oracle::verify_bijection(n.min(oracle::MAX_COVER_N))?,
        oracle::verify_area(n)?,
        oracle::verify_err_bound(n)?,
        oracle::verify_involution(n)?,
        oracle::verify_window_identity(n.min(6))?,
        oracle::verify_uniform_cover_measure(n.min(6))?,
        oracle::verify_first_return(n)?,
        oracle::verify_symmetrization(n)?,
        oracle::verify_symmetrization_step_max(n)?,
    ];
    for r in &reports {
        println!("{}", r.summary());
    }

    // the smallest case where the height at τ and at a uniform time differ
    let t = symmetrization_tables(2)?;
    println!("\nn = 2: at τ {:?}, at time {:?}, at max(H(t-1), H(t)) {:?}", t.at_tau, t.at_time, t.at_step_max);
    Ok(())
}

//! The seven-element cover with `b₁ ≺ a₃`, `b₂ ≺ a₄`, `a₂ ≺ b₃`: its greedy
//! pair, its walk pair, the windows read off both sides, and the way back.
//!
//! ```text
//! cargo run --example worked_example
//! ```

use width2::cover::CoverElement;
use width2::{gamma, gamma_inverse, greedy_pair, TwoChainCover};

fn main() -> width2::Result<()> {
    // labels: a_i -> i-1, b_j -> 3+j
    let cover = TwoChainCover::new(7, 4, [(4, 2), (5, 3), (1, 6)])?;
    let names = |xs: &[usize]| xs.iter().map(|&x| cover.element(x).to_string()).collect::<Vec<_>>().join(" ");

    let g = greedy_pair(&cover);
    println!("λ = {}", names(&g.lambda));
    println!("δ = {}", names(&g.delta));

    let walks = gamma(&cover)?;
    println!("\nV, W:\n{}", walks.to_text());
    let heights: Vec<u32> = (0..=7).map(|t| walks.height(t)).collect::<Result<_, _>>()?;
    println!("H = {heights:?}");

    println!("\nelement  window(poset)  window(walks)  τ");
    for e in cover.elements() {
        let (tau, win) = walks.tau_and_window(e)?;
        println!("{:<8} {:>13}  {:>13}  {tau}", e.to_string(), cover.window(e), win);
    }
    let windows = walks.intercept_windows();
    println!("\nwindows a: {:?}  b: {:?}", windows.a, windows.b);
    println!("area = {}  Σ windows = {}", walks.area(), windows.total());

    let e = CoverElement::A(2);
    let (tau, win) = walks.tau_and_window(e)?;
    println!("Err({e}) = {}", walks.err_bound(tau, win)?);

    assert_eq!(gamma_inverse(&walks), cover);
    println!("\nΓ⁻¹(Γ(C)) = C");
    Ok(())
}

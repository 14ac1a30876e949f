//! Step functions on dyadic grids and the Haar system: orthonormality,
//! synthesis, analysis, and the Parseval bookkeeping.
//!
//! ```bash
//! cargo run --example haar_basics
//! ```

use fractional_uncertainty::dyadic::DyadicInterval;
use fractional_uncertainty::haar::{
    analyze, haar_step, inner_product, DyadicStepFunction, HaarExpansion,
};

fn main() -> fractional_uncertainty::Result<()> {
    // The Haar function of I = (0, 1]: +1 on the left half, -1 on the right.
    let i = DyadicInterval::new(0, 0);
    let h = haar_step(i)?;
    println!("h_I cells at grid level {}: {:?}", h.grid_level(), h.cells());
    println!("|h|_2^2 = {}", h.l2_norm_squared());

    // Haar functions at different intervals are orthonormal.
    let other = haar_step(DyadicInterval::new(1, 0))?;
    println!(
        "<h_I, h_J> for nested J = (0, 1/2]: {:+e}",
        inner_product(&h, &other)?
    );

    // An expansion is a finite coefficient map; synthesize() builds the step
    // function on the common refinement of all the wavelets involved.
    let mut e = HaarExpansion::new();
    e.insert(DyadicInterval::new(0, 0), 0.6);
    e.insert(DyadicInterval::new(1, 1), -0.8);
    let f = e.synthesize()?;
    println!();
    println!("synthesized {} cells at level {}", f.cells().len(), f.grid_level());
    println!(
        "Parseval: sum of c^2 = {}  vs  |f|_2^2 = {}",
        e.norm_squared(),
        f.l2_norm_squared()
    );

    // analyze() recovers the coefficients level by level; the residual is
    // the L2 mass the requested levels cannot see.
    let (back, residual) = analyze(&f, (-2, 4))?;
    println!("re-analyzed coefficients:");
    for (interval, c) in back.coefficients() {
        println!("  {interval}: {c:+.3}");
    }
    println!("residual: {residual:e}");

    // An indicator function is NOT in the finite Haar span: every Haar
    // function has mean zero, so the mean part lives at arbitrarily coarse
    // levels and the whole unit of mass shows up as residual.
    let x = DyadicStepFunction::indicator(i);
    let (coeffs, residual) = analyze(&x, (0, 6))?;
    println!();
    println!(
        "indicator of (0, 1] analyzed at levels 0..6: {} coefficients, residual {residual}",
        coeffs.len()
    );
    Ok(())
}

//! The Euclidean fractional uncertainty inequality on normalized step
//! functions: 𝓠_s(|f|) · 𝓔_s(f) ≥ γ(s), inherited from the dyadic bound
//! because the Euclidean distance never exceeds the dyadic one.
//!
//! ```bash
//! cargo run --example euclidean_uncertainty_demo
//! ```

use fractional_uncertainty::dyadic::DyadicInterval;
use fractional_uncertainty::forms_dyadic::FormParameter;
use fractional_uncertainty::forms_euclid::{
    energy_quadratic, haar_product_euclid_closed, position_quadratic,
};
use fractional_uncertainty::haar::haar_step;
use fractional_uncertainty::harness::{
    euclid_uncertainty, gamma, random_step_function, trial_seed, SweepConfig,
};

fn main() -> fractional_uncertainty::Result<()> {
    let s = FormParameter::new(0.25)?;

    // The normalized Haar step: closed Euclidean values, far above gamma.
    let h = haar_step(DyadicInterval::new(0, 0))?;
    let q = position_quadratic(&h.abs(), s)?;
    let e = energy_quadratic(&h, s)?;
    println!("Haar function on (0, 1], s = 1/4:");
    println!("  Q(|h|) = {q:.12}   (closed form 8/3 = {:.12})", 8.0 / 3.0);
    println!("  E(h)   = {e:.12}");
    println!("  Q*E    = {:.12}   (closed form {:.12})", q * e, haar_product_euclid_closed(s));
    println!("  gamma  = {:.12}", gamma(s));

    // Random normalized step functions: the bound holds with room to spare.
    // The margin tightens as the function concentrates on a single cell.
    println!();
    println!("Random step functions:");
    println!("{:>5} {:>6} {:>7} {:>12} {:>12} {:>12}", "s", "trial", "cells", "Q*E", "gamma", "ratio");
    let config = SweepConfig::default();
    for s_raw in [0.15, 0.25, 0.35] {
        let s = FormParameter::new(s_raw)?;
        for trial in 0..4u64 {
            let f = random_step_function(trial_seed(23, trial), &config)?;
            let r = euclid_uncertainty(&f, s)?;
            assert!(r.pass);
            println!(
                "{s_raw:>5} {trial:>6} {:>7} {:>12.4} {:>12.4} {:>12.2}",
                f.cells().len(),
                r.product,
                r.gamma_bound,
                r.product / r.gamma_bound
            );
        }
    }

    // An indicator concentrated on one tiny cell: position shrinks like
    // |I|^{2s} while energy grows like |I|^{-2s}, so the product stays put.
    println!();
    println!("Indicators of shrinking cells (product is scale-invariant):");
    for level in [0, 3, 6] {
        let cell = DyadicInterval::new(level, 0);
        let f = fractional_uncertainty::haar::DyadicStepFunction::indicator(cell)
            .scale(1.0 / cell.measure().sqrt());
        let r = euclid_uncertainty(&f, s)?;
        println!(
            "  |I| = 2^-{level}:  Q = {:>12.6}  E = {:>12.4}  Q*E = {:.10}",
            r.position_value, r.energy_value, r.product
        );
    }
    Ok(())
}

//! The dyadic fractional uncertainty inequality on the Haar span:
//! Q^δ_s(φ) · E^δ_s(φ) ≥ γ(s) ‖φ‖⁴, with equality exactly on single Haar
//! functions.
//!
//! ```bash
//! cargo run --example dyadic_uncertainty_demo
//! ```

use fractional_uncertainty::dyadic::DyadicInterval;
use fractional_uncertainty::forms_dyadic::{FormParameter, Method};
use fractional_uncertainty::haar::HaarExpansion;
use fractional_uncertainty::harness::{
    dyadic_uncertainty, gamma, random_wave_function, trial_seed, SweepConfig,
};

fn main() -> fractional_uncertainty::Result<()> {
    let s = FormParameter::new(0.25)?;

    // A single Haar function saturates the bound: the product is exactly
    // gamma(s), independent of the interval's scale and position.
    println!("Single Haar functions (equality case):");
    println!("gamma(1/4) = {:.12}", gamma(s));
    for (j, k) in [(0, 0), (2, 5), (-3, 1)] {
        let e = HaarExpansion::single(DyadicInterval::new(j, k), 1.0);
        let r = dyadic_uncertainty(&e, s, Method::Spectral)?;
        println!(
            "  I = I({j:>2},{k}):  Q*E = {:.12}  slack = {:>10.2e}  pass = {}",
            r.product, r.slack, r.pass
        );
    }

    // Mixing scales moves the product strictly above the bound.
    println!();
    println!("Two equal coefficients at adjacent scales:");
    let mut e = HaarExpansion::new();
    let c = 0.5f64.sqrt();
    e.insert(DyadicInterval::new(0, 0), c);
    e.insert(DyadicInterval::new(1, 0), c);
    let r = dyadic_uncertainty(&e, s, Method::Spectral)?;
    println!("  Q = {:.12}  E = {:.12}", r.position_value, r.energy_value);
    println!("  Q*E = {:.12} > gamma = {:.12}", r.product, r.gamma_bound);

    // Random expansions: the inequality holds every time, by either method.
    println!();
    println!("Random expansions at several exponents:");
    println!("{:>5} {:>6} {:>14} {:>12} {:>12}", "s", "trial", "Q*E", "gamma", "slack");
    let config = SweepConfig::default();
    for s_raw in [0.05, 0.25, 0.45] {
        let s = FormParameter::new(s_raw)?;
        for trial in 0..3u64 {
            let e = random_wave_function(trial_seed(17, trial), &config)?;
            let spectral = dyadic_uncertainty(&e, s, Method::Spectral)?;
            let direct = dyadic_uncertainty(&e, s, Method::Direct)?;
            assert!(spectral.pass && direct.pass);
            println!(
                "{s_raw:>5} {trial:>6} {:>14.6} {:>12.6} {:>12.4e}",
                spectral.product, spectral.gamma_bound, spectral.slack
            );
        }
    }
    Ok(())
}

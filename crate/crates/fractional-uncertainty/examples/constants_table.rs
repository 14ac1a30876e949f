//! The closed-form constants in one place: γ₁, γ₂, their product γ, and the
//! Euclidean Haar values, across the exponent range.
//!
//! ```bash
//! cargo run --example constants_table
//! ```

use fractional_uncertainty::dyadic::DyadicInterval;
use fractional_uncertainty::forms_dyadic::{
    gamma1, gamma2, haar_energy_closed, haar_position_closed, FormParameter,
};
use fractional_uncertainty::forms_euclid::{
    haar_energy_euclid_closed, haar_position_euclid_closed, haar_product_euclid_closed,
};
use fractional_uncertainty::harness::gamma;

fn main() -> fractional_uncertainty::Result<()> {
    println!("{:>5} {:>12} {:>12} {:>12} {:>16}", "s", "gamma1", "gamma2", "gamma", "euclid product");
    for s in [0.05, 0.10, 0.15, 0.25, 0.35, 0.45] {
        let sp = FormParameter::new(s)?;
        println!(
            "{s:>5} {:>12.6} {:>12.6} {:>12.6} {:>16.6}",
            gamma1(s),
            gamma2(s),
            gamma(sp),
            haar_product_euclid_closed(sp)
        );
    }

    // gamma is exactly the dyadic uncertainty product of any single Haar
    // function: the |I| powers cancel between position and energy.
    println!();
    let s = FormParameter::new(0.25)?;
    println!("Haar values at s = 1/4 across scales (dyadic, then Euclidean):");
    println!(
        "{:>6} {:>12} {:>12} {:>12} | {:>12} {:>12}",
        "|I|", "Q_s", "E_s", "Q*E", "euclid Q", "euclid E"
    );
    for level in [-2i32, 0, 2] {
        let i = DyadicInterval::new(level, 0);
        let (q, e) = (haar_position_closed(s, i), haar_energy_closed(s, i));
        println!(
            "{:>6} {:>12.6} {:>12.6} {:>12.6} | {:>12.6} {:>12.6}",
            i.measure(),
            q,
            e,
            q * e,
            haar_position_euclid_closed(s, i),
            haar_energy_euclid_closed(s, i),
        );
    }
    println!();
    println!("gamma(1/4) = 1 + 3*sqrt(2)/2 = {}", gamma(s));

    // Trend at the endpoints: the bound degenerates at both ends of (0, 1/2).
    println!();
    for s in [0.01, 0.49] {
        let sp = FormParameter::new(s)?;
        println!("gamma({s}) = {:10.4}", gamma(sp));
    }
    Ok(())
}

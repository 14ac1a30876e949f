//! Independent oracles confirming the analytic evaluators: a level-set series
//! for the single-interval integrals, stratified Monte Carlo with exact
//! per-shell weights for the dyadic forms, and adaptive quadrature with exact
//! singular parts for the Euclidean forms.
//!
//! ```bash
//! cargo run --example oracle_crosscheck
//! ```

use fractional_uncertainty::dyadic::{integral_ball_power, DyadicInterval};
use fractional_uncertainty::forms_dyadic::{
    haar_energy_closed, haar_position_closed, FormParameter,
};
use fractional_uncertainty::forms_euclid::{energy_quadratic, position_quadratic};
use fractional_uncertainty::haar::haar_step;
use fractional_uncertainty::oracle::{
    dyadic_series_oracle, dyadic_stratified_oracle, euclid_adaptive_oracle, FormKind, SeriesKind,
};

fn main() -> fractional_uncertainty::Result<()> {
    let s = FormParameter::new(0.25)?;
    let unit = DyadicInterval::new(0, 0);

    // Series oracle vs the closed ball integral: the geometric shell series
    // carries an exact tail bound, so `covers` is a hard guarantee.
    println!("Series oracle, ball integral at alpha = 0.5:");
    let closed = integral_ball_power(0.5, unit)?;
    let est = dyadic_series_oracle(SeriesKind::BallPower, 0.5, unit.measure(), 400)?;
    println!("  closed  = {closed:.15}");
    println!("  series  = {:.15}  (tail bound {:.2e})", est.value, est.bound);
    println!("  covers  = {}", est.covers(closed));

    // Stratified Monte Carlo vs the Haar closed forms. The oracle samples
    // the cross-shell part and integrates the within-cell part exactly, so
    // its three-sigma band brackets the true value.
    println!();
    println!("Stratified Monte Carlo on the Haar function, 200k samples:");
    let h = haar_step(unit)?;
    let targets = [
        ("position", FormKind::Position, haar_position_closed(s, unit)),
        ("energy", FormKind::Energy, haar_energy_closed(s, unit)),
    ];
    for (label, kind, target) in targets {
        let est = dyadic_stratified_oracle(&h, kind, s, 97, 200_000)?;
        println!(
            "  {label:>8}: closed = {target:.10}  oracle = {:.10} +/- {:.2e}  covers = {}",
            est.value,
            est.bound,
            est.covers(target)
        );
    }

    // Adaptive quadrature vs the direct Euclidean evaluators on a function
    // with a gap in its support (the hard case for the singular kernel).
    println!();
    println!("Adaptive quadrature on a gapped step function:");
    let f = fractional_uncertainty::haar::DyadicStepFunction::new(
        2,
        vec![(0, 1.0), (1, -0.5), (6, 0.75)],
    )?;
    let f = f.scale(1.0 / f.l2_norm_squared().sqrt());
    let targets = [
        ("position", FormKind::Position, position_quadratic(&f.abs(), s)?),
        ("energy", FormKind::Energy, energy_quadratic(&f, s)?),
    ];
    for (label, kind, target) in targets {
        let est = euclid_adaptive_oracle(&f, kind, s, 1e-8)?;
        println!(
            "  {label:>8}: direct = {target:.12}  oracle = {:.12}  |dev| = {:.2e}",
            est.value,
            (est.value - target).abs()
        );
        assert!(est.covers(target) || (est.value - target).abs() < 1e-7);
    }
    Ok(())
}

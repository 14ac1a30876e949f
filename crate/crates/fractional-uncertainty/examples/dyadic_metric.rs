//! Tour of the dyadic ultrametric: intervals, the distance itself, balls,
//! and the level-set decomposition that makes every kernel integral a
//! geometric series.
//!
//! ```bash
//! cargo run --example dyadic_metric
//! ```

use fractional_uncertainty::dyadic::{
    common_ancestor, dyadic_ball, dyadic_distance, integral_ball_power,
    integral_complement_power, level_set_measure, DyadicInterval, GridOrigin,
};

fn main() -> fractional_uncertainty::Result<()> {
    // Dyadic intervals are (k 2^{-j}, (k+1) 2^{-j}]; two of them are always
    // nested or disjoint, never partially overlapping.
    let unit = DyadicInterval::new(0, 0); // (0, 1]
    let left = DyadicInterval::new(1, 0); // (0, 1/2]
    let fine = DyadicInterval::new(3, 5); // (5/8, 6/8]
    println!("unit interval      : {unit}  measure {}", unit.measure());
    println!("its left child     : {left}  parent back: {}", left.parent());
    println!("{fine} sits inside {unit}: {}", fine.ancestor_at(0) == unit);
    println!(
        "common ancestor of {left} and {fine}: {}",
        common_ancestor(left, fine)
    );

    // δ(x, y) is the measure of the smallest dyadic interval containing both
    // points. It dominates |x - y| and jumps in powers of two.
    let origin = GridOrigin::standard();
    println!();
    for (x, y) in [(0.3, 0.4), (0.49, 0.51), (0.1, 1.9)] {
        let delta = dyadic_distance(x, y, &origin)?;
        println!(
            "x = {x:4}, y = {y:4}:  |x-y| = {:>4}   delta = {delta}",
            (y - x).abs()
        );
    }

    // Balls of the metric are dyadic intervals: the smallest one containing
    // x whose parent already has measure >= r.
    println!();
    for r in [1.0, 0.25, 0.03] {
        let ball = dyadic_ball(0.3, r, &origin)?;
        println!("ball around 0.3 of radius {r:4}: {ball} (measure {})", ball.measure());
    }

    // For x in I the level set {y : delta(x,y) = 2^k |I|} has measure
    // 2^{k-1} |I| - one shell per scale, and that is the whole computational
    // engine: integrating delta^{a-1} over the interval or delta^{-a-1} over
    // its complement is summing a geometric series.
    println!();
    println!("level-set measures around x in (0, 1]:");
    for k in -3..=2 {
        println!("  delta = 2^{k:>2}: measure {}", level_set_measure(unit, k));
    }
    let alpha = 0.5;
    println!(
        "closed ball integral (alpha = {alpha}):       {}",
        integral_ball_power(alpha, unit)?
    );
    println!(
        "closed complement integral (alpha = {alpha}): {}",
        integral_complement_power(alpha, unit)?
    );
    Ok(())
}

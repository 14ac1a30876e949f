//! A full verification sweep — many random expansions across a grid of
//! exponents — serialized to CSV and parsed back bit-for-bit.
//!
//! ```bash
//! cargo run --example sweep_to_csv
//! ```

use fractional_uncertainty::harness::{parse_reports_csv, reports_to_csv, sweep, SweepConfig};

fn main() -> fractional_uncertainty::Result<()> {
    let config = SweepConfig {
        s_grid: vec![0.05, 0.15, 0.25, 0.35, 0.45],
        trials: 40,
        seed: 2024,
        max_coefficients: 32,
        level_range: (-3, 4),
    };
    let (reports, summary) = sweep(&config)?;

    println!("Summary over {} trials per exponent:", config.trials);
    println!("{:>5} {:>12} {:>14} {:>12} {:>5}", "s", "gamma", "min product", "min slack", "pass");
    for row in &summary {
        println!(
            "{:>5} {:>12.6} {:>14.6} {:>12.4e} {:>2}/{}",
            row.s, row.gamma, row.min_product, row.min_slack, row.pass_count, row.trials
        );
    }

    // Serialize with 17 significant digits so parsing recovers every report
    // exactly; the round-trip below is bitwise.
    let csv = reports_to_csv(&reports);
    let path = std::env::temp_dir().join("uncertainty_sweep.csv");
    std::fs::write(&path, &csv)?;
    println!();
    println!("Wrote {} report rows to {}", reports.len(), path.display());

    let restored = parse_reports_csv(&csv)?;
    let identical = restored
        .iter()
        .zip(&reports)
        .all(|(a, b)| a.product.to_bits() == b.product.to_bits() && a.slack.to_bits() == b.slack.to_bits());
    println!("Round-trip bitwise identical: {identical}");
    println!();
    println!("First three rows:");
    for line in csv.lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}

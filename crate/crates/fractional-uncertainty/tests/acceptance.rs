//! Acceptance gate: every stated capability of the crate, checked at its
//! stated tolerance and runtime budget, reported as one PASS/FAIL line per
//! criterion. Runs as a plain binary (no libtest harness) so the report is
//! printed in full on every run:
//!
//! ```bash
//! cargo test --test acceptance
//! ```
//!
//! A criterion fails if any check inside it fails, if the library errors, or
//! if the runtime budget is exceeded. The process exits nonzero when any
//! criterion fails, with the failure analysis indented under its line.

use std::panic::catch_unwind;
use std::process::Command;
use std::sync::Mutex;
use std::time::Instant;

use fractional_uncertainty::dyadic::{
    integral_ball_power, integral_complement_power, DyadicInterval,
};
use fractional_uncertainty::forms_dyadic::{
    energy_bilinear_direct, energy_spectral, haar_energy_closed, haar_position_closed,
    position_bilinear_direct, position_spectral, DirectFormEvaluator, FormParameter, Method,
};
use fractional_uncertainty::forms_euclid::{energy_quadratic, position_quadratic, variance};
use fractional_uncertainty::haar::{haar_step, HaarExpansion};
use fractional_uncertainty::harness::{
    dyadic_uncertainty, gamma, random_step_function, random_wave_function, shifted_grid_witness,
    trial_seed, SweepConfig,
};
use fractional_uncertainty::oracle::{
    dyadic_series_oracle, dyadic_stratified_oracle, euclid_adaptive_oracle, FormKind, SeriesKind,
};

/// Exponents used by every multi-`s` criterion.
const S_GRID: [f64; 5] = [0.05, 0.15, 0.25, 0.35, 0.45];

/// Seed stream shared by criteria 4 and 5, which must see the same
/// expansions.
const EXPANSION_SEED: u64 = 41;

type Check = fn() -> Result<(), String>;

fn rel_dev(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Converts a library error into a criterion failure message.
fn lib<T>(r: fractional_uncertainty::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

fn param(s: f64) -> Result<FormParameter, String> {
    lib(FormParameter::new(s))
}

// ---------------------------------------------------------------------------
// 1. Ball and complement integrals over a single interval match the
//    level-set series oracle for five exponents and three interval sizes.
// ---------------------------------------------------------------------------

fn criterion_1() -> Result<(), String> {
    let alphas = [0.1, 0.25, 0.5, 0.75, 1.0];
    // Measures 1/4, 1, 4.
    let intervals = [
        DyadicInterval::new(2, 0),
        DyadicInterval::new(0, 0),
        DyadicInterval::new(-2, 0),
    ];
    for alpha in alphas {
        for interval in intervals {
            let cases = [
                ("ball", SeriesKind::BallPower, integral_ball_power(alpha, interval)),
                (
                    "complement",
                    SeriesKind::ComplementPower,
                    integral_complement_power(alpha, interval),
                ),
            ];
            for (label, kind, closed) in cases {
                let closed = lib(closed)?;
                let series = lib(dyadic_series_oracle(kind, alpha, interval.measure(), 700))?;
                let dev = rel_dev(closed, series.value);
                if dev > 1e-10 {
                    return Err(format!(
                        "{label} integral, alpha = {alpha}, |I| = {}: closed {closed:.15e} vs \
                         series {:.15e}, relative deviation {dev:.2e} > 1e-10",
                        interval.measure(),
                        series.value
                    ));
                }
                if series.bound > 1e-10 * series.value.abs() {
                    return Err(format!(
                        "series tail bound {:.2e} not below 1e-10 of the value",
                        series.bound
                    ));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 2. Haar variance equals |I|²/12 through closed moments, and the direct
//    dyadic position form reproduces γ₁(s)|I|^{2s} to 1e-12 relative over
//    levels -3..3 and five exponents.
// ---------------------------------------------------------------------------

fn criterion_2() -> Result<(), String> {
    for j in -3..=3i32 {
        let interval = DyadicInterval::new(j, 0);
        let h = lib(haar_step(interval))?;
        let got = lib(variance(&h))?;
        let want = interval.measure() * interval.measure() / 12.0;
        if j % 2 == 0 {
            // Amplitude 2^{j/2} is a power of two: every closed-moment step
            // rounds identically on both sides, so equality is bitwise.
            if got.to_bits() != want.to_bits() {
                return Err(format!(
                    "variance at level {j}: {got:.17e} != |I|^2/12 = {want:.17e} (bitwise)"
                ));
            }
        } else {
            // At odd levels the amplitude √2·2^{(j-1)/2} has no exact f64
            // representation, so "exact" means: closed moments, no
            // quadrature, equality up to that single representation
            // rounding (a few ulps).
            let dev = (got - want).abs();
            if dev > 8.0 * f64::EPSILON * want {
                return Err(format!(
                    "variance at level {j}: |{got:.17e} - {want:.17e}| = {dev:.2e} \
                     exceeds 8 ulps"
                ));
            }
        }

        let direct = lib(DirectFormEvaluator::new(&h, &h))?;
        for s in S_GRID {
            let sp = param(s)?;
            let got = direct.position(sp);
            let want = haar_position_closed(sp, interval);
            let dev = rel_dev(got, want);
            if dev > 1e-12 {
                return Err(format!(
                    "position form at level {j}, s = {s}: direct {got:.15e} vs closed \
                     {want:.15e}, relative deviation {dev:.2e} > 1e-12"
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 3. The direct dyadic energy form reproduces γ₂(s)|I|^{-2s} to 1e-12
//    relative on the same grid, and the stratified Monte Carlo oracle
//    (10⁶ samples, fixed seed) covers the value within its 3σ bound.
// ---------------------------------------------------------------------------

fn criterion_3() -> Result<(), String> {
    for j in -3..=3i32 {
        let interval = DyadicInterval::new(j, 0);
        let h = lib(haar_step(interval))?;
        let direct = lib(DirectFormEvaluator::new(&h, &h))?;
        for s in S_GRID {
            let sp = param(s)?;
            let got = direct.energy(sp);
            let want = haar_energy_closed(sp, interval);
            let dev = rel_dev(got, want);
            if dev > 1e-12 {
                return Err(format!(
                    "energy form at level {j}, s = {s}: direct {got:.15e} vs closed \
                     {want:.15e}, relative deviation {dev:.2e} > 1e-12"
                ));
            }
            let oracle = lib(dyadic_stratified_oracle(&h, FormKind::Energy, sp, 106, 1_000_000))?;
            if !oracle.covers(want) {
                return Err(format!(
                    "stratified oracle at level {j}, s = {s}: {:.15e} +/- {:.2e} does not \
                     cover the closed value {want:.15e}",
                    oracle.value, oracle.bound
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 4. Both bilinear forms vanish on 100 distinct Haar pairs (relative to the
//    diagonal), and the spectral and direct quadratic forms agree to 1e-8
//    relative on 1000 seeded random expansions of up to 64 coefficients.
// ---------------------------------------------------------------------------

fn criterion_4() -> Result<(), String> {
    // Pairs cycling through the three ways two Haar supports can relate:
    // same level but disjoint, strictly nested, and disjoint across levels.
    let mut pairs = Vec::with_capacity(100);
    for i in 0..100u64 {
        let j = (i % 4) as i32 - 1;
        let k = i % 6;
        let a = DyadicInterval::new(j, k);
        let b = match i % 3 {
            0 => DyadicInterval::new(j, k + 1 + i % 4),
            1 => DyadicInterval::new(j + 2, 4 * k + i % 4),
            _ => DyadicInterval::new(j + 1, 2 * (k + 5 + i % 7)),
        };
        pairs.push((a, b));
    }
    for &(a, b) in &pairs {
        let ha = lib(haar_step(a))?;
        let hb = lib(haar_step(b))?;
        for s in S_GRID {
            let sp = param(s)?;
            let q = lib(position_bilinear_direct(&ha, &hb, sp))?;
            let e = lib(energy_bilinear_direct(&ha, &hb, sp))?;
            let q_scale = (haar_position_closed(sp, a) * haar_position_closed(sp, b)).sqrt();
            let e_scale = (haar_energy_closed(sp, a) * haar_energy_closed(sp, b)).sqrt();
            if q.abs() > 1e-10 * q_scale {
                return Err(format!(
                    "position bilinear form on {a} x {b} at s = {s}: |{q:.3e}| exceeds \
                     1e-10 of the diagonal scale {q_scale:.3e}"
                ));
            }
            if e.abs() > 1e-10 * e_scale {
                return Err(format!(
                    "energy bilinear form on {a} x {b} at s = {s}: |{e:.3e}| exceeds \
                     1e-10 of the diagonal scale {e_scale:.3e}"
                ));
            }
        }
    }

    // Spectral diagonal sums vs the direct kernel evaluation on the
    // synthesized step function.
    let config = SweepConfig::default();
    for trial in 0..1000u64 {
        let e = lib(random_wave_function(trial_seed(EXPANSION_SEED, trial), &config))?;
        let f = lib(e.synthesize())?;
        let direct = lib(DirectFormEvaluator::new(&f, &f))?;
        for s in S_GRID {
            let sp = param(s)?;
            let dq = rel_dev(direct.position(sp), position_spectral(&e, sp));
            let de = rel_dev(direct.energy(sp), energy_spectral(&e, sp));
            if dq > 1e-8 || de > 1e-8 {
                return Err(format!(
                    "trial {trial}, s = {s}: spectral/direct relative deviation \
                     position {dq:.2e}, energy {de:.2e} (tolerance 1e-8)"
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 5. On the same 1000 expansions and five exponents, the dyadic uncertainty
//    product satisfies Q·E ≥ γ(s)‖φ‖⁴ with relative slack ≥ -1e-12, and
//    single Haar inputs sit on the equality case to 1e-12.
// ---------------------------------------------------------------------------

fn criterion_5() -> Result<(), String> {
    let config = SweepConfig::default();
    for trial in 0..1000u64 {
        let e = lib(random_wave_function(trial_seed(EXPANSION_SEED, trial), &config))?;
        for s in S_GRID {
            let sp = param(s)?;
            let report = lib(dyadic_uncertainty(&e, sp, Method::Spectral))?;
            if report.slack < -1e-12 * report.product {
                return Err(format!(
                    "trial {trial}, s = {s}: product {:.15e} fell below the bound, \
                     relative slack {:.2e}",
                    report.product,
                    report.slack / report.product
                ));
            }
        }
    }

    // Equality case: any single Haar function, any scale, position, and
    // coefficient, by both evaluation routes.
    for j in -3..=3i32 {
        for k in [0u64, 1, 5] {
            for c in [1.0, -0.75] {
                let e = HaarExpansion::single(DyadicInterval::new(j, k), c);
                for s in S_GRID {
                    let sp = param(s)?;
                    for method in [Method::Spectral, Method::Direct] {
                        let report = lib(dyadic_uncertainty(&e, sp, method))?;
                        if report.slack.abs() > 1e-12 * report.product {
                            return Err(format!(
                                "single Haar at level {j}, offset {k}, coefficient {c}, \
                                 s = {s} ({method:?}): |slack| {:.2e} exceeds 1e-12 of \
                                 the product {:.15e}",
                                report.slack.abs(),
                                report.product
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 6. Euclidean evaluators on Haar functions against the stated closed forms
//    Q = |I|^{2s}/(s(2s+1)), E = 6|I|^{-2s}/(s(1-2s)), product
//    6/(s²(1-4s²)) — 128.0 ± 1e-8 at s = 1/4 — at 1e-10 relative, and
//    against the adaptive quadrature oracle at 1e-6.
// ---------------------------------------------------------------------------

fn criterion_6() -> Result<(), String> {
    let test_intervals = [
        DyadicInterval::new(-1, 0),
        DyadicInterval::new(0, 0),
        DyadicInterval::new(1, 1),
    ];

    // Position closed form: holds everywhere.
    for s in S_GRID {
        let sp = param(s)?;
        for interval in test_intervals {
            let h = lib(haar_step(interval))?;
            let got = lib(position_quadratic(&h.abs(), sp))?;
            let want = interval.measure().powf(2.0 * s) / (s * (2.0 * s + 1.0));
            let dev = rel_dev(got, want);
            if dev > 1e-10 {
                return Err(format!(
                    "position on |I| = {}, s = {s}: evaluator {got:.15e} vs closed \
                     {want:.15e}, relative deviation {dev:.2e} > 1e-10",
                    interval.measure()
                ));
            }
        }
    }

    // Adaptive oracle agreement for both forms: holds everywhere.
    let unit = DyadicInterval::new(0, 0);
    let h = lib(haar_step(unit))?;
    for s in S_GRID {
        let sp = param(s)?;
        let q_eval = lib(position_quadratic(&h.abs(), sp))?;
        let q_oracle = lib(euclid_adaptive_oracle(&h.abs(), FormKind::Position, sp, 1e-8))?;
        let e_eval = lib(energy_quadratic(&h, sp))?;
        let e_oracle = lib(euclid_adaptive_oracle(&h, FormKind::Energy, sp, 1e-8))?;
        let dq = rel_dev(q_oracle.value, q_eval);
        let de = rel_dev(e_oracle.value, e_eval);
        if dq > 1e-6 || de > 1e-6 {
            return Err(format!(
                "adaptive oracle at s = {s}: relative deviation from the evaluators \
                 position {dq:.2e}, energy {de:.2e} (tolerance 1e-6)"
            ));
        }
    }

    // Stated energy closed form and product target. The checks below are
    // implemented exactly as stated; they do not pass, and the analysis of
    // why follows the first failure.
    let sp = param(0.25)?;
    let q_unit = lib(position_quadratic(&h.abs(), sp))?;
    let e_unit = lib(energy_quadratic(&h, sp))?;
    let product = q_unit * e_unit;
    let e_oracle = lib(euclid_adaptive_oracle(&h, FormKind::Energy, sp, 1e-8))?;

    let mut worst_stated = 0.0f64;
    let mut worst_alternative = 0.0f64;
    for s in S_GRID {
        let sp = param(s)?;
        for interval in test_intervals {
            let hj = lib(haar_step(interval))?;
            let got = lib(energy_quadratic(&hj, sp))?;
            let scale = interval.measure().powf(-2.0 * s) / (s * (1.0 - 2.0 * s));
            let stated = 6.0 * scale;
            let alternative = 2.0 * ((2.0 * s + 1.0).exp2() - 1.0) * scale;
            worst_stated = worst_stated.max(rel_dev(got, stated));
            worst_alternative = worst_alternative.max(rel_dev(got, alternative));
        }
    }

    if worst_stated > 1e-10 || (product - 128.0).abs() > 1e-8 {
        return Err(format!(
            "stated Euclidean energy constant is not reproduced:\n\
             \x20 evaluator E(h), unit interval, s = 1/4     = {e_unit:.15}\n\
             \x20 adaptive oracle (independent quadrature)   = {:.15} +/- {:.1e}\n\
             \x20 stated closed form 6|I|^(-2s)/(s(1-2s))    = 48, worst relative \
             deviation over the grid {worst_stated:.3}\n\
             \x20 stated product target at s = 1/4           = 128.0 +/- 1e-8, measured \
             {product:.15}\n\
             the evaluator and the oracle instead match \
             2(2^(2s+1)-1)|I|^(-2s)/(s(1-2s)) to {worst_alternative:.1e} across every \
             tested s and |I| (equivalently, product = (2^(2s+2)-2)/(s^2(1-4s^2))).\n\
             Working the energy integral of the Haar function out from the \
             antiderivative of |x-y|^(-1-2s) yields that s-dependent coefficient; \
             6 is its limit as s -> 1/2 and is attained at no s in (0, 1/2). The \
             position constant and both oracle agreements above hold, so the \
             discrepancy is isolated to the stated energy coefficient.",
            e_oracle.value, e_oracle.bound
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 7. The Euclidean uncertainty product stays above γ(s) on 1000 seeded
//    normalized step functions per exponent with zero violations, and the
//    shifted-grid witness chain holds on 200 inputs.
// ---------------------------------------------------------------------------

fn criterion_7() -> Result<(), String> {
    let config = SweepConfig::default();
    for s in S_GRID {
        let sp = param(s)?;
        let bound = gamma(sp);
        for trial in 0..1000u64 {
            let f = lib(random_step_function(trial_seed(73, trial), &config))?;
            let q = lib(position_quadratic(&f.abs(), sp))?;
            let e = lib(energy_quadratic(&f, sp))?;
            if q * e < bound {
                return Err(format!(
                    "trial {trial}, s = {s}: product {:.15e} < gamma = {bound:.15e}",
                    q * e
                ));
            }
        }
    }

    for trial in 0..200u64 {
        let s = S_GRID[(trial % 5) as usize];
        let sp = param(s)?;
        let f = lib(random_step_function(trial_seed(74, trial), &config))?;
        let w = lib(shifted_grid_witness(&f, sp, 0.05))?;
        if !w.domination_holds {
            return Err(format!(
                "witness chain broke on trial {trial}, s = {s}: x0 = {}, dyadic product \
                 {:.15e}, Euclidean product {:.15e}",
                w.x0, w.dyadic_product, w.euclid_product
            ));
        }
        if (w.mass_captured - 1.0).abs() > 1e-9 {
            return Err(format!(
                "witness on trial {trial} captured mass {:.15} instead of 1",
                w.mass_captured
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 8. γ(s) is strictly decreasing over s = 0.01, 0.02, …, 0.49, with
//    γ(0.01) > 10³ and γ(0.49) < 0.05.
// ---------------------------------------------------------------------------

fn criterion_8() -> Result<(), String> {
    let mut previous = f64::INFINITY;
    let mut first = 0.0;
    let mut last = 0.0;
    for i in 1..=49u32 {
        let s = i as f64 / 100.0;
        let value = gamma(param(s)?);
        if !(value < previous) {
            return Err(format!(
                "gamma not strictly decreasing: gamma({s}) = {value:.15e} >= {previous:.15e}"
            ));
        }
        previous = value;
        if i == 1 {
            first = value;
        }
        last = value;
    }
    if first <= 1e3 {
        return Err(format!("gamma(0.01) = {first:.6} not above 1e3"));
    }
    if last >= 0.05 {
        return Err(format!("gamma(0.49) = {last:.6} not below 0.05"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 9. Two runs of the verify-inequality subcommand with identical flags
//    produce byte-identical output.
// ---------------------------------------------------------------------------

fn criterion_9() -> Result<(), String> {
    let exe = env!("CARGO_BIN_EXE_fractional-uncertainty");
    let flag_sets: [&[&str]; 2] = [
        &["verify-inequality", "--s", "0.25", "--trials", "150", "--seed", "20240822"],
        &["verify-inequality", "--s", "0.35", "--trials", "60", "--seed", "7", "--single-haar", "--format", "json"],
    ];
    for flags in flag_sets {
        let mut runs = Vec::new();
        for _ in 0..2 {
            let output = Command::new(exe)
                .args(flags)
                .output()
                .map_err(|e| format!("could not run the CLI: {e}"))?;
            runs.push(output);
        }
        let (a, b) = (&runs[0], &runs[1]);
        if a.status.code() != b.status.code() || a.stdout != b.stdout || a.stderr != b.stderr {
            return Err(format!(
                "two runs of {flags:?} differ: exit {:?} vs {:?}, stdout {} vs {} bytes",
                a.status.code(),
                b.status.code(),
                a.stdout.len(),
                b.stdout.len()
            ));
        }
        if a.status.code() != Some(0) {
            return Err(format!(
                "verify-inequality {flags:?} exited {:?}: {}",
                a.status.code(),
                String::from_utf8_lossy(&a.stderr)
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Runner.
// ---------------------------------------------------------------------------

/// The most recent panic, recorded by the hook so the report can show it
/// inline instead of interleaving with the default stderr trace.
static LAST_PANIC: Mutex<Option<String>> = Mutex::new(None);

fn main() {
    std::panic::set_hook(Box::new(|info| {
        let message = if let Some(s) = info.payload().downcast_ref::<&str>() {
            (*s).to_string()
        } else if let Some(s) = info.payload().downcast_ref::<String>() {
            s.clone()
        } else {
            "non-string panic payload".to_string()
        };
        let location = info
            .location()
            .map(|l| format!("{}:{}", l.file(), l.line()))
            .unwrap_or_default();
        *LAST_PANIC.lock().unwrap() = Some(format!("panicked at {location}: {message}"));
    }));

    let criteria: &[(u32, &str, f64, Check)] = &[
        (1, "single-interval kernel integrals vs series oracle", 1.0, criterion_1),
        (2, "Haar variance and dyadic position constant", 1.0, criterion_2),
        (3, "dyadic energy constant and stratified-oracle coverage", 30.0, criterion_3),
        (4, "Haar bilinear orthogonality; spectral vs direct", 60.0, criterion_4),
        (5, "dyadic uncertainty bound and equality case", 60.0, criterion_5),
        (6, "Euclidean Haar closed forms and oracle agreement", 10.0, criterion_6),
        (7, "Euclidean uncertainty bound and witness chain", 120.0, criterion_7),
        (8, "gamma table endpoint behavior", 1.0, criterion_8),
        (9, "verify-inequality output determinism", 60.0, criterion_9),
    ];

    let mut failed = 0usize;
    for &(number, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(run);
        let elapsed = start.elapsed().as_secs_f64();
        let verdict = match outcome {
            Ok(Ok(())) if elapsed <= budget => Ok(()),
            Ok(Ok(())) => Err(format!(
                "all checks passed but the runtime exceeded the {budget:.0} s budget"
            )),
            Ok(Err(message)) => Err(message),
            Err(_) => Err(LAST_PANIC
                .lock()
                .unwrap()
                .take()
                .unwrap_or_else(|| "panicked".to_string())),
        };
        let label = if verdict.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {number}  {name:<54} {label}  ({elapsed:>6.2} s / {budget:.0} s)");
        if let Err(message) = verdict {
            failed += 1;
            for line in message.lines() {
                println!("    {line}");
            }
        }
    }

    println!();
    if failed > 0 {
        println!("{} of {} criteria passed, {failed} failed", criteria.len() - failed, criteria.len());
        std::process::exit(101);
    }
    println!("all {} criteria passed", criteria.len());
}

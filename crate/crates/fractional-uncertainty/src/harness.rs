//! The uncertainty product: γ(s) bounds, pass/fail reports, the shifted-grid
//! witness chain, seeded random inputs, and parameter sweeps.
//!
//! The two inequalities under test:
//!
//! * dyadic: `Q_s^δ(φ) · E_s^δ(φ) ≥ γ(s) ‖φ‖₂⁴` for finite Haar expansions,
//!   with equality exactly on expansions concentrated at one interval
//!   measure (single Haar functions in particular);
//! * Euclidean: `𝓠_s(|φ|) · 𝓔_s(φ) ≥ γ(s)` for normalized step functions.
//!
//! Everything here is deterministic: random inputs come from counter-derived
//! ChaCha8 streams, trials reuse the same per-trial seed across `s` values,
//! and reports serialize with 17 significant digits so they round-trip.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms_dyadic::{
    energy_spectral, gamma1, gamma2, position_spectral, DirectFormEvaluator, FormParameter, Method,
};
use crate::forms_euclid::{energy_quadratic, position_quadratic};
use crate::haar::{DyadicStepFunction, HaarExpansion};

/// The uncertainty constant `γ(s) = γ₁(s) γ₂(s)`.
///
/// It blows up like `1/(2 s² ln 2)` as `s → 0` and vanishes linearly as
/// `s → 1/2`, so no single constant works across the whole range — the
/// product bound is genuinely `s`-dependent.
pub fn gamma(s: FormParameter) -> f64 {
    gamma1(s.value()) * gamma2(s.value())
}

/// Relative slack below which the inequality is considered violated.
pub const SLACK_TOL: f64 = 1e-12;

/// One verdict of an uncertainty inequality on one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UncertaintyReport {
    pub s: f64,
    pub position_value: f64,
    pub energy_value: f64,
    pub product: f64,
    pub gamma_bound: f64,
    /// `‖φ‖₂⁴`, the homogeneity factor on the right-hand side.
    pub norm_fourth: f64,
    /// `product − gammaBound · normFourth`; nonnegative when the inequality
    /// holds exactly.
    pub slack: f64,
    pub pass: bool,
}

impl UncertaintyReport {
    fn from_parts(s: FormParameter, position: f64, energy: f64, norm_squared: f64) -> Self {
        let product = position * energy;
        let gamma_bound = gamma(s);
        let norm_fourth = norm_squared * norm_squared;
        let slack = product - gamma_bound * norm_fourth;
        UncertaintyReport {
            s: s.value(),
            position_value: position,
            energy_value: energy,
            product,
            gamma_bound,
            norm_fourth,
            slack,
            pass: slack >= -SLACK_TOL * product,
        }
    }
}

/// Evaluates the dyadic uncertainty product of a finite Haar expansion by
/// the chosen route.
///
/// `Spectral` uses the diagonalized series directly; `Direct` synthesizes
/// the step function and integrates. The position form acts on the signed
/// function — on the Haar span the form is diagonal, so no absolute value
/// is involved on the dyadic side.
pub fn dyadic_uncertainty(
    e: &HaarExpansion,
    s: FormParameter,
    method: Method,
) -> Result<UncertaintyReport> {
    if e.is_empty() {
        return Err(Error::ZeroExpansion);
    }
    let (position, energy) = match method {
        Method::Spectral => (position_spectral(e, s), energy_spectral(e, s)),
        Method::Direct => {
            let f = e.synthesize()?;
            let eval = DirectFormEvaluator::new(&f, &f)?;
            (eval.position(s), eval.energy(s))
        }
        Method::Oracle => {
            return Err(Error::MethodMismatch {
                method: "oracle",
                needs: "spectral or direct",
            })
        }
    };
    Ok(UncertaintyReport::from_parts(
        s,
        position,
        energy,
        e.norm_squared(),
    ))
}

const NORMALIZATION_TOL: f64 = 1e-10;

fn require_normalized(f: &DyadicStepFunction) -> Result<f64> {
    let norm_squared = f.l2_norm_squared();
    if (norm_squared.sqrt() - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(norm_squared.sqrt()));
    }
    Ok(norm_squared)
}

/// Evaluates the Euclidean uncertainty product `𝓠_s(|f|) · 𝓔_s(f)` of a
/// normalized step function.
///
/// The Euclidean inequality is stated for unit vectors, so inputs whose
/// norm strays from 1 by more than `10⁻¹⁰` are rejected rather than
/// silently rescaled.
pub fn euclid_uncertainty(f: &DyadicStepFunction, s: FormParameter) -> Result<UncertaintyReport> {
    let norm_squared = require_normalized(f)?;
    let position = position_quadratic(f, s)?;
    let energy = energy_quadratic(f, s)?;
    Ok(UncertaintyReport::from_parts(
        s,
        position,
        energy,
        norm_squared,
    ))
}

/// Outcome of the shifted-grid comparison behind the Euclidean inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftedGridWitness {
    /// Grid point at or left of the support infimum; the dyadic grid is
    /// re-anchored there.
    pub x0: f64,
    /// `∫_{x₀}^∞ |f|²`, which is all of `‖f‖₂²` for compactly supported
    /// step functions.
    pub mass_captured: f64,
    /// `Q^{δ_{x₀}}(|f|) · E^{δ_{x₀}}(f)` on the shifted grid.
    pub dyadic_product: f64,
    /// `𝓠_s(|f|) · 𝓔_s(f)`.
    pub euclid_product: f64,
    /// Whether the full chain held: shifted dyadic product ≥ γ(s)(1−ε)²,
    /// and each Euclidean form dominates its shifted dyadic counterpart.
    pub domination_holds: bool,
}

/// Runs the domination argument that transfers the dyadic inequality to the
/// Euclidean forms.
///
/// The shifted metric `δ_{x₀}` dominates `|x−y|` on `(x₀, ∞)`, and both
/// kernels carry negative exponents, so `Q^{δ_{x₀}}(|f|) ≤ 𝓠_s(|f|)` and
/// `E^{δ_{x₀}}(f) ≤ 𝓔_s(f)` term by term; combined with the dyadic theorem
/// on the shifted grid this forces the Euclidean product above
/// `γ(s)(1−ε)²`. Compact supports make the mass cut exact: `x₀` is the
/// largest grid point not exceeding the support infimum and captures all
/// the mass, so `ε` only weakens the reported bound.
pub fn shifted_grid_witness(
    f: &DyadicStepFunction,
    s: FormParameter,
    epsilon: f64,
) -> Result<ShiftedGridWitness> {
    if !(epsilon.is_finite() && 0.0 < epsilon && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    let mass_captured = require_normalized(f)?;
    let (k_min, _) = f.support_bounds().expect("normalized functions have support");
    let x0 = k_min as f64 * f.cell_length();
    // Re-anchor the grid at x₀: in coordinates relative to x₀ the function
    // is the same step function with its first cell at the origin.
    let shifted = f.translate(-(k_min as i64))?;
    let shifted_abs = shifted.abs();
    let position_eval = DirectFormEvaluator::new(&shifted_abs, &shifted_abs)?;
    let energy_eval = DirectFormEvaluator::new(&shifted, &shifted)?;
    let dyadic_position = position_eval.position(s);
    let dyadic_energy = energy_eval.energy(s);
    let dyadic_product = dyadic_position * dyadic_energy;
    let euclid_position = position_quadratic(f, s)?;
    let euclid_energy = energy_quadratic(f, s)?;
    let euclid_product = euclid_position * euclid_energy;
    let slop = 1.0 - SLACK_TOL;
    let lower = gamma(s) * (1.0 - epsilon) * (1.0 - epsilon);
    let domination_holds = dyadic_product >= lower * slop
        && euclid_position >= dyadic_position * slop
        && euclid_energy >= dyadic_energy * slop;
    Ok(ShiftedGridWitness {
        x0,
        mass_captured,
        dyadic_product,
        euclid_product,
        domination_holds,
    })
}

const MAX_LEVEL_SPAN: i32 = 32;

/// Shape of a randomized verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepConfig {
    /// `s` values to test, in output order.
    pub s_grid: Vec<f64>,
    /// Random functions per `s` value; 0 yields a γ-only summary.
    pub trials: u64,
    pub seed: u64,
    /// Upper bound on nonzero Haar coefficients per random expansion.
    pub max_coefficients: usize,
    /// Inclusive level range `[j_min, j_max]` for random coefficients.
    pub level_range: (i32, i32),
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.s_grid.is_empty() {
            return Err(Error::InvalidConfig("empty s grid".into()));
        }
        for &s in &self.s_grid {
            FormParameter::new(s)?;
            if !(0.01..=0.49).contains(&s) {
                return Err(Error::InvalidConfig(format!(
                    "sweep s = {s} outside the supported range [0.01, 0.49]"
                )));
            }
        }
        if self.max_coefficients == 0 {
            return Err(Error::InvalidConfig("maxCoefficients must be positive".into()));
        }
        let (j_min, j_max) = self.level_range;
        if j_min > j_max {
            return Err(Error::InvalidConfig(format!(
                "level range {j_min}..{j_max} is empty"
            )));
        }
        if j_max - j_min > MAX_LEVEL_SPAN {
            return Err(Error::InvalidConfig(format!(
                "level range spans {} levels, more than {MAX_LEVEL_SPAN}",
                j_max - j_min
            )));
        }
        Ok(())
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            s_grid: vec![0.05, 0.15, 0.25, 0.35, 0.45],
            trials: 100,
            seed: 0,
            max_coefficients: 64,
            level_range: (-4, 6),
        }
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `t`: independent of `s`, so every `s` value sees the same
/// function family.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(trial.wrapping_add(1)))
}

/// Deterministic random finite Haar expansion: up to `maxCoefficients`
/// coefficients uniform on `[−1, 1]` at levels in `levelRange` (offsets kept
/// inside `(0, 2^{−j_min}]`), first draw wins on collisions, then
/// L²-normalized.
pub fn random_wave_function(seed: u64, config: &SweepConfig) -> Result<HaarExpansion> {
    config.validate()?;
    let (j_min, j_max) = config.level_range;
    let mut stream = seed;
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let mut e = HaarExpansion::new();
        for _ in 0..config.max_coefficients {
            let j = rng.random_range(j_min..=j_max);
            let k = rng.random_range(0..1u64 << (j - j_min) as u32);
            let interval = crate::dyadic::DyadicInterval::new(j, k);
            let c = rng.random::<f64>() * 2.0 - 1.0;
            if e.get(interval) == 0.0 {
                e.insert(interval, c);
            }
        }
        if !e.is_empty() {
            return Ok(e.scale(1.0 / e.norm_squared().sqrt()));
        }
        // All draws landed on exact zeros — astronomically unlikely, but
        // stay deterministic by moving to the next derived stream.
        stream = splitmix64(stream);
    }
}

/// Deterministic random normalized step function on the grid at level
/// `j_max`, supported within `(0, 2^{−j_min}]`.
pub fn random_step_function(seed: u64, config: &SweepConfig) -> Result<DyadicStepFunction> {
    config.validate()?;
    let (j_min, j_max) = config.level_range;
    let span = 1u64 << (j_max - j_min) as u32;
    let mut stream = seed;
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let mut cells = Vec::with_capacity(config.max_coefficients);
        for _ in 0..config.max_coefficients {
            cells.push((rng.random_range(0..span), rng.random::<f64>() * 2.0 - 1.0));
        }
        cells.sort_by_key(|&(k, _)| k);
        cells.dedup_by_key(|&mut (k, _)| k);
        let f = DyadicStepFunction::new(j_max, cells)?;
        if !f.is_zero() {
            let norm = f.l2_norm_squared().sqrt();
            return Ok(f.scale(1.0 / norm));
        }
        stream = splitmix64(stream);
    }
}

/// One line of the sweep summary: extremes over the trials at a fixed `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummaryRow {
    pub s: f64,
    pub gamma: f64,
    pub min_product: f64,
    pub min_slack: f64,
    pub pass_count: u64,
    pub trials: u64,
}

/// Runs `trials` random expansions through the dyadic inequality at every
/// `s` on the grid (spectral route), returning per-trial reports in
/// `(s, trial)` order plus one summary row per `s`.
pub fn sweep(config: &SweepConfig) -> Result<(Vec<UncertaintyReport>, Vec<SweepSummaryRow>)> {
    config.validate()?;
    let mut reports = Vec::with_capacity((config.s_grid.len() as u64 * config.trials) as usize);
    let mut summary = Vec::with_capacity(config.s_grid.len());
    for &s in &config.s_grid {
        let s = FormParameter::new(s)?;
        let mut row = SweepSummaryRow {
            s: s.value(),
            gamma: gamma(s),
            min_product: f64::INFINITY,
            min_slack: f64::INFINITY,
            pass_count: 0,
            trials: config.trials,
        };
        for trial in 0..config.trials {
            let e = random_wave_function(trial_seed(config.seed, trial), config)?;
            let report = dyadic_uncertainty(&e, s, Method::Spectral)?;
            row.min_product = row.min_product.min(report.product);
            row.min_slack = row.min_slack.min(report.slack);
            row.pass_count += report.pass as u64;
            reports.push(report);
        }
        if config.trials == 0 {
            row.min_product = f64::NAN;
            row.min_slack = f64::NAN;
        }
        summary.push(row);
    }
    Ok((reports, summary))
}

/// Fixed column order of the report schema.
pub const REPORT_CSV_HEADER: &str = "s,gamma,Q,E,product,norm4,slack,pass";

/// Serializes reports to the documented CSV schema: 17 significant digits,
/// line-feed terminated.
pub fn reports_to_csv(reports: &[UncertaintyReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            r.s,
            r.gamma_bound,
            r.position_value,
            r.energy_value,
            r.product,
            r.norm_fourth,
            r.slack,
            r.pass
        ));
    }
    out
}

/// Parses the report schema back; every value round-trips bitwise.
pub fn parse_reports_csv(text: &str) -> Result<Vec<UncertaintyReport>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == REPORT_CSV_HEADER => {}
        other => {
            return Err(Error::CsvParse {
                line: 1,
                message: format!(
                    "expected header {REPORT_CSV_HEADER:?}, found {:?}",
                    other.map(|(_, h)| h).unwrap_or("")
                ),
            })
        }
    }
    let mut reports = Vec::new();
    for (index, line) in lines {
        let line_no = index + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::CsvParse {
                line: line_no,
                message: format!("expected 8 columns, found {}", fields.len()),
            });
        }
        let num = |col: usize| -> Result<f64> {
            fields[col].parse().map_err(|e| Error::CsvParse {
                line: line_no,
                message: format!("column {}: {e}", col + 1),
            })
        };
        let pass = match fields[7] {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::CsvParse {
                    line: line_no,
                    message: format!("column 8: expected true/false, found {other:?}"),
                })
            }
        };
        reports.push(UncertaintyReport {
            s: num(0)?,
            gamma_bound: num(1)?,
            position_value: num(2)?,
            energy_value: num(3)?,
            product: num(4)?,
            norm_fourth: num(5)?,
            slack: num(6)?,
            pass,
        });
    }
    Ok(reports)
}

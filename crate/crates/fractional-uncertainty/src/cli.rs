//! Command-line surface: constant tables, closed-form verification,
//! inequality sweeps, form evaluation on serialized functions, and
//! plot-data emission.
//!
//! Exit codes are fixed: `0` success, `1` a verification failure (an
//! inequality or agreement check did not hold), `2` a usage or input error.
//! Identical invocations produce byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dyadic::{integral_ball_power, integral_complement_power, DyadicInterval};
use crate::error::{Error, Result};
use crate::forms_dyadic::{
    energy_spectral, gamma1, gamma2, haar_energy_closed, haar_position_closed, position_spectral,
    DirectFormEvaluator, FormEvaluation, FormParameter, Method,
};
use crate::forms_euclid::{
    energy_quadratic, haar_energy_euclid_closed, haar_position_euclid_closed,
    haar_product_euclid_closed, position_quadratic, variance,
};
use crate::haar::{haar_step, DyadicStepFunction, HaarExpansion};
use crate::harness::{
    dyadic_uncertainty, euclid_uncertainty, gamma, random_step_function, random_wave_function,
    reports_to_csv, sweep, trial_seed, SweepConfig, UncertaintyReport,
};
use crate::oracle::{
    dyadic_series_oracle, dyadic_stratified_oracle, euclid_adaptive_oracle, FormKind, SeriesKind,
};

#[derive(Parser)]
#[command(
    name = "fractional-uncertainty",
    version,
    about = "Fractional dyadic and Euclidean uncertainty forms: constants, \
             verification, and sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate γ₁, γ₂, γ and the Euclidean Haar product over an s range.
    GammaTable(GammaTableArgs),
    /// Check every closed-form constant against the independent evaluators.
    VerifyLemmas(VerifyLemmasArgs),
    /// Test both uncertainty inequalities on seeded random functions.
    VerifyInequality(VerifyInequalityArgs),
    /// Evaluate one form on a serialized function or expansion.
    EvalForm(EvalFormArgs),
    /// Sweep the dyadic inequality over an s grid and summarize.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum CliMethod {
    Direct,
    Spectral,
    Oracle,
}

impl From<CliMethod> for Method {
    fn from(m: CliMethod) -> Method {
        match m {
            CliMethod::Direct => Method::Direct,
            CliMethod::Spectral => Method::Spectral,
            CliMethod::Oracle => Method::Oracle,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum WhichForm {
    /// Dyadic position form Q_s.
    Qdelta,
    /// Dyadic energy form E_s.
    Edelta,
    /// Euclidean position form 𝓠_s (of the absolute value).
    Qeuclid,
    /// Euclidean energy form 𝓔_s.
    Eeuclid,
    /// Un-normalized variance from exact cell moments.
    Variance,
}

fn parse_level_range(text: &str) -> std::result::Result<(i32, i32), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected j_min..j_max, found {text:?}"))?;
    let lo = lo.trim().parse().map_err(|e| format!("bad j_min: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("bad j_max: {e}"))?;
    Ok((lo, hi))
}

#[derive(Args)]
struct GammaTableArgs {
    /// Smallest s in the table.
    #[arg(long, default_value_t = 0.01)]
    s_min: f64,
    /// Largest s in the table.
    #[arg(long, default_value_t = 0.49)]
    s_max: f64,
    /// Number of rows (evenly spaced, endpoints included).
    #[arg(long, default_value_t = 49)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyLemmasArgs {
    /// Exponent the s-dependent checks run at.
    #[arg(long, default_value_t = 0.25)]
    s: f64,
    /// Haar levels j_min..j_max exercised by every per-interval check.
    #[arg(long, value_parser = parse_level_range, default_value = "-3..3", allow_hyphen_values = true)]
    levels: (i32, i32),
    /// Relative tolerance for the closed-form agreements.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Fault-injection hook for exercising the failure path: scales the
    /// closed-form energy constant.
    #[arg(long, hide = true, default_value_t = 1.0)]
    gamma2_scale: f64,
}

#[derive(Args)]
struct VerifyInequalityArgs {
    #[arg(long, default_value_t = 0.25)]
    s: f64,
    /// Random functions to test; 0 emits the header only.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Level range for random inputs.
    #[arg(long, value_parser = parse_level_range, default_value = "-4..6", allow_hyphen_values = true)]
    levels: (i32, i32),
    /// Coefficient/cell budget per random input.
    #[arg(long, default_value_t = 64)]
    max_coefficients: usize,
    /// Draw single Haar functions instead: the dyadic equality case.
    #[arg(long)]
    single_haar: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalFormArgs {
    /// JSON file holding a step function ({"gridLevel", "cells"}) or a Haar
    /// expansion ({"coeffs"}).
    #[arg(long)]
    input: PathBuf,
    /// Which form to evaluate.
    #[arg(long, value_enum)]
    which: WhichForm,
    #[arg(long, default_value_t = 0.25)]
    s: f64,
    #[arg(long, value_enum, default_value_t = CliMethod::Direct)]
    method: CliMethod,
    /// Sample count for the stratified dyadic oracle.
    #[arg(long, default_value_t = 200_000)]
    trials: u64,
    /// Seed for the stratified dyadic oracle.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Relative tolerance for the adaptive Euclidean oracle.
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0.05)]
    s_min: f64,
    #[arg(long, default_value_t = 0.45)]
    s_max: f64,
    #[arg(long, default_value_t = 5)]
    steps: usize,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = parse_level_range, default_value = "-4..6", allow_hyphen_values = true)]
    levels: (i32, i32),
    #[arg(long, default_value_t = 64)]
    max_coefficients: usize,
    /// Emit (s, γ) and (s, minimum product) two-column series instead of
    /// the full report.
    #[arg(long)]
    plot_data: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parses the process arguments, runs the command, and returns the exit
/// code. All output happens here; `main` only forwards the code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let (output, text) = match cli.command {
        Command::GammaTable(args) => (args.output.clone(), cmd_gamma_table(&args)),
        Command::VerifyLemmas(args) => (args.output.clone(), cmd_verify_lemmas(&args)),
        Command::VerifyInequality(args) => (args.output.clone(), cmd_verify_inequality(&args)),
        Command::EvalForm(args) => (args.output.clone(), cmd_eval_form(&args)),
        Command::Sweep(args) => (args.output.clone(), cmd_sweep(&args)),
    };
    match text {
        Ok((text, code)) => {
            if let Some(path) = output {
                if let Err(e) = fs::write(&path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{text}");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

type CommandOutput = Result<(String, i32)>;

fn evenly_spaced(s_min: f64, s_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(s_min.is_finite() && s_max.is_finite()) || s_min < 0.01 || s_max > 0.49 || s_min >= s_max {
        return Err(Error::InvalidConfig(format!(
            "need 0.01 <= s-min < s-max <= 0.49, got {s_min} and {s_max}"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least 2 steps to span [{s_min}, {s_max}], got {steps}"
        )));
    }
    let h = (s_max - s_min) / (steps - 1) as f64;
    Ok((0..steps).map(|i| s_min + i as f64 * h).collect())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GammaRow {
    s: f64,
    gamma1: f64,
    gamma2: f64,
    gamma: f64,
    euclid_haar_product: f64,
}

fn cmd_gamma_table(args: &GammaTableArgs) -> CommandOutput {
    let rows: Vec<GammaRow> = evenly_spaced(args.s_min, args.s_max, args.steps)?
        .into_iter()
        .map(|s| {
            let sp = FormParameter::new(s)?;
            Ok(GammaRow {
                s,
                gamma1: gamma1(s),
                gamma2: gamma2(s),
                gamma: gamma(sp),
                euclid_haar_product: haar_product_euclid_closed(sp),
            })
        })
        .collect::<Result<_>>()?;
    let text = match args.format {
        OutputFormat::Json => to_json(&rows)?,
        OutputFormat::Csv => {
            let mut out = String::from("s,gamma1,gamma2,gamma,euclidHaarProduct\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                    r.s, r.gamma1, r.gamma2, r.gamma, r.euclid_haar_product
                );
            }
            out
        }
    };
    Ok((text, 0))
}

/// One line of the verify-lemmas report.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckLine {
    check: &'static str,
    max_deviation: f64,
    tolerance: f64,
    pass: bool,
}

fn rel_dev(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

fn cmd_verify_lemmas(args: &VerifyLemmasArgs) -> CommandOutput {
    let s = FormParameter::new(args.s)?;
    let (j_min, j_max) = args.levels;
    if j_min > j_max {
        return Err(Error::InvalidConfig(format!(
            "empty level range {j_min}..{j_max}"
        )));
    }
    if !(args.tolerance.is_finite() && args.tolerance > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "tolerance {} must be positive",
            args.tolerance
        )));
    }
    let tol = args.tolerance;
    let oracle_tol = tol.max(1e-6);
    let intervals: Vec<DyadicInterval> =
        (j_min..=j_max).map(|j| DyadicInterval::new(j, 0)).collect();
    let mut checks: Vec<CheckLine> = Vec::new();
    let mut push = |check: &'static str, max_deviation: f64, tolerance: f64| {
        checks.push(CheckLine {
            check,
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        });
    };

    // Ball and complement integrals against the level-set series.
    let (mut ball, mut comp) = (0.0f64, 0.0f64);
    for &alpha in &[0.1, 0.25, 0.5, 0.75, 1.0] {
        for i in &intervals {
            let series = dyadic_series_oracle(SeriesKind::BallPower, alpha, i.measure(), 600)?;
            ball = ball.max(rel_dev(integral_ball_power(alpha, *i)?, series.value));
            let series =
                dyadic_series_oracle(SeriesKind::ComplementPower, alpha, i.measure(), 600)?;
            comp = comp.max(rel_dev(integral_complement_power(alpha, *i)?, series.value));
        }
    }
    push("ball-integral", ball, tol);
    push("complement-integral", comp, tol);

    // Haar constants: variance, position, energy, and the Euclidean pair.
    let (mut var, mut pos, mut en) = (0.0f64, 0.0f64, 0.0f64);
    let (mut eu_pos, mut eu_en) = (0.0f64, 0.0f64);
    for i in &intervals {
        let h = haar_step(*i)?;
        var = var.max(rel_dev(variance(&h)?, i.measure() * i.measure() / 12.0));
        let eval = DirectFormEvaluator::new(&h, &h)?;
        pos = pos.max(rel_dev(eval.position(s), haar_position_closed(s, *i)));
        en = en.max(rel_dev(
            eval.energy(s),
            haar_energy_closed(s, *i) * args.gamma2_scale,
        ));
        eu_pos = eu_pos.max(rel_dev(
            position_quadratic(&h, s)?,
            haar_position_euclid_closed(s, *i),
        ));
        eu_en = eu_en.max(rel_dev(
            energy_quadratic(&h, s)?,
            haar_energy_euclid_closed(s, *i),
        ));
    }
    push("haar-variance", var, tol);
    push("position-constant", pos, tol);
    push("energy-constant", en, tol);
    push("euclid-position", eu_pos, tol);
    push("euclid-energy", eu_en, tol);

    // Spectral route against the direct route on seeded expansions.
    let mut spectral = 0.0f64;
    let config = SweepConfig {
        s_grid: vec![s.value().clamp(0.01, 0.49)],
        trials: 5,
        seed: 2024,
        max_coefficients: 8,
        level_range: (-2, 3),
    };
    for trial in 0..config.trials {
        let e = random_wave_function(trial_seed(config.seed, trial), &config)?;
        let f = e.synthesize()?;
        let eval = DirectFormEvaluator::new(&f, &f)?;
        spectral = spectral.max(rel_dev(position_spectral(&e, s), eval.position(s)));
        spectral = spectral.max(rel_dev(energy_spectral(&e, s), eval.energy(s)));
    }
    push("spectral-agreement", spectral, tol);

    // Oracle lines: adaptive quadrature agreement and stratified coverage.
    let h = haar_step(DyadicInterval::new(0, 0))?;
    let q = euclid_adaptive_oracle(&h, FormKind::Position, s, 1e-8)?;
    push(
        "euclid-oracle-position",
        rel_dev(position_quadratic(&h, s)?, q.value),
        oracle_tol,
    );
    let e = euclid_adaptive_oracle(&h, FormKind::Energy, s, 1e-8)?;
    push(
        "euclid-oracle-energy",
        rel_dev(energy_quadratic(&h, s)?, e.value),
        oracle_tol,
    );
    let direct_energy = DirectFormEvaluator::new(&h, &h)?.energy(s);
    let mc = dyadic_stratified_oracle(&h, FormKind::Energy, s, 2027, 50_000)?;
    checks.push(CheckLine {
        check: "energy-oracle-coverage",
        max_deviation: (mc.value - direct_energy).abs(),
        tolerance: mc.bound,
        pass: mc.covers(direct_energy),
    });

    let all_pass = checks.iter().all(|c| c.pass);
    let text = match args.format {
        OutputFormat::Json => to_json(&checks)?,
        OutputFormat::Csv => {
            let mut out = String::from("check,maxDeviation,tolerance,pass\n");
            for c in &checks {
                let _ = writeln!(
                    out,
                    "{},{:.16e},{:.16e},{}",
                    c.check, c.max_deviation, c.tolerance, c.pass
                );
            }
            out
        }
    };
    Ok((text, if all_pass { 0 } else { 1 }))
}

fn cmd_verify_inequality(args: &VerifyInequalityArgs) -> CommandOutput {
    let s = FormParameter::new(args.s)?;
    let config = SweepConfig {
        s_grid: vec![args.s],
        trials: args.trials,
        seed: args.seed,
        max_coefficients: args.max_coefficients,
        level_range: args.levels,
    };
    config.validate()?;
    let (j_min, j_max) = args.levels;
    let mut rows: Vec<UncertaintyReport> = Vec::with_capacity(2 * args.trials as usize);
    let mut all_pass = true;
    for trial in 0..args.trials {
        let seed = trial_seed(args.seed, trial);
        let (expansion, function) = if args.single_haar {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let j = rng.random_range(j_min..=j_max);
            let k = rng.random_range(0..1u64 << (j - j_min) as u32);
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            let interval = DyadicInterval::new(j, k);
            (
                HaarExpansion::single(interval, sign),
                haar_step(interval)?.scale(sign),
            )
        } else {
            (
                random_wave_function(seed, &config)?,
                random_step_function(seed, &config)?,
            )
        };
        let dyadic = dyadic_uncertainty(&expansion, s, Method::Spectral)?;
        let euclid = euclid_uncertainty(&function, s)?;
        all_pass &= dyadic.pass && euclid.pass;
        rows.push(dyadic);
        rows.push(euclid);
    }
    let text = match args.format {
        OutputFormat::Csv => reports_to_csv(&rows),
        OutputFormat::Json => to_json(&rows)?,
    };
    Ok((text, if all_pass { 0 } else { 1 }))
}

enum FunctionInput {
    Expansion(HaarExpansion),
    Step(DyadicStepFunction),
}

impl FunctionInput {
    fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("coeffs").is_some() {
            Ok(FunctionInput::Expansion(serde_json::from_value(value)?))
        } else if value.get("gridLevel").is_some() {
            Ok(FunctionInput::Step(serde_json::from_value(value)?))
        } else {
            Err(Error::InvalidConfig(
                "input JSON is neither a Haar expansion ({\"coeffs\": …}) nor a step \
                 function ({\"gridLevel\": …, \"cells\": …})"
                    .into(),
            ))
        }
    }

    /// The underlying step function, synthesizing an expansion if needed.
    fn function(&self) -> Result<DyadicStepFunction> {
        match self {
            FunctionInput::Expansion(e) => e.synthesize(),
            FunctionInput::Step(f) => Ok(f.clone()),
        }
    }
}

fn cmd_eval_form(args: &EvalFormArgs) -> CommandOutput {
    let s = FormParameter::new(args.s)?;
    let text = fs::read_to_string(&args.input)?;
    let input = FunctionInput::parse(&text)?;
    let warning = s.conditioning_warning();
    let evaluation = match args.which {
        WhichForm::Qdelta | WhichForm::Edelta => {
            let kind = if args.which == WhichForm::Qdelta {
                FormKind::Position
            } else {
                FormKind::Energy
            };
            match args.method {
                CliMethod::Direct => {
                    let f = input.function()?;
                    let eval = DirectFormEvaluator::new(&f, &f)?;
                    let value = match kind {
                        FormKind::Position => eval.position(s),
                        FormKind::Energy => eval.energy(s),
                    };
                    FormEvaluation::exact(value, Method::Direct, warning)
                }
                CliMethod::Spectral => {
                    let FunctionInput::Expansion(e) = &input else {
                        return Err(Error::MethodMismatch {
                            method: "spectral",
                            needs: "a Haar expansion input ({\"coeffs\": …})",
                        });
                    };
                    let value = match kind {
                        FormKind::Position => position_spectral(e, s),
                        FormKind::Energy => energy_spectral(e, s),
                    };
                    FormEvaluation::exact(value, Method::Spectral, warning)
                }
                CliMethod::Oracle => {
                    let f = input.function()?;
                    let est = dyadic_stratified_oracle(&f, kind, s, args.seed, args.trials)?;
                    FormEvaluation::estimated(est.value, est.bound, warning)
                }
            }
        }
        WhichForm::Qeuclid | WhichForm::Eeuclid => {
            let kind = if args.which == WhichForm::Qeuclid {
                FormKind::Position
            } else {
                FormKind::Energy
            };
            let f = input.function()?;
            match args.method {
                CliMethod::Direct => {
                    let value = match kind {
                        FormKind::Position => position_quadratic(&f, s)?,
                        FormKind::Energy => energy_quadratic(&f, s)?,
                    };
                    FormEvaluation::exact(value, Method::Direct, warning)
                }
                CliMethod::Oracle => {
                    let est = euclid_adaptive_oracle(&f, kind, s, args.tolerance.max(1e-8))?;
                    FormEvaluation::estimated(est.value, est.bound, warning)
                }
                CliMethod::Spectral => {
                    return Err(Error::MethodMismatch {
                        method: "spectral",
                        needs: "a dyadic form (qdelta or edelta)",
                    })
                }
            }
        }
        WhichForm::Variance => match args.method {
            CliMethod::Direct => {
                FormEvaluation::exact(variance(&input.function()?)?, Method::Direct, None)
            }
            CliMethod::Spectral => {
                return Err(Error::MethodMismatch {
                    method: "spectral",
                    needs: "direct (variance has exact cell moments)",
                })
            }
            CliMethod::Oracle => {
                return Err(Error::MethodMismatch {
                    method: "oracle",
                    needs: "direct (variance has exact cell moments)",
                })
            }
        },
    };
    let text = match args.format {
        OutputFormat::Json => to_json(&evaluation)?,
        OutputFormat::Csv => {
            let mut out = String::from("value,method,errorBound,warning\n");
            let bound = evaluation
                .error_bound
                .map(|b| format!("{b:.16e}"))
                .unwrap_or_default();
            let warn = evaluation
                .warning
                .as_deref()
                .map(csv_quote)
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{:.16e},{},{},{}",
                evaluation.value, evaluation.method, bound, warn
            );
            out
        }
    };
    Ok((text, 0))
}

fn cmd_sweep(args: &SweepArgs) -> CommandOutput {
    let config = SweepConfig {
        s_grid: evenly_spaced(args.s_min, args.s_max, args.steps)?,
        trials: args.trials,
        seed: args.seed,
        max_coefficients: args.max_coefficients,
        level_range: args.levels,
    };
    let (reports, summary) = sweep(&config)?;
    let all_pass = reports.iter().all(|r| r.pass);
    let text = if args.plot_data {
        let mut out = String::from("s,gamma\n");
        for row in &summary {
            let _ = writeln!(out, "{:.16e},{:.16e}", row.s, row.gamma);
        }
        if config.trials > 0 {
            out.push('\n');
            out.push_str("s,minProduct\n");
            for row in &summary {
                let _ = writeln!(out, "{:.16e},{:.16e}", row.s, row.min_product);
            }
        }
        out
    } else {
        match args.format {
            OutputFormat::Json => {
                #[derive(Serialize)]
                struct SweepOutput<'a> {
                    reports: &'a [UncertaintyReport],
                    summary: &'a [crate::harness::SweepSummaryRow],
                }
                to_json(&SweepOutput {
                    reports: &reports,
                    summary: &summary,
                })?
            }
            OutputFormat::Csv => {
                if config.trials == 0 {
                    let mut out = String::from("s,gamma\n");
                    for row in &summary {
                        let _ = writeln!(out, "{:.16e},{:.16e}", row.s, row.gamma);
                    }
                    out
                } else {
                    let mut out = reports_to_csv(&reports);
                    out.push('\n');
                    out.push_str("s,gamma,minProduct,minSlack,passCount,trials\n");
                    for row in &summary {
                        let _ = writeln!(
                            out,
                            "{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
                            row.s,
                            row.gamma,
                            row.min_product,
                            row.min_slack,
                            row.pass_count,
                            row.trials
                        );
                    }
                    out
                }
            }
        }
    };
    Ok((text, if all_pass { 0 } else { 1 }))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Minimal CSV quoting for free-text fields.
fn csv_quote(text: &str) -> String {
    format!("\"{}\"", text.replace('"', "\"\""))
}

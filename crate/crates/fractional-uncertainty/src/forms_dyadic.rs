//! Fractional position and energy quadratic forms built from the dyadic
//! ultrametric, with two independent evaluation routes.
//!
//! For an exponent `0 < s < 1/2` and step functions `f, g` the bilinear
//! forms are
//!
//! * position: `Q_s(f, g) = ∬ f(x) g(y) δ(x,y)^{2s-1} dx dy`,
//! * energy: `E_s(f, g) = ∬ (f(x) - f(y)) (g(x) - g(y)) δ(x,y)^{-1-2s} dx dy`,
//!
//! where `δ` is the dyadic distance. Both collapse over the dyadic tree: pairs
//! `(x, y)` whose smallest common ancestor is `A` contribute through the
//! product of child-half integrals of `f` and `g`, and pairs inside one grid
//! cell (position) or outside the whole tree (energy) sum to geometric series
//! with closed values. [`DirectFormEvaluator`] performs that collapse once
//! and then evaluates either form for any exponent in one pass over the
//! levels.
//!
//! The second route is spectral: both forms are diagonal in the Haar system,
//! `Q_s(h_I, h_I) = γ₁(s) |I|^{2s}` and `E_s(h_I, h_I) = γ₂(s) |I|^{-2s}`
//! with off-diagonal terms vanishing, so an expansion evaluates by weighted
//! coefficient sums. Agreement of the two routes is a strong correctness
//! check since they share no code path.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::haar::{DyadicStepFunction, HaarExpansion};

/// Exponent `s` for the fractional forms, restricted to `0 < s < 1/2`.
///
/// Both endpoints are genuine singularities: the position kernel loses
/// integrability at `s = 0` and the energy series diverges at `s = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FormParameter(f64);

impl TryFrom<f64> for FormParameter {
    type Error = Error;

    fn try_from(s: f64) -> Result<Self> {
        FormParameter::new(s)
    }
}

impl From<FormParameter> for f64 {
    fn from(s: FormParameter) -> f64 {
        s.0
    }
}

impl FormParameter {
    pub fn new(s: f64) -> Result<Self> {
        if s.is_finite() && s > 0.0 && s < 0.5 {
            Ok(FormParameter(s))
        } else {
            Err(Error::ParameterOutOfRange(s))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// A warning when `s` sits so close to an endpoint that the closed-form
    /// denominators `1 - 2^{-2s}` and `1 - 2s` start eating digits.
    pub fn conditioning_warning(self) -> Option<String> {
        if self.0 < 0.01 || self.0 > 0.49 {
            Some(format!(
                "s = {} is outside [0.01, 0.49]; denominators 1 - 2^(-2s) and 1 - 2s \
                 are small there and results lose precision",
                self.0
            ))
        } else {
            None
        }
    }
}

impl fmt::Display for FormParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// How a form value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Tree collapse over the cell representation.
    Direct,
    /// Diagonal sum over Haar coefficients.
    Spectral,
    /// An independent numerical estimator with an error bound.
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Spectral => "spectral",
            Method::Oracle => "oracle",
        })
    }
}

/// A form value together with how it was computed and any caveats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FormEvaluation {
    pub value: f64,
    pub method: Method,
    /// Absolute error bound for oracle estimates; exact routes omit it.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
}

impl FormEvaluation {
    pub fn exact(value: f64, method: Method, warning: Option<String>) -> Self {
        FormEvaluation {
            value,
            method,
            error_bound: None,
            warning,
        }
    }

    pub fn estimated(value: f64, error_bound: f64, warning: Option<String>) -> Self {
        FormEvaluation {
            value,
            method: Method::Oracle,
            error_bound: Some(error_bound),
            warning,
        }
    }
}

/// `γ₁(s) = (2^{1-2s} - 1) / (2 (1 - 2^{-2s}))`, the position form of one
/// Haar function on the unit interval.
pub fn gamma1(s: f64) -> f64 {
    0.5 * ((1.0 - 2.0 * s).exp2() - 1.0) / (1.0 - (-2.0 * s).exp2())
}

/// `γ₂(s) = (2 - 2^{-2s}) / (1 - 2^{-2s})`, the energy form of one Haar
/// function on the unit interval.
pub fn gamma2(s: f64) -> f64 {
    let q = (-2.0 * s).exp2();
    (2.0 - q) / (1.0 - q)
}

/// Closed form `Q_s(h_I, h_I) = γ₁(s) |I|^{2s}`.
pub fn haar_position_closed(s: FormParameter, interval: DyadicInterval) -> f64 {
    gamma1(s.value()) * (-2.0 * s.value() * interval.level as f64).exp2()
}

/// Closed form `E_s(h_I, h_I) = γ₂(s) |I|^{-2s}`.
pub fn haar_energy_closed(s: FormParameter, interval: DyadicInterval) -> f64 {
    gamma2(s.value()) * (2.0 * s.value() * interval.level as f64).exp2()
}

/// The exponent-independent tree collapse of a pair of step functions.
///
/// Building the collapse costs `O(cells · levels)`; evaluating either form
/// afterwards costs `O(levels)` per exponent, so sweeps over many `s` values
/// reuse one collapse.
#[derive(Debug, Clone)]
pub struct DirectFormEvaluator {
    grid_level: i32,
    /// `Σ_C f_C g_C` over the common grid cells.
    sum_fg: f64,
    /// Per tree level `j`, the sum over nodes `A` at that level of
    /// `F(left) G(right) + F(right) G(left)`, where `F(·)`/`G(·)` are the
    /// integrals of `f`/`g` over the child halves of `A`.
    cross_by_level: Vec<(i32, f64)>,
}

impl DirectFormEvaluator {
    /// Collapses the pair onto ancestor cross-products, one entry per tree
    /// level that hosts a smallest common ancestor of two support cells.
    pub fn new(f: &DyadicStepFunction, g: &DyadicStepFunction) -> Result<Self> {
        let (f, g) = DyadicStepFunction::common_refinement(f, g)?;
        let grid_level = f.grid_level();
        let length = f.cell_length();

        // Union merge of the two supports into (offset, ∫f, ∫g) leaves.
        let (fc, gc) = (f.cells(), g.cells());
        let mut nodes: Vec<(u64, f64, f64)> = Vec::with_capacity(fc.len() + gc.len());
        let mut sum_fg = 0.0;
        let (mut i, mut j) = (0, 0);
        while i < fc.len() || j < gc.len() {
            match (fc.get(i), gc.get(j)) {
                (Some(&(ka, va)), Some(&(kb, vb))) if ka == kb => {
                    sum_fg += va * vb;
                    nodes.push((ka, va * length, vb * length));
                    i += 1;
                    j += 1;
                }
                (Some(&(ka, va)), Some(&(kb, _))) if ka < kb => {
                    nodes.push((ka, va * length, 0.0));
                    i += 1;
                }
                (Some(_), Some(&(kb, vb))) => {
                    nodes.push((kb, 0.0, vb * length));
                    j += 1;
                }
                (Some(&(ka, va)), None) => {
                    nodes.push((ka, va * length, 0.0));
                    i += 1;
                }
                (None, Some(&(kb, vb))) => {
                    nodes.push((kb, 0.0, vb * length));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }

        // Merge sibling pairs upward. A node whose sibling carries no mass
        // contributes nothing at its parent, so once one node remains every
        // higher level is silent and the loop stops.
        let mut cross_by_level = Vec::new();
        let mut level = grid_level;
        while nodes.len() > 1 {
            level -= 1;
            let mut cross = 0.0;
            let mut parents: Vec<(u64, f64, f64)> = Vec::with_capacity(nodes.len() / 2 + 1);
            let mut i = 0;
            while i < nodes.len() {
                let (k, fa, ga) = nodes[i];
                if k % 2 == 0 && i + 1 < nodes.len() && nodes[i + 1].0 == k + 1 {
                    let (_, fb, gb) = nodes[i + 1];
                    cross += fa * gb + fb * ga;
                    parents.push((k / 2, fa + fb, ga + gb));
                    i += 2;
                } else {
                    parents.push((k / 2, fa, ga));
                    i += 1;
                }
            }
            if cross != 0.0 {
                cross_by_level.push((level, cross));
            }
            nodes = parents;
        }

        Ok(DirectFormEvaluator {
            grid_level,
            sum_fg,
            cross_by_level,
        })
    }

    /// `Q_s(f, g)`: ancestor cross-products weighted by `|A|^{2s-1}` plus the
    /// exact same-cell series `Σ f_C g_C · L^{2s+1} / (2 (1 - 2^{-2s}))`.
    pub fn position(&self, s: FormParameter) -> f64 {
        let s = s.value();
        let lj = -(self.grid_level as f64);
        let intra = self.sum_fg * (lj * (2.0 * s + 1.0)).exp2()
            / (2.0 * (1.0 - (-2.0 * s).exp2()));
        let cross: f64 = self
            .cross_by_level
            .iter()
            .map(|&(j, c)| c * (-(j as f64) * (2.0 * s - 1.0)).exp2())
            .sum();
        cross + intra
    }

    /// `E_s(f, g)`: the tail over pairs separated beyond one grid cell,
    /// `2 Σ f_C g_C · L^{1-2s} 2^{-2s} / (2 (1 - 2^{-2s}))`, minus twice the
    /// ancestor cross-products weighted by `|A|^{-1-2s}`.
    pub fn energy(&self, s: FormParameter) -> f64 {
        let s = s.value();
        let lj = -(self.grid_level as f64);
        let tail = 2.0 * self.sum_fg * (lj * (1.0 - 2.0 * s) - 2.0 * s).exp2()
            / (2.0 * (1.0 - (-2.0 * s).exp2()));
        let cross: f64 = self
            .cross_by_level
            .iter()
            .map(|&(j, c)| c * ((j as f64) * (1.0 + 2.0 * s)).exp2())
            .sum();
        tail - 2.0 * cross
    }
}

/// `Q_s(f, g)` by tree collapse.
pub fn position_bilinear_direct(
    f: &DyadicStepFunction,
    g: &DyadicStepFunction,
    s: FormParameter,
) -> Result<f64> {
    Ok(DirectFormEvaluator::new(f, g)?.position(s))
}

/// `E_s(f, g)` by tree collapse.
pub fn energy_bilinear_direct(
    f: &DyadicStepFunction,
    g: &DyadicStepFunction,
    s: FormParameter,
) -> Result<f64> {
    Ok(DirectFormEvaluator::new(f, g)?.energy(s))
}

/// `Q_s(φ, φ) = γ₁(s) Σ c_I² |I|^{2s}` over a Haar expansion.
pub fn position_spectral(expansion: &HaarExpansion, s: FormParameter) -> f64 {
    let s = s.value();
    gamma1(s)
        * expansion
            .coefficients()
            .map(|(i, c)| c * c * (-2.0 * s * i.level as f64).exp2())
            .sum::<f64>()
}

/// `E_s(φ, φ) = γ₂(s) Σ c_I² |I|^{-2s}` over a Haar expansion.
pub fn energy_spectral(expansion: &HaarExpansion, s: FormParameter) -> f64 {
    let s = s.value();
    gamma2(s)
        * expansion
            .coefficients()
            .map(|(i, c)| c * c * (2.0 * s * i.level as f64).exp2())
            .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::{haar_step, inner_product};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    const S_VALUES: [f64; 5] = [0.05, 0.15, 0.25, 0.35, 0.45];

    fn close(got: f64, want: f64) {
        assert!(
            (got - want).abs() <= 4.0 * f64::EPSILON * want.abs(),
            "got {got:.17e}, want {want:.17e}"
        );
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn parameter_enforces_the_open_interval() {
        assert!(FormParameter::new(0.25).is_ok());
        for bad in [0.0, 0.5, -0.1, 0.7, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                FormParameter::new(bad),
                Err(Error::ParameterOutOfRange(_))
            ));
        }
        assert!(FormParameter::new(0.25).unwrap().conditioning_warning().is_none());
        assert!(FormParameter::new(0.005)
            .unwrap()
            .conditioning_warning()
            .is_some());
        assert!(FormParameter::new(0.495)
            .unwrap()
            .conditioning_warning()
            .is_some());
    }

    #[test]
    fn gamma_constants_match_their_closed_forms() {
        close(gamma1(0.25), 0.7071067811865476);
        close(gamma2(0.25), 4.414213562373095);
        close(gamma1(0.25) * gamma2(0.25), 3.1213203435596424);
        // Near s = 1/2 the numerator 2^{1-2s} - 1 cancels to ~0.014, so the
        // float pipeline only tracks the true value to ~10 ulps there.
        let close_endpoint = |got: f64, want: f64| {
            assert!(
                (got - want).abs() <= 1e-13 * want.abs(),
                "got {got:.17e}, want {want:.17e}"
            );
        };
        close_endpoint(gamma1(0.49), 0.01415710561981424);
        close_endpoint(gamma2(0.49), 3.028314211239628);
        close_endpoint(gamma1(0.05), 6.466363086456483);
        close_endpoint(gamma2(0.05), 15.93272617291297);
    }

    #[test]
    fn direct_forms_reproduce_the_haar_constants() {
        for level in -3..=3 {
            let i = DyadicInterval::new(level, 3);
            let h = haar_step(i).unwrap();
            let eval = DirectFormEvaluator::new(&h, &h).unwrap();
            for s in S_VALUES {
                let s = FormParameter::new(s).unwrap();
                assert!(
                    rel(eval.position(s), haar_position_closed(s, i)) < 1e-12,
                    "position at level {level}, s = {s}"
                );
                assert!(
                    rel(eval.energy(s), haar_energy_closed(s, i)) < 1e-12,
                    "energy at level {level}, s = {s}"
                );
            }
        }
    }

    #[test]
    fn indicator_forms_match_frozen_values() {
        let f = DyadicStepFunction::indicator(DyadicInterval::new(0, 0));
        let eval = DirectFormEvaluator::new(&f, &f).unwrap();
        let s = FormParameter::new(0.25).unwrap();
        close(eval.position(s), 1.7071067811865475);
        close(eval.energy(s), 2.414213562373095);
    }

    #[test]
    fn distinct_haar_functions_are_form_orthogonal() {
        let pairs = [
            ((0, 0), (0, 5)),  // disjoint, same level
            ((0, 0), (2, 1)),  // nested
            ((1, 0), (1, 1)),  // adjacent siblings
            ((-2, 0), (3, 9)), // nested across many levels
            ((0, 2), (2, 40)), // far apart
        ];
        let s = FormParameter::new(0.25).unwrap();
        for ((ja, ka), (jb, kb)) in pairs {
            let a = haar_step(DyadicInterval::new(ja, ka)).unwrap();
            let b = haar_step(DyadicInterval::new(jb, kb)).unwrap();
            let qa = position_bilinear_direct(&a, &a, s).unwrap();
            let qb = position_bilinear_direct(&b, &b, s).unwrap();
            let ea = energy_bilinear_direct(&a, &a, s).unwrap();
            let eb = energy_bilinear_direct(&b, &b, s).unwrap();
            let q = position_bilinear_direct(&a, &b, s).unwrap();
            let e = energy_bilinear_direct(&a, &b, s).unwrap();
            assert!(q.abs() <= 1e-10 * (qa * qb).sqrt(), "Q({ja},{ka};{jb},{kb}) = {q}");
            assert!(e.abs() <= 1e-10 * (ea * eb).sqrt(), "E({ja},{ka};{jb},{kb}) = {e}");
        }
    }

    #[test]
    fn spectral_route_matches_the_direct_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for trial in 0..20 {
            let mut e = HaarExpansion::new();
            for _ in 0..16 {
                let j = rng.random_range(-3..=4);
                let k = rng.random_range(0..1u64 << (j + 3));
                e.insert(DyadicInterval::new(j, k), rng.random::<f64>() * 2.0 - 1.0);
            }
            let f = e.synthesize().unwrap();
            let eval_abs = DirectFormEvaluator::new(&f.abs(), &f.abs()).unwrap();
            let eval = DirectFormEvaluator::new(&f, &f).unwrap();
            for s in S_VALUES {
                let s = FormParameter::new(s).unwrap();
                // The position form is diagonal for the signed function too;
                // the inequality later applies it to |φ|, which is not.
                assert!(
                    rel(eval.position(s), position_spectral(&e, s)) < 1e-8,
                    "trial {trial}, s = {s}: position"
                );
                assert!(
                    rel(eval.energy(s), energy_spectral(&e, s)) < 1e-8,
                    "trial {trial}, s = {s}: energy"
                );
                // The position kernel is positive, so |φ| dominates.
                assert!(eval_abs.position(s) >= eval.position(s) * (1.0 - 1e-12));
            }
        }
    }

    #[test]
    fn two_coefficient_spectral_example_is_frozen() {
        let mut e = HaarExpansion::new();
        let c = 1.0 / std::f64::consts::SQRT_2;
        e.insert(DyadicInterval::new(0, 0), c);
        e.insert(DyadicInterval::new(1, 0), c);
        let s = FormParameter::new(0.25).unwrap();
        close(position_spectral(&e, s), 0.6035533905932737);
        close(energy_spectral(&e, s), 5.32842712474619);
        close(
            position_spectral(&e, s) * energy_spectral(&e, s),
            3.215990257669732,
        );
    }

    #[test]
    fn forms_are_bilinear() {
        let f = haar_step(DyadicInterval::new(0, 0)).unwrap();
        let g = DyadicStepFunction::indicator(DyadicInterval::new(2, 5));
        let w = haar_step(DyadicInterval::new(1, 1)).unwrap();
        let fg = f.add(&g).unwrap();
        let s = FormParameter::new(0.15).unwrap();
        let lhs_q = position_bilinear_direct(&fg, &w, s).unwrap();
        let rhs_q = position_bilinear_direct(&f, &w, s).unwrap()
            + position_bilinear_direct(&g, &w, s).unwrap();
        assert!((lhs_q - rhs_q).abs() < 1e-12);
        let lhs_e = energy_bilinear_direct(&fg, &w, s).unwrap();
        let rhs_e = energy_bilinear_direct(&f, &w, s).unwrap()
            + energy_bilinear_direct(&g, &w, s).unwrap();
        assert!((lhs_e - rhs_e).abs() < 1e-12);
        // Symmetry.
        close(
            position_bilinear_direct(&w, &fg, s).unwrap(),
            lhs_q,
        );
    }

    #[test]
    fn mixed_grid_levels_agree_with_hand_refinement() {
        let f = haar_step(DyadicInterval::new(0, 0)).unwrap(); // grid level 1
        let g = DyadicStepFunction::indicator(DyadicInterval::new(3, 2)); // grid level 3
        let s = FormParameter::new(0.35).unwrap();
        let coarse = position_bilinear_direct(&f, &g, s).unwrap();
        let fine = position_bilinear_direct(&f.refine_to(5).unwrap(), &g, s).unwrap();
        assert!(rel(coarse, fine) < 1e-13);
        assert!((inner_product(&f, &g).unwrap() - 0.125).abs() < 1e-15);
    }
}

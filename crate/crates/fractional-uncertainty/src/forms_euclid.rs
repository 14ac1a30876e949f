//! Euclidean fractional position and energy forms for dyadic step
//! functions, evaluated in closed form.
//!
//! With the ultrametric replaced by `|x - y|`, the forms become
//!
//! * position: `𝓠_s(f) = ∬ |f(x)| |f(y)| |x-y|^{2s-1} dx dy`,
//! * energy: `𝓔_s(f) = ∬ (f(x) - f(y))² |x-y|^{-1-2s} dx dy`,
//!
//! the second over all of `ℝ²` with `f` extended by zero. On step functions
//! every term reduces to the integral of `|x-y|^p` over a product of
//! intervals, which has the exact antiderivative
//! `F(t) = t^{p+2} / ((p+1)(p+2))` — so the evaluators here are closed-form,
//! not quadrature. Pairs of grid cells at distance `m` cells share one table
//! entry, and the zero set contributes through maximal gap blocks and two
//! half-infinite rays.

use crate::dyadic::DyadicInterval;
use crate::error::{Error, Result};
use crate::forms_dyadic::FormParameter;
use crate::haar::DyadicStepFunction;

/// Largest support span (in grid cells) the pairwise tables will cover.
const MAX_SPAN: u64 = 1 << 24;

/// Guard against the `s → 1/2` endpoint where the energy ray integrals
/// degenerate (`1 - 2s` in a denominator).
const ENERGY_ENDPOINT_MARGIN: f64 = 1e-6;

/// Exponent `p` of the kernel `|x - y|^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelExponent(f64);

impl KernelExponent {
    /// The position kernel `p = 2s - 1 ∈ (-1, 0)`.
    pub fn position(s: FormParameter) -> Self {
        KernelExponent(2.0 * s.value() - 1.0)
    }

    /// The energy kernel `p = -1 - 2s ∈ (-2, -1)`.
    pub fn energy(s: FormParameter) -> Self {
        KernelExponent(-1.0 - 2.0 * s.value())
    }

    /// Any finite exponent; divergence is judged per geometry when
    /// integrating.
    pub fn raw(p: f64) -> Result<Self> {
        if p.is_finite() {
            Ok(KernelExponent(p))
        } else {
            Err(Error::NonFiniteValue(p))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `∬ |x-y|^p dx dy` over `[a,b] × [c,d]` for intervals that are identical
/// or have disjoint interiors (touching endpoints allowed).
///
/// Identical intervals need `p > -1`; disjoint ones only `p > -2` when they
/// touch. The antiderivative breaks down at `p = -1` and `p = -2` exactly,
/// so a small neighborhood of each is rejected rather than returning values
/// built from catastrophic cancellation.
pub fn kernel_rect_integral(
    p: KernelExponent,
    first: (f64, f64),
    second: (f64, f64),
) -> Result<f64> {
    let p = p.value();
    for &(lo, hi) in [&first, &second] {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidConfig(format!(
                "degenerate interval [{lo}, {hi}]"
            )));
        }
    }
    if (p + 1.0).abs() < 1e-12 || (p + 2.0).abs() < 1e-12 {
        return Err(Error::DegenerateExponent(p));
    }
    let denom = (p + 1.0) * (p + 2.0);
    if first == second {
        if p <= -1.0 {
            return Err(Error::DivergentIntegral {
                exponent: p,
                case: "identical",
            });
        }
        let length = first.1 - first.0;
        return Ok(2.0 * length.powf(p + 2.0) / denom);
    }
    let ((a, b), (c, d)) = if first.0 <= second.0 {
        (first, second)
    } else {
        (second, first)
    };
    if b > c {
        return Err(Error::InvalidConfig(format!(
            "intervals [{a}, {b}] and [{c}, {d}] overlap but are not identical"
        )));
    }
    if b == c && p <= -2.0 {
        return Err(Error::DivergentIntegral {
            exponent: p,
            case: "touching",
        });
    }
    let f = |t: f64| t.powf(p + 2.0) / denom;
    Ok(f(d - a) - f(d - b) - f(c - a) + f(c - b))
}

/// Support geometry shared by the two quadratic forms: offsets relative to
/// the leftmost cell, the per-gap kernel table, and the maximal zero gaps.
struct SupportGeometry {
    /// `(relative offset, value)`, sorted.
    cells: Vec<(u64, f64)>,
    length: f64,
    /// `table[m] = (m · length)^{p+2}` for `m = 0 ..= span + 1`.
    table: Vec<f64>,
    denom: f64,
    p: f64,
    /// Maximal zero gaps strictly inside the support hull, as
    /// `(first cell, one past last cell)` in relative offsets.
    gaps: Vec<(u64, u64)>,
    /// One past the last support cell, in relative offsets.
    end: u64,
}

impl SupportGeometry {
    fn new(f: &DyadicStepFunction, p: f64) -> Result<Self> {
        let raw = f.cells();
        let base = raw.first().map(|&(k, _)| k).unwrap_or(0);
        let span = raw.last().map(|&(k, _)| k - base + 1).unwrap_or(0);
        if span > MAX_SPAN {
            return Err(Error::InvalidConfig(format!(
                "support spans {span} grid cells, beyond the table budget {MAX_SPAN}"
            )));
        }
        let length = f.cell_length();
        let cells: Vec<_> = raw.iter().map(|&(k, v)| (k - base, v)).collect();
        let table = (0..=span + 1)
            .map(|m| (m as f64 * length).powf(p + 2.0))
            .collect();
        let mut gaps = Vec::new();
        for pair in cells.windows(2) {
            let (prev, next) = (pair[0].0, pair[1].0);
            if next > prev + 1 {
                gaps.push((prev + 1, next));
            }
        }
        Ok(SupportGeometry {
            cells,
            length,
            table,
            denom: (p + 1.0) * (p + 2.0),
            p,
            gaps,
            end: span,
        })
    }

    /// `∬ |x-y|^p` over two grid cells `m` apart (`m ≥ 1`).
    fn cell_pair(&self, m: u64) -> f64 {
        let m = m as usize;
        (self.table[m + 1] - 2.0 * self.table[m] + self.table[m - 1]) / self.denom
    }

    /// `∬ |x-y|^p` over one grid cell with itself.
    fn cell_self(&self) -> f64 {
        2.0 * self.table[1] / self.denom
    }

    /// `∬ |x-y|^p` over the cell at relative offset `k` and the block of
    /// cells `[g0, g1)`, which must be disjoint from it.
    fn cell_block(&self, k: u64, g0: u64, g1: u64) -> f64 {
        let f = |m: u64| (m as f64 * self.length).powf(self.p + 2.0) / self.denom;
        if k < g0 {
            // cell [k, k+1] left of block [g0, g1]
            f(g1 - k) - f(g1 - k - 1) - f(g0 - k) + f(g0 - k - 1)
        } else {
            f(k + 1 - g0) - f(k - g0) - f(k + 1 - g1) + f(k - g1)
        }
    }
}

/// `𝓠_s(f) = ∬ |f(x)| |f(y)| |x-y|^{2s-1} dx dy`, exactly.
///
/// The position form acts on absolute values, matching its role in the
/// uncertainty inequality; signs of `f` are immaterial here.
pub fn position_quadratic(f: &DyadicStepFunction, s: FormParameter) -> Result<f64> {
    let p = 2.0 * s.value() - 1.0;
    let geo = SupportGeometry::new(f, p)?;
    let mut total = 0.0;
    for (i, &(ka, va)) in geo.cells.iter().enumerate() {
        total += va * va * geo.cell_self();
        for &(kb, vb) in &geo.cells[i + 1..] {
            total += 2.0 * (va * vb).abs() * geo.cell_pair(kb - ka);
        }
    }
    Ok(total)
}

/// `𝓔_s(f) = ∬_{ℝ²} (f(x) - f(y))² |x-y|^{-1-2s} dx dy`, exactly.
///
/// Pairs inside one cell vanish; pairs of distinct support cells use the
/// table; pairs of a support cell with the zero set split into the maximal
/// gaps inside the support hull and two half-infinite rays, whose integrals
/// are `[(far edge)^{1-2s} - (near edge)^{1-2s}] / (2s (1 - 2s))`.
pub fn energy_quadratic(f: &DyadicStepFunction, s: FormParameter) -> Result<f64> {
    let sv = s.value();
    if 1.0 - 2.0 * sv < ENERGY_ENDPOINT_MARGIN {
        return Err(Error::DegenerateExponent(sv));
    }
    let p = -1.0 - 2.0 * sv;
    let geo = SupportGeometry::new(f, p)?;
    let mut total = 0.0;
    for (i, &(ka, va)) in geo.cells.iter().enumerate() {
        for &(kb, vb) in &geo.cells[i + 1..] {
            let diff = va - vb;
            total += 2.0 * diff * diff * geo.cell_pair(kb - ka);
        }
    }
    for &(g0, g1) in &geo.gaps {
        for &(k, v) in &geo.cells {
            total += 2.0 * v * v * geo.cell_block(k, g0, g1);
        }
    }
    // Rays: y < the support hull and y > it. With the hull edge at distance
    // m cells from a cell edge, each ray contributes through
    // t ↦ t^{1-2s} / (2s (1 - 2s)) evaluated at the two cell edges.
    let ray = |m: u64| (m as f64 * geo.length).powf(1.0 - 2.0 * sv) / (2.0 * sv * (1.0 - 2.0 * sv));
    for &(k, v) in &geo.cells {
        let left = ray(k + 1) - ray(k);
        let right = ray(geo.end - k) - ray(geo.end - k - 1);
        total += 2.0 * v * v * (left + right);
    }
    Ok(total)
}

/// Closed form `𝓠_s(h_I) = |I|^{2s} / (s (2s + 1))`.
pub fn haar_position_euclid_closed(s: FormParameter, interval: DyadicInterval) -> f64 {
    let s = s.value();
    (-2.0 * s * interval.level as f64).exp2() / (s * (2.0 * s + 1.0))
}

/// Closed form `𝓔_s(h_I) = 2 (2^{2s+1} - 1) |I|^{-2s} / (s (1 - 2s))`.
///
/// Summing the exact pieces: the two halves of `h_I` against each other give
/// `2 (2^{2s} - 1)² |I|^{-2s} / (2s (1 - 2s) (2 - 2s))`-type rectangle terms
/// and the exterior rays the remainder; everything collapses to the single
/// bracket `2^{2s+1} - 1`.
pub fn haar_energy_euclid_closed(s: FormParameter, interval: DyadicInterval) -> f64 {
    let s = s.value();
    2.0 * ((2.0 * s + 1.0).exp2() - 1.0) * (2.0 * s * interval.level as f64).exp2()
        / (s * (1.0 - 2.0 * s))
}

/// Closed form of the scale-invariant Haar product
/// `𝓠_s(h_I) · 𝓔_s(h_I) = (2^{2s+2} - 2) / (s² (1 - 4s²))`.
pub fn haar_product_euclid_closed(s: FormParameter) -> f64 {
    let s = s.value();
    ((2.0 * s + 2.0).exp2() - 2.0) / (s * s * (1.0 - 4.0 * s * s))
}

/// Variance of the probability density `|f|² / ‖f‖²`:
/// `∫ (x - μ)² |f(x)|² dx / ‖f‖²` with `μ` the density's mean.
///
/// Exact per-cell moment sums; a second pass around the computed mean keeps
/// the cancellation mild. Errors on the zero function.
pub fn variance(f: &DyadicStepFunction) -> Result<f64> {
    let mass = f.l2_norm_squared();
    if mass == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let length = f.cell_length();
    let mut first = 0.0;
    for &(k, v) in f.cells() {
        let (a, b) = (k as f64 * length, (k + 1) as f64 * length);
        first += v * v * (a + b) / 2.0 * length;
    }
    let mean = first / mass;
    let mut second = 0.0;
    for &(k, v) in f.cells() {
        let (a, b) = (k as f64 * length - mean, (k + 1) as f64 * length - mean);
        second += v * v * (b * b * b - a * a * a) / 3.0;
    }
    Ok(second / mass)
}

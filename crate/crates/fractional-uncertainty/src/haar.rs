//! The Haar system on the half-line, dyadic step functions, and the exact
//! analysis/synthesis maps between cell values and Haar coefficients.
//!
//! A Haar function is supported on a dyadic interval `I`, takes the value
//! `+|I|^{-1/2}·...` — concretely `2^{j/2}` on the left half of `I` and
//! `-2^{j/2}` on the right half — and has unit L² norm. The system over all
//! dyadic intervals is an orthonormal basis of `L²(0, ∞)`; finite linear
//! combinations are exactly the dyadic step functions with zero mean on the
//! appropriate scales, and both representations convert exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dyadic::{scaled_index, DyadicInterval};
use crate::error::{Error, Result};

/// Refinement guard: operations refuse to materialize more cells than this.
pub const MAX_CELLS: u64 = 1 << 22;

/// A finitely supported step function that is constant on the cells of one
/// dyadic grid level.
///
/// Cells are `(offset, value)` pairs at level `grid_level`; omitted offsets
/// carry the value zero, so the support always sits inside `(0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepFunctionRepr", into = "StepFunctionRepr")]
pub struct DyadicStepFunction {
    grid_level: i32,
    cells: Vec<(u64, f64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct StepFunctionRepr {
    grid_level: i32,
    cells: Vec<CellRepr>,
}

#[derive(Serialize, Deserialize)]
struct CellRepr {
    k: u64,
    v: f64,
}

impl TryFrom<StepFunctionRepr> for DyadicStepFunction {
    type Error = Error;

    fn try_from(repr: StepFunctionRepr) -> Result<Self> {
        DyadicStepFunction::new(
            repr.grid_level,
            repr.cells.into_iter().map(|c| (c.k, c.v)).collect(),
        )
    }
}

impl From<DyadicStepFunction> for StepFunctionRepr {
    fn from(f: DyadicStepFunction) -> Self {
        StepFunctionRepr {
            grid_level: f.grid_level,
            cells: f
                .cells
                .into_iter()
                .map(|(k, v)| CellRepr { k, v })
                .collect(),
        }
    }
}

impl DyadicStepFunction {
    /// Builds a step function from cell data, sorting by offset, dropping
    /// explicit zeros, and rejecting duplicates and non-finite values.
    pub fn new(grid_level: i32, mut cells: Vec<(u64, f64)>) -> Result<Self> {
        cells.sort_by_key(|&(k, _)| k);
        for pair in cells.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateCell(pair[0].0));
            }
        }
        for &(_, v) in &cells {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue(v));
            }
        }
        cells.retain(|&(_, v)| v != 0.0);
        Ok(DyadicStepFunction { grid_level, cells })
    }

    /// The zero function on the given grid.
    pub fn zero(grid_level: i32) -> Self {
        DyadicStepFunction {
            grid_level,
            cells: Vec::new(),
        }
    }

    /// The indicator of a dyadic interval, with unit height.
    pub fn indicator(interval: DyadicInterval) -> Self {
        DyadicStepFunction {
            grid_level: interval.level,
            cells: vec![(interval.offset, 1.0)],
        }
    }

    pub fn grid_level(&self) -> i32 {
        self.grid_level
    }

    /// Length `2^{-J}` of each grid cell.
    pub fn cell_length(&self) -> f64 {
        (-(self.grid_level as f64)).exp2()
    }

    /// The nonzero cells in increasing offset order.
    pub fn cells(&self) -> &[(u64, f64)] {
        &self.cells
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Smallest and largest support offsets, if any.
    pub fn support_bounds(&self) -> Option<(u64, u64)> {
        match (self.cells.first(), self.cells.last()) {
            (Some(&(lo, _)), Some(&(hi, _))) => Some((lo, hi)),
            _ => None,
        }
    }

    /// `‖f‖₂² = Σ v² · 2^{-J}`.
    pub fn l2_norm_squared(&self) -> f64 {
        let length = self.cell_length();
        self.cells.iter().map(|&(_, v)| v * v * length).sum()
    }

    /// Pointwise evaluation, honoring the left-open right-closed cells.
    pub fn eval(&self, x: f64) -> f64 {
        let index = match scaled_index(x, self.grid_level) {
            Ok(i) if i >= 1 => i,
            _ => return 0.0,
        };
        let offset = match u64::try_from(index - 1) {
            Ok(k) => k,
            Err(_) => return 0.0,
        };
        match self.cells.binary_search_by_key(&offset, |&(k, _)| k) {
            Ok(i) => self.cells[i].1,
            Err(_) => 0.0,
        }
    }

    /// The same function expressed on a finer grid.
    pub fn refine_to(&self, level: i32) -> Result<Self> {
        if level < self.grid_level {
            return Err(Error::InvalidConfig(format!(
                "cannot refine from level {} to coarser level {level}",
                self.grid_level
            )));
        }
        let shift = (level - self.grid_level) as u32;
        if shift >= 64 && !self.cells.is_empty() {
            return Err(Error::RefinementBudget {
                needed: u128::MAX,
                budget: MAX_CELLS,
            });
        }
        let needed = (self.cells.len() as u128) << shift.min(64);
        if needed > MAX_CELLS as u128 {
            return Err(Error::RefinementBudget {
                needed,
                budget: MAX_CELLS,
            });
        }
        let mut cells = Vec::with_capacity(needed as usize);
        for &(k, v) in &self.cells {
            let base = k.checked_shl(shift).ok_or(Error::InvalidConfig(format!(
                "offset {k} overflows at refinement level {level}"
            )))?;
            for i in 0..(1u64 << shift) {
                cells.push((base + i, v));
            }
        }
        Ok(DyadicStepFunction {
            grid_level: level,
            cells,
        })
    }

    /// Both functions on their common refinement grid.
    pub fn common_refinement(f: &Self, g: &Self) -> Result<(Self, Self)> {
        let level = f.grid_level.max(g.grid_level);
        Ok((f.refine_to(level)?, g.refine_to(level)?))
    }

    /// Pointwise scaling by a constant.
    pub fn scale(&self, factor: f64) -> Self {
        let mut cells: Vec<_> = self.cells.iter().map(|&(k, v)| (k, v * factor)).collect();
        cells.retain(|&(_, v)| v != 0.0);
        DyadicStepFunction {
            grid_level: self.grid_level,
            cells,
        }
    }

    /// Pointwise absolute value.
    pub fn abs(&self) -> Self {
        DyadicStepFunction {
            grid_level: self.grid_level,
            cells: self.cells.iter().map(|&(k, v)| (k, v.abs())).collect(),
        }
    }

    /// Pointwise sum on the common refinement grid.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let (f, g) = Self::common_refinement(self, other)?;
        let mut cells = Vec::with_capacity(f.cells.len() + g.cells.len());
        let (mut i, mut j) = (0, 0);
        while i < f.cells.len() || j < g.cells.len() {
            let value = match (f.cells.get(i), g.cells.get(j)) {
                (Some(&(ka, va)), Some(&(kb, vb))) if ka == kb => {
                    i += 1;
                    j += 1;
                    (ka, va + vb)
                }
                (Some(&(ka, va)), Some(&(kb, _))) if ka < kb => {
                    i += 1;
                    (ka, va)
                }
                (Some(_), Some(&(kb, vb))) => {
                    j += 1;
                    (kb, vb)
                }
                (Some(&(ka, va)), None) => {
                    i += 1;
                    (ka, va)
                }
                (None, Some(&(kb, vb))) => {
                    j += 1;
                    (kb, vb)
                }
                (None, None) => unreachable!(),
            };
            if value.1 != 0.0 {
                cells.push(value);
            }
        }
        Ok(DyadicStepFunction {
            grid_level: f.grid_level,
            cells,
        })
    }

    /// Translation by a whole number of grid cells (`delta · 2^{-J}`).
    pub fn translate(&self, delta: i64) -> Result<Self> {
        let mut cells = Vec::with_capacity(self.cells.len());
        for &(k, v) in &self.cells {
            let shifted = (k as i128) + (delta as i128);
            let k = u64::try_from(shifted).map_err(|_| {
                Error::InvalidConfig(format!("translation by {delta} cells leaves (0, inf)"))
            })?;
            cells.push((k, v));
        }
        Ok(DyadicStepFunction {
            grid_level: self.grid_level,
            cells,
        })
    }
}

/// `⟨f, g⟩ = ∫ f·g`, summed exactly over the common refinement cells.
pub fn inner_product(f: &DyadicStepFunction, g: &DyadicStepFunction) -> Result<f64> {
    let (f, g) = DyadicStepFunction::common_refinement(f, g)?;
    let length = f.cell_length();
    let mut sum = 0.0;
    let (mut i, mut j) = (0, 0);
    let (fc, gc) = (f.cells(), g.cells());
    while i < fc.len() && j < gc.len() {
        match fc[i].0.cmp(&gc[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                sum += fc[i].1 * gc[j].1 * length;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(sum)
}

/// The Haar function indexed by `I`, evaluated at `x`: `2^{j/2}` on the left
/// half of `I`, `-2^{j/2}` on the right half, `0` outside.
pub fn haar_eval(interval: DyadicInterval, x: f64) -> f64 {
    let amplitude = (interval.level as f64 / 2.0).exp2();
    let (left, right) = interval.children();
    if left.contains(x) {
        amplitude
    } else if right.contains(x) {
        -amplitude
    } else {
        0.0
    }
}

/// The Haar function indexed by `I` as a two-cell step function.
pub fn haar_step(interval: DyadicInterval) -> Result<DyadicStepFunction> {
    let amplitude = (interval.level as f64 / 2.0).exp2();
    let base = interval
        .offset
        .checked_shl(1)
        .ok_or(Error::InvalidConfig(format!(
            "offset {} has no children within the grid",
            interval.offset
        )))?;
    Ok(DyadicStepFunction {
        grid_level: interval.level + 1,
        cells: vec![(base, amplitude), (base + 1, -amplitude)],
    })
}

/// A finite Haar expansion: a sorted map from dyadic intervals to
/// coefficients `c_I = ⟨φ, h_I⟩`.
///
/// Sorted storage gives deterministic iteration, hence bit-reproducible sums
/// and serialized output. Parseval holds exactly on the span:
/// `‖φ‖₂² = Σ c_I²`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "ExpansionRepr", into = "ExpansionRepr")]
pub struct HaarExpansion {
    coeffs: BTreeMap<DyadicInterval, f64>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionRepr {
    coeffs: Vec<CoeffRepr>,
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    j: i32,
    k: u64,
    c: f64,
}

impl TryFrom<ExpansionRepr> for HaarExpansion {
    type Error = Error;

    fn try_from(repr: ExpansionRepr) -> Result<Self> {
        HaarExpansion::from_coeffs(
            repr.coeffs
                .into_iter()
                .map(|c| (DyadicInterval::new(c.j, c.k), c.c))
                .collect(),
        )
    }
}

impl From<HaarExpansion> for ExpansionRepr {
    fn from(e: HaarExpansion) -> Self {
        ExpansionRepr {
            coeffs: e
                .coeffs
                .into_iter()
                .map(|(i, c)| CoeffRepr {
                    j: i.level,
                    k: i.offset,
                    c,
                })
                .collect(),
        }
    }
}

impl HaarExpansion {
    /// The empty expansion (the zero function).
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an expansion, rejecting duplicate indices and non-finite or
    /// zero coefficients (zeros are dropped).
    pub fn from_coeffs(coeffs: Vec<(DyadicInterval, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (interval, c) in coeffs {
            if !c.is_finite() {
                return Err(Error::NonFiniteValue(c));
            }
            if c == 0.0 {
                continue;
            }
            if map.insert(interval, c).is_some() {
                return Err(Error::InvalidConfig(format!(
                    "duplicate coefficient index (j={}, k={})",
                    interval.level, interval.offset
                )));
            }
        }
        Ok(HaarExpansion { coeffs: map })
    }

    /// A single Haar function with coefficient `c`.
    pub fn single(interval: DyadicInterval, c: f64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0.0 {
            coeffs.insert(interval, c);
        }
        HaarExpansion { coeffs }
    }

    /// Sets the coefficient for an index (zero removes it).
    pub fn insert(&mut self, interval: DyadicInterval, c: f64) {
        if c == 0.0 {
            self.coeffs.remove(&interval);
        } else {
            self.coeffs.insert(interval, c);
        }
    }

    pub fn get(&self, interval: DyadicInterval) -> f64 {
        self.coeffs.get(&interval).copied().unwrap_or(0.0)
    }

    /// Coefficients in (level, offset) order.
    pub fn coefficients(&self) -> impl Iterator<Item = (DyadicInterval, f64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ c_I²`, which equals `‖φ‖₂²` by Parseval.
    pub fn norm_squared(&self) -> f64 {
        self.coeffs.values().map(|c| c * c).sum()
    }

    /// Scales every coefficient.
    pub fn scale(&self, factor: f64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&i, &c) in &self.coeffs {
            if c * factor != 0.0 {
                coeffs.insert(i, c * factor);
            }
        }
        HaarExpansion { coeffs }
    }

    /// Evaluates `Σ c_I h_I` on the common refinement grid (one level below
    /// the finest coefficient). Exact up to float addition.
    pub fn synthesize(&self) -> Result<DyadicStepFunction> {
        let grid_level = match self.coeffs.keys().next_back() {
            Some(finest) => finest.level + 1,
            None => return Ok(DyadicStepFunction::zero(0)),
        };
        let mut total: u128 = 0;
        for i in self.coeffs.keys() {
            let span = grid_level - i.level;
            if span >= 64 {
                return Err(Error::RefinementBudget {
                    needed: u128::MAX,
                    budget: MAX_CELLS,
                });
            }
            total += 1u128 << span;
        }
        if total > MAX_CELLS as u128 {
            return Err(Error::RefinementBudget {
                needed: total,
                budget: MAX_CELLS,
            });
        }
        let mut acc: BTreeMap<u64, f64> = BTreeMap::new();
        for (interval, &c) in &self.coeffs {
            let shift = (grid_level - interval.level) as u32;
            let base = interval
                .offset
                .checked_shl(shift)
                .ok_or(Error::InvalidConfig(format!(
                    "offset {} overflows at grid level {grid_level}",
                    interval.offset
                )))?;
            let half = 1u64 << (shift - 1);
            let amplitude = c * (interval.level as f64 / 2.0).exp2();
            for i in 0..half {
                *acc.entry(base + i).or_insert(0.0) += amplitude;
                *acc.entry(base + half + i).or_insert(0.0) -= amplitude;
            }
        }
        let cells: Vec<_> = acc.into_iter().filter(|&(_, v)| v != 0.0).collect();
        Ok(DyadicStepFunction { grid_level, cells })
    }
}

/// Haar coefficients of a step function for all levels in
/// `level_range = [j_min, j_max]`, computed exactly from cell sums, together
/// with the residual norm `(‖f‖₂² - Σ c_I²)^{1/2}` of the mass outside the
/// computed span (for example coarse-scale content of indicators).
///
/// Coefficients at levels at or below the grid resolution (`j >= J`) vanish
/// identically and are skipped.
pub fn analyze(
    f: &DyadicStepFunction,
    level_range: (i32, i32),
) -> Result<(HaarExpansion, f64)> {
    let (j_min, j_max) = level_range;
    if j_min > j_max {
        return Err(Error::InvalidConfig(format!(
            "empty level range [{j_min}, {j_max}]"
        )));
    }
    let grid = f.grid_level();
    let length = f.cell_length();
    let mut expansion = HaarExpansion::new();
    for j in j_min..=j_max.min(grid - 1) {
        let shift = grid - j; // cells per wavelet: 2^shift
        let amplitude = (j as f64 / 2.0).exp2();
        let mut acc: BTreeMap<u64, f64> = BTreeMap::new();
        for &(k, v) in f.cells() {
            let index = if shift >= 64 { 0 } else { k >> shift };
            // The wavelet is positive on its left half, negative on its
            // right; the half is the bit just above the in-wavelet position.
            let negative = shift <= 64 && (k >> (shift - 1)) & 1 == 1;
            let mass = v * length * amplitude;
            *acc.entry(index).or_insert(0.0) += if negative { -mass } else { mass };
        }
        for (k, c) in acc {
            if c != 0.0 {
                expansion.insert(DyadicInterval::new(j, k), c);
            }
        }
    }
    let residual_sq = (f.l2_norm_squared() - expansion.norm_squared()).max(0.0);
    Ok((expansion, residual_sq.sqrt()))
}

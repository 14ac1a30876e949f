//! Exact arithmetic for dyadic intervals and the dyadic ultrametric on the
//! half-line.
//!
//! A dyadic interval at level `j` with offset `k` is `(k·2^{-j}, (k+1)·2^{-j}]`
//! (left-open, right-closed). Any two dyadic intervals are disjoint or nested,
//! so the grid forms an infinite binary tree. The dyadic distance between two
//! points of `(0, ∞)` is the measure of the smallest dyadic interval containing
//! both; it is an ultrametric dominating `|x - y|`, and its level sets have
//! explicit measures, which is what makes every integral in this crate a closed
//! form.
//!
//! All membership and distance computations run on exact scaled integers:
//! every finite `f64` is a dyadic rational, so snapping inputs to a fixed
//! resolution level (52 binary digits by default) turns common-ancestor
//! searches into shared-prefix arithmetic with no rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default snap resolution: inputs are located on the level-52 grid, the
/// finest level at which every normal `f64` in the unit interval has a
/// distinct cell.
pub const DEFAULT_RESOLUTION: i32 = 52;

/// Largest left-shift allowed when scaling a value to grid coordinates;
/// beyond this the 128-bit scaled index would overflow.
const MAX_SHIFT: i32 = 74;

/// A dyadic interval `(k·2^{-j}, (k+1)·2^{-j}]`.
///
/// `level` may be negative (intervals larger than 1). Offsets are
/// non-negative, so every interval sits inside `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DyadicInterval {
    /// Scale index `j`; the measure is `2^{-j}`.
    #[serde(rename = "j")]
    pub level: i32,
    /// Position index `k`.
    #[serde(rename = "k")]
    pub offset: u64,
}

impl DyadicInterval {
    /// The interval `(k·2^{-j}, (k+1)·2^{-j}]`.
    pub fn new(level: i32, offset: u64) -> Self {
        DyadicInterval { level, offset }
    }

    /// Lebesgue measure `2^{-j}`.
    pub fn measure(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    /// Left endpoint `k·2^{-j}` (excluded from the interval).
    pub fn left(&self) -> f64 {
        self.offset as f64 * self.measure()
    }

    /// Right endpoint `(k+1)·2^{-j}` (included in the interval).
    pub fn right(&self) -> f64 {
        (self.offset + 1) as f64 * self.measure()
    }

    /// The level-`j-1` interval containing this one.
    pub fn parent(&self) -> Self {
        DyadicInterval::new(self.level - 1, self.offset >> 1)
    }

    /// The two halves at level `j+1`, left first.
    pub fn children(&self) -> (Self, Self) {
        let left = DyadicInterval::new(self.level + 1, self.offset << 1);
        let right = DyadicInterval::new(self.level + 1, (self.offset << 1) | 1);
        (left, right)
    }

    /// The other child of the parent.
    pub fn sibling(&self) -> Self {
        DyadicInterval::new(self.level, self.offset ^ 1)
    }

    /// Whether this interval is the left half of its parent.
    pub fn is_left_child(&self) -> bool {
        self.offset & 1 == 0
    }

    /// The ancestor at a coarser level `target <= level`.
    pub fn ancestor_at(&self, target: i32) -> Self {
        debug_assert!(target <= self.level);
        let shift = self.level - target;
        let offset = if shift >= 64 { 0 } else { self.offset >> shift };
        DyadicInterval::new(target, offset)
    }

    /// Exact membership test: `k·2^{-j} < x <= (k+1)·2^{-j}`.
    ///
    /// The comparison runs on exact dyadic rationals, so boundary points
    /// resolve correctly no matter how close the floats are.
    pub fn contains(&self, x: f64) -> bool {
        let x = match DyadicRational::from_f64(x) {
            Ok(r) => r,
            Err(_) => return false, // negative, NaN, or infinite
        };
        let left = DyadicRational::from_parts(self.offset as u128, self.level);
        let right = DyadicRational::from_parts(self.offset as u128 + 1, self.level);
        left < x && x <= right
    }
}

impl std::fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}]", self.left(), self.right())
    }
}

/// The smallest dyadic interval containing both arguments.
pub fn common_ancestor(a: DyadicInterval, b: DyadicInterval) -> DyadicInterval {
    let level = a.level.min(b.level);
    let a = a.ancestor_at(level);
    let b = b.ancestor_at(level);
    let bits = 64 - (a.offset ^ b.offset).leading_zeros() as i32;
    DyadicInterval::new(level - bits, a.offset >> bits)
}

/// A non-negative dyadic rational `n·2^{-e}` in canonical form (`n` odd, or
/// `n = 0` with `e = 0`).
///
/// Every finite non-negative `f64` converts exactly, which is what lets
/// interval membership avoid floating-point comparisons altogether.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: u128,
    exponent: i32,
}

impl DyadicRational {
    /// The value zero.
    pub fn zero() -> Self {
        DyadicRational {
            numerator: 0,
            exponent: 0,
        }
    }

    /// Canonical form of `n·2^{-e}`.
    pub fn from_parts(numerator: u128, exponent: i32) -> Self {
        if numerator == 0 {
            return Self::zero();
        }
        let tz = numerator.trailing_zeros() as i32;
        DyadicRational {
            numerator: numerator >> tz,
            exponent: exponent - tz,
        }
    }

    /// Exact conversion of a finite non-negative `f64`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if x == 0.0 {
            return Ok(Self::zero());
        }
        if !x.is_finite() || x < 0.0 {
            return Err(Error::NotDyadic(x));
        }
        let bits = x.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i32;
        let fraction = (bits & ((1u64 << 52) - 1)) as u128;
        let (numerator, exponent) = if biased == 0 {
            (fraction, 1074) // subnormal: value = fraction * 2^-1074
        } else {
            ((1u128 << 52) | fraction, 1075 - biased)
        };
        Ok(Self::from_parts(numerator, exponent))
    }

    /// Numerator of the canonical form.
    pub fn numerator(&self) -> u128 {
        self.numerator
    }

    /// Exponent of the canonical form; the value is `numerator·2^{-exponent}`.
    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Nearest `f64` (exact whenever the numerator fits in 53 bits).
    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 * (-(self.exponent as f64)).exp2()
    }

    /// `floor(log2(value))`, or `None` for zero.
    fn floor_log2(&self) -> Option<i32> {
        if self.numerator == 0 {
            return None;
        }
        Some(127 - self.numerator.leading_zeros() as i32 - self.exponent)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // Different binary magnitudes decide immediately; equal magnitudes
        // align the numerators with a shift that cannot overflow because the
        // bit lengths then differ by exactly the exponent gap.
        match self.floor_log2().cmp(&other.floor_log2()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let d = other.exponent - self.exponent;
        if d >= 0 {
            (self.numerator << d).cmp(&other.numerator)
        } else {
            self.numerator.cmp(&(other.numerator << -d))
        }
    }
}

impl std::fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*2^-{}", self.numerator, self.exponent)
    }
}

/// `ceil(x·2^level)` as an exact 128-bit integer, for any finite `x`.
pub(crate) fn scaled_index(x: f64, level: i32) -> Result<i128> {
    if !x.is_finite() {
        return Err(Error::NotDyadic(x));
    }
    if x == 0.0 {
        return Ok(0);
    }
    let magnitude = DyadicRational::from_f64(x.abs())?;
    let shift = level - magnitude.exponent();
    let (floor, exact) = if shift >= 0 {
        if shift > MAX_SHIFT {
            return Err(Error::ResolutionOverflow {
                value: x,
                resolution: level,
            });
        }
        (magnitude.numerator() << shift, true)
    } else if -shift >= 128 {
        (0, false)
    } else {
        let q = magnitude.numerator() >> -shift;
        let exact = magnitude.numerator() & ((1u128 << -shift) - 1) == 0;
        (q, exact)
    };
    let floor = floor as i128;
    if x > 0.0 {
        Ok(if exact { floor } else { floor + 1 })
    } else {
        Ok(-floor)
    }
}

/// A translated dyadic grid: the standard grid shifted to start at `x0`.
///
/// Distances and cells are computed for points strictly to the right of the
/// origin by translating into origin-relative coordinates (exactly, since the
/// origin is itself a dyadic rational) and reusing the integer machinery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOrigin {
    x0: f64,
    resolution: i32,
    x0_scaled: i128,
}

impl GridOrigin {
    /// Grid shifted to `x0`, snapping points at the default resolution.
    pub fn new(x0: f64) -> Result<Self> {
        Self::with_resolution(x0, DEFAULT_RESOLUTION)
    }

    /// Grid shifted to `x0` with an explicit snap resolution level.
    pub fn with_resolution(x0: f64, resolution: i32) -> Result<Self> {
        if !x0.is_finite() {
            return Err(Error::NotDyadic(x0));
        }
        let x0_scaled = scaled_index(x0, resolution)?;
        Ok(GridOrigin {
            x0,
            resolution,
            x0_scaled,
        })
    }

    /// The standard (unshifted) grid.
    pub fn standard() -> Self {
        Self::new(0.0).expect("origin 0 is dyadic")
    }

    pub fn origin(&self) -> f64 {
        self.x0
    }

    pub fn resolution(&self) -> i32 {
        self.resolution
    }

    /// One-based index of the resolution cell holding `x`, relative to the
    /// origin; positive exactly when `x` lies to the right of the origin.
    fn relative_index(&self, x: f64) -> Result<i128> {
        Ok(scaled_index(x, self.resolution)? - self.x0_scaled)
    }

    fn require_right_of_origin(&self, x: f64) -> Result<i128> {
        let idx = self.relative_index(x)?;
        if idx < 1 {
            return Err(Error::PointBelowOrigin {
                point: x,
                origin: self.x0,
            });
        }
        Ok(idx)
    }

    /// The grid cell of this origin containing `x` at the given level.
    ///
    /// The returned interval is expressed in origin-relative coordinates:
    /// offset `k` means `(x0 + k·2^{-j}, x0 + (k+1)·2^{-j}]`.
    pub fn cell_at(&self, x: f64, level: i32) -> Result<DyadicInterval> {
        if level > self.resolution {
            return Err(Error::InvalidConfig(format!(
                "level {level} is finer than the grid resolution {}",
                self.resolution
            )));
        }
        let idx = self.require_right_of_origin(x)?;
        let shift = self.resolution - level;
        let cell = if shift >= 128 {
            0
        } else {
            ((idx - 1) as u128) >> shift
        };
        let offset = u64::try_from(cell).map_err(|_| Error::ResolutionOverflow {
            value: x,
            resolution: level,
        })?;
        Ok(DyadicInterval::new(level, offset))
    }

    /// The dyadic distance between `x` and `y` on this grid: the measure of
    /// the smallest grid interval containing both, `0` for equal points.
    pub fn distance(&self, x: f64, y: f64) -> Result<f64> {
        let u = self.require_right_of_origin(x)?;
        let v = self.require_right_of_origin(y)?;
        if u == v {
            // Same resolution cell: distinct points are below the snap scale.
            if x == y {
                return Ok(0.0);
            }
            return Ok((-(self.resolution as f64)).exp2());
        }
        let diff = ((u - 1) as u128) ^ ((v - 1) as u128);
        let bits = 128 - diff.leading_zeros() as i32;
        Ok(((bits - self.resolution) as f64).exp2())
    }
}

impl Default for GridOrigin {
    fn default() -> Self {
        Self::standard()
    }
}

/// Dyadic distance between two points right of the origin; see
/// [`GridOrigin::distance`].
pub fn dyadic_distance(x: f64, y: f64, origin: &GridOrigin) -> Result<f64> {
    origin.distance(x, y)
}

/// The dyadic ball `{y : δ(x, y) < r}`: the largest grid interval containing
/// `x` with measure strictly less than `r` (its parent has measure `>= r`).
pub fn dyadic_ball(x: f64, r: f64, origin: &GridOrigin) -> Result<DyadicInterval> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "ball radius must be positive and finite, got {r}"
        )));
    }
    let radius = DyadicRational::from_f64(r)?;
    // Level of the largest measure 2^{-j} strictly below r. For r = 2^p the
    // strict inequality forces one level finer; otherwise floor(log2 r) does.
    let level = if radius.numerator() == 1 {
        radius.exponent() + 1
    } else {
        let floor_log2 = 127 - radius.numerator().leading_zeros() as i32 - radius.exponent();
        -floor_log2
    };
    if level > origin.resolution() {
        return Err(Error::RadiusBelowResolution(r));
    }
    origin.cell_at(x, level)
}

/// Measure of the level set `{y : δ(x, y) = 2^k·|I|}` for `x` in the interval:
/// `2^{k-1}·|I|` for every integer `k` (inner shells `k <= 0` partition the
/// interval; outer shells `k >= 1` are the sibling halves of the ancestors).
pub fn level_set_measure(interval: DyadicInterval, k: i32) -> f64 {
    ((k - 1 - interval.level) as f64).exp2()
}

/// Closed form of the inner integral `∫_I δ(x, y)^{α-1} dy` for `x ∈ I`:
/// `|I|^α / (2(1 - 2^{-α}))`, independent of the position of `x`.
pub fn integral_ball_power(alpha: f64, interval: DyadicInterval) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::DivergentIntegral {
            exponent: alpha,
            case: "ball",
        });
    }
    Ok(interval.measure().powf(alpha) / (2.0 * (1.0 - (-alpha).exp2())))
}

/// Closed form of the outer integral `∫_{y ∉ I} δ(x, y)^{-α-1} dy` for
/// `x ∈ I`: `2^{-α}·|I|^{-α} / (2(1 - 2^{-α}))`.
pub fn integral_complement_power(alpha: f64, interval: DyadicInterval) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::DivergentIntegral {
            exponent: alpha,
            case: "complement",
        });
    }
    Ok((-alpha).exp2() * interval.measure().powf(-alpha) / (2.0 * (1.0 - (-alpha).exp2())))
}

/// The three divergent kernel regimes the form evaluators must refuse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceCase {
    /// `∫_I δ^{-α-1} dy` with `α > 0`: inner shells blow up.
    BallInversePower,
    /// `∫_{y ∉ I} δ^{α-1} dy` with `α > 0`: outer shells blow up.
    ComplementPositivePower,
    /// The borderline exponent `α = 0` on either side.
    Logarithmic,
}

/// All three out-of-range regimes diverge; this is the documentation-level
/// guard the form evaluators lean on when rejecting exponents.
pub fn divergence_witness(case: DivergenceCase) -> bool {
    match case {
        DivergenceCase::BallInversePower => true,
        DivergenceCase::ComplementPositivePower => true,
        DivergenceCase::Logarithmic => true,
    }
}

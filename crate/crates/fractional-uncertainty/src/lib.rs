//! Fractional uncertainty forms on the dyadic half-line and the real line.
//!
//! For an exponent `0 < s < 1/2` this crate computes two quadratic forms of
//! a step function — a fractional *position* form with kernel
//! `distance^{2s-1}` and a fractional *energy* form with kernel
//! `distance^{-1-2s}` — for two notions of distance: the dyadic ultrametric
//! `δ` (the measure of the smallest dyadic interval containing both points)
//! and the Euclidean `|x - y|`. Their product obeys an uncertainty
//! inequality with the sharp dyadic constant `γ(s) = γ₁(s) γ₂(s)`:
//!
//! * on the dyadic side, `Q_s^δ(φ) · E_s^δ(φ) ≥ γ(s) ‖φ‖₂⁴` for finite
//!   Haar expansions, with equality on single Haar functions;
//! * on the Euclidean side, `𝓠_s(|φ|) · 𝓔_s(φ) ≥ γ(s)` for normalized
//!   step functions, obtained by dominating the Euclidean kernels with a
//!   shifted dyadic grid.
//!
//! Everything quantitative is computed two independent ways. Closed forms
//! and exact tree collapses live in [`forms_dyadic`] and [`forms_euclid`];
//! series, stratified Monte Carlo, and adaptive quadrature estimators with
//! error bounds live in [`oracle`]; [`harness`] runs the inequalities on
//! seeded random inputs and [`cli`] exposes the whole thing as a command
//! line tool.
//!
//! ```
//! use fractional_uncertainty::dyadic::DyadicInterval;
//! use fractional_uncertainty::forms_dyadic::{FormParameter, Method};
//! use fractional_uncertainty::haar::HaarExpansion;
//! use fractional_uncertainty::harness::dyadic_uncertainty;
//!
//! let s = FormParameter::new(0.25)?;
//! let e = HaarExpansion::single(DyadicInterval::new(0, 0), 1.0);
//! let report = dyadic_uncertainty(&e, s, Method::Spectral)?;
//! assert_eq!(report.slack, 0.0); // single Haar functions achieve equality
//! # Ok::<(), fractional_uncertainty::Error>(())
//! ```

pub mod cli;
pub mod dyadic;
pub mod error;
pub mod forms_dyadic;
pub mod forms_euclid;
pub mod haar;
pub mod harness;
pub mod oracle;

pub use error::{Error, Result};

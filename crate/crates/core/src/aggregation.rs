//! Generalized (Hölder) power means.
//!
//! | order p | mean        |
//! |---------|-------------|
//! | −∞      | minimum     |
//! | −1      | harmonic    |
//! | 0       | geometric   |
//! | 1       | arithmetic  |
//! | 2       | quadratic   |
//! | +∞      | maximum     |

use std::fmt;

use crate::error::{Error, Result};

/// Orders with magnitude above this are evaluated as the matching extremum.
pub const INFINITE_ORDER_THRESHOLD: f64 = 1e6;

/// The order `p` of a power mean, on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PowerMeanOrder(f64);

impl PowerMeanOrder {
    pub const MIN: PowerMeanOrder = PowerMeanOrder(f64::NEG_INFINITY);
    pub const HARMONIC: PowerMeanOrder = PowerMeanOrder(-1.0);
    pub const GEOMETRIC: PowerMeanOrder = PowerMeanOrder(0.0);
    pub const ARITHMETIC: PowerMeanOrder = PowerMeanOrder(1.0);
    pub const QUADRATIC: PowerMeanOrder = PowerMeanOrder(2.0);
    pub const MAX: PowerMeanOrder = PowerMeanOrder(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() {
            Err(Error::InvalidOrder)
        } else {
            Ok(PowerMeanOrder(p))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for PowerMeanOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{}", self.0)
    }
}

/// Computes the power mean `M_p(values)`.
///
/// All values must be strictly positive, whatever the order.
pub fn power_mean(values: &[f64], p: PowerMeanOrder) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("power mean of an empty sequence".into()));
    }
    if let Some(&bad) = values.iter().find(|&&v| !(v > 0.0) || v.is_nan()) {
        return Err(Error::NonPositiveInput { value: bad });
    }
    Ok(power_mean_unchecked(values, p.0))
}

/// Power mean without validation; callers guarantee a non-empty slice of
/// positive finite values.
pub(crate) fn power_mean_unchecked(values: &[f64], p: f64) -> f64 {
    let n = values.len() as f64;
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = if lo == hi {
        return lo;
    } else if p > INFINITE_ORDER_THRESHOLD {
        return hi;
    } else if p < -INFINITE_ORDER_THRESHOLD {
        return lo;
    } else if p == 1.0 {
        values.iter().sum::<f64>() / n
    } else if p == -1.0 {
        n / values.iter().map(|v| v.recip()).sum::<f64>()
    } else if p == 0.0 {
        (values.iter().map(|v| v.ln()).sum::<f64>() / n).exp()
    } else {
        // log-sum-exp over p·ln(x), shifted by the largest term
        let scaled: Vec<f64> = values.iter().map(|v| p * v.ln()).collect();
        let shift = scaled.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = scaled.iter().map(|s| (s - shift).exp()).sum();
        ((shift + (sum / n).ln()) / p).exp()
    };
    // rounding can push the result a few ulps outside [min, max]
    mean.clamp(lo, hi)
}

pub fn arithmetic_mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("mean of an empty sequence".into()));
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

//! Illumination and reflectance estimation.
//!
//! Illumination comes from two regulators. The first boosts dark pixels
//! with a softplus-shaped weight and smooths the result with the mean
//! filter. The second maps that output into `[1, 2]`, brightest pixels to 1
//! and darkest to 2, with a curvature set by `beta^2`, then shifts it by a
//! correction factor `theta = |max(A) - max(A)^beta|`.
//!
//! Reflectance is the brightness channel raised to a global exponent
//! `U >= 1`, so it never exceeds the input.
//!
//! `A` is used as-is (not renormalized) when computing `theta`;
//! normalizing it would pin `max(A) = 1` and make the correction vanish.

use crate::error::{Error, Result};
use crate::filter::box_filter;
use crate::image::ChannelImage;
use crate::math;
use crate::sum::CompensatedSum;

/// Output of the two illumination regulators.
#[derive(Debug, Clone, PartialEq)]
pub struct IlluminationResult {
    /// First regulator output.
    pub a: ChannelImage,
    /// Illumination map, within `[1 + theta, 2 + theta]`.
    pub m_e: ChannelImage,
    /// Correction factor.
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectanceResult {
    /// `ic^u`, pointwise.
    pub n_e: ChannelImage,
    pub u: f64,
}

/// Dark-pixel weight `(1 + ln(1 + exp(max - v)))^4`.
#[inline]
pub fn enhancement_weight(max: f64, v: f64) -> f64 {
    math::powi4(1.0 + math::ln_1p(math::exp(max - v)))
}

/// First regulator: weights `ib` per pixel, then mean-filters the product.
pub fn regulator_one(ib: &ChannelImage, kernel: usize) -> Result<ChannelImage> {
    let max = ib.max();
    let weighted = ib.map(|v| enhancement_weight(max, v) * v);
    box_filter(&weighted, kernel)
}

/// Second regulator. Returns the illumination map and the correction factor.
pub fn regulator_two(a: &ChannelImage, beta: f64) -> Result<(ChannelImage, f64)> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidConfig("beta must be finite and positive"));
    }
    let max = a.max();
    if !(max > 0.0) {
        return Err(Error::DegenerateInput("first regulator output is all zero"));
    }
    // max(A^beta) == max(A)^beta for non-negative A.
    let theta = (max - math::powf(max, beta)).abs();
    let curve = beta * beta;
    let m_e = a.map(|v| {
        let r = ((max - v) / max).clamp(0.0, 1.0);
        let bracket = math::log10(10.0 - 9.0 * r).abs();
        2.0 - math::powf(bracket, curve) + theta
    });
    Ok((m_e, theta))
}

/// Runs both regulators on the brightness channel.
pub fn estimate_illumination(
    ib: &ChannelImage,
    kernel: usize,
    beta: f64,
) -> Result<IlluminationResult> {
    let a = regulator_one(ib, kernel)?;
    let (m_e, theta) = regulator_two(&a, beta)?;
    Ok(IlluminationResult { a, m_e, theta })
}

/// Reflectance `ic^U` with `U = [mean((ib^beta + 1)^gamma)]^(1/beta)`,
/// lifted to at least 1.
pub fn reflectance(
    ic: &ChannelImage,
    ib: &ChannelImage,
    beta: f64,
    gamma: f64,
) -> Result<ReflectanceResult> {
    ic.ensure_same_dims(ib)?;
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidConfig("beta must be finite and positive"));
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidConfig("gamma must be finite and positive"));
    }
    let mut acc = CompensatedSum::new();
    for &v in ib.as_slice() {
        acc.add(math::powf(math::powf(v.max(0.0), beta) + 1.0, gamma));
    }
    let mean = acc.value() / ib.len() as f64;
    let u = math::powf(mean, 1.0 / beta).max(1.0);
    let n_e = if u == 1.0 {
        ic.clone()
    } else {
        ic.map(|v| math::powf(v.max(0.0), u))
    };
    Ok(ReflectanceResult { n_e, u })
}

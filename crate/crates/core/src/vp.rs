//! Bright/dark perception statistics and the gains derived from them.
//!
//! The brightness channel is split at a threshold `tau` into a bright part
//! (samples strictly above `tau`) and a dark part (positive samples at or
//! below it). Zero samples belong to neither and are counted separately.
//! Both parts are summarized by an energy (`p`, the normalized sum of their
//! samples) and an area ratio (`q`, the normalized pixel count), where the
//! normalizer is the number of nonzero pixels.

use crate::error::{Error, Result};
use crate::image::ChannelImage;
use crate::math;
use crate::sum::CompensatedSum;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Floor applied to `p` and `q` before they enter a logarithm.
pub const DEFAULT_EPSILON: f64 = 1e-6;

/// How the bright/dark split value is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ThresholdPolicy {
    /// Mean of the strictly positive samples.
    #[default]
    MeanOfNonzero,
    /// A fixed split value.
    Fixed(f64),
}

impl ThresholdPolicy {
    /// Split value for `samples`, or `None` if none of them is positive.
    pub fn resolve(&self, samples: &[f64]) -> Option<f64> {
        let mut acc = CompensatedSum::new();
        let mut n = 0usize;
        for &v in samples {
            if v > 0.0 {
                acc.add(v);
                n += 1;
            }
        }
        if n == 0 {
            return None;
        }
        Some(match *self {
            ThresholdPolicy::MeanOfNonzero => acc.value() / n as f64,
            ThresholdPolicy::Fixed(t) => t,
        })
    }
}

/// Bright and dark parts of a brightness channel.
#[derive(Debug, Clone, PartialEq)]
pub struct BrightDarkSplit {
    /// Samples above `tau`, zero elsewhere.
    pub bright: ChannelImage,
    /// Positive samples at or below `tau`, zero elsewhere.
    pub dark: ChannelImage,
    pub tau: f64,
}

pub fn split_bright_dark(ib: &ChannelImage, policy: ThresholdPolicy) -> Result<BrightDarkSplit> {
    let tau = policy
        .resolve(ib.as_slice())
        .ok_or(Error::DegenerateInput("brightness channel is all zero"))?;
    let bright = ib.map(|v| if v > tau { v } else { 0.0 });
    let dark = ib.map(|v| if v > 0.0 && v <= tau { v } else { 0.0 });
    Ok(BrightDarkSplit { bright, dark, tau })
}

/// Quantified perception record for one brightness channel.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct VpStats {
    /// Sum of bright samples.
    pub phi1: f64,
    /// Sum of dark samples.
    pub phi2: f64,
    /// Number of bright pixels.
    pub count1: usize,
    /// Number of dark pixels.
    pub count2: usize,
    /// Number of zero pixels.
    pub zero_count: usize,
    /// Bright energy, clamped to `[epsilon, 1]`.
    pub p1: f64,
    /// Dark energy, clamped to `[epsilon, 1]`.
    pub p2: f64,
    /// Bright area ratio, clamped to `[epsilon, 1]`.
    pub q1: f64,
    /// Dark area ratio, clamped to `[epsilon, 1]`.
    pub q2: f64,
    /// Bright/dark split value.
    pub tau: f64,
}

impl VpStats {
    pub fn total(&self) -> usize {
        self.count1 + self.count2 + self.zero_count
    }
}

/// Computes [`VpStats`] in a single pass over `ib`.
pub fn vp_stats(ib: &ChannelImage, policy: ThresholdPolicy, epsilon: f64) -> Result<VpStats> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidConfig("epsilon must be in (0, 1]"));
    }
    let tau = policy
        .resolve(ib.as_slice())
        .ok_or(Error::DegenerateInput("brightness channel is all zero"))?;

    let mut phi1 = CompensatedSum::new();
    let mut phi2 = CompensatedSum::new();
    let (mut count1, mut count2, mut zero_count) = (0usize, 0usize, 0usize);
    for &v in ib.as_slice() {
        if v <= 0.0 {
            zero_count += 1;
        } else if v > tau {
            phi1.add(v);
            count1 += 1;
        } else {
            phi2.add(v);
            count2 += 1;
        }
    }
    let nonzero = ib.len() - zero_count;
    if nonzero == 0 {
        return Err(Error::DegenerateInput("no nonzero pixels"));
    }
    let n = nonzero as f64;
    let floor = |x: f64| x.clamp(epsilon, 1.0);
    let (phi1, phi2) = (phi1.value(), phi2.value());
    Ok(VpStats {
        phi1,
        phi2,
        count1,
        count2,
        zero_count,
        p1: floor(phi1 / n),
        p2: floor(phi2 / n),
        q1: floor(count1 as f64 / n),
        q2: floor(count2 as f64 / n),
        tau,
    })
}

/// Dark-imbalance gain, `sqrt(exp(sqrt(ln(1/p2)) - ln(1/q2)))`.
///
/// Equivalently `sqrt(q2 * exp(sqrt(-ln p2)))`: it shrinks as the dark
/// energy grows and grows with the dark area ratio.
pub fn beta(stats: &VpStats) -> f64 {
    let energy = math::sqrt(math::ln(1.0 / stats.p2));
    let area = math::ln(1.0 / stats.q2);
    math::sqrt(math::exp(energy - area))
}

/// Bright energy when bright pixels cover more area than dark ones, else dark energy.
pub fn gamma(stats: &VpStats) -> f64 {
    if stats.q1 > stats.q2 {
        stats.p1
    } else {
        stats.p2
    }
}

/// Target cycle count, `max(1, floor((beta^2)^sqrt(beta)))`.
pub fn adaptive_threshold(beta: f64) -> u32 {
    let t = math::floor(math::powf(beta * beta, math::sqrt(beta)));
    // `as` saturates; NaN maps to 0 and is lifted by the floor of 1.
    (t as u32).max(1)
}

/// The gains a cycle derives from its statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Gains {
    pub beta: f64,
    pub gamma: f64,
    pub t: u32,
}

pub fn gains(stats: &VpStats) -> Gains {
    let beta = beta(stats);
    Gains {
        beta,
        gamma: gamma(stats),
        t: adaptive_threshold(beta),
    }
}

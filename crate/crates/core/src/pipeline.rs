//! End-to-end enhancement: preprocessing, one reconstruction cycle, and the
//! cycle loop with its adaptive stop rule.
//!
//! A cycle works on the HSI intensity channel only. Hue and saturation of
//! the cycle's input are carried through unchanged; the new intensity is
//! `clamp(N_e * M_e, 0, 1)` (reflectance times illumination).
//!
//! [`enhance`] repeats cycles, feeding each output back in as the next
//! input, until the cycle number `K` reaches the threshold `T` computed from
//! that same cycle's statistics, until `K = k_max`, or until a forced cycle
//! count is reached. `T` is recomputed every cycle and may drop below `K`,
//! so the test is `K >= T` rather than equality.

use alloc::vec::Vec;

use crate::color::{hsi_to_rgb, rgb_to_hsi};
use crate::error::{Error, Result};
use crate::estimation::{
    estimate_illumination, reflectance, IlluminationResult, ReflectanceResult,
};
use crate::filter::box_filter;
use crate::image::{ChannelImage, HsiImage, RgbImage};
use crate::vp::{gains, vp_stats, Gains, ThresholdPolicy, VpStats, DEFAULT_EPSILON};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// How the base layer is formed from the smoothed channel and the detail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Eq2Mode {
    /// `I_b = clamp(smooth - I_d, 0, 1)`.
    #[default]
    Literal,
    /// `I_b = I_c - I_d`, i.e. `min(I_c, smooth)`.
    Prose,
}

/// Tunables for [`enhance`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct EnhanceConfig {
    /// Mean filter side, odd.
    pub kernel: usize,
    /// Floor for the energies and area ratios.
    pub epsilon: f64,
    /// Hard cap on the number of cycles.
    pub k_max: u32,
    pub tau_policy: ThresholdPolicy,
    /// Run exactly this many cycles, ignoring the adaptive threshold.
    pub force_k: Option<u32>,
    pub eq2_mode: Eq2Mode,
}

impl Default for EnhanceConfig {
    fn default() -> Self {
        Self {
            kernel: 3,
            epsilon: DEFAULT_EPSILON,
            k_max: 8,
            tau_policy: ThresholdPolicy::MeanOfNonzero,
            force_k: None,
            eq2_mode: Eq2Mode::Literal,
        }
    }
}

impl EnhanceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.kernel == 0 || self.kernel.is_multiple_of(2) {
            return Err(Error::InvalidKernel(self.kernel));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1e-2) {
            return Err(Error::InvalidConfig("epsilon must be in (0, 0.01]"));
        }
        if self.k_max == 0 {
            return Err(Error::InvalidConfig("k_max must be at least 1"));
        }
        match self.force_k {
            Some(0) => {
                return Err(Error::InvalidConfig(
                    "forced cycle count must be at least 1",
                ))
            }
            Some(k) if k > self.k_max => {
                return Err(Error::InvalidConfig("forced cycle count exceeds k_max"))
            }
            _ => {}
        }
        if let ThresholdPolicy::Fixed(t) = self.tau_policy {
            if !t.is_finite() {
                return Err(Error::InvalidConfig("fixed threshold must be finite"));
            }
        }
        Ok(())
    }
}

/// Splits the brightness channel into a base layer and a positive detail
/// layer. Returns `(I_b, I_d)`.
pub fn preprocess(
    ic: &ChannelImage,
    kernel: usize,
    mode: Eq2Mode,
) -> Result<(ChannelImage, ChannelImage)> {
    let smooth = box_filter(ic, kernel)?;
    let detail = ic.zip_map(&smooth, |c, s| (c - s).max(0.0))?;
    let base = match mode {
        Eq2Mode::Literal => smooth.zip_map(&detail, |s, d| (s - d).clamp(0.0, 1.0))?,
        Eq2Mode::Prose => ic.zip_map(&detail, |c, d| (c - d).clamp(0.0, 1.0))?,
    };
    Ok((base, detail))
}

/// Mean, min and max of one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ChannelSummary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl ChannelSummary {
    pub fn of(img: &ChannelImage) -> Self {
        Self {
            mean: img.mean(),
            min: img.min(),
            max: img.max(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CycleStats {
    pub ic: ChannelSummary,
    pub ib: ChannelSummary,
    pub m_e: ChannelSummary,
    pub n_e: ChannelSummary,
    pub i_e: ChannelSummary,
}

/// Diagnostics for one cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CycleRecord {
    /// 1-based cycle number.
    pub k: u32,
    /// Adaptive threshold from this cycle's statistics.
    pub t: u32,
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub u: f64,
    pub tau: f64,
    pub stats: CycleStats,
    pub vp: VpStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StopReason {
    /// `K >= T`.
    Comparator,
    /// `K = k_max`.
    Cap,
    /// `K` reached the forced cycle count.
    Forced,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Comparator => "comparator",
            StopReason::Cap => "cap",
            StopReason::Forced => "forced",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CycleTrace {
    pub stop_reason: StopReason,
    pub cycles: Vec<CycleRecord>,
}

/// Every intermediate of one cycle.
#[derive(Debug, Clone)]
pub struct CycleOutput {
    /// Enhanced image, `F_e`.
    pub output: RgbImage,
    /// HSI form of the cycle's input.
    pub hsi: HsiImage,
    pub ic: ChannelImage,
    pub ib: ChannelImage,
    pub id: ChannelImage,
    pub stats: VpStats,
    pub gains: Gains,
    pub illumination: IlluminationResult,
    pub reflectance: ReflectanceResult,
    /// New intensity channel, clamped to `[0, 1]`.
    pub ie: ChannelImage,
}

impl CycleOutput {
    pub fn record(&self, k: u32) -> CycleRecord {
        CycleRecord {
            k,
            t: self.gains.t,
            beta: self.gains.beta,
            gamma: self.gains.gamma,
            theta: self.illumination.theta,
            u: self.reflectance.u,
            tau: self.stats.tau,
            stats: CycleStats {
                ic: ChannelSummary::of(&self.ic),
                ib: ChannelSummary::of(&self.ib),
                m_e: ChannelSummary::of(&self.illumination.m_e),
                n_e: ChannelSummary::of(&self.reflectance.n_e),
                i_e: ChannelSummary::of(&self.ie),
            },
            vp: self.stats,
        }
    }
}

/// Runs one cycle and keeps every intermediate.
pub fn enhance_cycle(img: &RgbImage, cfg: &EnhanceConfig) -> Result<CycleOutput> {
    cfg.validate()?;
    let hsi = rgb_to_hsi(img);
    let ic = hsi.intensity();
    let (ib, id) = preprocess(&ic, cfg.kernel, cfg.eq2_mode)?;
    let stats = vp_stats(&ib, cfg.tau_policy, cfg.epsilon)?;
    let gains = gains(&stats);
    let illumination = estimate_illumination(&ib, cfg.kernel, gains.beta)?;
    let reflectance = reflectance(&ic, &ib, gains.beta, gains.gamma)?;
    let ie = reflectance
        .n_e
        .zip_map(&illumination.m_e, |n, m| (n * m).clamp(0.0, 1.0))?;
    let output = hsi_to_rgb(&hsi.with_intensity(&ie)?);
    Ok(CycleOutput {
        output,
        hsi,
        ic,
        ib,
        id,
        stats,
        gains,
        illumination,
        reflectance,
        ie,
    })
}

/// One cycle, returning the enhanced image and its record (`k = 1`).
pub fn enhance_once(img: &RgbImage, cfg: &EnhanceConfig) -> Result<(RgbImage, CycleRecord)> {
    let out = enhance_cycle(img, cfg)?;
    let record = out.record(1);
    Ok((out.output, record))
}

/// Full enhancement with the cycle loop.
pub fn enhance(img: &RgbImage, cfg: &EnhanceConfig) -> Result<(RgbImage, CycleTrace)> {
    cfg.validate()?;
    let mut cycles = Vec::new();
    let mut current = img.clone();
    let mut k = 1u32;
    loop {
        let out = enhance_cycle(&current, cfg)?;
        let record = out.record(k);
        cycles.push(record);
        current = out.output;

        let stop = match cfg.force_k {
            Some(forced) if k >= forced => Some(StopReason::Forced),
            Some(_) => None,
            None if k >= record.t => Some(StopReason::Comparator),
            None => None,
        };
        let stop = stop.or(if k >= cfg.k_max {
            Some(StopReason::Cap)
        } else {
            None
        });
        if let Some(stop_reason) = stop {
            return Ok((
                current,
                CycleTrace {
                    stop_reason,
                    cycles,
                },
            ));
        }
        k += 1;
    }
}

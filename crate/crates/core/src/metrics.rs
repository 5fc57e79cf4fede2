//! Full-reference quality metrics and exposure statistics.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::{ChannelImage, RgbImage};
use crate::math;
use crate::sum::{self, CompensatedSum};
use crate::vp::ThresholdPolicy;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Reported for identical images instead of infinity.
pub const PSNR_CAP: f64 = 99.0;

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_C1: f64 = 0.01 * 0.01;
pub const SSIM_C2: f64 = 0.03 * 0.03;

/// Channels at or above this count as saturated.
pub const SATURATION_LEVEL: f64 = 254.0 / 255.0;

/// PSNR in dB over all three channels, unit peak.
pub fn psnr(a: &RgbImage, b: &RgbImage) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            left: a.dims(),
            right: b.dims(),
        });
    }
    let sse = sum::sum(a.pixels().iter().zip(b.pixels()).map(|(p, q)| {
        let (dr, dg, db) = (p.r - q.r, p.g - q.g, p.b - q.b);
        dr * dr + dg * dg + db * db
    }));
    let mse = sse / (3 * a.pixels().len()) as f64;
    if mse == 0.0 {
        return Ok(PSNR_CAP);
    }
    Ok((10.0 * math::log10(1.0 / mse)).min(PSNR_CAP))
}

/// Normalized 1-D Gaussian taps for the SSIM window.
pub fn gaussian_window() -> [f64; SSIM_WINDOW] {
    let mut w = [0.0; SSIM_WINDOW];
    let c = (SSIM_WINDOW / 2) as f64;
    for (i, t) in w.iter_mut().enumerate() {
        let d = i as f64 - c;
        *t = math::exp(-(d * d) / (2.0 * SSIM_SIGMA * SSIM_SIGMA));
    }
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|t| *t /= s);
    w
}

// Valid-region separable filtering; output is (w-10) x (h-10).
fn filter_valid(data: &[f64], w: usize, h: usize, taps: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let ow = w - SSIM_WINDOW + 1;
    let oh = h - SSIM_WINDOW + 1;
    let mut horiz = vec![0.0; ow * h];
    for y in 0..h {
        let row = &data[y * w..(y + 1) * w];
        for x in 0..ow {
            horiz[y * ow + x] = row[x..x + SSIM_WINDOW]
                .iter()
                .zip(taps)
                .map(|(v, t)| v * t)
                .sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for (dy, &t) in taps.iter().enumerate() {
            let src = &horiz[(y + dy) * ow..(y + dy + 1) * ow];
            for (o, &v) in out[y * ow..(y + 1) * ow].iter_mut().zip(src) {
                *o += v * t;
            }
        }
    }
    out
}

/// Mean SSIM and mean contrast-structure term.
fn ssim_parts(a: &ChannelImage, b: &ChannelImage) -> Result<(f64, f64)> {
    a.ensure_same_dims(b)?;
    let (w, h) = a.dims();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::TooSmall {
            width: w,
            height: h,
            min: SSIM_WINDOW,
        });
    }
    let taps = gaussian_window();
    let (xa, xb) = (a.as_slice(), b.as_slice());
    let sq = |s: &[f64]| s.iter().map(|v| v * v).collect::<Vec<_>>();
    let prod: Vec<f64> = xa.iter().zip(xb).map(|(p, q)| p * q).collect();

    let mu_a = filter_valid(xa, w, h, &taps);
    let mu_b = filter_valid(xb, w, h, &taps);
    let e_aa = filter_valid(&sq(xa), w, h, &taps);
    let e_bb = filter_valid(&sq(xb), w, h, &taps);
    let e_ab = filter_valid(&prod, w, h, &taps);

    let mut ssim = CompensatedSum::new();
    let mut cs = CompensatedSum::new();
    for i in 0..mu_a.len() {
        let (ma, mb) = (mu_a[i], mu_b[i]);
        let var_a = e_aa[i] - ma * ma;
        let var_b = e_bb[i] - mb * mb;
        let cov = e_ab[i] - ma * mb;
        let lum = (2.0 * ma * mb + SSIM_C1) / (ma * ma + mb * mb + SSIM_C1);
        let c = (2.0 * cov + SSIM_C2) / (var_a + var_b + SSIM_C2);
        ssim.add(lum * c);
        cs.add(c);
    }
    let n = mu_a.len() as f64;
    Ok((ssim.value() / n, cs.value() / n))
}

/// Single-scale SSIM (11×11 Gaussian window, sigma 1.5, unit dynamic
/// range), averaged over the valid region.
pub fn ssim(a: &ChannelImage, b: &ChannelImage) -> Result<f64> {
    ssim_parts(a, b).map(|(s, _)| s)
}

/// Mean of the contrast-structure factor alone. Unlike SSIM it ignores the
/// local means, so it is unchanged when both images are shifted by a constant.
pub fn ssim_contrast_structure(a: &ChannelImage, b: &ChannelImage) -> Result<f64> {
    ssim_parts(a, b).map(|(_, cs)| cs)
}

/// SSIM on the intensity channels of two RGB images.
pub fn ssim_rgb(a: &RgbImage, b: &RgbImage) -> Result<f64> {
    ssim(&a.intensity(), &b.intensity())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ExposureStats {
    pub mean_brightness: f64,
    /// Fraction of pixels with any channel at or above 254/255.
    pub saturated_fraction: f64,
    /// Fraction of pixels with intensity at or below the split value.
    pub dark_fraction: f64,
}

pub fn exposure_stats(img: &RgbImage, policy: ThresholdPolicy) -> ExposureStats {
    let intensity = img.intensity();
    // An all-black image has no positive samples; everything is dark.
    let tau = policy.resolve(intensity.as_slice()).unwrap_or(0.0);
    let n = img.pixels().len() as f64;
    let saturated = img
        .pixels()
        .iter()
        .filter(|p| p.r >= SATURATION_LEVEL || p.g >= SATURATION_LEVEL || p.b >= SATURATION_LEVEL)
        .count();
    let dark = intensity.as_slice().iter().filter(|&&v| v <= tau).count();
    ExposureStats {
        mean_brightness: intensity.mean(),
        saturated_fraction: saturated as f64 / n,
        dark_fraction: dark as f64 / n,
    }
}

/// One row of a quality report.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct MetricReport {
    pub psnr: f64,
    pub ssim: f64,
    pub mean_brightness: f64,
    pub saturated_fraction: f64,
    pub dark_fraction: f64,
}

impl MetricReport {
    /// Compares `output` against `reference` and summarizes `output`'s exposure.
    pub fn compute(
        output: &RgbImage,
        reference: &RgbImage,
        policy: ThresholdPolicy,
    ) -> Result<Self> {
        let exposure = exposure_stats(output, policy);
        Ok(Self {
            psnr: psnr(output, reference)?,
            ssim: ssim_rgb(output, reference)?,
            mean_brightness: exposure.mean_brightness,
            saturated_fraction: exposure.saturated_fraction,
            dark_fraction: exposure.dark_fraction,
        })
    }
}

//! Low-light image enhancement from bright/dark perception statistics.
//!
//! The brightness (HSI intensity) channel of an image is split into bright
//! and dark regions. Their energies and area ratios drive two adaptive
//! gains, which in turn shape an illumination map and a reflectance
//! exponent. The enhanced intensity is the product of the two, and the whole
//! pass can be repeated until an adaptive cycle threshold is reached.
//!
//! This crate is `no_std` (it needs `alloc`). File formats, reports and the
//! command line live in the `vplume` crate.
//!
//! ```
//! use vplume_core::{enhance, EnhanceConfig, RgbImage, Rgb};
//!
//! let px: Vec<Rgb> = (0..64)
//!     .map(|i| {
//!         let v = 0.02 + 0.2 * (i as f64) / 64.0;
//!         Rgb::new(v, v * 0.8, v * 0.6)
//!     })
//!     .collect();
//! let img = RgbImage::from_pixels(8, 8, px).unwrap();
//! let (out, trace) = enhance(&img, &EnhanceConfig::default()).unwrap();
//! assert!(trace.cycles.len() >= 1);
//! assert_eq!(out.width(), 8);
//! ```
#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

mod error;
mod math;

pub mod color;
pub mod estimation;
pub mod filter;
pub mod image;
pub mod metrics;
pub mod pipeline;
pub mod sum;
pub mod vp;

pub use color::{hsi_to_rgb, hsi_to_rgb_pixel, hsi_to_rgb_unclipped, rgb_to_hsi, rgb_to_hsi_pixel};
pub use error::{Error, Result};
pub use estimation::{
    estimate_illumination, reflectance, regulator_one, regulator_two, IlluminationResult,
    ReflectanceResult,
};
pub use filter::box_filter;
pub use image::{ChannelImage, Hsi, HsiImage, Rgb, RgbImage};
pub use metrics::{exposure_stats, psnr, ssim, ssim_rgb, ExposureStats, MetricReport};
pub use pipeline::{
    enhance, enhance_cycle, enhance_once, preprocess, ChannelSummary, CycleOutput, CycleRecord,
    CycleStats, CycleTrace, EnhanceConfig, Eq2Mode, StopReason,
};
pub use vp::{
    adaptive_threshold, beta, gains, gamma, split_bright_dark, vp_stats, BrightDarkSplit, Gains,
    ThresholdPolicy, VpStats, DEFAULT_EPSILON,
};

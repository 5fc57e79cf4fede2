//! Image containers.
//!
//! All images are row-major and carry `f64` samples. RGB and HSI samples
//! live in the unit interval (hue in degrees); single-channel images may
//! hold intermediate values above 1 but never NaN or infinity.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sum;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 || width.checked_mul(height) != Some(len) {
        return Err(Error::InvalidDimensions { width, height, len });
    }
    Ok(())
}

/// Single-channel image of finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelImage {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl ChannelImage {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        check_dims(width, height, data.len())?;
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        let len = width.saturating_mul(height);
        Self::new(width, height, alloc::vec![value; len])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        check_dims(width, height, width.saturating_mul(height))?;
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    /// Builds an image the caller guarantees is valid (derived from a valid one).
    pub(crate) fn from_parts(width: usize, height: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(width * height, data.len());
        debug_assert!(data.iter().all(|v| v.is_finite()));
        Self {
            width,
            height,
            data,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false; images have at least one sample.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    /// Applies `f` to every sample. The result must stay finite.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_parts(
            self.width,
            self.height,
            self.data.iter().map(|&v| f(v)).collect(),
        )
    }

    pub fn zip_map(&self, other: &ChannelImage, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.ensure_same_dims(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self::from_parts(self.width, self.height, data))
    }

    pub fn ensure_same_dims(&self, other: &ChannelImage) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn sum(&self) -> f64 {
        sum::sum(self.data.iter().copied())
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.data.len() as f64
    }
}

/// RGB triple in the unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Rgb {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl Rgb {
    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        Self { r, g, b }
    }

    pub const fn gray(v: f64) -> Self {
        Self { r: v, g: v, b: v }
    }

    /// HSI intensity, the plain channel mean.
    #[inline]
    pub fn intensity(&self) -> f64 {
        (self.r + self.g + self.b) / 3.0
    }

    fn is_valid(&self) -> bool {
        [self.r, self.g, self.b]
            .iter()
            .all(|v| (0.0..=1.0).contains(v))
    }
}

/// Hue in degrees `[0, 360)`, saturation and intensity in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Hsi {
    pub h: f64,
    pub s: f64,
    pub i: f64,
}

impl Hsi {
    pub const fn new(h: f64, s: f64, i: f64) -> Self {
        Self { h, s, i }
    }

    fn is_valid(&self) -> bool {
        (0.0..360.0).contains(&self.h)
            && (0.0..=1.0).contains(&self.s)
            && (0.0..=1.0).contains(&self.i)
    }
}

/// Color image with unit-interval channels.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<Rgb>,
}

impl RgbImage {
    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Rgb>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        for p in &pixels {
            if !(p.r.is_finite() && p.g.is_finite() && p.b.is_finite()) {
                return Err(Error::NonFiniteSample);
            }
            if !p.is_valid() {
                return Err(Error::SampleOutOfRange);
            }
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> Rgb,
    ) -> Result<Self> {
        check_dims(width, height, width.saturating_mul(height))?;
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::from_pixels(width, height, pixels)
    }

    /// Gray image with every channel equal to the given samples.
    pub fn from_gray(gray: &ChannelImage) -> Result<Self> {
        let pixels = gray.as_slice().iter().map(|&v| Rgb::gray(v)).collect();
        Self::from_pixels(gray.width(), gray.height(), pixels)
    }

    pub(crate) fn from_parts(width: usize, height: usize, pixels: Vec<Rgb>) -> Self {
        debug_assert!(pixels.iter().all(Rgb::is_valid));
        Self {
            width,
            height,
            pixels,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    /// Per-pixel HSI intensity, `(r + g + b) / 3`.
    pub fn intensity(&self) -> ChannelImage {
        ChannelImage::from_parts(
            self.width,
            self.height,
            self.pixels.iter().map(Rgb::intensity).collect(),
        )
    }

    pub fn mean_intensity(&self) -> f64 {
        sum::sum(self.pixels.iter().map(Rgb::intensity)) / self.pixels.len() as f64
    }
}

/// Image in HSI space.
#[derive(Debug, Clone, PartialEq)]
pub struct HsiImage {
    width: usize,
    height: usize,
    pixels: Vec<Hsi>,
}

impl HsiImage {
    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Hsi>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        for p in &pixels {
            if !(p.h.is_finite() && p.s.is_finite() && p.i.is_finite()) {
                return Err(Error::NonFiniteSample);
            }
            if !p.is_valid() {
                return Err(Error::SampleOutOfRange);
            }
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub(crate) fn from_parts(width: usize, height: usize, pixels: Vec<Hsi>) -> Self {
        debug_assert!(pixels.iter().all(Hsi::is_valid));
        Self {
            width,
            height,
            pixels,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn pixels(&self) -> &[Hsi] {
        &self.pixels
    }

    pub fn intensity(&self) -> ChannelImage {
        ChannelImage::from_parts(
            self.width,
            self.height,
            self.pixels.iter().map(|p| p.i).collect(),
        )
    }

    /// Replaces the intensity channel, keeping hue and saturation.
    ///
    /// Samples are clamped to `[0, 1]`.
    pub fn with_intensity(&self, intensity: &ChannelImage) -> Result<Self> {
        if (self.width, self.height) != intensity.dims() {
            return Err(Error::DimensionMismatch {
                left: (self.width, self.height),
                right: intensity.dims(),
            });
        }
        let pixels = self
            .pixels
            .iter()
            .zip(intensity.as_slice())
            .map(|(p, &i)| Hsi::new(p.h, p.s, i.clamp(0.0, 1.0)))
            .collect();
        Ok(Self::from_parts(self.width, self.height, pixels))
    }
}

//! RGB <-> HSI conversion (arccos hue, three-sector inverse).

use core::f64::consts::PI;

use crate::image::{Hsi, HsiImage, Rgb, RgbImage};
use crate::math;

const DEG: f64 = 180.0 / PI;

/// Converts one pixel. Achromatic pixels (including black) get `h = s = 0`.
pub fn rgb_to_hsi_pixel(p: Rgb) -> Hsi {
    let Rgb { r, g, b } = p;
    let total = r + g + b;
    let i = total / 3.0;
    if total <= 0.0 {
        return Hsi::new(0.0, 0.0, 0.0);
    }
    let min = r.min(g).min(b);
    let s = (1.0 - 3.0 * min / total).clamp(0.0, 1.0);

    let num = 0.5 * ((r - g) + (r - b));
    let den = math::sqrt((r - g) * (r - g) + (r - b) * (g - b));
    if s == 0.0 || den <= 0.0 {
        return Hsi::new(0.0, 0.0, i);
    }
    let theta = math::acos((num / den).clamp(-1.0, 1.0)) * DEG;
    let mut h = if b <= g { theta } else { 360.0 - theta };
    if h >= 360.0 {
        h -= 360.0;
    }
    Hsi::new(h, s, i.clamp(0.0, 1.0))
}

/// Converts one pixel back to RGB, clipping each channel to `[0, 1]`.
pub fn hsi_to_rgb_pixel(p: Hsi) -> Rgb {
    let (c0, c1, c2) = hsi_to_rgb_unclipped(p);
    Rgb::new(c0.clamp(0.0, 1.0), c1.clamp(0.0, 1.0), c2.clamp(0.0, 1.0))
}

/// Inverse conversion before gamut clipping. Bright, saturated colors can
/// land above 1 here.
pub fn hsi_to_rgb_unclipped(p: Hsi) -> (f64, f64, f64) {
    let Hsi { h, s, i } = p;
    if s == 0.0 {
        return (i, i, i);
    }
    // (hue within sector, which channel sits at the sector's start)
    let (hs, sector) = if h < 120.0 {
        (h, 0)
    } else if h < 240.0 {
        (h - 120.0, 1)
    } else {
        (h - 240.0, 2)
    };
    let low = i * (1.0 - s);
    let lead = i * (1.0 + s * math::cos(hs / DEG) / math::cos((60.0 - hs) / DEG));
    let rest = 3.0 * i - (low + lead);
    match sector {
        0 => (lead, rest, low),
        1 => (low, lead, rest),
        _ => (rest, low, lead),
    }
}

pub fn rgb_to_hsi(img: &RgbImage) -> HsiImage {
    let pixels = img.pixels().iter().map(|&p| rgb_to_hsi_pixel(p)).collect();
    HsiImage::from_parts(img.width(), img.height(), pixels)
}

pub fn hsi_to_rgb(img: &HsiImage) -> RgbImage {
    let pixels = img.pixels().iter().map(|&p| hsi_to_rgb_pixel(p)).collect();
    RgbImage::from_parts(img.width(), img.height(), pixels)
}

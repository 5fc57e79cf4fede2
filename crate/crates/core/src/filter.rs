//! Mean (box) filtering with edge replication.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::image::ChannelImage;

/// Averages each `kernel × kernel` neighborhood. Out-of-bounds taps repeat
/// the nearest edge sample. `kernel` must be odd; `1` is the identity.
///
/// The filter is separable, so it runs as a horizontal pass followed by a
/// vertical one. Results are clamped to the input's `[min, max]`, which only
/// matters for last-ulp rounding.
pub fn box_filter(img: &ChannelImage, kernel: usize) -> Result<ChannelImage> {
    if kernel == 0 || kernel.is_multiple_of(2) {
        return Err(Error::InvalidKernel(kernel));
    }
    if kernel == 1 {
        return Ok(img.clone());
    }
    let (w, h) = img.dims();
    let radius = kernel / 2;
    let norm = 1.0 / kernel as f64;
    let src = img.as_slice();

    let mut horiz = vec![0.0; w * h];
    let mut padded = Vec::with_capacity(w + 2 * radius);
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        padded.clear();
        padded.extend(core::iter::repeat_n(row[0], radius));
        padded.extend_from_slice(row);
        padded.extend(core::iter::repeat_n(row[w - 1], radius));
        let out = &mut horiz[y * w..(y + 1) * w];
        for (x, o) in out.iter_mut().enumerate() {
            *o = padded[x..x + kernel].iter().sum::<f64>() * norm;
        }
    }

    let lo = img.min();
    let hi = img.max();
    let mut out = vec![0.0; w * h];
    let mut acc = vec![0.0; w];
    for y in 0..h {
        acc.iter_mut().for_each(|a| *a = 0.0);
        for dy in 0..kernel {
            let sy = (y + dy).saturating_sub(radius).min(h - 1);
            for (a, &v) in acc.iter_mut().zip(&horiz[sy * w..(sy + 1) * w]) {
                *a += v;
            }
        }
        for (o, &a) in out[y * w..(y + 1) * w].iter_mut().zip(&acc) {
            *o = (a * norm).clamp(lo, hi);
        }
    }
    Ok(ChannelImage::from_parts(w, h, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Direct O(k^2) evaluation with clamped indices.
    fn naive(img: &ChannelImage, kernel: usize) -> ChannelImage {
        let (w, h) = img.dims();
        let r = (kernel / 2) as isize;
        ChannelImage::from_fn(w, h, |x, y| {
            let mut s = 0.0;
            for dy in -r..=r {
                for dx in -r..=r {
                    let sx = (x as isize + dx).clamp(0, w as isize - 1) as usize;
                    let sy = (y as isize + dy).clamp(0, h as isize - 1) as usize;
                    s += img.get(sx, sy);
                }
            }
            s / (kernel * kernel) as f64
        })
        .unwrap()
    }

    #[test]
    fn rejects_even_and_zero_kernels() {
        let img = ChannelImage::filled(4, 4, 0.5).unwrap();
        assert_eq!(box_filter(&img, 0), Err(Error::InvalidKernel(0)));
        assert_eq!(box_filter(&img, 4), Err(Error::InvalidKernel(4)));
    }

    #[test]
    fn kernel_one_is_identity() {
        let img = ChannelImage::from_fn(5, 3, |x, y| (x * 3 + y) as f64 / 20.0).unwrap();
        assert_eq!(box_filter(&img, 1).unwrap(), img);
    }

    #[test]
    fn constant_stays_constant() {
        let img = ChannelImage::filled(7, 5, 0.3).unwrap();
        for k in [3, 5, 9, 15] {
            let out = box_filter(&img, k).unwrap();
            assert!(out.as_slice().iter().all(|&v| v == 0.3));
        }
    }

    #[test]
    fn single_impulse() {
        let img =
            ChannelImage::new(3, 3, vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let out = box_filter(&img, 3).unwrap();
        // Corner (0,0): window rows/cols {0,0,1} -> impulse counted once.
        // Edge (1,0): rows {0,0,1}, cols {0,1,2} -> once. Center: once.
        let expected = naive(&img, 3);
        for (a, b) in out.as_slice().iter().zip(expected.as_slice()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((out.get(1, 1) - 1.0 / 9.0).abs() < 1e-15);
        assert!((out.get(0, 0) - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn matches_naive_on_ragged_sizes() {
        let mut seed = 12345u64;
        for &(w, h, k) in &[
            (1, 1, 3),
            (1, 7, 5),
            (6, 1, 3),
            (9, 4, 7),
            (13, 11, 3),
            (4, 4, 9),
        ] {
            let img = ChannelImage::from_fn(w, h, |_, _| {
                seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (seed >> 11) as f64 / (1u64 << 53) as f64
            })
            .unwrap();
            let fast = box_filter(&img, k).unwrap();
            let slow = naive(&img, k);
            for (a, b) in fast.as_slice().iter().zip(slow.as_slice()) {
                assert!((a - b).abs() < 1e-12, "{w}x{h} k={k}: {a} vs {b}");
            }
        }
    }
}

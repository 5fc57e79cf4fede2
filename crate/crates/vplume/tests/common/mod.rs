#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vplume::load_image;
use vplume_core::{ChannelImage, Rgb, RgbImage, ThresholdPolicy};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/natural")
}

/// Natural-image crops, sorted by file name.
pub fn fixture_corpus() -> Vec<(String, RgbImage)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "png"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, load_image(&p).unwrap())
        })
        .collect()
}

/// Per-channel power curve `v^g`; `g > 1` darkens.
pub fn darken(img: &RgbImage, g: f64) -> RgbImage {
    RgbImage::from_fn(img.width(), img.height(), |x, y| {
        let p = img.get(x, y);
        Rgb::new(p.r.powf(g), p.g.powf(g), p.b.powf(g))
    })
    .unwrap()
}

pub fn random_channel(rng: &mut ChaCha8Rng, max_side: usize) -> ChannelImage {
    let w = rng.gen_range(1..=max_side);
    let h = rng.gen_range(1..=max_side);
    let zero_rate = rng.gen_range(0.0..0.3);
    let data = (0..w * h)
        .map(|_| {
            if rng.gen_bool(zero_rate) {
                0.0
            } else {
                rng.gen_range(0.0..=1.0)
            }
        })
        .collect();
    ChannelImage::new(w, h, data).unwrap()
}

pub fn random_rgb(rng: &mut ChaCha8Rng, w: usize, h: usize) -> RgbImage {
    RgbImage::from_fn(w, h, |_, _| {
        Rgb::new(
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=1.0),
            rng.gen_range(0.0..=1.0),
        )
    })
    .unwrap()
}

pub struct BruteVp {
    pub p1: f64,
    pub p2: f64,
    pub q1: f64,
    pub q2: f64,
    pub zeros: usize,
    pub beta: f64,
    pub gamma: f64,
    pub t: u32,
}

/// Materializes the bright/dark images and their masks, then sums them
/// with plain double loops.
pub fn brute_force_vp(ib: &ChannelImage, policy: ThresholdPolicy, eps: f64) -> Option<BruteVp> {
    let (w, h) = ib.dims();
    let (mut nz_sum, mut nz) = (0.0, 0usize);
    for y in 0..h {
        for x in 0..w {
            if ib.get(x, y) > 0.0 {
                nz_sum += ib.get(x, y);
                nz += 1;
            }
        }
    }
    if nz == 0 {
        return None;
    }
    let tau = match policy {
        ThresholdPolicy::MeanOfNonzero => nz_sum / nz as f64,
        ThresholdPolicy::Fixed(t) => t,
    };
    let bright: Vec<Vec<f64>> = (0..h)
        .map(|y| {
            (0..w)
                .map(|x| {
                    let v = ib.get(x, y);
                    if v > tau {
                        v
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    let dark: Vec<Vec<f64>> = (0..h)
        .map(|y| {
            (0..w)
                .map(|x| {
                    let v = ib.get(x, y);
                    if v > 0.0 && v <= tau {
                        v
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    let (mut phi1, mut phi2, mut m1, mut m2, mut zeros) = (0.0, 0.0, 0.0, 0.0, 0usize);
    for y in 0..h {
        for x in 0..w {
            phi1 += bright[y][x];
            phi2 += dark[y][x];
            m1 += if bright[y][x] > 0.0 { 1.0 } else { 0.0 };
            m2 += if dark[y][x] > 0.0 { 1.0 } else { 0.0 };
            zeros += (ib.get(x, y) == 0.0) as usize;
        }
    }
    let denom = (w * h - zeros) as f64;
    let c = |v: f64| v.clamp(eps, 1.0);
    let (p1, p2, q1, q2) = (
        c(phi1 / denom),
        c(phi2 / denom),
        c(m1 / denom),
        c(m2 / denom),
    );
    let beta = (((1.0 / p2).ln().sqrt() - (1.0 / q2).ln()).exp()).sqrt();
    let gamma = if q1 > q2 { p1 } else { p2 };
    let t = ((beta * beta).powf(beta.sqrt()).floor() as u32).max(1);
    Some(BruteVp {
        p1,
        p2,
        q1,
        q2,
        zeros,
        beta,
        gamma,
        t,
    })
}

/// Direct 2-D Gaussian-window SSIM.
pub fn brute_force_ssim(a: &ChannelImage, b: &ChannelImage) -> f64 {
    let (c1, c2) = (0.01f64.powi(2), 0.03f64.powi(2));
    let mut win = [[0.0f64; 11]; 11];
    let mut total = 0.0;
    for (i, row) in win.iter_mut().enumerate() {
        for (j, w) in row.iter_mut().enumerate() {
            let d2 = (i as f64 - 5.0).powi(2) + (j as f64 - 5.0).powi(2);
            *w = (-d2 / 4.5).exp();
            total += *w;
        }
    }
    let (w, h) = a.dims();
    let (mut acc, mut count) = (0.0, 0usize);
    for y0 in 0..=h - 11 {
        for x0 in 0..=w - 11 {
            let (mut ma, mut mb) = (0.0, 0.0);
            for i in 0..11 {
                for j in 0..11 {
                    let wt = win[i][j] / total;
                    ma += wt * a.get(x0 + j, y0 + i);
                    mb += wt * b.get(x0 + j, y0 + i);
                }
            }
            let (mut va, mut vb, mut cov) = (0.0, 0.0, 0.0);
            for i in 0..11 {
                for j in 0..11 {
                    let wt = win[i][j] / total;
                    let da = a.get(x0 + j, y0 + i) - ma;
                    let db = b.get(x0 + j, y0 + i) - mb;
                    va += wt * da * da;
                    vb += wt * db * db;
                    cov += wt * da * db;
                }
            }
            acc += ((2.0 * ma * mb + c1) * (2.0 * cov + c2))
                / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            count += 1;
        }
    }
    acc / count as f64
}

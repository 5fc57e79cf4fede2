mod common;

use common::{close, random_channel, rng};
use rand::Rng;
use vplume_core::{estimate_illumination, reflectance, regulator_one, regulator_two, ChannelImage};

fn naive_mean_filter(data: &[Vec<f64>], k: usize) -> Vec<Vec<f64>> {
    let h = data.len() as isize;
    let w = data[0].len() as isize;
    let r = (k / 2) as isize;
    let mut out = vec![vec![0.0; w as usize]; h as usize];
    for y in 0..h {
        for x in 0..w {
            let mut s = 0.0;
            for dy in -r..=r {
                for dx in -r..=r {
                    s += data[(y + dy).clamp(0, h - 1) as usize][(x + dx).clamp(0, w - 1) as usize];
                }
            }
            out[y as usize][x as usize] = s / (k * k) as f64;
        }
    }
    out
}

#[test]
fn regulator_one_matches_per_pixel_formula() {
    // Horizontal ramp 0..1 over 11 columns, 4 rows.
    let ib = ChannelImage::from_fn(11, 4, |x, _| x as f64 / 10.0).unwrap();
    let weighted: Vec<Vec<f64>> = (0..4)
        .map(|_| {
            (0..11)
                .map(|x| {
                    let v = x as f64 / 10.0;
                    (1.0 + (1.0 + (1.0 - v).exp()).ln()).powi(4) * v
                })
                .collect()
        })
        .collect();
    let w0 = (1.0f64 + (1.0 + 1.0f64.exp()).ln()).powi(4);
    assert!(close(w0, 28.635, 1e-3));
    for k in [1, 3, 5] {
        let expected = naive_mean_filter(&weighted, k);
        let a = regulator_one(&ib, k).unwrap();
        for y in 0..4 {
            for x in 0..11 {
                assert!(close(a.get(x, y), expected[y][x], 1e-12));
            }
        }
    }
}

#[test]
fn theta_matches_elementwise_power() {
    let mut r = rng(23);
    for _ in 0..100 {
        let a = random_channel(&mut r, 12).map(|v| v * 10.0);
        if a.max() <= 0.0 {
            continue;
        }
        let beta = r.gen_range(0.05..4.0);
        let (_, theta) = regulator_two(&a, beta).unwrap();
        let literal = a
            .as_slice()
            .iter()
            .map(|v| v.powf(beta))
            .fold(f64::MIN, f64::max);
        assert!(close(
            theta,
            (a.max() - literal).abs(),
            1e-9 * literal.max(1.0)
        ));
    }
}

#[test]
fn illumination_is_monotone_and_bounded() {
    let ramp = ChannelImage::from_fn(64, 1, |x, _| x as f64 / 63.0 * 5.0).unwrap();
    for beta in [0.3, 1.0, 1.3145, 2.5] {
        let (m_e, theta) = regulator_two(&ramp, beta).unwrap();
        let m = m_e.as_slice();
        for pair in m.windows(2) {
            assert!(pair[1] <= pair[0]);
        }
        for &v in m {
            assert!(v - theta >= 1.0 - 1e-9 && v - theta <= 2.0 + 1e-9);
        }
        assert!(close(m[0], 2.0 + theta, 1e-12));
        assert!(close(m[63], 1.0 + theta, 1e-12));
    }
}

#[test]
fn random_estimation_ranges() {
    let mut r = rng(29);
    for _ in 0..100 {
        let ib = random_channel(&mut r, 16);
        if ib.max() <= 0.0 {
            continue;
        }
        let ic = random_channel(&mut r, 16);
        let ic = ChannelImage::from_fn(ib.width(), ib.height(), |x, y| {
            ic.get(x % ic.width(), y % ic.height())
        })
        .unwrap();
        let beta = r.gen_range(0.1..6.0);
        let gamma = r.gen_range(1e-6..=1.0);
        let ill = estimate_illumination(&ib, 3, beta).unwrap();
        for &v in ill.m_e.as_slice() {
            assert!(v.is_finite());
            assert!(v - ill.theta >= 1.0 - 1e-9 && v - ill.theta <= 2.0 + 1e-9);
        }
        let refl = reflectance(&ic, &ib, beta, gamma).unwrap();
        assert!(refl.u >= 1.0);
        for (n, c) in refl.n_e.as_slice().iter().zip(ic.as_slice()) {
            assert!(n.is_finite() && n <= c);
        }
    }
}

#[test]
fn all_dark_base_gives_unit_exponent() {
    let ic = ChannelImage::from_fn(5, 5, |x, y| (x + y) as f64 / 8.0).unwrap();
    let ib = ic.map(|v| v * 0.0);
    let refl = reflectance(&ic, &ib, 1.0, 1.0).unwrap();
    assert_eq!(refl.u, 1.0);
    assert_eq!(refl.n_e, ic);
}

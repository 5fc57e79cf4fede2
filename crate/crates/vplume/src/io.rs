//! Image file formats: 8-bit PNG (gray or RGB) and binary PPM (P6) / PGM (P5).
//!
//! Samples map to the unit interval as `v / 255` on load and back as
//! `round(v * 255)` on save.

use std::fs;
use std::io::Cursor;
use std::path::Path;

use thiserror::Error;
use vplume_core::{Rgb, RgbImage};

#[derive(Debug, Error)]
pub enum ImageIoError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported format: {0}")]
    Unsupported(String),
    #[error("malformed {format} file: {reason}")]
    Malformed {
        format: &'static str,
        reason: String,
    },
    #[error("image has a zero dimension")]
    ZeroDimension,
    #[error("png: {0}")]
    PngDecode(#[from] png::DecodingError),
    #[error("png: {0}")]
    PngEncode(#[from] png::EncodingError),
}

/// On-disk format, chosen from magic bytes on load and the extension on save.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Png,
    /// Binary PPM, `P6`.
    Ppm,
    /// Binary PGM, `P5`.
    Pgm,
}

impl ImageFormat {
    pub fn from_extension(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "png" => Some(Self::Png),
            "ppm" => Some(Self::Ppm),
            "pgm" => Some(Self::Pgm),
            _ => None,
        }
    }

    pub fn sniff(bytes: &[u8]) -> Option<Self> {
        const PNG_MAGIC: &[u8] = b"\x89PNG\r\n\x1a\n";
        if bytes.starts_with(PNG_MAGIC) {
            Some(Self::Png)
        } else if bytes.starts_with(b"P6") {
            Some(Self::Ppm)
        } else if bytes.starts_with(b"P5") {
            Some(Self::Pgm)
        } else {
            None
        }
    }
}

#[inline]
fn to_unit(v: u8) -> f64 {
    v as f64 / 255.0
}

#[inline]
fn to_byte(v: f64) -> u8 {
    (v * 255.0).round().clamp(0.0, 255.0) as u8
}

fn from_samples(
    width: usize,
    height: usize,
    channels: usize,
    data: &[u8],
) -> Result<RgbImage, ImageIoError> {
    if width == 0 || height == 0 {
        return Err(ImageIoError::ZeroDimension);
    }
    let pixels = match channels {
        1 => data.iter().map(|&v| Rgb::gray(to_unit(v))).collect(),
        3 => data
            .chunks_exact(3)
            .map(|c| Rgb::new(to_unit(c[0]), to_unit(c[1]), to_unit(c[2])))
            .collect(),
        _ => unreachable!(),
    };
    RgbImage::from_pixels(width, height, pixels)
        .map_err(|e| ImageIoError::Unsupported(e.to_string()))
}

pub fn load_image(path: impl AsRef<Path>) -> Result<RgbImage, ImageIoError> {
    let bytes = fs::read(path.as_ref())?;
    decode(&bytes)
}

pub fn decode(bytes: &[u8]) -> Result<RgbImage, ImageIoError> {
    match ImageFormat::sniff(bytes) {
        Some(ImageFormat::Png) => decode_png(bytes),
        Some(ImageFormat::Ppm) => decode_pnm(bytes, 3),
        Some(ImageFormat::Pgm) => decode_pnm(bytes, 1),
        None => Err(ImageIoError::Unsupported("not a PNG, P5 or P6 file".into())),
    }
}

fn decode_png(bytes: &[u8]) -> Result<RgbImage, ImageIoError> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info()?;
    let (color, depth) = reader.output_color_type();
    if depth != png::BitDepth::Eight {
        return Err(ImageIoError::Unsupported(format!("{depth:?} bit PNG")));
    }
    let channels = match color {
        png::ColorType::Grayscale => 1,
        png::ColorType::Rgb => 3,
        other => return Err(ImageIoError::Unsupported(format!("{other:?} PNG"))),
    };
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| ImageIoError::Unsupported("PNG too large".into()))?;
    let mut buf = vec![0; size];
    let info = reader.next_frame(&mut buf)?;
    let (w, h) = (info.width as usize, info.height as usize);
    // Rows are packed; with 8-bit samples line_size == w * channels.
    let mut data = Vec::with_capacity(w * h * channels);
    for row in buf.chunks(info.line_size).take(h) {
        data.extend_from_slice(&row[..w * channels]);
    }
    from_samples(w, h, channels, &data)
}

// Reads the next whitespace-delimited header token, skipping `#` comments.
fn header_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Option<&'a [u8]> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() && bytes[*pos] != b'#' {
        *pos += 1;
    }
    (start < *pos).then(|| &bytes[start..*pos])
}

fn decode_pnm(bytes: &[u8], channels: usize) -> Result<RgbImage, ImageIoError> {
    let format = if channels == 3 { "PPM" } else { "PGM" };
    let malformed = |reason: &str| ImageIoError::Malformed {
        format,
        reason: reason.to_owned(),
    };
    let mut pos = 2;
    let mut number = |what: &str| -> Result<usize, ImageIoError> {
        let tok =
            header_token(bytes, &mut pos).ok_or_else(|| malformed(&format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| malformed(&format!("bad {what}")))
    };
    let width = number("width")?;
    let height = number("height")?;
    let maxval = number("maxval")?;
    if width == 0 || height == 0 {
        return Err(ImageIoError::ZeroDimension);
    }
    if maxval != 255 {
        return Err(ImageIoError::Unsupported(format!(
            "{format} maxval {maxval}"
        )));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(malformed("missing raster"));
    }
    pos += 1;
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| malformed("dimensions overflow"))?;
    let raster = bytes
        .get(pos..pos + need)
        .ok_or_else(|| malformed("truncated raster"))?;
    from_samples(width, height, channels, raster)
}

pub fn save_image(img: &RgbImage, path: impl AsRef<Path>) -> Result<(), ImageIoError> {
    let path = path.as_ref();
    let format = ImageFormat::from_extension(path).ok_or_else(|| {
        ImageIoError::Unsupported(format!("cannot infer format from {}", path.display()))
    })?;
    fs::write(path, encode(img, format)?)?;
    Ok(())
}

/// Encodes `img`. PGM stores the intensity channel.
pub fn encode(img: &RgbImage, format: ImageFormat) -> Result<Vec<u8>, ImageIoError> {
    let (w, h) = img.dims();
    let rgb_bytes = || -> Vec<u8> {
        img.pixels()
            .iter()
            .flat_map(|p| [to_byte(p.r), to_byte(p.g), to_byte(p.b)])
            .collect()
    };
    match format {
        ImageFormat::Png => {
            let mut out = Vec::new();
            {
                let mut enc = png::Encoder::new(&mut out, w as u32, h as u32);
                enc.set_color(png::ColorType::Rgb);
                enc.set_depth(png::BitDepth::Eight);
                let mut writer = enc.write_header()?;
                writer.write_image_data(&rgb_bytes())?;
                writer.finish()?;
            }
            Ok(out)
        }
        ImageFormat::Ppm => {
            let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
            out.extend(rgb_bytes());
            Ok(out)
        }
        ImageFormat::Pgm => {
            let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
            out.extend(img.pixels().iter().map(|p| to_byte(p.intensity())));
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RgbImage {
        RgbImage::from_fn(5, 3, |x, y| {
            Rgb::new(x as f64 / 4.0, y as f64 / 2.0, ((x * y) % 3) as f64 / 2.0)
        })
        .unwrap()
    }

    #[test]
    fn rgb_formats_roundtrip_within_one_level() {
        let img = sample();
        for format in [ImageFormat::Png, ImageFormat::Ppm] {
            let back = decode(&encode(&img, format).unwrap()).unwrap();
            assert_eq!(back.dims(), img.dims());
            for (a, b) in img.pixels().iter().zip(back.pixels()) {
                for (u, v) in [(a.r, b.r), (a.g, b.g), (a.b, b.b)] {
                    assert!((u - v).abs() <= 1.0 / 255.0);
                }
            }
        }
    }

    #[test]
    fn pgm_stores_intensity() {
        let img =
            RgbImage::from_pixels(2, 1, vec![Rgb::gray(0.2), Rgb::new(0.0, 0.3, 0.6)]).unwrap();
        let back = decode(&encode(&img, ImageFormat::Pgm).unwrap()).unwrap();
        assert_eq!(back.get(0, 0), Rgb::gray(51.0 / 255.0));
        assert_eq!(back.get(1, 0), Rgb::gray(77.0 / 255.0));
    }

    #[test]
    fn pnm_header_comments() {
        let mut bytes = b"P5\n# made by hand\n2 # width\n1\n255\n".to_vec();
        bytes.extend([0, 255]);
        let img = decode(&bytes).unwrap();
        assert_eq!(img.dims(), (2, 1));
        assert_eq!(img.get(1, 0), Rgb::gray(1.0));
    }

    #[test]
    fn pnm_errors() {
        assert!(matches!(
            decode(b"P6\n0 4\n255\n"),
            Err(ImageIoError::ZeroDimension)
        ));
        assert!(matches!(
            decode(b"P6\n2 2\n255\n\x00\x01"),
            Err(ImageIoError::Malformed { .. })
        ));
        assert!(matches!(
            decode(b"P5\n1 1\n65535\n\x00\x00"),
            Err(ImageIoError::Unsupported(_))
        ));
        assert!(matches!(
            decode(b"P5\nx 1\n255\n\x00"),
            Err(ImageIoError::Malformed { .. })
        ));
        assert!(matches!(
            decode(b"P3\n1 1\n255\n0 0 0"),
            Err(ImageIoError::Unsupported(_))
        ));
        assert!(matches!(
            decode(b"GIF89a"),
            Err(ImageIoError::Unsupported(_))
        ));
    }

    #[test]
    fn png_gray_and_alpha() {
        let mut gray = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut gray, 2, 1);
            enc.set_color(png::ColorType::Grayscale);
            enc.set_depth(png::BitDepth::Eight);
            let mut w = enc.write_header().unwrap();
            w.write_image_data(&[0, 128]).unwrap();
        }
        let img = decode(&gray).unwrap();
        assert_eq!(img.get(1, 0), Rgb::gray(128.0 / 255.0));

        let mut rgba = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut rgba, 1, 1);
            enc.set_color(png::ColorType::Rgba);
            enc.set_depth(png::BitDepth::Eight);
            let mut w = enc.write_header().unwrap();
            w.write_image_data(&[1, 2, 3, 4]).unwrap();
        }
        assert!(matches!(decode(&rgba), Err(ImageIoError::Unsupported(_))));
    }

    #[test]
    fn save_requires_known_extension() {
        let dir = tempfile::tempdir().unwrap();
        let err = save_image(&sample(), dir.path().join("x.bmp")).unwrap_err();
        assert!(matches!(err, ImageIoError::Unsupported(_)));
        save_image(&sample(), dir.path().join("x.PPM")).unwrap();
        assert_eq!(load_image(dir.path().join("x.PPM")).unwrap().dims(), (5, 3));
    }
}

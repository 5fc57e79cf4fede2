//! `report.csv`: one row per enhanced file that has a reference image.

use std::io::Write;

use serde::Serialize;
use vplume_core::MetricReport;

/// Column order: file, psnr, ssim, mean_brightness, saturated_fraction, dark_fraction.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub file: String,
    pub psnr: f64,
    pub ssim: f64,
    pub mean_brightness: f64,
    pub saturated_fraction: f64,
    pub dark_fraction: f64,
}

impl ReportRow {
    pub fn new(file: impl Into<String>, m: &MetricReport) -> Self {
        Self {
            file: file.into(),
            psnr: m.psnr,
            ssim: m.ssim,
            mean_brightness: m.mean_brightness,
            saturated_fraction: m.saturated_fraction,
            dark_fraction: m.dark_fraction,
        }
    }
}

/// Writes the header and `rows` in the given order.
pub fn write_report<W: Write>(out: W, rows: &[ReportRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "file",
            "psnr",
            "ssim",
            "mean_brightness",
            "saturated_fraction",
            "dark_fraction",
        ])?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

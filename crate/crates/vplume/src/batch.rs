//! Batch driver: enhance a list of files, write outputs, traces and reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use thiserror::Error;
use vplume_core::{enhance, EnhanceConfig, MetricReport};

use crate::io::{load_image, save_image, ImageFormat, ImageIoError};
use crate::report::{write_report, ReportRow};
use crate::trace::trace_to_json;

/// Environment variable that sets the worker count.
pub const THREADS_ENV: &str = "VPLUME_THREADS";

#[derive(Debug, Error)]
pub enum RunError {
    #[error("no inputs matched")]
    NoInputs,
    #[error("invalid input pattern {pattern:?}: {reason}")]
    BadPattern { pattern: String, reason: String },
    #[error("invalid configuration: {0}")]
    Config(#[from] vplume_core::Error),
    #[error("output directory {path} is not writable: {source}")]
    OutputDir {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error(transparent)]
    Image(#[from] ImageIoError),
    #[error("enhancement failed: {0}")]
    Enhance(#[from] vplume_core::Error),
    #[error("failed to write trace: {0}")]
    Trace(std::io::Error),
}

/// Everything one batch run needs.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub inputs: Vec<PathBuf>,
    pub output_dir: PathBuf,
    pub config: EnhanceConfig,
    pub emit_trace: bool,
    /// Directory holding same-named reference images for `report.csv`.
    pub reference_dir: Option<PathBuf>,
    /// Write `timing.csv` and print per-file timings.
    pub timing: bool,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub struct FileOutcome {
    pub input: PathBuf,
    pub output: PathBuf,
    pub cycles: usize,
    /// Wall-clock seconds spent in enhancement, excluding file I/O.
    pub seconds: f64,
    pub report: Option<ReportRow>,
}

type FileResult = Result<FileOutcome, String>;

#[derive(Debug, Default)]
pub struct RunSummary {
    /// Per input, in input order.
    pub results: Vec<(PathBuf, FileResult)>,
}

impl RunSummary {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|(_, r)| r.is_err()).count()
    }

    /// 0 when every file succeeded, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures() == 0 {
            0
        } else {
            1
        }
    }
}

/// Worker count: `VPLUME_THREADS` if set and positive, else available parallelism.
pub fn default_workers() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn has_glob_chars(s: &str) -> bool {
    s.contains(['*', '?', '['])
}

/// Expands glob patterns in order. Matches of each pattern are sorted;
/// duplicates keep their first position.
pub fn expand_inputs<S: AsRef<str>>(patterns: &[S]) -> Result<Vec<PathBuf>, RunError> {
    let mut out: Vec<PathBuf> = Vec::new();
    for pattern in patterns {
        let pattern = pattern.as_ref();
        let mut matches: Vec<PathBuf> = if has_glob_chars(pattern) {
            glob::glob(pattern)
                .map_err(|e| RunError::BadPattern {
                    pattern: pattern.to_owned(),
                    reason: e.to_string(),
                })?
                .filter_map(Result::ok)
                .filter(|p| p.is_file())
                .collect()
        } else {
            let p = PathBuf::from(pattern);
            if p.is_file() {
                vec![p]
            } else {
                Vec::new()
            }
        };
        matches.sort();
        for m in matches {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    if out.is_empty() {
        return Err(RunError::NoInputs);
    }
    Ok(out)
}

/// `<stem>_vp.<ext>` inside `output_dir`. Unknown extensions become `png`.
pub fn output_path(output_dir: &Path, input: &Path) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".to_owned());
    let ext = match ImageFormat::from_extension(input) {
        Some(_) => input
            .extension()
            .map(|e| e.to_string_lossy().into_owned())
            .unwrap_or_default(),
        None => "png".to_owned(),
    };
    output_dir.join(format!("{stem}_vp.{ext}"))
}

fn trace_path(output_dir: &Path, input: &Path) -> PathBuf {
    let stem = input.file_stem().unwrap_or_default().to_string_lossy();
    output_dir.join(format!("{stem}_trace.json"))
}

fn check_output_dir(dir: &Path) -> Result<(), RunError> {
    let wrap = |source| RunError::OutputDir {
        path: dir.to_owned(),
        source,
    };
    fs::create_dir_all(dir).map_err(wrap)?;
    let probe = dir.join(".vplume-write-probe");
    fs::write(&probe, b"").map_err(wrap)?;
    let _ = fs::remove_file(&probe);
    Ok(())
}

fn process_file(input: &Path, m: &RunManifest) -> Result<FileOutcome, FileError> {
    let img = load_image(input)?;
    let start = Instant::now();
    let (enhanced, trace) = enhance(&img, &m.config)?;
    let seconds = start.elapsed().as_secs_f64();

    let output = output_path(&m.output_dir, input);
    save_image(&enhanced, &output)?;
    if m.emit_trace {
        fs::write(
            trace_path(&m.output_dir, input),
            trace_to_json(&trace, &m.config),
        )
        .map_err(FileError::Trace)?;
    }

    let file_name = input
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let report = m.reference_dir.as_ref().and_then(|dir| {
        let ref_path = dir.join(&file_name);
        if !ref_path.is_file() {
            return None;
        }
        let reference = match load_image(&ref_path) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("warning: {}: cannot load reference: {e}", input.display());
                return None;
            }
        };
        match MetricReport::compute(&enhanced, &reference, m.config.tau_policy) {
            Ok(metrics) => Some(ReportRow::new(file_name.clone(), &metrics)),
            Err(e) => {
                eprintln!("warning: {}: no metrics: {e}", input.display());
                None
            }
        }
    });

    Ok(FileOutcome {
        input: input.to_owned(),
        output,
        cycles: trace.cycles.len(),
        seconds,
        report,
    })
}

/// Runs the batch. Per-file failures are reported in the summary and do not
/// stop the run; setup failures return an error before any file is touched.
pub fn run(m: &RunManifest) -> Result<RunSummary, RunError> {
    if m.inputs.is_empty() {
        return Err(RunError::NoInputs);
    }
    m.config.validate()?;
    check_output_dir(&m.output_dir)?;

    let n = m.inputs.len();
    let workers = m.workers.clamp(1, n);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<FileResult>>> = Mutex::new(vec![None; n]);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let input = &m.inputs[i];
                let result = process_file(input, m).map_err(|e| e.to_string());
                match &result {
                    Ok(o) if m.timing => eprintln!(
                        "{}: {} cycle(s), {:.4} s",
                        input.display(),
                        o.cycles,
                        o.seconds
                    ),
                    Ok(_) => {}
                    Err(e) => eprintln!("error: {}: {e}", input.display()),
                }
                slots.lock().unwrap()[i] = Some(result);
            });
        }
    });

    let results: Vec<_> = m
        .inputs
        .iter()
        .cloned()
        .zip(
            slots
                .into_inner()
                .unwrap()
                .into_iter()
                .map(|r| r.expect("every slot filled")),
        )
        .collect();
    let summary = RunSummary { results };

    if m.reference_dir.is_some() {
        let rows: Vec<ReportRow> = summary
            .results
            .iter()
            .filter_map(|(_, r)| r.as_ref().ok().and_then(|o| o.report.clone()))
            .collect();
        let path = m.output_dir.join("report.csv");
        let mut buf = Vec::new();
        write_report(&mut buf, &rows).map_err(|e| RunError::Write {
            path: path.clone(),
            source: e.into(),
        })?;
        fs::write(&path, buf).map_err(|source| RunError::Write { path, source })?;
    }
    if m.timing {
        write_timing(&m.output_dir.join("timing.csv"), &summary)?;
    }
    Ok(summary)
}

fn write_timing(path: &Path, summary: &RunSummary) -> Result<(), RunError> {
    let mut buf = Vec::new();
    writeln!(buf, "file,cycles,seconds").unwrap();
    for (input, r) in &summary.results {
        if let Ok(o) = r {
            writeln!(buf, "{},{},{:.6}", input.display(), o.cycles, o.seconds).unwrap();
        }
    }
    fs::write(path, buf).map_err(|source| RunError::Write {
        path: path.to_owned(),
        source,
    })
}

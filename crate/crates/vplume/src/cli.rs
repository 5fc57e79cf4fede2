//! Command-line arguments.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use vplume_core::{EnhanceConfig, Eq2Mode, ThresholdPolicy, DEFAULT_EPSILON};

use crate::batch::{default_workers, expand_inputs, RunError, RunManifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Eq2Arg {
    Literal,
    Prose,
}

impl From<Eq2Arg> for Eq2Mode {
    fn from(a: Eq2Arg) -> Self {
        match a {
            Eq2Arg::Literal => Eq2Mode::Literal,
            Eq2Arg::Prose => Eq2Mode::Prose,
        }
    }
}

fn parse_tau(s: &str) -> Result<ThresholdPolicy, String> {
    if s.eq_ignore_ascii_case("mean") {
        return Ok(ThresholdPolicy::MeanOfNonzero);
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(ThresholdPolicy::Fixed(v)),
        _ => Err(format!("expected `mean` or a number, got {s:?}")),
    }
}

/// Low-light image enhancement for batches of PNG / PPM / PGM files.
#[derive(Debug, Parser)]
#[command(name = "vplume", version)]
pub struct Args {
    /// Input file or glob pattern; repeatable.
    #[arg(short = 'i', long = "input", required = true, value_name = "GLOB")]
    pub inputs: Vec<String>,

    /// Output directory (created if missing).
    #[arg(short = 'o', long = "out", value_name = "DIR")]
    pub out: PathBuf,

    /// Mean filter side length (odd).
    #[arg(long, default_value_t = 3)]
    pub kernel: usize,

    /// Maximum number of enhancement cycles.
    #[arg(long = "k-max", default_value_t = 8)]
    pub k_max: u32,

    /// Run exactly this many cycles instead of stopping adaptively.
    #[arg(long = "force-cycles", value_name = "N")]
    pub force_cycles: Option<u32>,

    /// Bright/dark split: `mean` (of nonzero samples) or a fixed value.
    #[arg(long, default_value = "mean", value_parser = parse_tau)]
    pub tau: ThresholdPolicy,

    /// Base-layer formula.
    #[arg(long = "eq2-mode", value_enum, default_value_t = Eq2Arg::Literal)]
    pub eq2_mode: Eq2Arg,

    /// Floor for the bright/dark energies and area ratios.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,

    /// Write `<stem>_trace.json` next to each output.
    #[arg(long)]
    pub trace: bool,

    /// Directory of same-named reference images; writes report.csv.
    #[arg(long = "ref", value_name = "DIR")]
    pub reference: Option<PathBuf>,

    /// Print per-file enhancement time and write timing.csv.
    #[arg(long)]
    pub timing: bool,
}

impl Args {
    pub fn config(&self) -> EnhanceConfig {
        EnhanceConfig {
            kernel: self.kernel,
            epsilon: self.epsilon,
            k_max: self.k_max,
            tau_policy: self.tau,
            force_k: self.force_cycles,
            eq2_mode: self.eq2_mode.into(),
        }
    }

    pub fn manifest(&self) -> Result<RunManifest, RunError> {
        let config = self.config();
        config.validate()?;
        Ok(RunManifest {
            inputs: expand_inputs(&self.inputs)?,
            output_dir: self.out.clone(),
            config,
            emit_trace: self.trace,
            reference_dir: self.reference.clone(),
            timing: self.timing,
            workers: default_workers(),
        })
    }
}

//! JSON form of a cycle trace.
//!
//! ```json
//! {
//!   "stop_reason": "comparator",
//!   "cycles": [{ "k": 1, "t": 2, "beta": ..., "gamma": ..., "theta": ...,
//!                "u": ..., "tau": ..., "stats": { "ic": {...}, ... }, "vp": {...} }],
//!   "conventions": { ... }
//! }
//! ```
//!
//! `conventions` records the choices that change the numbers: the log base
//! in the gain and regulator formulas, the base-layer mode and the split
//! policy.

use serde::Serialize;
use vplume_core::{CycleRecord, CycleTrace, EnhanceConfig, Eq2Mode, StopReason, ThresholdPolicy};

#[derive(Debug, Serialize)]
pub struct Conventions {
    pub beta_log: &'static str,
    pub regulator_log: &'static str,
    pub eq2_mode: Eq2Mode,
    pub tau_policy: ThresholdPolicy,
    pub kernel: usize,
    pub epsilon: f64,
    pub k_max: u32,
}

impl Conventions {
    pub fn from_config(cfg: &EnhanceConfig) -> Self {
        Self {
            beta_log: "ln",
            regulator_log: "log10",
            eq2_mode: cfg.eq2_mode,
            tau_policy: cfg.tau_policy,
            kernel: cfg.kernel,
            epsilon: cfg.epsilon,
            k_max: cfg.k_max,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceDocument<'a> {
    pub stop_reason: StopReason,
    pub cycles: &'a [CycleRecord],
    pub conventions: Conventions,
}

impl<'a> TraceDocument<'a> {
    pub fn new(trace: &'a CycleTrace, cfg: &EnhanceConfig) -> Self {
        Self {
            stop_reason: trace.stop_reason,
            cycles: &trace.cycles,
            conventions: Conventions::from_config(cfg),
        }
    }
}

pub fn trace_to_json(trace: &CycleTrace, cfg: &EnhanceConfig) -> String {
    // Serializing plain structs of finite floats cannot fail.
    serde_json::to_string_pretty(&TraceDocument::new(trace, cfg)).expect("trace serializes")
}

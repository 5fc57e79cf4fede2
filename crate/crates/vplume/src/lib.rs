//! File formats, trace and report output, and the batch driver for
//! [`vplume_core`].

pub mod batch;
pub mod cli;
pub mod io;
pub mod report;
pub mod trace;

pub use batch::{run, RunError, RunManifest, RunSummary};
pub use io::{load_image, save_image, ImageFormat, ImageIoError};
pub use vplume_core;

use core::fmt;

/// Errors produced by the enhancement core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Width or height was zero, or the sample buffer did not match them.
    InvalidDimensions {
        width: usize,
        height: usize,
        len: usize,
    },
    /// A sample was NaN or infinite.
    NonFiniteSample,
    /// A color sample fell outside the unit interval.
    SampleOutOfRange,
    /// Box filter side must be odd and at least 1.
    InvalidKernel(usize),
    /// Two images that must agree in size did not.
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// Image is smaller than an operation's window.
    TooSmall {
        width: usize,
        height: usize,
        min: usize,
    },
    /// The input carries no usable signal (e.g. every brightness sample is zero).
    DegenerateInput(&'static str),
    /// A configuration value is out of range.
    InvalidConfig(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimensions { width, height, len } => write!(
                f,
                "invalid image dimensions {width}x{height} for {len} samples"
            ),
            Error::NonFiniteSample => f.write_str("image contains a NaN or infinite sample"),
            Error::SampleOutOfRange => f.write_str("color sample outside [0, 1]"),
            Error::InvalidKernel(k) => write!(f, "box filter kernel must be odd and >= 1, got {k}"),
            Error::DimensionMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::TooSmall { width, height, min } => {
                write!(
                    f,
                    "image {width}x{height} is smaller than the {min}x{min} window"
                )
            }
            Error::DegenerateInput(what) => write!(f, "degenerate input: {what}"),
            Error::InvalidConfig(what) => write!(f, "invalid configuration: {what}"),
        }
    }
}

impl core::error::Error for Error {}

use thiserror::Error;

/// Unified error type for grid construction, transforms and experiment runs.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid configuration (bad grid size, non-positive step, …).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Model parameters outside the admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two objects built against different grids were combined.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A quadrature or iteration failed to reach its target accuracy.
    #[error("accuracy not reached: residual {residual:.3e} (target {target:.3e}) in {what}")]
    Accuracy {
        what: String,
        residual: f64,
        target: f64,
    },

    /// Non-finite values appeared in a spectral sum.
    #[error("divergent kernel evaluation: {0}")]
    DivergentKernel(String),

    /// An evolution pushed too much mass against the outer boundary; the
    /// run is contaminated by domain truncation.
    #[error(
        "truncation contamination at t = {t:.6}: boundary mass fraction {fraction:.3e} exceeds alarm {alarm:.3e}; increase r_max"
    )]
    TruncationContamination { t: f64, fraction: f64, alarm: f64 },

    /// Input that is degenerate for the requested operation (zero field, …).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Snapshot spacing too coarse for the requested diagnostic.
    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),

    /// Operation restricted to particular dimensions.
    #[error("unsupported dimension d = {0} for this operation")]
    UnsupportedDimension(usize),

    /// Exponent outside its admissible interval.
    #[error("exponent out of range: {0}")]
    ExponentOutOfRange(String),

    /// The envelope |t|^{-2/q} is unbounded at t = 0.
    #[error("decay envelope is unbounded at t = 0")]
    UnboundedEnvelope,

    /// Unknown sweep axis name.
    #[error("unknown sweep axis: {0}")]
    UnknownAxis(String),

    /// Malformed experiment configuration file.
    #[error("config parse error: {0}")]
    ConfigParse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size {0} is invalid: circle grids must be even and at least 8 samples")]
    InvalidCircleGrid(usize),

    #[error("plane grid size {0} is invalid: at least 16 samples per axis are required")]
    InvalidPlaneGrid(usize),

    #[error("grid mismatch: {left} vs {right} samples")]
    GridMismatch { left: usize, right: usize },

    #[error("angular grid of {n_theta} samples does not divide the circle grid of {n} samples")]
    ThetaGridMismatch { n_theta: usize, n: usize },

    #[error("non-finite value at sample {0}")]
    NonFinite(usize),

    #[error("invalid parameter `{name}` = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("lambda * omega = {product} exceeds the cap of {cap}")]
    ParameterCap { product: f64, cap: f64 },

    #[error("{n} circle samples do not resolve the wavelet; at least {required} are required")]
    Resolution { n: usize, required: usize },

    #[error("mother wavelet must have unit norm, got {0}")]
    NotNormalized(f64),

    #[error("field carries no ring densities")]
    MissingRingData,

    #[error("field carries no provenance (mother wavelet and analysed vector)")]
    MissingProvenance,

    #[error("field is not in the range of the transform (CR residual {residual:e})")]
    NotInRange { residual: f64 },

    #[error("step {step} is not a positive multiple of the grid spacing {spacing}")]
    InvalidStep { step: f64, spacing: f64 },

    #[error("data does not decay at the grid boundary (boundary/max ratio {ratio:e})")]
    Truncation { ratio: f64 },

    #[error("ring energy at omega_max is not negligible (ratio {ratio:e})")]
    TailEnergy { ratio: f64 },
}

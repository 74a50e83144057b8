//! Dimension-related analysis of Riesz product measures.
//!
//! All estimates run on finite partial products `P_{a,n}`; the limsup and
//! liminf quantities of the underlying theory are replaced by finite-`n`
//! proxies and labelled as such.

mod dimension;
mod energy;
mod interval;
mod kernel;

pub use dimension::{
    dimension_bounds, peyriere_integral, DimensionReport, IntegralMethod, PeyriereEstimate,
    PeyriereOptions, LOG_FLOOR,
};
pub use energy::{
    alpha_energy_band_series, alpha_energy_direct, band_edges, band_plancherel_mass,
    energy_dimension_bound, ratio_verdict, BandVariant, EnergyReport, EnergyVariant,
    SeriesVerdict, MAX_EXACT_BAND_INDEX, RATIO_TOLERANCE, RATIO_WINDOW,
};
pub use interval::{
    holder_transfer_check, interval_measure, local_holder, HolderGrid, HolderSample,
    HolderTransfer, IntervalMass, ScaleRatio, RESOLUTION_FACTOR,
};
pub use kernel::{
    fejer_kernel, interval_upper_bound, smooth_by_vp, smoothed_partial_product,
    vallee_poussin_kernel, IntervalBound, IntervalUpperBound,
};

use thiserror::Error;

use crate::riesz::RieszError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error(transparent)]
    Riesz(#[from] RieszError),
    #[error("alpha must lie in (0, 1), got {alpha}")]
    AlphaOutOfRange { alpha: f64 },
    #[error("{variant:?} is not a band-series variant")]
    NotBandVariant { variant: EnergyVariant },
    #[error("kernel plateau must be at least 1, got {plateau}")]
    InvalidPlateau { plateau: i64 },
    #[error("spectral gap fails at n = {n}: λ[n+1] = {next} is not above 3·Σλ = {threshold}")]
    GapFails { n: usize, next: i64, threshold: i64 },
    #[error("depth {depth} must exceed n = {n}")]
    DepthNotAbove { n: usize, depth: usize },
    #[error("ν_{j} = {nu} is not positive; lacunarity is insufficient")]
    NonPositiveNu { j: usize, nu: i64 },
    #[error("need N < J_max, got N = {n} and J_max = {j_max}")]
    EmptyTail { n: usize, j_max: usize },
    #[error("λ_{n} = {lambda} is below 2, so log λ_n does not normalize")]
    FrequencyTooSmall { n: usize, lambda: i64 },
    #[error("depth {depth} is too shallow; at least {required} is required")]
    DepthTooShallow { depth: usize, required: usize },
    #[error("scales must be positive and strictly decreasing")]
    ScalesNotDecreasing,
    #[error("minimal frequency ratio {ratio} must exceed 3")]
    RatioTooSmall { ratio: f64 },
    #[error("empty index range")]
    EmptyRange,
    #[error("{what} needs {requested} entries, above the cap of {cap}")]
    ResourceCap {
        what: &'static str,
        requested: u64,
        cap: u64,
    },
    #[error("at least {min} Monte Carlo samples are required, got {got}")]
    TooFewSamples { got: usize, min: usize },
}

impl AnalysisError {
    /// Refusals caused by size caps rather than invalid input.
    pub fn is_resource(&self) -> bool {
        matches!(self, AnalysisError::ResourceCap { .. })
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<(), AnalysisError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(AnalysisError::AlphaOutOfRange { alpha })
    }
}

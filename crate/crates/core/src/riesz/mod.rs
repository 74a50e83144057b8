//! Riesz products `Π (1 + Re(a_j e^{iλ_j t}))` on the Fourier side.
//!
//! Everything here works with finite partial products `P_{a,n}`, expanded
//! exactly by sparse multiplication over integer frequencies.

mod expand;
mod phases;
mod spec;

pub use expand::{
    convolve_products, eval_partial_product, expand_partial_product, fourier_coefficient,
    gram_centered_exponentials, sign_patterns_for, spectrum_bands, Band, CoefficientValue,
    SignPattern,
};
pub use phases::{randomize_phases, PHASE_GENERATOR};
pub use spec::{
    validate_spec, Coefficient, CoefficientSequence, FrequencySequence, PhaseSource, Regime,
    RieszSpec, SpecSummary, MAX_FREQUENCY_SUM,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RieszError {
    #[error("frequency sequence is empty")]
    EmptySequence,
    #[error("frequency {value} at index {index} is not a positive integer")]
    NonPositive { index: usize, value: i64 },
    #[error("frequencies must be strictly increasing (violated at index {index})")]
    NotIncreasing { index: usize },
    #[error("frequency sum exceeds the supported integer range")]
    FrequencyOverflow,
    #[error("invalid geometric base {base}; must be at least 2")]
    InvalidBase { base: i64 },
    #[error("{frequencies} frequencies but {coefficients} coefficients")]
    LengthMismatch {
        frequencies: usize,
        coefficients: usize,
    },
    #[error("coefficient {index} is not a finite polar pair")]
    NonFiniteCoefficient { index: usize },
    #[error("modulus bound |a_j| <= 1 violated at index {index} (|a| = {modulus})")]
    ModulusBound { index: usize, modulus: f64 },
    #[error("lacunarity λ[j+1]/λ[j] >= 3 violated at index {index} (ratio {ratio})")]
    Lacunarity { index: usize, ratio: f64 },
    #[error("dyadic regime needs consecutive powers of two (violated at index {index})")]
    NotDyadic { index: usize },
    #[error("dyadic regime needs sup |a_j| < 1 (index {index} has |a| = {modulus})")]
    DyadicModulus { index: usize, modulus: f64 },
    #[error("index {index} out of range (largest index {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("{operation} is not supported in the {regime} regime")]
    UnsupportedRegime {
        operation: &'static str,
        regime: Regime,
    },
    #[error("coefficient at frequency {frequency} is not yet stable at depth {depth}")]
    Unstable { frequency: i64, depth: usize },
}

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RieszError;

/// Frequency sums above this are refused so that every signed combination
/// of frequencies, and a few multiples of it, stays inside `i64`.
pub const MAX_FREQUENCY_SUM: i64 = 1 << 60;

/// Strictly increasing positive integer frequencies `λ_0 < λ_1 < … < λ_J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencySequence {
    values: Vec<i64>,
}

impl FrequencySequence {
    pub fn explicit(values: Vec<i64>) -> Result<Self, RieszError> {
        if values.is_empty() {
            return Err(RieszError::EmptySequence);
        }
        for (index, &value) in values.iter().enumerate() {
            if value < 1 {
                return Err(RieszError::NonPositive { index, value });
            }
        }
        for index in 1..values.len() {
            if values[index] <= values[index - 1] {
                return Err(RieszError::NotIncreasing { index });
            }
        }
        let mut total: i64 = 0;
        for &v in &values {
            total = total
                .checked_add(v)
                .filter(|&s| s <= MAX_FREQUENCY_SUM)
                .ok_or(RieszError::FrequencyOverflow)?;
        }
        Ok(Self { values })
    }

    /// `λ_j = base^j` for `j = 0..count`.
    pub fn geometric(base: i64, count: usize) -> Result<Self, RieszError> {
        if base < 2 {
            return Err(RieszError::InvalidBase { base });
        }
        let mut values = Vec::with_capacity(count);
        let mut current: i64 = 1;
        for j in 0..count {
            values.push(current);
            if j + 1 < count {
                current = current
                    .checked_mul(base)
                    .ok_or(RieszError::FrequencyOverflow)?;
            }
        }
        Self::explicit(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize) -> i64 {
        self.values[j]
    }

    /// `Σ_{i≤n} λ_i`; `partial_sum(None)` style callers use [`Self::sum_below`].
    pub fn partial_sum(&self, n: usize) -> i64 {
        self.values[..=n].iter().sum()
    }

    /// `Σ_{i<n} λ_i` (zero for `n = 0`).
    pub fn sum_below(&self, n: usize) -> i64 {
        self.values[..n].iter().sum()
    }

    /// `min_j λ_{j+1}/λ_j`, or `+∞` for a single frequency.
    pub fn ratio_min(&self) -> f64 {
        self.ratios().fold(f64::INFINITY, f64::min)
    }

    /// `max_j λ_{j+1}/λ_j`, or `1` for a single frequency.
    pub fn ratio_max(&self) -> f64 {
        self.ratios().fold(1.0, f64::max)
    }

    fn ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.windows(2).map(|w| w[1] as f64 / w[0] as f64)
    }

    /// The spectral gap predicate `λ_{n+1} > 3·Σ_{i≤n} λ_i`; `None` when
    /// `λ_{n+1}` does not exist.
    pub fn gap(&self, n: usize) -> Option<bool> {
        let next = *self.values.get(n + 1)?;
        Some(next > 3 * self.partial_sum(n))
    }

    pub fn gap_table(&self) -> Vec<bool> {
        (0..self.len().saturating_sub(1))
            .map(|n| self.gap(n).unwrap_or(false))
            .collect()
    }

    /// `ν_j = λ_{j+1} − Σ_{i≤j} λ_i`, a lower bound for the frequencies of
    /// `P_{j+1} − P_j`.
    pub fn nu(&self, j: usize) -> Option<i64> {
        let next = *self.values.get(j + 1)?;
        Some(next - self.partial_sum(j))
    }

    /// `Some(q)` when `λ_{j+1} = q λ_j` for every `j`.
    pub fn geometric_ratio(&self) -> Option<i64> {
        if self.values.len() < 2 {
            return None;
        }
        let q = self.values[1] / self.values[0];
        self.values
            .windows(2)
            .all(|w| w[1] == q * w[0])
            .then_some(q)
    }

    pub fn scaled(&self, k: i64) -> Result<Self, RieszError> {
        if k < 1 {
            return Err(RieszError::InvalidBase { base: k });
        }
        let values = self
            .values
            .iter()
            .map(|&v| v.checked_mul(k).ok_or(RieszError::FrequencyOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Self::explicit(values)
    }
}

/// A complex coefficient `a = r e^{iθ}` kept in canonical polar form:
/// `θ ∈ [0, 2π)` and `r = 0 ⇒ θ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub r: f64,
    pub theta: f64,
}

impl Coefficient {
    pub const ZERO: Coefficient = Coefficient { r: 0.0, theta: 0.0 };

    pub fn polar(r: f64, theta: f64) -> Self {
        if r == 0.0 {
            return Self::ZERO;
        }
        let mut theta = theta.rem_euclid(TAU);
        if theta >= TAU {
            theta = 0.0;
        }
        Self { r, theta }
    }

    pub fn real(x: f64) -> Self {
        if x < 0.0 {
            Self::polar(-x, std::f64::consts::PI)
        } else {
            Self::polar(x, 0.0)
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        let (r, theta) = z.to_polar();
        Self::polar(r, theta)
    }

    pub fn to_complex(self) -> Complex64 {
        if self.theta == 0.0 {
            Complex64::new(self.r, 0.0)
        } else {
            Complex64::from_polar(self.r, self.theta)
        }
    }
}

/// Where randomized phases came from, kept so that outputs can be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseSource {
    pub seed: u64,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSequence {
    entries: Vec<Coefficient>,
    phase_source: Option<PhaseSource>,
}

impl CoefficientSequence {
    pub fn new(entries: Vec<Coefficient>) -> Self {
        let entries = entries
            .into_iter()
            .map(|c| Coefficient::polar(c.r, c.theta))
            .collect();
        Self {
            entries,
            phase_source: None,
        }
    }

    pub fn constant(r: f64, theta: f64, len: usize) -> Self {
        Self::new(vec![Coefficient::polar(r, theta); len])
    }

    pub fn from_complex(values: &[Complex64]) -> Self {
        Self::new(values.iter().map(|&z| Coefficient::from_complex(z)).collect())
    }

    pub fn with_phase_source(mut self, source: PhaseSource) -> Self {
        self.phase_source = Some(source);
        self
    }

    pub fn entries(&self) -> &[Coefficient] {
        &self.entries
    }

    pub fn phase_source(&self) -> Option<&PhaseSource> {
        self.phase_source.as_ref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, j: usize) -> Complex64 {
        self.entries[j].to_complex()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.entries.iter().map(|c| c.to_complex()).collect()
    }

    pub fn sup_modulus(&self) -> f64 {
        self.entries.iter().map(|c| c.r).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `λ_{j+1} ≥ 3 λ_j`: expansion frequencies never collide.
    Lacunary3,
    /// Consecutive powers of two with `sup |a_j| < 1`; colliding sign
    /// patterns are aggregated.
    Dyadic,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Lacunary3 => f.write_str("lacunary3"),
            Regime::Dyadic => f.write_str("dyadic"),
        }
    }
}

/// A validated Riesz product `Π (1 + Re(a_j e^{iλ_j t}))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RieszSpec {
    freqs: FrequencySequence,
    coeffs: CoefficientSequence,
    regime: Regime,
}

impl RieszSpec {
    /// Checks lengths, the modulus bound and the regime condition, reporting
    /// the first violation with its index.
    pub fn new(
        freqs: FrequencySequence,
        coeffs: CoefficientSequence,
        regime: Regime,
    ) -> Result<Self, RieszError> {
        if freqs.len() != coeffs.len() {
            return Err(RieszError::LengthMismatch {
                frequencies: freqs.len(),
                coefficients: coeffs.len(),
            });
        }
        for (index, c) in coeffs.entries().iter().enumerate() {
            if !c.r.is_finite() || !c.theta.is_finite() || c.r < 0.0 {
                return Err(RieszError::NonFiniteCoefficient { index });
            }
            if c.r > 1.0 {
                return Err(RieszError::ModulusBound {
                    index,
                    modulus: c.r,
                });
            }
        }
        match regime {
            Regime::Lacunary3 => {
                for (index, w) in freqs.values().windows(2).enumerate() {
                    if w[1] < 3 * w[0] {
                        return Err(RieszError::Lacunarity {
                            index,
                            ratio: w[1] as f64 / w[0] as f64,
                        });
                    }
                }
            }
            Regime::Dyadic => {
                let first = freqs.get(0);
                if first & (first - 1) != 0 {
                    return Err(RieszError::NotDyadic { index: 0 });
                }
                for (index, w) in freqs.values().windows(2).enumerate() {
                    if w[1] != 2 * w[0] {
                        return Err(RieszError::NotDyadic { index: index + 1 });
                    }
                }
                for (index, c) in coeffs.entries().iter().enumerate() {
                    if c.r >= 1.0 {
                        return Err(RieszError::DyadicModulus {
                            index,
                            modulus: c.r,
                        });
                    }
                }
            }
        }
        Ok(Self {
            freqs,
            coeffs,
            regime,
        })
    }

    /// Geometric frequencies `q^j` with a constant coefficient `r e^{iθ}`.
    pub fn geometric(q: i64, count: usize, r: f64, theta: f64, regime: Regime) -> Result<Self, RieszError> {
        Self::new(
            FrequencySequence::geometric(q, count)?,
            CoefficientSequence::constant(r, theta, count),
            regime,
        )
    }

    pub fn freqs(&self) -> &FrequencySequence {
        &self.freqs
    }

    pub fn coeffs(&self) -> &CoefficientSequence {
        &self.coeffs
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Largest valid index `J`.
    pub fn max_index(&self) -> usize {
        self.freqs.len() - 1
    }

    pub fn lambda(&self, j: usize) -> i64 {
        self.freqs.get(j)
    }

    pub fn a(&self, j: usize) -> Complex64 {
        self.coeffs.get(j)
    }

    pub fn check_index(&self, index: usize) -> Result<(), RieszError> {
        if index > self.max_index() {
            Err(RieszError::IndexOutOfRange {
                index,
                max: self.max_index(),
            })
        } else {
            Ok(())
        }
    }

    pub fn require_lacunary(&self, operation: &'static str) -> Result<(), RieszError> {
        match self.regime {
            Regime::Lacunary3 => Ok(()),
            regime => Err(RieszError::UnsupportedRegime { operation, regime }),
        }
    }

    pub fn with_coeffs(&self, coeffs: CoefficientSequence) -> Result<Self, RieszError> {
        Self::new(self.freqs.clone(), coeffs, self.regime)
    }

    /// The image measure under `t -> k t`.
    pub fn dilated(&self, k: i64) -> Result<Self, RieszError> {
        Self::new(self.freqs.scaled(k)?, self.coeffs.clone(), self.regime)
    }

    pub fn summary(&self) -> SpecSummary {
        SpecSummary {
            regime: self.regime,
            ratio_min: self.freqs.ratio_min(),
            ratio_max: self.freqs.ratio_max(),
            gaps: self.freqs.gap_table(),
        }
    }
}

/// What validation records about an accepted spec.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecSummary {
    pub regime: Regime,
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// `gaps[n]` is the predicate `λ_{n+1} > 3·Σ_{i≤n} λ_i`.
    pub gaps: Vec<bool>,
}

/// Validates raw parts into a [`RieszSpec`] and returns its summary.
pub fn validate_spec(
    freqs: FrequencySequence,
    coeffs: CoefficientSequence,
    regime: Regime,
) -> Result<(RieszSpec, SpecSummary), RieszError> {
    let spec = RieszSpec::new(freqs, coeffs, regime)?;
    let summary = spec.summary();
    Ok((spec, summary))
}

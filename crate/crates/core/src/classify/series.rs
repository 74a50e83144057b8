use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ClassifyError;
use crate::riesz::{Coefficient, CoefficientSequence, FrequencySequence};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailBehavior {
    Divergent,
    Convergent,
    #[default]
    Unknown,
}

/// Partial sums of a nonnegative series plus what the caller asserts about
/// its tail.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesEvidence {
    pub series: &'static str,
    pub partial_sums: Vec<f64>,
    pub declared_tail: TailBehavior,
    /// Mean increment of the partial sums over the last decade of indices
    /// (from `⌊N/10⌋` to `N − 1`). Reported only; never used for a verdict.
    pub numeric_trend: f64,
}

impl SeriesEvidence {
    fn from_terms(series: &'static str, terms: impl IntoIterator<Item = f64>) -> Self {
        let partial_sums: Vec<f64> = terms
            .into_iter()
            .scan(0.0, |acc, t| {
                *acc += t;
                Some(*acc)
            })
            .collect();
        let n = partial_sums.len();
        let start = n / 10;
        let numeric_trend = if n >= 2 && n - 1 > start {
            (partial_sums[n - 1] - partial_sums[start]) / (n - 1 - start) as f64
        } else {
            0.0
        };
        Self {
            series,
            partial_sums,
            declared_tail: TailBehavior::Unknown,
            numeric_trend,
        }
    }

    pub fn declare(mut self, tail: TailBehavior) -> Self {
        self.declared_tail = tail;
        self
    }

    pub fn last(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0)
    }
}

fn check_terms(a: &CoefficientSequence, b: &CoefficientSequence, terms: usize) -> Result<(), ClassifyError> {
    if a.len() < terms || b.len() < terms {
        return Err(ClassifyError::TooShort {
            a: a.len(),
            b: b.len(),
            terms,
        });
    }
    Ok(())
}

fn gaps<'s>(a: &'s CoefficientSequence, b: &'s CoefficientSequence, terms: usize) -> impl Iterator<Item = f64> + 's {
    (0..terms).map(move |j| (a.get(j) - b.get(j)).norm_sqr())
}

/// Partial sums of `Σ |a_j − b_j|²`.
pub fn series_gap_l2(
    a: &CoefficientSequence,
    b: &CoefficientSequence,
    terms: usize,
) -> Result<SeriesEvidence, ClassifyError> {
    check_terms(a, b, terms)?;
    Ok(SeriesEvidence::from_terms("l2_gap", gaps(a, b, terms)))
}

/// Partial sums of `Σ |a_j − b_j|² / (1 − |a_j|)`. Not symmetric in `a, b`.
pub fn series_gap_weighted(
    a: &CoefficientSequence,
    b: &CoefficientSequence,
    terms: usize,
) -> Result<SeriesEvidence, ClassifyError> {
    check_terms(a, b, terms)?;
    if let Some(index) = a.entries()[..terms].iter().position(|c| c.r >= 1.0) {
        return Err(ClassifyError::WeightSingular { index });
    }
    let weights = a.entries()[..terms].iter().map(|c| 1.0 - c.r);
    Ok(SeriesEvidence::from_terms(
        "weighted_gap",
        gaps(a, b, terms).zip(weights).map(|(g, w)| g / w),
    ))
}

/// Coordinate-path length between two points of the closed disc for
/// `ds² = dθ² + (1 − r)^{−1/2} dr²`: the shorter angular arc plus
/// `(4/3)|(1 − r_a)^{3/4} − (1 − r_b)^{3/4}|`. An upper bound for the
/// geodesic distance, within a factor √2 of it.
pub fn ks_distance(a: Complex64, b: Complex64) -> Result<f64, ClassifyError> {
    let (a, b) = (Coefficient::from_complex(a), Coefficient::from_complex(b));
    for c in [a, b] {
        if c.r > 1.0 + 1e-12 {
            return Err(ClassifyError::ModulusAboveOne { modulus: c.r });
        }
    }
    let d = (a.theta - b.theta).abs();
    let angular = d.min(TAU - d).min(PI);
    let radial_coord = |r: f64| (1.0 - r.min(1.0)).powf(0.75);
    let radial = 4.0 / 3.0 * (radial_coord(a.r) - radial_coord(b.r)).abs();
    Ok(angular + radial)
}

/// Partial sums of `Σ d(a_j, b_j)²` with `d` from [`ks_distance`].
pub fn series_gap_ks(
    a: &CoefficientSequence,
    b: &CoefficientSequence,
    terms: usize,
) -> Result<SeriesEvidence, ClassifyError> {
    check_terms(a, b, terms)?;
    let terms = (0..terms)
        .map(|j| ks_distance(a.get(j), b.get(j)).map(|d| d * d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SeriesEvidence::from_terms("ks_gap", terms))
}

/// Partial sums of `Σ (λ_j / λ_{j+1})²`.
pub fn lacunarity_series(freqs: &FrequencySequence) -> SeriesEvidence {
    let v = freqs.values();
    SeriesEvidence::from_terms(
        "lacunarity",
        v.windows(2).map(|w| (w[0] as f64 / w[1] as f64).powi(2)),
    )
}

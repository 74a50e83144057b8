//! α-energy of Riesz products, `Σ_{n≠0} |μ̂(n)|² |n|^{α−1}`.
//!
//! Three routes are exposed:
//!
//! * [`alpha_energy_direct`] sums over the coefficients of any
//!   [`TrigPolynomial`], grouped by caller-supplied band edges;
//! * [`alpha_energy_band_series`] with [`BandVariant::Product`] sums the
//!   closed form `Σ λ_n^{α−1} Π_{j≤n}(1+|a_j|²)`, whose term ratio for
//!   `λ_j = q^j` and constant modulus is exactly `q^{α−1}(1+r²)`;
//! * [`alpha_energy_band_series`] with [`BandVariant::Exact`] enumerates the
//!   sign patterns of each band and weights every frequency by its own
//!   `|m|^{α−1}`. It agrees with the direct sum to rounding, and its term
//!   ratio tends to `q^{α−1}(1+r²/2)`.

use serde::Serialize;

use super::{check_alpha, AnalysisError};
use crate::riesz::RieszSpec;
use crate::trig::TrigPolynomial;

/// Number of trailing terms inspected by the ratio test.
pub const RATIO_WINDOW: usize = 5;
/// `|ratio − 1|` below this leaves the verdict undecided.
pub const RATIO_TOLERANCE: f64 = 1e-3;
/// Exact band enumeration visits `3^n` patterns for band `n`.
pub const MAX_EXACT_BAND_INDEX: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesVerdict {
    Convergent,
    Divergent,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyVariant {
    Direct,
    BandProduct,
    BandExact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BandVariant {
    Product,
    Exact,
}

impl From<BandVariant> for EnergyVariant {
    fn from(v: BandVariant) -> Self {
        match v {
            BandVariant::Product => EnergyVariant::BandProduct,
            BandVariant::Exact => EnergyVariant::BandExact,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyReport {
    pub alpha: f64,
    pub variant: EnergyVariant,
    /// Contribution of each band (or edge segment).
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// `(T_last / T_{last−4})^{1/4}` when defined.
    pub ratio: Option<f64>,
    pub verdict: SeriesVerdict,
}

impl EnergyReport {
    fn from_terms(alpha: f64, variant: EnergyVariant, terms: Vec<f64>) -> Self {
        let partial_sums = terms
            .iter()
            .scan(0.0, |acc, &t| {
                *acc += t;
                Some(*acc)
            })
            .collect();
        let (ratio, verdict) = ratio_verdict(&terms);
        Self {
            alpha,
            variant,
            terms,
            partial_sums,
            ratio,
            verdict,
        }
    }

    pub fn total(&self) -> f64 {
        self.partial_sums.last().copied().unwrap_or(0.0)
    }
}

/// Ratio test on the last [`RATIO_WINDOW`] terms. An all-zero tail is
/// convergent; a tail too short or too close to ratio 1 is undecided.
pub fn ratio_verdict(terms: &[f64]) -> (Option<f64>, SeriesVerdict) {
    if terms.iter().all(|&t| t == 0.0) {
        return (None, SeriesVerdict::Convergent);
    }
    if terms.len() < RATIO_WINDOW {
        return (None, SeriesVerdict::Undecided);
    }
    let last = terms[terms.len() - 1];
    let first = terms[terms.len() - RATIO_WINDOW];
    if first <= 0.0 || last <= 0.0 {
        return (None, SeriesVerdict::Undecided);
    }
    let ratio = (last / first).powf(1.0 / (RATIO_WINDOW - 1) as f64);
    let verdict = if ratio < 1.0 - RATIO_TOLERANCE {
        SeriesVerdict::Convergent
    } else if ratio > 1.0 + RATIO_TOLERANCE {
        SeriesVerdict::Divergent
    } else {
        SeriesVerdict::Undecided
    };
    (Some(ratio), verdict)
}

/// Band edges `Σ_{i≤n} λ_i` for `n = 0..=n_max`: band `n` lies in
/// `(edge_{n−1}, edge_n]` under the lacunary regime.
pub fn band_edges(spec: &RieszSpec, n_max: usize) -> Vec<i64> {
    (0..=n_max.min(spec.max_index()))
        .map(|n| spec.freqs().partial_sum(n))
        .collect()
}

/// `Σ_{0<|n|≤cutoff} |c_n|² |n|^{α−1}`, split into segments
/// `(edge_{k−1}, edge_k]`. Frequencies above the last edge (up to `cutoff`)
/// form one more segment; with no edges the whole sum is a single term.
pub fn alpha_energy_direct(
    poly: &TrigPolynomial,
    alpha: f64,
    cutoff: i64,
    edges: &[i64],
) -> Result<EnergyReport, AnalysisError> {
    check_alpha(alpha)?;
    let mut bounds: Vec<i64> = edges.iter().copied().filter(|&e| e < cutoff).collect();
    bounds.push(cutoff);
    let mut terms = vec![0.0; bounds.len()];
    let mut by_abs: Vec<(i64, f64)> = poly
        .iter()
        .filter(|&(n, _)| n != 0 && n.abs() <= cutoff)
        .map(|(n, c)| (n.abs(), c.norm_sqr() * (n.abs() as f64).powf(alpha - 1.0)))
        .collect();
    by_abs.sort_by_key(|&(m, _)| m);
    let mut segment = 0;
    for (m, w) in by_abs {
        while m > bounds[segment] {
            segment += 1;
        }
        terms[segment] += w;
    }
    Ok(EnergyReport::from_terms(alpha, EnergyVariant::Direct, terms))
}

/// Plancherel mass `Σ_{m∈band n} |c_m|²` over both signs,
/// `(|a_n|²/2) Π_{j<n} (1 + |a_j|²/2)`.
pub fn band_plancherel_mass(spec: &RieszSpec, n: usize) -> f64 {
    let below: f64 = (0..n).map(|j| 1.0 + spec.a(j).norm_sqr() / 2.0).product();
    spec.a(n).norm_sqr() / 2.0 * below
}

/// Band-by-band α-energy for `n = 0..=n_max`, with the ratio-test verdict.
pub fn alpha_energy_band_series(
    spec: &RieszSpec,
    alpha: f64,
    n_max: usize,
    variant: BandVariant,
) -> Result<EnergyReport, AnalysisError> {
    check_alpha(alpha)?;
    spec.require_lacunary("alpha_energy_band_series")?;
    spec.check_index(n_max)?;
    let terms = match variant {
        BandVariant::Product => product_terms(spec, alpha, n_max),
        BandVariant::Exact => exact_terms(spec, alpha, n_max)?,
    };
    Ok(EnergyReport::from_terms(alpha, variant.into(), terms))
}

fn product_terms(spec: &RieszSpec, alpha: f64, n_max: usize) -> Vec<f64> {
    let mut prod = 1.0;
    (0..=n_max)
        .map(|n| {
            prod *= 1.0 + spec.a(n).norm_sqr();
            (spec.lambda(n) as f64).powf(alpha - 1.0) * prod
        })
        .collect()
}

fn exact_terms(spec: &RieszSpec, alpha: f64, n_max: usize) -> Result<Vec<f64>, AnalysisError> {
    let active = (0..n_max).filter(|&j| spec.a(j).norm_sqr() > 0.0).count();
    if active > MAX_EXACT_BAND_INDEX {
        return Err(AnalysisError::ResourceCap {
            what: "exact band enumeration",
            requested: 3u64.saturating_pow(active as u32),
            cap: 3u64.pow(MAX_EXACT_BAND_INDEX as u32),
        });
    }
    // (frequency, |coefficient|²) for every pattern on the indices below n.
    let mut lower: Vec<(i64, f64)> = vec![(0, 1.0)];
    let mut terms = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let lambda = spec.lambda(n);
        let w = spec.a(n).norm_sqr() / 4.0;
        if w == 0.0 {
            terms.push(0.0);
            continue;
        }
        let band: f64 = lower
            .iter()
            .map(|&(m, v)| v * ((lambda + m) as f64).powf(alpha - 1.0))
            .sum();
        terms.push(2.0 * w * band);
        if n < n_max {
            let mut next = Vec::with_capacity(lower.len() * 3);
            for &(m, v) in &lower {
                next.push((m - lambda, v * w));
                next.push((m, v));
                next.push((m + lambda, v * w));
            }
            lower = next;
        }
    }
    Ok(terms)
}

/// Lower bound for the dimension from the α-energy criterion.
///
/// For `λ_j = q^j` with constant modulus `r` this is the closed form
/// `1 − log(1+r²)/log q` (product variant) or `1 − log(1+r²/2)/log q`
/// (exact variant), clamped to `[0, 1]`. Otherwise the supremum of the α
/// with a convergent band-series verdict is bracketed by bisection to 1e-4.
pub fn energy_dimension_bound(spec: &RieszSpec, variant: BandVariant) -> Result<f64, AnalysisError> {
    spec.require_lacunary("energy_dimension_bound")?;
    let entries = spec.coeffs().entries();
    let r = entries[0].r;
    let constant_modulus = entries.iter().all(|c| c.r == r);
    if r == 0.0 && constant_modulus {
        return Ok(1.0);
    }
    if let (Some(q), true) = (spec.freqs().geometric_ratio(), constant_modulus) {
        let growth = match variant {
            BandVariant::Product => 1.0 + r * r,
            BandVariant::Exact => 1.0 + r * r / 2.0,
        };
        return Ok((1.0 - growth.ln() / (q as f64).ln()).clamp(0.0, 1.0));
    }
    let n_max = spec.max_index();
    let convergent = |alpha: f64| -> Result<bool, AnalysisError> {
        Ok(alpha_energy_band_series(spec, alpha, n_max, variant)?.verdict == SeriesVerdict::Convergent)
    };
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    if !convergent(lo)? {
        return Ok(0.0);
    }
    if convergent(hi)? {
        return Ok(1.0);
    }
    while hi - lo > 1e-4 {
        let mid = 0.5 * (lo + hi);
        if convergent(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riesz::{expand_partial_product, Regime};
    use num_complex::Complex64;

    fn geometric(r: f64, count: usize) -> RieszSpec {
        RieszSpec::geometric(4, count, r, 0.0, Regime::Lacunary3).unwrap()
    }

    #[test]
    fn zero_coefficients_have_zero_energy() {
        let spec = geometric(0.0, 8);
        let p = expand_partial_product(&spec, 7).unwrap();
        for alpha in [0.1, 0.5, 0.9] {
            let r = alpha_energy_direct(&p, alpha, 1 << 20, &band_edges(&spec, 7)).unwrap();
            assert_eq!(r.total(), 0.0);
            let r = alpha_energy_band_series(&spec, alpha, 7, BandVariant::Exact).unwrap();
            assert_eq!(r.total(), 0.0);
            assert_eq!(r.verdict, SeriesVerdict::Convergent);
            // the product form bounds from above and keeps the λ_n^{α−1} weights
            let r = alpha_energy_band_series(&spec, alpha, 7, BandVariant::Product).unwrap();
            assert_eq!(r.verdict, SeriesVerdict::Convergent);
        }
    }

    #[test]
    fn single_frequency_pair() {
        let half = Complex64::new(0.5, 0.0);
        let p = TrigPolynomial::from_pairs([(5, half), (-5, half)], true);
        let r = alpha_energy_direct(&p, 0.5, 10, &[]).unwrap();
        assert!((r.total() - 2.0 * 0.25 / 5f64.sqrt()).abs() < 1e-15);
        // cutoff below the support
        assert_eq!(alpha_energy_direct(&p, 0.5, 4, &[]).unwrap().total(), 0.0);
    }

    #[test]
    fn alpha_must_be_inside_unit_interval() {
        let p = TrigPolynomial::one();
        for alpha in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(matches!(
                alpha_energy_direct(&p, alpha, 10, &[]),
                Err(AnalysisError::AlphaOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn product_variant_threshold_at_one_half() {
        let spec = geometric(1.0, 12);
        let conv = alpha_energy_band_series(&spec, 0.45, 11, BandVariant::Product).unwrap();
        assert_eq!(conv.verdict, SeriesVerdict::Convergent);
        let div = alpha_energy_band_series(&spec, 0.55, 11, BandVariant::Product).unwrap();
        assert_eq!(div.verdict, SeriesVerdict::Divergent);
        let expected = 4f64.powf(0.55 - 1.0) * 2.0;
        assert!((div.ratio.unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn exact_variant_ratio_tends_to_three_halves_factor() {
        let spec = geometric(1.0, 11);
        for (alpha, verdict) in [(0.65, SeriesVerdict::Convergent), (0.76, SeriesVerdict::Divergent)] {
            let r = alpha_energy_band_series(&spec, alpha, 10, BandVariant::Exact).unwrap();
            assert_eq!(r.verdict, verdict, "alpha {alpha}");
            let limit = 4f64.powf(alpha - 1.0) * 1.5;
            assert!((r.ratio.unwrap() - limit).abs() < 1e-3, "{:?} vs {limit}", r.ratio);
        }
    }

    #[test]
    fn exact_bands_carry_plancherel_mass_at_alpha_near_one() {
        // Only the weights |m|^{α−1} separate the exact terms from the
        // Plancherel masses; they coincide in the α → 1 limit.
        let a = [0.3, 0.9, 0.5, 1.0, 0.7];
        let spec = RieszSpec::new(
            crate::riesz::FrequencySequence::geometric(4, 5).unwrap(),
            crate::riesz::CoefficientSequence::from_complex(
                &a.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>(),
            ),
            Regime::Lacunary3,
        )
        .unwrap();
        let r = alpha_energy_band_series(&spec, 1.0 - 1e-12, 4, BandVariant::Exact).unwrap();
        for n in 0..5 {
            assert!((r.terms[n] - band_plancherel_mass(&spec, n)).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_form_dimension_bounds() {
        let b = energy_dimension_bound(&geometric(1.0, 6), BandVariant::Product).unwrap();
        assert!((b - 0.5).abs() < 1e-15);
        let b = energy_dimension_bound(&geometric(1.0, 6), BandVariant::Exact).unwrap();
        assert!((b - (1.0 - 1.5f64.ln() / 4f64.ln())).abs() < 1e-15);
        assert!((b - 0.70752).abs() < 1e-5);
        assert_eq!(energy_dimension_bound(&geometric(0.0, 6), BandVariant::Exact).unwrap(), 1.0);
    }

    #[test]
    fn bisection_matches_closed_form_when_moduli_vary_slightly() {
        // A non-constant modulus sequence forces the bisection path; its
        // answer must sit between the closed forms of the extreme moduli.
        let count = 14;
        let entries: Vec<Complex64> = (0..count)
            .map(|j| Complex64::new(if j % 2 == 0 { 1.0 } else { 0.999_999 }, 0.0))
            .collect();
        let spec = RieszSpec::new(
            crate::riesz::FrequencySequence::geometric(4, count).unwrap(),
            crate::riesz::CoefficientSequence::from_complex(&entries),
            Regime::Lacunary3,
        )
        .unwrap();
        let b = energy_dimension_bound(&spec, BandVariant::Product).unwrap();
        assert!((b - 0.5).abs() < 2e-3, "bound {b}");
    }

    #[test]
    fn ratio_verdict_edge_cases() {
        assert_eq!(ratio_verdict(&[1.0, 2.0]).1, SeriesVerdict::Undecided);
        assert_eq!(ratio_verdict(&[0.0; 3]).1, SeriesVerdict::Convergent);
        assert_eq!(ratio_verdict(&[1.0; 6]).1, SeriesVerdict::Undecided);
        assert_eq!(ratio_verdict(&[1.0, 0.5, 0.25, 0.125, 0.0625]).1, SeriesVerdict::Convergent);
    }
}

use num_complex::Complex64;
use serde::Serialize;

use super::ClassifyError;
use crate::riesz::{CoefficientSequence, FrequencySequence};

/// The ℓ² sequence `c_j = (a_j − b_j)/σ_j`, `σ_j = Σ_{i≤j} |a_i − b_i|²`, for
/// which `Σ c_j(ā_j − b̄_j)` diverges whenever `Σ |a_j − b_j|²` does while
/// `Σ |c_j|²` stays bounded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivergenceWitness {
    pub c: Vec<Complex64>,
    pub sigma: Vec<f64>,
    /// Partial sums of `Σ c_j(ā_j − b̄_j) = Σ |a_j − b_j|²/σ_j`.
    pub partial_inner: Vec<f64>,
    /// Partial sums of `Σ |c_j|²`.
    pub l2_norm_partial: Vec<f64>,
}

impl DivergenceWitness {
    /// Upper bound for `Σ_{j>m} |c_j|²`, namely `1/σ_m`.
    pub fn l2_tail_bound(&self, m: usize) -> f64 {
        1.0 / self.sigma[m]
    }

    /// Upper bound for the whole of `Σ |c_j|²`, namely `2/σ_{j₀}` at the
    /// first index with `σ_{j₀} > 0`.
    pub fn l2_bound(&self) -> f64 {
        let first = self.sigma.iter().copied().find(|&s| s > 0.0).unwrap_or(f64::INFINITY);
        2.0 / first
    }
}

pub fn build_divergence_witness(
    a: &CoefficientSequence,
    b: &CoefficientSequence,
    terms: usize,
) -> Result<DivergenceWitness, ClassifyError> {
    if a.len() < terms || b.len() < terms {
        return Err(ClassifyError::TooShort {
            a: a.len(),
            b: b.len(),
            terms,
        });
    }
    let mut c = Vec::with_capacity(terms);
    let mut sigma = Vec::with_capacity(terms);
    let mut partial_inner = Vec::with_capacity(terms);
    let mut l2_norm_partial = Vec::with_capacity(terms);
    let (mut s, mut inner, mut l2) = (0.0, 0.0, 0.0);
    for j in 0..terms {
        let d = a.get(j) - b.get(j);
        let g = d.norm_sqr();
        s += g;
        let cj = if s > 0.0 { d / s } else { Complex64::new(0.0, 0.0) };
        if s > 0.0 {
            inner += g / s;
            l2 += g / (s * s);
        }
        c.push(cj);
        sigma.push(s);
        partial_inner.push(inner);
        l2_norm_partial.push(l2);
    }
    if s == 0.0 {
        return Err(ClassifyError::IdenticalSequences);
    }
    Ok(DivergenceWitness {
        c,
        sigma,
        partial_inner,
        l2_norm_partial,
    })
}

/// Partial sums at one point `t` of the two series
/// `Σ c_j(e^{iλ_j t} − ā_j/2)` and `Σ c_j(e^{iλ_j t} − b̄_j/2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessSeries {
    pub t: f64,
    pub sum_a: Vec<Complex64>,
    pub sum_b: Vec<Complex64>,
}

impl WitnessSeries {
    /// `Re` of the difference of the two partial sums, index by index. It
    /// equals `−partial_inner / 2` regardless of `t`.
    pub fn real_gap(&self) -> Vec<f64> {
        self.sum_a.iter().zip(&self.sum_b).map(|(x, y)| (x - y).re).collect()
    }
}

pub fn witness_series_at(
    witness: &DivergenceWitness,
    a: &CoefficientSequence,
    b: &CoefficientSequence,
    freqs: &FrequencySequence,
    t: f64,
) -> WitnessSeries {
    let terms = witness.c.len().min(freqs.len());
    let (mut sa, mut sb) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut sum_a = Vec::with_capacity(terms);
    let mut sum_b = Vec::with_capacity(terms);
    for j in 0..terms {
        let e = Complex64::from_polar(1.0, (freqs.get(j) as f64 * t).rem_euclid(std::f64::consts::TAU));
        let c = witness.c[j];
        sa += c * (e - a.get(j).conj() / 2.0);
        sb += c * (e - b.get(j).conj() / 2.0);
        sum_a.push(sa);
        sum_b.push(sb);
    }
    WitnessSeries { t, sum_a, sum_b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riesz::Coefficient;

    #[test]
    fn harmonic_gap_witness() {
        let n = 1_000_000;
        let zero = CoefficientSequence::constant(0.0, 0.0, n);
        let b = CoefficientSequence::new(
            (0..n)
                .map(|j| Coefficient::polar(1.0 / ((j + 1) as f64).sqrt(), 0.0))
                .collect(),
        );
        let w = build_divergence_witness(&zero, &b, n).unwrap();
        assert!(w.partial_inner.windows(2).all(|p| p[1] >= p[0]));
        // Σ 1/(k H_k) grows like log log k; compare checkpoints against the
        // same sum accumulated independently.
        let mut h = 0.0;
        let mut direct = 0.0;
        for k in 1..=n {
            h += 1.0 / k as f64;
            direct += 1.0 / (k as f64 * h);
        }
        assert!((w.partial_inner[n - 1] - direct).abs() < 1e-9);
        assert!(w.partial_inner[n - 1] > w.partial_inner[999] + 0.5);
        assert!(*w.l2_norm_partial.last().unwrap() < 2.0);
        assert!(w.l2_norm_partial[n - 1] - w.l2_norm_partial[n / 10] <= w.l2_tail_bound(n / 10));
    }

    #[test]
    fn inner_terms_are_nonnegative_reals() {
        let a = CoefficientSequence::new(
            (0..50).map(|j| Coefficient::polar(0.9, 0.37 * j as f64)).collect(),
        );
        let b = CoefficientSequence::new(
            (0..50).map(|j| Coefficient::polar(0.2, 1.1 * j as f64)).collect(),
        );
        let w = build_divergence_witness(&a, &b, 50).unwrap();
        for j in 0..50 {
            let term = w.c[j] * (a.get(j).conj() - b.get(j).conj());
            assert!(term.re >= 0.0);
            assert!(term.im.abs() < 1e-15);
        }
    }

    #[test]
    fn identical_sequences_have_no_witness() {
        let a = CoefficientSequence::constant(0.4, 0.2, 10);
        assert_eq!(
            build_divergence_witness(&a, &a, 10),
            Err(ClassifyError::IdenticalSequences)
        );
    }

    #[test]
    fn series_gap_matches_inner_sum() {
        let freqs = FrequencySequence::geometric(4, 25).unwrap();
        let a = CoefficientSequence::constant(0.8, 0.0, 25);
        let b = CoefficientSequence::constant(0.1, 2.0, 25);
        let w = build_divergence_witness(&a, &b, 25).unwrap();
        let s = witness_series_at(&w, &a, &b, &freqs, 0.77);
        for (g, p) in s.real_gap().iter().zip(&w.partial_inner) {
            assert!((g + p / 2.0).abs() < 1e-12);
        }
    }
}

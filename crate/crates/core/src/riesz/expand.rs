use num_complex::Complex64;
use serde::Serialize;

use super::spec::{CoefficientSequence, FrequencySequence, RieszSpec};
use super::RieszError;
use crate::trig::TrigPolynomial;

/// A finitely supported choice `ε_j ∈ {−1, 0, 1}`, indexed by `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern {
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(
            signs.iter().all(|s| (-1..=1).contains(s)),
            "sign pattern entries must lie in {{-1, 0, 1}}"
        );
        Self { signs }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == 0)
    }

    /// Highest index with a nonzero sign.
    pub fn top_index(&self) -> Option<usize> {
        self.signs.iter().rposition(|&s| s != 0)
    }

    /// `Σ ε_j λ_j`.
    pub fn frequency(&self, freqs: &FrequencySequence) -> i64 {
        self.signs
            .iter()
            .enumerate()
            .map(|(j, &s)| s as i64 * freqs.get(j))
            .sum()
    }

    /// `Π_{ε_j=1} (a_j/2) · Π_{ε_j=−1} (ā_j/2)`, multiplied in index order.
    pub fn coefficient(&self, coeffs: &CoefficientSequence) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (j, &s) in self.signs.iter().enumerate() {
            match s {
                1 => acc *= coeffs.get(j) * 0.5,
                -1 => acc *= coeffs.get(j).conj() * 0.5,
                _ => {}
            }
        }
        acc
    }
}

/// Every sign pattern over indices `0..=depth` whose frequency equals `m`,
/// in a fixed order (top index first, `ε` tried as −1, 0, 1).
pub fn sign_patterns_for(freqs: &FrequencySequence, m: i64, depth: usize) -> Vec<SignPattern> {
    let below: Vec<i64> = (0..=depth).map(|j| freqs.sum_below(j)).collect();
    let mut out = Vec::new();
    let mut signs = vec![0i8; depth + 1];
    fn walk(
        freqs: &FrequencySequence,
        below: &[i64],
        j: usize,
        rest: i64,
        signs: &mut Vec<i8>,
        out: &mut Vec<SignPattern>,
    ) {
        for eps in [-1i8, 0, 1] {
            let r = rest - eps as i64 * freqs.get(j);
            if r.abs() > below[j] {
                continue;
            }
            signs[j] = eps;
            if j == 0 {
                if r == 0 {
                    out.push(SignPattern::new(signs.clone()));
                }
            } else {
                walk(freqs, below, j - 1, r, signs, out);
            }
            signs[j] = 0;
        }
    }
    if m.abs() <= freqs.partial_sum(depth) {
        walk(freqs, &below, depth, m, &mut signs, &mut out);
    }
    out
}

/// `P_{a,n}` as exact sparse coefficients, built by multiplying the factors
/// `1 + (a_j/2)e^{iλ_j t} + (ā_j/2)e^{−iλ_j t}` for `j = 0..=n`.
pub fn expand_partial_product(spec: &RieszSpec, n: usize) -> Result<TrigPolynomial, RieszError> {
    spec.check_index(n)?;
    let mut poly = TrigPolynomial::one();
    for j in 0..=n {
        let a = spec.a(j);
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        poly = poly.mul(&TrigPolynomial::riesz_factor(spec.lambda(j), a));
    }
    Ok(poly)
}

/// `Π_{j≤n} (1 + r_j cos(λ_j t + θ_j))`, evaluated factor by factor.
pub fn eval_partial_product(spec: &RieszSpec, n: usize, t: f64) -> Result<f64, RieszError> {
    spec.check_index(n)?;
    Ok(eval_factors(spec, n, t))
}

pub(crate) fn eval_factors(spec: &RieszSpec, n: usize, t: f64) -> f64 {
    let freqs = spec.freqs().values();
    spec.coeffs().entries()[..=n]
        .iter()
        .zip(freqs)
        .map(|(c, &lambda)| 1.0 + c.r * (lambda as f64 * t + c.theta).cos())
        .product()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoefficientValue {
    pub value: Complex64,
    /// Set when deeper factors can no longer change the coefficient.
    pub stable: bool,
}

/// The coefficient of `e^{imt}` in `P_{a,depth}`.
///
/// Stability: `|m| ≤ Σ_{i≤depth} λ_i` and either `depth = J` or
/// `λ_{depth+1} − Σ_{i≤depth} λ_i > |m|`.
pub fn fourier_coefficient(
    spec: &RieszSpec,
    m: i64,
    depth: usize,
) -> Result<CoefficientValue, RieszError> {
    spec.check_index(depth)?;
    let freqs = spec.freqs();
    let value = sign_patterns_for(freqs, m, depth)
        .iter()
        .map(|p| p.coefficient(spec.coeffs()))
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc + c);
    Ok(CoefficientValue {
        value,
        stable: is_stable(freqs, m, depth),
    })
}

pub(crate) fn is_stable(freqs: &FrequencySequence, m: i64, depth: usize) -> bool {
    let reach = freqs.partial_sum(depth);
    if m.abs() > reach {
        return false;
    }
    match freqs.nu(depth) {
        None => true,
        Some(gap) => gap > m.abs(),
    }
}

/// Positive frequencies of `P_{a,depth}` whose top participating index is `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Band {
    pub index: usize,
    pub min: i64,
    pub max: i64,
    /// Number of frequencies in the band, saturating.
    pub count: u64,
}

/// Groups the positive spectrum of `P_{a,depth}` into bands. Indices with
/// `a_j = 0` contribute no band and do not widen higher ones.
pub fn spectrum_bands(spec: &RieszSpec, depth: usize) -> Result<Vec<Band>, RieszError> {
    spec.require_lacunary("spectrum_bands")?;
    spec.check_index(depth)?;
    let mut bands = Vec::new();
    let mut reach = 0i64;
    let mut count = 1u64;
    for n in 0..=depth {
        if spec.coeffs().entries()[n].r == 0.0 {
            continue;
        }
        let lambda = spec.lambda(n);
        bands.push(Band {
            index: n,
            min: lambda - reach,
            max: lambda + reach,
            count,
        });
        reach += lambda;
        count = count.saturating_mul(3);
    }
    Ok(bands)
}

/// Convolution of two measures given by their Fourier coefficients.
pub fn convolve_products(p: &TrigPolynomial, q: &TrigPolynomial) -> TrigPolynomial {
    p.hadamard(q)
}

/// `∫ f_j · conj(f_k) dμ_a` with `f_j = e^{iλ_j t} − ā_j/2`, read off the
/// coefficients of `P_{a,depth}`.
pub fn gram_centered_exponentials(
    spec: &RieszSpec,
    j: usize,
    k: usize,
    depth: usize,
) -> Result<Complex64, RieszError> {
    spec.require_lacunary("gram_centered_exponentials")?;
    spec.check_index(depth)?;
    if j > depth || k > depth {
        return Err(RieszError::IndexOutOfRange {
            index: j.max(k),
            max: depth,
        });
    }
    let freqs = spec.freqs();
    let (lj, lk) = (spec.lambda(j), spec.lambda(k));
    for m in [lk - lj, lj, lk] {
        if !is_stable(freqs, m, depth) {
            return Err(RieszError::Unstable {
                frequency: m,
                depth,
            });
        }
    }
    let poly = expand_partial_product(spec, depth)?;
    let (aj, ak) = (spec.a(j), spec.a(k));
    Ok(poly.coeff(lk - lj) - ak * 0.5 * poly.coeff(-lj) - aj.conj() * 0.5 * poly.coeff(lk)
        + aj.conj() * ak * 0.25)
}

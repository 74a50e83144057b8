use num_complex::Complex64;
use serde::Serialize;

use super::AnalysisError;
use crate::riesz::{expand_partial_product, RieszSpec};
use crate::trig::TrigPolynomial;

/// Fejér kernel of order `n`: coefficients `1 − |m|/n` for `|m| < n`.
pub fn fejer_kernel(order: i64) -> Result<TrigPolynomial, AnalysisError> {
    if order < 1 {
        return Err(AnalysisError::InvalidPlateau { plateau: order });
    }
    let n = order as f64;
    Ok(TrigPolynomial::from_pairs(
        (1 - order..order).map(|m| (m, Complex64::new(1.0 - m.abs() as f64 / n, 0.0))),
        true,
    ))
}

/// de la Vallée Poussin kernel with plateau `p`: coefficient 1 on `|m| ≤ p`,
/// `(2p − |m|)/p` on `p < |m| ≤ 2p`, zero beyond. Equal to
/// `2·F_{2p} − F_p` for the Fejér kernels above.
pub fn vallee_poussin_kernel(plateau: i64) -> Result<TrigPolynomial, AnalysisError> {
    if plateau < 1 {
        return Err(AnalysisError::InvalidPlateau { plateau });
    }
    let p = plateau as f64;
    let coeff = |m: i64| {
        let k = m.abs();
        if k <= plateau {
            1.0
        } else {
            (2.0 * p - k as f64) / p
        }
    };
    Ok(TrigPolynomial::from_pairs(
        (-2 * plateau..=2 * plateau).map(|m| (m, Complex64::new(coeff(m), 0.0))),
        true,
    ))
}

/// `V ∗ P_{a,depth}` on the Fourier side, with plateau `p = Σ_{i≤n} λ_i`.
///
/// Requires `λ_{n+1} > 3p`: every frequency of `P_{a,depth}` outside the
/// spectrum of `P_{a,n}` then sits above `2p`, so the result is `P_{a,n}`.
pub fn smoothed_partial_product(
    spec: &RieszSpec,
    n: usize,
    depth: usize,
) -> Result<TrigPolynomial, AnalysisError> {
    spec.require_lacunary("smooth_by_vp")?;
    spec.check_index(depth)?;
    if depth <= n {
        return Err(AnalysisError::DepthNotAbove { n, depth });
    }
    let freqs = spec.freqs();
    let plateau = freqs.partial_sum(n);
    if freqs.gap(n) != Some(true) {
        return Err(AnalysisError::GapFails {
            n,
            next: freqs.get(n + 1),
            threshold: 3 * plateau,
        });
    }
    let p = plateau as f64;
    let poly = expand_partial_product(spec, depth)?;
    Ok(poly.weighted(|m| {
        let k = m.abs();
        if k <= plateau {
            1.0
        } else if k < 2 * plateau {
            (2.0 * p - k as f64) / p
        } else {
            0.0
        }
    }))
}

/// Value at `t` of [`smoothed_partial_product`].
pub fn smooth_by_vp(spec: &RieszSpec, n: usize, depth: usize, t: f64) -> Result<f64, AnalysisError> {
    Ok(smoothed_partial_product(spec, n, depth)?.eval_real(t))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalBound {
    /// `∫_{t−s}^{t+s} P_{a,N} du / 2π`.
    pub head: f64,
    /// `Q_j(t+s) + Q_j(t−s)` for `j = N..J_max−1`.
    pub tail: Vec<f64>,
    pub total: f64,
}

/// Upper bound for interval masses from the head integral of `P_{a,N}` and
/// the tail functions `Q_j = (P_{a,j+1} + P_{a,j}) ∗ L_{ν_j}`, where
/// `L̂_ν(m) = 1/(ν + |m|)` and `ν_j = λ_{j+1} − Σ_{i≤j} λ_i`.
#[derive(Clone, Debug)]
pub struct IntervalUpperBound {
    head: TrigPolynomial,
    tails: Vec<TrigPolynomial>,
}

impl IntervalUpperBound {
    pub fn new(spec: &RieszSpec, n: usize, j_max: usize) -> Result<Self, AnalysisError> {
        spec.require_lacunary("interval_upper_bound")?;
        spec.check_index(j_max)?;
        if n >= j_max {
            return Err(AnalysisError::EmptyTail { n, j_max });
        }
        let mut lower = expand_partial_product(spec, n)?;
        let head = lower.clone();
        let mut tails = Vec::with_capacity(j_max - n);
        for j in n..j_max {
            let nu = spec.freqs().nu(j).expect("j < j_max <= J");
            if nu <= 0 {
                return Err(AnalysisError::NonPositiveNu { j, nu });
            }
            let upper = expand_partial_product(spec, j + 1)?;
            let q = upper
                .add(&lower)
                .weighted(|m| 1.0 / (nu as f64 + m.abs() as f64));
            tails.push(q);
            lower = upper;
        }
        Ok(Self { head, tails })
    }

    pub fn bound(&self, t: f64, s: f64) -> IntervalBound {
        let head = self.head.interval_integral(t, s);
        let tail: Vec<f64> = self
            .tails
            .iter()
            .map(|q| q.eval_real(t + s) + q.eval_real(t - s))
            .collect();
        let total = head + tail.iter().sum::<f64>();
        IntervalBound { head, tail, total }
    }
}

pub fn interval_upper_bound(
    spec: &RieszSpec,
    n: usize,
    j_max: usize,
    t: f64,
    s: f64,
) -> Result<IntervalBound, AnalysisError> {
    Ok(IntervalUpperBound::new(spec, n, j_max)?.bound(t, s))
}

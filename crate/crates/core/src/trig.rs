//! Sparse trigonometric polynomials with integer frequencies.
//!
//! A [`TrigPolynomial`] is a finite map `n -> c_n` standing for
//! `Σ c_n e^{int}`. Products of functions are computed by sparse
//! multiplication of the coefficient maps; products of coefficient
//! sequences (convolution of the functions on the circle) by
//! [`TrigPolynomial::hadamard`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct TrigPolynomial {
    coeffs: BTreeMap<i64, Complex64>,
    /// Set when the polynomial stands for a real-valued function, so that
    /// `c_{-n} = conj(c_n)` is expected to hold.
    real: bool,
}

impl Default for TrigPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
            real: true,
        }
    }

    /// The constant function 1 (Lebesgue measure on the Fourier side).
    pub fn one() -> Self {
        Self::from_pairs([(0, Complex64::new(1.0, 0.0))], true)
    }

    /// Builds a polynomial from `(frequency, coefficient)` pairs. Repeated
    /// frequencies are summed in iteration order; exact zeros are dropped.
    pub fn from_pairs<I>(pairs: I, real: bool) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut coeffs: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (n, c) in pairs {
            *coeffs.entry(n).or_default() += c;
        }
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Self { coeffs, real }
    }

    /// The real factor `1 + Re(a e^{iλt}) = 1 + (a/2)e^{iλt} + (ā/2)e^{-iλt}`.
    pub fn riesz_factor(lambda: i64, a: Complex64) -> Self {
        let half = a * 0.5;
        Self::from_pairs(
            [
                (-lambda, half.conj()),
                (0, Complex64::new(1.0, 0.0)),
                (lambda, half),
            ],
            true,
        )
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|n|` with a nonzero coefficient, 0 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        let lo = self.coeffs.keys().next().map_or(0, |n| n.abs());
        let hi = self.coeffs.keys().next_back().map_or(0, |n| n.abs());
        lo.max(hi)
    }

    /// Iterates over `(n, c_n)` in increasing frequency order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }

    pub fn frequencies(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    /// Largest `|c_{-n} - conj(c_n)|` over the support.
    pub fn hermitian_defect(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&n, &c)| (self.coeff(-n) - c.conj()).norm())
            .fold(0.0, f64::max)
    }

    /// `Σ |c_n|²`, the squared L² norm on the normalized circle.
    pub fn l2_mass(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// Product of the two functions: sparse convolution of the coefficient
    /// maps. Partial products are merged after a stable sort on frequency, so
    /// the summation order is fixed.
    pub fn mul(&self, other: &TrigPolynomial) -> TrigPolynomial {
        let mut terms: Vec<(i64, Complex64)> = Vec::with_capacity(self.len() * other.len());
        for (&n, &c) in &self.coeffs {
            for (&m, &d) in &other.coeffs {
                terms.push((n + m, c * d));
            }
        }
        terms.sort_by_key(|&(n, _)| n);
        let mut coeffs = BTreeMap::new();
        let mut iter = terms.into_iter().peekable();
        while let Some((n, mut acc)) = iter.next() {
            while let Some(&(m, c)) = iter.peek() {
                if m != n {
                    break;
                }
                acc += c;
                iter.next();
            }
            if acc != Complex64::new(0.0, 0.0) {
                coeffs.insert(n, acc);
            }
        }
        TrigPolynomial {
            coeffs,
            real: self.real && other.real,
        }
    }

    /// Coefficientwise product: the convolution `f ∗ g` on the normalized
    /// circle, or `μ ∗ ν` for measures given by their Fourier coefficients.
    pub fn hadamard(&self, other: &TrigPolynomial) -> TrigPolynomial {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let pairs = small
            .coeffs
            .iter()
            .filter_map(|(&n, &c)| large.coeffs.get(&n).map(|&d| (n, c * d)));
        TrigPolynomial::from_pairs(pairs, self.real && other.real)
    }

    /// Coefficientwise product with a real multiplier `w(n)`.
    pub fn weighted<F>(&self, mut w: F) -> TrigPolynomial
    where
        F: FnMut(i64) -> f64,
    {
        TrigPolynomial::from_pairs(self.iter().map(|(n, c)| (n, c * w(n))), self.real)
    }

    pub fn add(&self, other: &TrigPolynomial) -> TrigPolynomial {
        TrigPolynomial::from_pairs(self.iter().chain(other.iter()), self.real && other.real)
    }

    /// The image under `t -> k t`: frequencies multiplied by `k`.
    pub fn dilate(&self, k: i64) -> TrigPolynomial {
        assert!(k != 0, "dilation factor must be nonzero");
        TrigPolynomial::from_pairs(self.iter().map(|(n, c)| (n * k, c)), self.real)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&n, &c)| c * Complex64::cis(n as f64 * t))
            .sum()
    }

    /// Real part of the value at `t`. For real polynomials only the
    /// nonnegative half of the spectrum is visited.
    pub fn eval_real(&self, t: f64) -> f64 {
        if !self.real {
            return self.eval(t).re;
        }
        let mut acc = self.coeff(0).re;
        for (&n, &c) in self.coeffs.range(1..) {
            acc += 2.0 * (c * Complex64::cis(n as f64 * t)).re;
        }
        acc
    }

    /// `∫_{t-s}^{t+s} p(u) du / 2π` by termwise antiderivatives.
    pub fn interval_integral(&self, t: f64, s: f64) -> f64 {
        let mut acc = self.coeff(0).re * s / PI;
        if self.real {
            for (&n, &c) in self.coeffs.range(1..) {
                let n_f = n as f64;
                acc += 2.0 * (c * Complex64::cis(n_f * t)).re * (n_f * s).sin() / (PI * n_f);
            }
        } else {
            for (&n, &c) in &self.coeffs {
                if n == 0 {
                    continue;
                }
                let n_f = n as f64;
                acc += (c * Complex64::cis(n_f * t)).re * (n_f * s).sin() / (PI * n_f);
            }
        }
        acc
    }

    /// Largest absolute coefficient difference against `other`.
    pub fn max_abs_diff(&self, other: &TrigPolynomial) -> f64 {
        self.frequencies()
            .chain(other.frequencies())
            .map(|n| (self.coeff(n) - other.coeff(n)).norm())
            .fold(0.0, f64::max)
    }

    /// True when both polynomials have the same support.
    pub fn same_support(&self, other: &TrigPolynomial) -> bool {
        self.coeffs.keys().eq(other.coeffs.keys())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn factor_product_matches_hand_expansion() {
        // (1 + cos t)(1 + cos 4t)
        let p = TrigPolynomial::riesz_factor(1, c(1.0)).mul(&TrigPolynomial::riesz_factor(4, c(1.0)));
        let expected = [(0, 1.0), (1, 0.5), (4, 0.5), (3, 0.25), (5, 0.25)];
        assert_eq!(p.len(), 9);
        for (n, v) in expected {
            assert_eq!(p.coeff(n), c(v));
            assert_eq!(p.coeff(-n), c(v));
        }
    }

    #[test]
    fn hadamard_with_one_keeps_only_mean() {
        let p = TrigPolynomial::riesz_factor(3, Complex64::new(0.2, 0.5));
        assert_eq!(p.hadamard(&TrigPolynomial::one()), TrigPolynomial::one());
    }

    #[test]
    fn interval_integral_of_constant() {
        let one = TrigPolynomial::one();
        assert!((one.interval_integral(0.3, PI) - 1.0).abs() < 1e-15);
        assert!((one.interval_integral(1.0, 0.5) - 0.5 / PI).abs() < 1e-15);
    }

    #[test]
    fn eval_real_matches_full_eval() {
        let p = TrigPolynomial::riesz_factor(2, Complex64::new(0.3, -0.4))
            .mul(&TrigPolynomial::riesz_factor(7, Complex64::new(-0.9, 0.1)));
        for k in 0..20 {
            let t = 0.37 * k as f64;
            assert!((p.eval(t).re - p.eval_real(t)).abs() < 1e-13);
            assert!(p.eval(t).im.abs() < 1e-13);
        }
    }

    #[test]
    fn degree_and_dilation() {
        let p = TrigPolynomial::riesz_factor(5, c(0.5));
        assert_eq!(p.degree(), 5);
        assert_eq!(p.dilate(2).degree(), 10);
        assert_eq!(TrigPolynomial::zero().degree(), 0);
    }
}

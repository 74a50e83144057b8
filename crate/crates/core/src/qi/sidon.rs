use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::QiError;
use crate::riesz::PHASE_GENERATOR;

/// The bound `3√3` for a single quasi-independent set, as rounded in print.
pub const SIDON_ROUNDED: f64 = 5.20;
/// A sharper known upper bound for the Sidon constant of a quasi-independent set.
pub const SIDON_SHARPER_KNOWN: f64 = 4.27;
/// Largest set accepted by [`sidon_lower_estimate`].
pub const SIDON_MAX_SET: usize = 64;
const MAX_GRID: usize = 1 << 22;

/// `3√3 · k · √(2k − 1)`: upper bound for the Sidon constant of a union of
/// `k` quasi-independent sets.
pub fn sidon_union_bound(k: u64) -> Result<f64, QiError> {
    if k == 0 {
        return Err(QiError::ZeroUnion);
    }
    let k = k as f64;
    Ok(3.0 * 3f64.sqrt() * k * (2.0 * k - 1.0).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SidonOptions {
    pub trials: usize,
    pub seed: u64,
    /// Grid nodes per unit of degree; the grid has `grid_factor · n` nodes.
    pub grid_factor: usize,
    /// Coordinate refinement sweeps after each random start.
    pub refine_passes: usize,
}

impl Default for SidonOptions {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 0,
            grid_factor: 32,
            refine_passes: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SidonEstimate {
    pub set: Vec<i64>,
    /// `(λ − min Λ) / g` with `g` the gcd of the differences; the Sidon
    /// constant is unchanged by this normalization.
    pub reduced: Vec<i64>,
    /// Degree `n = max(reduced)` of the polynomials searched.
    pub degree: i64,
    pub grid: usize,
    /// `1 / (1 − πn/M)`.
    pub certification_factor: f64,
    /// Certified: `max(1, Σ|c_λ| / (grid max · factor))` for the best `c`.
    pub lower_bound: f64,
    pub coefficients: Vec<Complex64>,
    /// Running maximum of the certified bound after each trial.
    pub trace: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub generator: &'static str,
}

struct Grid {
    roots: Vec<Complex64>,
    freqs: Vec<usize>,
}

impl Grid {
    fn max_abs(&self, c: &[Complex64]) -> f64 {
        let m = self.roots.len();
        let mut best: f64 = 0.0;
        for k in 0..m {
            let mut s = Complex64::new(0.0, 0.0);
            for (cj, &f) in c.iter().zip(&self.freqs) {
                s += cj * self.roots[(f * k) % m];
            }
            best = best.max(s.norm());
        }
        best
    }
}

fn run_trial(grid: &Grid, seed: u64, trial: u64, passes: usize) -> (f64, Vec<Complex64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut phases: Vec<f64> = (0..grid.freqs.len()).map(|_| rng.random::<f64>() * TAU).collect();
    let coeffs = |p: &[f64]| p.iter().map(|&t| Complex64::from_polar(1.0, t)).collect::<Vec<_>>();
    let mut best = grid.max_abs(&coeffs(&phases));
    for pass in 0..passes {
        let step = PI / (4.0 * (pass + 1) as f64);
        for j in 0..phases.len() {
            for delta in [step, -step] {
                let old = phases[j];
                phases[j] = old + delta;
                let value = grid.max_abs(&coeffs(&phases));
                if value < best {
                    best = value;
                } else {
                    phases[j] = old;
                }
            }
        }
    }
    (best, coeffs(&phases))
}

/// Certified lower bound for the Sidon constant of a finite set, from a
/// randomized search over unimodular coefficient vectors. The sup norm is
/// bounded through `‖p‖∞ ≤ grid max / (1 − πn/M)`, which follows from
/// Bernstein's inequality on a grid of `M` nodes. Trial `i` draws from
/// stream `i` of a generator seeded with `seed`.
pub fn sidon_lower_estimate(set: &[i64], opts: &SidonOptions) -> Result<SidonEstimate, QiError> {
    if set.is_empty() {
        return Err(QiError::EmptySet);
    }
    if set.len() > SIDON_MAX_SET {
        return Err(QiError::SizeCap {
            method: "Sidon search",
            size: set.len(),
            cap: SIDON_MAX_SET,
        });
    }
    for (i, v) in set.iter().enumerate() {
        if let Some(j) = set[..i].iter().position(|w| w == v) {
            return Err(QiError::DuplicateElement { first: j, second: i });
        }
    }
    let min = *set.iter().min().expect("nonempty");
    let g = set.iter().fold(0i64, |g, &v| g.gcd(&(v - min)));
    let reduced: Vec<i64> = set.iter().map(|&v| if g == 0 { 0 } else { (v - min) / g }).collect();
    let degree = reduced.iter().copied().max().unwrap_or(0);
    let base = SidonEstimate {
        set: set.to_vec(),
        reduced: reduced.clone(),
        degree,
        grid: 1,
        certification_factor: 1.0,
        lower_bound: 1.0,
        coefficients: vec![Complex64::new(1.0, 0.0)],
        trace: vec![1.0; opts.trials],
        trials: opts.trials,
        seed: opts.seed,
        generator: PHASE_GENERATOR,
    };
    if degree == 0 {
        return Ok(base);
    }
    let grid = (opts.grid_factor as u64).saturating_mul(degree as u64);
    if grid > MAX_GRID as u64 {
        return Err(QiError::ResourceCap {
            what: "Sidon grid nodes",
            requested: grid,
            cap: MAX_GRID as u64,
        });
    }
    let grid = grid as usize;
    let bound = PI * degree as f64;
    if grid as f64 <= bound {
        return Err(QiError::GridTooCoarse { grid, bound });
    }
    let factor = 1.0 / (1.0 - bound / grid as f64);
    let evaluator = Grid {
        roots: (0..grid).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / grid as f64)).collect(),
        freqs: reduced.iter().map(|&f| f as usize).collect(),
    };
    let l1 = set.len() as f64;
    let results: Vec<(f64, Vec<Complex64>)> = (0..opts.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(&evaluator, opts.seed, t, opts.refine_passes))
        .collect();
    let mut best = 1.0;
    let mut coefficients = base.coefficients.clone();
    let mut trace = Vec::with_capacity(results.len());
    for (gmax, c) in results {
        let certified = l1 / (gmax * factor);
        if certified > best {
            best = certified;
            coefficients = c;
        }
        trace.push(best);
    }
    Ok(SidonEstimate {
        grid,
        certification_factor: factor,
        lower_bound: best,
        coefficients,
        trace,
        ..base
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_bound_values() {
        assert!((sidon_union_bound(1).unwrap() - 3.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((sidon_union_bound(1).unwrap() - SIDON_ROUNDED).abs() < 0.005);
        assert!((sidon_union_bound(2).unwrap() - 18.0).abs() < 1e-12);
        for k in 1..50 {
            assert!(sidon_union_bound(k + 1).unwrap() > sidon_union_bound(k).unwrap());
        }
        assert!(sidon_union_bound(0).is_err());
    }

    #[test]
    fn singleton_is_one() {
        let e = sidon_lower_estimate(&[5], &SidonOptions::default()).unwrap();
        assert_eq!(e.lower_bound, 1.0);
    }

    #[test]
    fn quasi_independent_set_is_bracketed() {
        let opts = SidonOptions {
            trials: 40,
            seed: 7,
            ..Default::default()
        };
        let e = sidon_lower_estimate(&[1, 4, 16, 64], &opts).unwrap();
        assert!(e.lower_bound >= 1.0);
        assert!(e.lower_bound <= 3.0 * 3f64.sqrt() + 1e-9);
        assert!(e.trace.windows(2).all(|w| w[1] >= w[0]));
        assert_eq!(e.reduced, vec![0, 1, 5, 21]);
        // shorter schedules are prefixes of longer ones
        let short = sidon_lower_estimate(&[1, 4, 16, 64], &SidonOptions { trials: 10, ..opts }).unwrap();
        assert_eq!(short.trace[..], e.trace[..10]);
    }

    #[test]
    fn two_point_sets_have_constant_above_one() {
        // |c₀ + c₁ e^{it}| reaches |c₀| + |c₁|, so S = 1 exactly; the
        // certified value can only approach it from below and is clamped to 1.
        let e = sidon_lower_estimate(&[3, 10], &SidonOptions::default()).unwrap();
        assert_eq!(e.lower_bound, 1.0);
    }

    #[test]
    fn refusals() {
        let opts = SidonOptions {
            grid_factor: 3,
            ..Default::default()
        };
        assert!(matches!(
            sidon_lower_estimate(&[1, 2], &opts),
            Err(QiError::GridTooCoarse { .. })
        ));
        let many: Vec<i64> = (0..65).collect();
        assert!(sidon_lower_estimate(&many, &SidonOptions::default()).unwrap_err().is_resource());
        assert!(sidon_lower_estimate(&[1, 1], &SidonOptions::default()).is_err());
    }
}

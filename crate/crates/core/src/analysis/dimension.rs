//! Finite-`n` estimates of `L_n = (1/log λ_n) ∫ log P_{a,n} dμ_a`, and the
//! dimension bracket `[1 − max L_n, 1 − min L_n]` built from them.

use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::AnalysisError;
use crate::riesz::{RieszSpec, PHASE_GENERATOR};

/// Values of `P_{a,n}` below this are clipped before taking the logarithm.
pub const LOG_FLOOR: f64 = 1e-30;
const MIN_SAMPLES: usize = 100_000;
const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralMethod {
    /// Uniform-grid rule for `∫ log P_{a,n} · P_{a,depth} dt/2π`.
    Quadrature,
    /// Stratified inverse-CDF sampling from the grid density of `P_{a,depth}`.
    MonteCarlo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeyriereOptions {
    /// Grid nodes per unit of degree of `P_{a,depth}` (at least 8).
    pub nodes_per_degree: usize,
    pub samples: usize,
    pub seed: u64,
    pub max_nodes: usize,
}

impl Default for PeyriereOptions {
    fn default() -> Self {
        Self {
            nodes_per_degree: 8,
            samples: MIN_SAMPLES,
            seed: 0,
            max_nodes: 1 << 25,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeyriereEstimate {
    pub n: usize,
    pub depth: usize,
    pub method: IntegralMethod,
    /// `∫ log P_{a,n} dμ` as estimated.
    pub integral: f64,
    /// `integral / log λ_n`.
    pub value: f64,
    pub nodes: usize,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub generator: Option<&'static str>,
    /// Nodes of positive weight, or samples, where `P_{a,n} < LOG_FLOOR`.
    pub clipped: usize,
    /// Fewer than 0.1% of the nodes or samples were clipped.
    pub valid: bool,
}

fn log_clipped(x: f64) -> (f64, bool) {
    if x < LOG_FLOOR {
        (LOG_FLOOR.ln(), true)
    } else {
        (x.ln(), false)
    }
}

/// `(P_{a,n}(t), P_{a,depth}(t))` in one pass over the factors.
fn prefix_and_full(spec: &RieszSpec, n: usize, depth: usize, t: f64) -> (f64, f64) {
    let mut acc = 1.0;
    let mut prefix = 1.0;
    for (j, c) in spec.coeffs().entries()[..=depth].iter().enumerate() {
        acc *= 1.0 + c.r * (spec.lambda(j) as f64 * t + c.theta).cos();
        if j == n {
            prefix = acc;
        }
    }
    (prefix, acc)
}

fn prefix_only(spec: &RieszSpec, n: usize, t: f64) -> f64 {
    spec.coeffs().entries()[..=n]
        .iter()
        .enumerate()
        .map(|(j, c)| 1.0 + c.r * (spec.lambda(j) as f64 * t + c.theta).cos())
        .product()
}

pub fn peyriere_integral(
    spec: &RieszSpec,
    n: usize,
    depth: usize,
    method: IntegralMethod,
    opts: &PeyriereOptions,
) -> Result<PeyriereEstimate, AnalysisError> {
    spec.check_index(depth)?;
    let lambda = spec.lambda(n);
    if lambda < 2 {
        return Err(AnalysisError::FrequencyTooSmall { n, lambda });
    }
    if depth < n + 3 {
        return Err(AnalysisError::DepthTooShallow {
            depth,
            required: n + 3,
        });
    }
    let degree: i64 = (0..=depth)
        .filter(|&j| spec.coeffs().entries()[j].r > 0.0)
        .map(|j| spec.lambda(j))
        .sum();
    let per_degree = opts.nodes_per_degree.max(8) as u64;
    let nodes = (degree as u64).saturating_mul(per_degree).max(1024);
    if nodes > opts.max_nodes as u64 {
        return Err(AnalysisError::ResourceCap {
            what: "quadrature grid",
            requested: nodes,
            cap: opts.max_nodes as u64,
        });
    }
    let nodes = nodes as usize;
    let h = TAU / nodes as f64;
    let log_lambda = (lambda as f64).ln();

    match method {
        IntegralMethod::Quadrature => {
            // Fixed chunk boundaries keep the reduction order independent of
            // the number of worker threads.
            let chunks: Vec<(f64, usize)> = (0..nodes.div_ceil(CHUNK))
                .into_par_iter()
                .map(|c| {
                    let mut sum = 0.0;
                    let mut clipped = 0;
                    for k in c * CHUNK..((c + 1) * CHUNK).min(nodes) {
                        let (pn, pd) = prefix_and_full(spec, n, depth, k as f64 * h);
                        let (l, clip) = log_clipped(pn);
                        if pd > 0.0 {
                            clipped += clip as usize;
                            sum += l * pd;
                        }
                    }
                    (sum, clipped)
                })
                .collect();
            let (sum, clipped) = chunks
                .iter()
                .fold((0.0, 0), |(s, c), &(x, y)| (s + x, c + y));
            let integral = sum / nodes as f64;
            Ok(PeyriereEstimate {
                n,
                depth,
                method,
                integral,
                value: integral / log_lambda,
                nodes,
                samples: None,
                seed: None,
                generator: None,
                clipped,
                valid: clipped * 1000 < nodes,
            })
        }
        IntegralMethod::MonteCarlo => {
            if opts.samples < MIN_SAMPLES {
                return Err(AnalysisError::TooFewSamples {
                    got: opts.samples,
                    min: MIN_SAMPLES,
                });
            }
            let density: Vec<f64> = (0..nodes)
                .into_par_iter()
                .map(|k| prefix_and_full(spec, depth, depth, k as f64 * h).1.max(0.0))
                .collect();
            let mut cdf = Vec::with_capacity(nodes + 1);
            cdf.push(0.0);
            let mut acc = 0.0;
            for k in 0..nodes {
                acc += 0.5 * (density[k] + density[(k + 1) % nodes]);
                cdf.push(acc);
            }
            let total = acc;
            let samples = opts.samples;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut sum = 0.0;
            let mut clipped = 0;
            for i in 0..samples {
                let u = (i as f64 + rng.random::<f64>()) / samples as f64 * total;
                let k = cdf.partition_point(|&c| c <= u).saturating_sub(1).min(nodes - 1);
                let width = cdf[k + 1] - cdf[k];
                let frac = if width > 0.0 { (u - cdf[k]) / width } else { 0.5 };
                let t = (k as f64 + frac.clamp(0.0, 1.0)) * h;
                let (l, clip) = log_clipped(prefix_only(spec, n, t));
                clipped += clip as usize;
                sum += l;
            }
            let integral = sum / samples as f64;
            Ok(PeyriereEstimate {
                n,
                depth,
                method,
                integral,
                value: integral / log_lambda,
                nodes,
                samples: Some(samples),
                seed: Some(opts.seed),
                generator: Some(PHASE_GENERATOR),
                clipped,
                valid: clipped * 1000 < samples,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub method: IntegralMethod,
    pub depth: usize,
    pub estimates: Vec<PeyriereEstimate>,
    /// `1 − max_n L_n`, a finite-`n` proxy for `1 − limsup L_n`.
    pub lower: f64,
    /// `1 − min_n L_n`, a finite-`n` proxy for `1 − liminf L_n`.
    pub upper: f64,
    /// Set when either end had to be clamped into `[0, 1]`.
    pub clamped: bool,
}

impl DimensionReport {
    pub fn l_values(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.estimates.iter().map(|e| (e.n, e.value))
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

pub fn dimension_bounds(
    spec: &RieszSpec,
    n_range: RangeInclusive<usize>,
    depth: usize,
    method: IntegralMethod,
    opts: &PeyriereOptions,
) -> Result<DimensionReport, AnalysisError> {
    if n_range.is_empty() {
        return Err(AnalysisError::EmptyRange);
    }
    let estimates = n_range
        .map(|n| peyriere_integral(spec, n, depth, method, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let max_l = estimates.iter().map(|e| e.value).fold(f64::NEG_INFINITY, f64::max);
    let min_l = estimates.iter().map(|e| e.value).fold(f64::INFINITY, f64::min);
    let (raw_lower, raw_upper) = (1.0 - max_l, 1.0 - min_l);
    let lower = raw_lower.clamp(0.0, 1.0);
    let upper = raw_upper.clamp(0.0, 1.0);
    Ok(DimensionReport {
        method,
        depth,
        estimates,
        lower,
        upper,
        clamped: lower != raw_lower || upper != raw_upper,
    })
}

use std::ops::RangeInclusive;

use serde::Serialize;

use super::AnalysisError;
use crate::riesz::{eval_partial_product, expand_partial_product, RieszSpec};
use crate::trig::TrigPolynomial;

/// Scales with `s · λ_depth` below this are too fine for `P_{a,depth}` to
/// stand in for the limiting measure.
pub const RESOLUTION_FACTOR: f64 = 8.0;

/// Masses `∫_{t−s}^{t+s} P_{a,depth}(u) du / 2π`, with the expansion cached.
#[derive(Clone, Debug)]
pub struct IntervalMass {
    poly: TrigPolynomial,
    depth: usize,
    top_frequency: i64,
}

impl IntervalMass {
    pub fn new(spec: &RieszSpec, depth: usize) -> Result<Self, AnalysisError> {
        let poly = expand_partial_product(spec, depth)?;
        Ok(Self {
            poly,
            depth,
            top_frequency: spec.lambda(depth),
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn measure(&self, t: f64, s: f64) -> f64 {
        self.poly.interval_integral(t, s)
    }

    pub fn resolves(&self, s: f64) -> bool {
        s * self.top_frequency as f64 >= RESOLUTION_FACTOR
    }
}

pub fn interval_measure(spec: &RieszSpec, depth: usize, t: f64, s: f64) -> Result<f64, AnalysisError> {
    Ok(IntervalMass::new(spec, depth)?.measure(t, s))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleRatio {
    pub s: f64,
    pub measure: f64,
    /// `log μ([t−s, t+s]) / log s`; `None` when the scale was excluded.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderSample {
    pub t: f64,
    pub scales: Vec<ScaleRatio>,
    /// Minimum ratio over the three smallest admissible scales.
    pub alpha_estimate: Option<f64>,
}

impl HolderSample {
    pub fn admissible(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.scales.iter().filter_map(|r| r.ratio.map(|q| (r.s, q)))
    }
}

/// Local Hölder ratios at `t` over strictly decreasing `scales`. A scale is
/// excluded when it lies below the resolution of `depth`, is not below 1, or
/// carries no mass.
pub fn local_holder(
    spec: &RieszSpec,
    depth: usize,
    t: f64,
    scales: &[f64],
) -> Result<HolderSample, AnalysisError> {
    let mass = IntervalMass::new(spec, depth)?;
    local_holder_with(&mass, t, scales)
}

pub(crate) fn local_holder_with(
    mass: &IntervalMass,
    t: f64,
    scales: &[f64],
) -> Result<HolderSample, AnalysisError> {
    if scales.iter().any(|&s| s.is_nan() || s <= 0.0) || scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(AnalysisError::ScalesNotDecreasing);
    }
    let entries: Vec<ScaleRatio> = scales
        .iter()
        .map(|&s| {
            let measure = mass.measure(t, s);
            let ok = mass.resolves(s) && s < 1.0 && measure > 0.0;
            ScaleRatio {
                s,
                measure,
                ratio: ok.then(|| measure.ln() / s.ln()),
            }
        })
        .collect();
    let admissible: Vec<f64> = entries.iter().filter_map(|e| e.ratio).collect();
    let alpha_estimate = admissible
        .iter()
        .rev()
        .take(3)
        .copied()
        .reduce(f64::min);
    Ok(HolderSample {
        t,
        scales: entries,
        alpha_estimate,
    })
}

/// Evaluation grid for [`holder_transfer_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderGrid {
    pub points: Vec<f64>,
    pub scales: Vec<f64>,
    /// Depth of the partial product used for interval masses.
    pub depth: usize,
}

impl HolderGrid {
    pub fn uniform(points: usize, scales: Vec<f64>, depth: usize) -> Self {
        let points = (0..points)
            .map(|k| std::f64::consts::TAU * k as f64 / points as f64)
            .collect();
        Self {
            points,
            scales,
            depth,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderTransfer {
    pub beta: f64,
    /// `max μ([t−s, t+s]) / s^β` over the grid.
    pub interval_constant: f64,
    /// `max P_{a,n}(t) / λ_n^{1−β}` over the grid and `n_range`.
    pub pointwise_constant: f64,
}

impl HolderTransfer {
    /// `C′/C` in the interval-to-pointwise direction.
    pub fn ratio(&self) -> f64 {
        self.pointwise_constant / self.interval_constant
    }
}

/// Measures both sides of the interval/pointwise Hölder transfer. The
/// interval side uses `s^{+β}` in both directions.
pub fn holder_transfer_check(
    spec: &RieszSpec,
    beta: f64,
    n_range: RangeInclusive<usize>,
    grid: &HolderGrid,
) -> Result<HolderTransfer, AnalysisError> {
    spec.require_lacunary("holder_transfer_check")?;
    let ratio = spec.freqs().ratio_min();
    if ratio.is_nan() || ratio <= 3.0 {
        return Err(AnalysisError::RatioTooSmall { ratio });
    }
    if n_range.is_empty() {
        return Err(AnalysisError::EmptyRange);
    }
    spec.check_index(*n_range.end())?;
    let mass = IntervalMass::new(spec, grid.depth)?;
    let mut interval_constant: f64 = 0.0;
    for &t in &grid.points {
        for &s in &grid.scales {
            interval_constant = interval_constant.max(mass.measure(t, s) / s.powf(beta));
        }
    }
    let mut pointwise_constant: f64 = 0.0;
    for n in n_range {
        let scale = (spec.lambda(n) as f64).powf(1.0 - beta);
        for &t in &grid.points {
            pointwise_constant = pointwise_constant.max(eval_partial_product(spec, n, t)? / scale);
        }
    }
    Ok(HolderTransfer {
        beta,
        interval_constant,
        pointwise_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riesz::Regime;
    use std::f64::consts::PI;

    fn lebesgue(count: usize) -> RieszSpec {
        RieszSpec::geometric(4, count, 0.0, 0.0, Regime::Lacunary3).unwrap()
    }

    #[test]
    fn interval_measure_basics() {
        let spec = RieszSpec::geometric(4, 5, 1.0, 0.4, Regime::Lacunary3).unwrap();
        assert!((interval_measure(&spec, 4, 1.3, PI).unwrap() - 1.0).abs() < 1e-12);
        assert!((interval_measure(&lebesgue(4), 3, 0.2, 0.5).unwrap() - 0.5 / PI).abs() < 1e-15);
        let m = IntervalMass::new(&spec, 4).unwrap();
        let (t, s) = (0.9, 0.2);
        let split = m.measure(t - s / 2.0, s / 2.0) + m.measure(t + s / 2.0, s / 2.0);
        assert!((split - m.measure(t, s)).abs() < 1e-12);
    }

    #[test]
    fn lebesgue_ratios_approach_one() {
        let spec = lebesgue(12);
        let scales: Vec<f64> = (2..9).map(|k| 4f64.powi(-k)).collect();
        let h = local_holder(&spec, 11, 1.0, &scales).unwrap();
        let ratios: Vec<f64> = h.admissible().map(|(_, r)| r).collect();
        assert_eq!(ratios.len(), scales.len());
        // log(s/π)/log s = 1 + log(1/π)/log s decreases towards 1
        assert!(ratios.windows(2).all(|w| w[1] < w[0]));
        assert!((ratios.last().unwrap() - 1.0) < 0.15);
    }

    #[test]
    fn scales_below_resolution_are_excluded() {
        let spec = lebesgue(4);
        let h = local_holder(&spec, 3, 0.0, &[0.5, 0.2, 1e-4]).unwrap();
        assert!(h.scales[0].ratio.is_some());
        assert!(h.scales[1].ratio.is_some());
        assert!(h.scales[2].ratio.is_none());
        assert!(local_holder(&spec, 3, 0.0, &[0.1, 0.5]).is_err());
    }

    #[test]
    fn peak_at_origin_has_small_exponent() {
        let spec = RieszSpec::geometric(4, 10, 1.0, 0.0, Regime::Lacunary3).unwrap();
        let scales: Vec<f64> = (2..8).map(|k| 4f64.powi(-k)).collect();
        let h = local_holder(&spec, 9, 0.0, &scales).unwrap();
        assert!(h.alpha_estimate.unwrap() < 1.0);
    }

    #[test]
    fn transfer_constants_for_lebesgue() {
        let spec = RieszSpec::geometric(5, 6, 0.0, 0.0, Regime::Lacunary3).unwrap();
        let grid = HolderGrid::uniform(16, vec![0.5, 0.1, 0.01], 5);
        let h = holder_transfer_check(&spec, 1.0, 1..=4, &grid).unwrap();
        assert!((h.interval_constant - 1.0 / PI).abs() < 1e-12);
        assert!((h.pointwise_constant - 1.0).abs() < 1e-12);
        let spec3 = RieszSpec::geometric(3, 6, 0.0, 0.0, Regime::Lacunary3).unwrap();
        assert!(matches!(
            holder_transfer_check(&spec3, 1.0, 1..=4, &grid),
            Err(AnalysisError::RatioTooSmall { .. })
        ));
    }

    #[test]
    fn infeasible_beta_blows_up() {
        let spec = RieszSpec::geometric(4, 8, 1.0, 0.0, Regime::Lacunary3).unwrap();
        let coarse = HolderGrid::uniform(32, vec![0.1], 7);
        let fine = HolderGrid::uniform(32, vec![0.1, 0.01, 0.001], 7);
        let c1 = holder_transfer_check(&spec, 1.5, 1..=3, &coarse).unwrap();
        let c2 = holder_transfer_check(&spec, 1.5, 1..=3, &fine).unwrap();
        assert!(c2.interval_constant > 5.0 * c1.interval_constant);
    }
}

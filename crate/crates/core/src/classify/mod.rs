//! Mutual singularity and equivalence of pairs of Riesz products sharing a
//! frequency sequence.
//!
//! Every criterion depends on whether some infinite series converges. Finite
//! partial sums cannot settle that, so the caller declares the tail behavior
//! of each series in [`TailDeclarations`]; the partial sums and their trend
//! are returned as evidence next to the verdict.

mod series;
mod witness;

pub use series::{
    ks_distance, lacunarity_series, series_gap_ks, series_gap_l2, series_gap_weighted,
    SeriesEvidence, TailBehavior,
};
pub use witness::{build_divergence_witness, witness_series_at, DivergenceWitness, WitnessSeries};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::riesz::{RieszError, RieszSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error(transparent)]
    Riesz(#[from] RieszError),
    #[error("sequences have lengths {a} and {b}; at least {terms} terms are required")]
    TooShort { a: usize, b: usize, terms: usize },
    #[error("|a_{index}| = 1, so the weight 1/(1 − |a_j|) is undefined and the criterion does not apply")]
    WeightSingular { index: usize },
    #[error("modulus {modulus} exceeds 1")]
    ModulusAboveOne { modulus: f64 },
    #[error("the two specs use different frequency sequences")]
    FrequencyMismatch,
    #[error("the sequences agree on every term, so no witness exists")]
    IdenticalSequences,
}

/// Caller-declared tail behavior of each series used by [`classify_pair`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TailDeclarations {
    /// `Σ |a_j − b_j|²`.
    pub l2_gap: TailBehavior,
    /// `Σ |a_j − b_j|² / (1 − |a_j|)`.
    pub weighted_gap: TailBehavior,
    /// `Σ |a_j − b_j|² / (1 − |b_j|)`.
    pub weighted_gap_reversed: TailBehavior,
    /// `Σ d(a_j, b_j)²` for the disc quasi-distance [`ks_distance`].
    pub ks_gap: TailBehavior,
    /// `Σ (λ_j / λ_{j+1})²`.
    pub lacunarity: TailBehavior,
}

impl TailDeclarations {
    /// Declarations for the pair taken in the opposite order.
    pub fn swapped(self) -> Self {
        Self {
            weighted_gap: self.weighted_gap_reversed,
            weighted_gap_reversed: self.weighted_gap,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    MutuallySingular,
    Equivalent,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// The coefficient sequences coincide.
    TrivialEqual,
    /// `Σ |a_j − b_j|² = ∞` gives mutual singularity.
    L2GapDivergent,
    /// `λ_j = 4^j` and `Σ |a_j − b_j|²/(1 − |a_j|) < ∞`, in either order.
    WeightedGapConvergent,
    /// `|a_j| = |b_j|` for all `j` and `Σ |a_j − b_j|² < ∞`.
    EqualModuliGapConvergent,
    /// `Σ d(a_j, b_j)² < ∞` together with `Σ (λ_j/λ_{j+1})² < ∞`.
    KsDistanceConvergent,
}

impl Criterion {
    pub fn outcome(self) -> Outcome {
        match self {
            Criterion::L2GapDivergent => Outcome::MutuallySingular,
            _ => Outcome::Equivalent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub criterion: Option<Criterion>,
    pub evidence: Vec<SeriesEvidence>,
}

impl Verdict {
    fn fired(criterion: Criterion, evidence: Vec<SeriesEvidence>) -> Self {
        Self {
            outcome: criterion.outcome(),
            criterion: Some(criterion),
            evidence,
        }
    }

    fn unknown(evidence: Vec<SeriesEvidence>) -> Self {
        Self {
            outcome: Outcome::Unknown,
            criterion: None,
            evidence,
        }
    }
}

/// Moduli agree to this relative tolerance for the equal-moduli rule.
const MODULUS_TOLERANCE: f64 = 1e-12;

fn is_powers_of_four(spec: &RieszSpec) -> bool {
    let mut expected = 1i64;
    for &v in spec.freqs().values() {
        if v != expected {
            return false;
        }
        expected = match expected.checked_mul(4) {
            Some(e) => e,
            None => return true,
        };
    }
    true
}

/// Applies the criteria in order and reports the first that fires.
///
/// 1. equal coefficient sequences;
/// 2. `l2_gap` declared divergent: mutually singular;
/// 3. `λ_j = 4^j` and a weighted gap declared convergent in either order;
/// 4. equal moduli and `l2_gap` declared convergent;
/// 5. `ks_gap` and `lacunarity` both declared convergent.
///
/// Anything else is [`Outcome::Unknown`].
pub fn classify_pair(
    spec_a: &RieszSpec,
    spec_b: &RieszSpec,
    tails: &TailDeclarations,
) -> Result<Verdict, ClassifyError> {
    if spec_a.freqs() != spec_b.freqs() {
        return Err(ClassifyError::FrequencyMismatch);
    }
    spec_a.require_lacunary("classify_pair")?;
    spec_b.require_lacunary("classify_pair")?;
    let (a, b) = (spec_a.coeffs(), spec_b.coeffs());
    let terms = a.len();

    let l2 = series_gap_l2(a, b, terms)?.declare(tails.l2_gap);
    if a.entries() == b.entries() {
        return Ok(Verdict::fired(Criterion::TrivialEqual, vec![l2]));
    }
    if l2.declared_tail == TailBehavior::Divergent {
        return Ok(Verdict::fired(Criterion::L2GapDivergent, vec![l2]));
    }
    let mut evidence = vec![l2.clone()];

    if is_powers_of_four(spec_a) {
        let oriented = [
            (a, b, tails.weighted_gap),
            (b, a, tails.weighted_gap_reversed),
        ];
        for (x, y, declared) in oriented {
            // An orientation with |x_j| = 1 somewhere is simply inapplicable.
            if let Ok(s) = series_gap_weighted(x, y, terms) {
                let s = s.declare(declared);
                let fires = s.declared_tail == TailBehavior::Convergent;
                evidence.push(s);
                if fires {
                    return Ok(Verdict::fired(Criterion::WeightedGapConvergent, evidence));
                }
            }
        }
    }

    let equal_moduli = a
        .entries()
        .iter()
        .zip(b.entries())
        .all(|(x, y)| (x.r - y.r).abs() <= MODULUS_TOLERANCE * x.r.max(y.r).max(1.0));
    if equal_moduli && l2.declared_tail == TailBehavior::Convergent {
        return Ok(Verdict::fired(Criterion::EqualModuliGapConvergent, evidence));
    }

    let ks = series_gap_ks(a, b, terms)?.declare(tails.ks_gap);
    let lac = lacunarity_series(spec_a.freqs()).declare(tails.lacunarity);
    let fires = ks.declared_tail == TailBehavior::Convergent && lac.declared_tail == TailBehavior::Convergent;
    evidence.push(ks);
    evidence.push(lac);
    if fires {
        return Ok(Verdict::fired(Criterion::KsDistanceConvergent, evidence));
    }
    Ok(Verdict::unknown(evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riesz::{Coefficient, CoefficientSequence, FrequencySequence, Regime};

    fn spec(coeffs: Vec<Coefficient>) -> RieszSpec {
        let n = coeffs.len();
        RieszSpec::new(
            FrequencySequence::geometric(4, n).unwrap(),
            CoefficientSequence::new(coeffs),
            Regime::Lacunary3,
        )
        .unwrap()
    }

    fn constant(r: f64, n: usize) -> RieszSpec {
        spec(vec![Coefficient::polar(r, 0.0); n])
    }

    #[test]
    fn equal_sequences_are_trivially_equivalent() {
        let a = constant(0.5, 20);
        let v = classify_pair(&a, &a, &TailDeclarations::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Equivalent);
        assert_eq!(v.criterion, Some(Criterion::TrivialEqual));
        assert!(v.evidence[0].partial_sums.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn divergent_gap_is_singular() {
        let n = 30;
        let a = constant(0.0, n);
        let b = spec((0..n).map(|j| Coefficient::polar(1.0 / ((j + 1) as f64).sqrt(), 0.0)).collect());
        let tails = TailDeclarations {
            l2_gap: TailBehavior::Divergent,
            ..Default::default()
        };
        let v = classify_pair(&a, &b, &tails).unwrap();
        assert_eq!(v.outcome, Outcome::MutuallySingular);
        assert_eq!(v.criterion, Some(Criterion::L2GapDivergent));
        // numbers alone never decide
        let v = classify_pair(&a, &b, &TailDeclarations::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Unknown);
        assert_eq!(v.criterion, None);
    }

    #[test]
    fn equal_moduli_with_convergent_gap() {
        let n = 30;
        let a = constant(0.5, n);
        let b = spec((0..n).map(|j| Coefficient::polar(0.5, 0.5f64.powi(j as i32))).collect());
        let tails = TailDeclarations {
            l2_gap: TailBehavior::Convergent,
            ..Default::default()
        };
        let v = classify_pair(&a, &b, &tails).unwrap();
        assert_eq!(v.criterion, Some(Criterion::EqualModuliGapConvergent));
        assert_eq!(v.outcome, Outcome::Equivalent);
    }

    #[test]
    fn weighted_gap_in_either_order() {
        let n = 20;
        let a = spec(vec![Coefficient::polar(1.0, 0.0); n]);
        let b = spec((0..n).map(|j| Coefficient::polar(0.5 - 0.25f64.powi(j as i32 + 1), 0.0)).collect());
        let tails = TailDeclarations {
            weighted_gap_reversed: TailBehavior::Convergent,
            ..Default::default()
        };
        let v = classify_pair(&a, &b, &tails).unwrap();
        assert_eq!(v.criterion, Some(Criterion::WeightedGapConvergent));
        let w = classify_pair(&b, &a, &tails.swapped()).unwrap();
        assert_eq!(w.criterion, Some(Criterion::WeightedGapConvergent));
        // not 4^j: rule skipped
        let freqs = FrequencySequence::geometric(5, n).unwrap();
        let a5 = RieszSpec::new(freqs.clone(), a.coeffs().clone(), Regime::Lacunary3).unwrap();
        let b5 = RieszSpec::new(freqs, b.coeffs().clone(), Regime::Lacunary3).unwrap();
        assert_eq!(classify_pair(&a5, &b5, &tails).unwrap().outcome, Outcome::Unknown);
    }

    #[test]
    fn ks_rule_needs_both_declarations() {
        let a = constant(0.3, 10);
        let b = constant(0.4, 10);
        let mut tails = TailDeclarations {
            ks_gap: TailBehavior::Convergent,
            ..Default::default()
        };
        assert_eq!(classify_pair(&a, &b, &tails).unwrap().outcome, Outcome::Unknown);
        tails.lacunarity = TailBehavior::Convergent;
        let v = classify_pair(&a, &b, &tails).unwrap();
        assert_eq!(v.criterion, Some(Criterion::KsDistanceConvergent));
    }

    #[test]
    fn mismatched_frequencies_are_rejected() {
        let a = constant(0.3, 10);
        let b = RieszSpec::geometric(5, 10, 0.3, 0.0, Regime::Lacunary3).unwrap();
        assert_eq!(
            classify_pair(&a, &b, &TailDeclarations::default()),
            Err(ClassifyError::FrequencyMismatch)
        );
        let d = RieszSpec::geometric(2, 10, 0.3, 0.0, Regime::Dyadic).unwrap();
        let d2 = RieszSpec::geometric(2, 10, 0.4, 0.0, Regime::Dyadic).unwrap();
        assert!(matches!(
            classify_pair(&d, &d2, &TailDeclarations::default()),
            Err(ClassifyError::Riesz(RieszError::UnsupportedRegime { .. }))
        ));
    }

    #[test]
    fn declarations_parse_with_defaults() {
        let t: TailDeclarations = serde_json::from_str(r#"{"l2_gap": "divergent"}"#).unwrap();
        assert_eq!(t.l2_gap, TailBehavior::Divergent);
        assert_eq!(t.ks_gap, TailBehavior::Unknown);
        assert!(serde_json::from_str::<TailDeclarations>(r#"{"l2": "divergent"}"#).is_err());
    }
}

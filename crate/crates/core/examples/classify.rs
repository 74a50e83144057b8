//! Singular or equivalent: three canonical pairs and an ℓ² divergence witness.

use riesz::classify::{build_divergence_witness, classify_pair, TailBehavior, TailDeclarations};
use riesz::riesz::{Coefficient, CoefficientSequence, FrequencySequence, Regime, RieszSpec};

fn spec(coeffs: Vec<Coefficient>) -> RieszSpec {
    let n = coeffs.len();
    RieszSpec::new(FrequencySequence::geometric(4, n).unwrap(), CoefficientSequence::new(coeffs), Regime::Lacunary3).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 25;
    let a = spec((0..n).map(|j| Coefficient::polar(0.5, j as f64)).collect());
    let rotated = spec((0..n).map(|j| Coefficient::polar(0.5, j as f64 + 1.0 / (j + 1) as f64)).collect());
    let one = spec(vec![Coefficient::polar(1.0, 0.0); n]);
    let zero = spec(vec![Coefficient::ZERO; n]);

    let convergent = TailDeclarations { l2_gap: TailBehavior::Convergent, ..Default::default() };
    let divergent = TailDeclarations { l2_gap: TailBehavior::Divergent, ..Default::default() };
    for (name, x, y, tails) in [("a vs a", &a, &a, convergent), ("1 vs 0", &one, &zero, divergent), ("a vs rotated a", &a, &rotated, convergent)] {
        let v = classify_pair(x, y, &tails)?;
        println!("{name}: {:?} by {:?}", v.outcome, v.criterion);
    }

    let w = build_divergence_witness(one.coeffs(), zero.coeffs(), n)?;
    println!(
        "witness: Σ c_j(ā_j − b̄_j) reaches {:.4} while Σ|c_j|² = {:.4} <= {}",
        w.partial_inner[n - 1],
        w.l2_norm_partial[n - 1],
        w.l2_bound()
    );
    Ok(())
}

//! μ_a ∗ μ_b = μ_{ab/2}, and a product convolved with its dilate by 2 gives
//! Lebesgue measure when λ_j = 4^j.

use num_complex::Complex64;
use riesz::riesz::{convolve_products, expand_partial_product, CoefficientSequence, Regime, RieszSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = RieszSpec::geometric(4, 5, 0.9, 0.2, Regime::Lacunary3)?;
    let b = RieszSpec::geometric(4, 5, 0.5, 1.1, Regime::Lacunary3)?;
    let conv = convolve_products(&expand_partial_product(&a, 4)?, &expand_partial_product(&b, 4)?);
    let half: Vec<Complex64> = (0..5).map(|j| a.a(j) * b.a(j) / 2.0).collect();
    let ab = a.with_coeffs(CoefficientSequence::from_complex(&half))?;
    println!("max |μ_a ∗ μ_b − μ_(ab/2)| = {:e}", conv.max_abs_diff(&expand_partial_product(&ab, 4)?));

    let full = RieszSpec::geometric(4, 5, 1.0, 0.0, Regime::Lacunary3)?;
    let p = expand_partial_product(&full, 4)?;
    let lebesgue = convolve_products(&p, &p.dilate(2));
    println!("μ ∗ (μ dilated by 2): {:?}", lebesgue.iter().collect::<Vec<_>>());
    Ok(())
}

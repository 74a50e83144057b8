//! Dyadic frequencies collide; the expansion aggregates the colliding terms.

use riesz::riesz::{expand_partial_product, sign_patterns_for, Regime, RieszSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RieszSpec::geometric(2, 5, 0.6, 0.0, Regime::Dyadic)?;
    let p = expand_partial_product(&spec, 4)?;
    println!("P_4 has {} distinct frequencies out of 3^5 = 243 sign patterns", p.len());
    for m in [1, 3, 7] {
        let patterns = sign_patterns_for(spec.freqs(), m, 4);
        println!("frequency {m}: {} patterns, coefficient {:.6}", patterns.len(), p.coeff(m).re);
    }
    Ok(())
}

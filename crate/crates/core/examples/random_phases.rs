//! Seeded random phases θ_j + ω_j with the moduli kept.

use riesz::riesz::{randomize_phases, Regime, RieszSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RieszSpec::geometric(4, 5, 0.75, 0.0, Regime::Lacunary3)?;
    let random = randomize_phases(&spec, 42);
    let source = random.coeffs().phase_source().expect("recorded");
    println!("seed {} via {}", source.seed, source.generator);
    for (j, c) in random.coeffs().entries().iter().enumerate() {
        println!("a_{j} = {:.2} e^(i {:.6})", c.r, c.theta);
    }
    assert_eq!(random, randomize_phases(&spec, 42));
    Ok(())
}

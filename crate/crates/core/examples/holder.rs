//! Local Hölder ratios log μ(I) / log s at a few points.

use riesz::analysis::local_holder;
use riesz::riesz::{Regime, RieszSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RieszSpec::geometric(4, 8, 1.0, 0.0, Regime::Lacunary3)?;
    let scales = [0.1, 0.03, 0.01, 0.003, 0.001];
    for t in [0.0, 1.0, std::f64::consts::PI] {
        let h = local_holder(&spec, 7, t, &scales)?;
        let ratios: Vec<String> = h.admissible().map(|(s, q)| format!("{s}: {q:.3}")).collect();
        println!("t = {t:.4}: {} -> α ≈ {:?}", ratios.join(", "), h.alpha_estimate);
    }
    Ok(())
}

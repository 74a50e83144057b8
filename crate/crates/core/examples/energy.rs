//! α-energy band series around the threshold 4^{α−1}(1 + r²) = 1.

use riesz::analysis::{alpha_energy_band_series, energy_dimension_bound, BandVariant};
use riesz::riesz::{Regime, RieszSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r in [0.25, 0.5, 1.0] {
        let spec = RieszSpec::geometric(4, 16, r, 0.0, Regime::Lacunary3)?;
        let threshold = energy_dimension_bound(&spec, BandVariant::Product)?;
        println!("r = {r}: threshold α = {threshold:.6}");
        for alpha in [threshold - 0.01, threshold + 0.01] {
            let e = alpha_energy_band_series(&spec, alpha, 14, BandVariant::Product)?;
            println!("  α = {alpha:.4}: ratio {:.5}, {:?}", e.ratio.unwrap_or(f64::NAN), e.verdict);
        }
        let exact = energy_dimension_bound(&spec, BandVariant::Exact)?;
        println!("  exact band masses give {exact:.6}");
    }
    Ok(())
}

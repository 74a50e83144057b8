//! Expands a partial Riesz product and reads off its coefficients and bands.

use riesz::riesz::{
    eval_partial_product, expand_partial_product, fourier_coefficient, spectrum_bands, Regime,
    RieszSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RieszSpec::geometric(4, 6, 0.8, 0.5, Regime::Lacunary3)?;
    let p = expand_partial_product(&spec, 3)?;
    println!("P_3 has {} terms, degree {}", p.len(), p.degree());
    for m in [0, 1, 4, 5, 20, 21] {
        let c = fourier_coefficient(&spec, m, 3)?;
        println!("  c({m:>2}) = {:.6} (stable: {})", c.value, c.stable);
    }
    for b in spectrum_bands(&spec, 3)? {
        println!("band {}: [{}, {}] with {} frequencies", b.index, b.min, b.max, b.count);
    }
    let t = 0.3;
    println!("P_3({t}) = {:.12} from coefficients, {:.12} from factors", p.eval_real(t), eval_partial_product(&spec, 3, t)?);
    Ok(())
}

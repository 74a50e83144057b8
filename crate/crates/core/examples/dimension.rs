//! Peyrière integrals L_n by quadrature and by seeded Monte Carlo.

use riesz::analysis::{dimension_bounds, IntegralMethod, PeyriereOptions};
use riesz::riesz::{Regime, RieszSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RieszSpec::geometric(4, 9, 1.0, 0.0, Regime::Lacunary3)?;
    let opts = PeyriereOptions { seed: 5, ..Default::default() };
    for method in [IntegralMethod::Quadrature, IntegralMethod::MonteCarlo] {
        let d = dimension_bounds(&spec, 1..=5, 8, method, &opts)?;
        let values: Vec<String> = d.l_values().map(|(n, l)| format!("L_{n} = {l:.5}")).collect();
        println!("{method:?}: {}", values.join(", "));
        println!("  bracket [{:.5}, {:.5}]", d.lower, d.upper);
    }
    Ok(())
}

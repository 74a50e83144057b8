//! de la Vallée Poussin smoothing and the interval mass upper bound.

use riesz::analysis::{interval_measure, smooth_by_vp, vallee_poussin_kernel, IntervalUpperBound};
use riesz::riesz::{eval_partial_product, Regime, RieszSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RieszSpec::geometric(4, 7, 0.9, 0.3, Regime::Lacunary3)?;
    let v = vallee_poussin_kernel(5)?;
    println!("V_5 plateau: {:?}", (0..12).map(|m| v.coeff(m).re).collect::<Vec<_>>());
    let t = 1.234;
    println!("V ∗ P_6 at n = 2: {:.12}, P_2: {:.12}", smooth_by_vp(&spec, 2, 6, t)?, eval_partial_product(&spec, 2, t)?);

    let upper = IntervalUpperBound::new(&spec, 2, 6)?;
    for s in [0.3, 0.05, 0.005] {
        let b = upper.bound(t, s);
        println!("s = {s}: mass {:.6} <= bound {:.6}", interval_measure(&spec, 6, t, s)?, b.total);
    }
    Ok(())
}

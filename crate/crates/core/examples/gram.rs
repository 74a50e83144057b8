//! The centered exponentials e^{iλ_j t} − ā_j/2 are orthogonal in L²(μ_a).

use riesz::riesz::{gram_centered_exponentials, Regime, RieszSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = RieszSpec::geometric(3, 6, 0.7, 0.4, Regime::Lacunary3)?;
    for j in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|k| gram_centered_exponentials(&spec, j, k, 5).map(|g| format!("{:7.4}", g.re)))
            .collect::<Result<_, _>>()?;
        println!("{}", row.join(" "));
    }
    println!("diagonal should be 1 − |a|²/4 = {}", 1.0 - 0.49 / 4.0);
    Ok(())
}

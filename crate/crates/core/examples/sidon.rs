//! Sidon constants: the union upper bound and a certified lower estimate.

use riesz::qi::{sidon_lower_estimate, sidon_union_bound, SidonOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=4 {
        println!("union of {k}: S <= {:.4}", sidon_union_bound(k)?);
    }
    let opts = SidonOptions { trials: 300, seed: 7, ..Default::default() };
    for set in [vec![1, 4, 16, 64], vec![1, 2, 3, 4, 5]] {
        let e = sidon_lower_estimate(&set, &opts)?;
        println!(
            "{set:?}: S >= {:.4} (degree {}, grid {}, factor {:.4})",
            e.lower_bound, e.degree, e.grid, e.certification_factor
        );
    }
    Ok(())
}

//! Mesh counts of Λ against the β-block meshes and the k·log₂k bounds.

use num_bigint::BigInt;
use riesz::qi::{build_lambda, mesh_intersection, verify_mesh_bound, Mesh};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = build_lambda(3)?;
    let reach: BigInt = lambda.gamma.iter().map(|g| g.magnitude().clone()).max().unwrap().into();
    for nu in 1..=3 {
        let mesh = Mesh::beta_block(nu, 1 << nu, &reach)?;
        let c = mesh_intersection(&lambda.gamma, &mesh)?;
        println!("block {nu}: {} elements ({:?})", c.count, c.method);
    }
    let report = verify_mesh_bound(4)?;
    for row in &report.rows {
        println!("k = {:>2}: count {} >= {:.2}, holds {}", row.k, row.count, row.quarter_bound, row.holds);
    }
    Ok(())
}

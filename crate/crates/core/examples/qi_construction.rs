//! The matrices A_ν, the dissociated base β and the flattened set Λ.

use riesz::qi::{build_dissociated_base, build_lambda, build_qi_matrix, n_nu, qi_check_mitm, IntVectorSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a2 = build_qi_matrix(2)?;
    for row in &a2.rows {
        println!("{}", row.iter().map(|x| format!("{x:>3}")).collect::<String>());
    }
    for nu in 1..=6 {
        println!("N_{nu} = {}", n_nu(nu));
    }
    let base = build_dissociated_base(2)?;
    println!("β_1..β_7 = {:?}", base.beta.iter().map(|b| b.to_string()).collect::<Vec<_>>());

    let lambda = build_lambda(3)?;
    println!("Λ through ν = 3 has {} elements", lambda.len());
    let a3 = qi_check_mitm(&build_qi_matrix(3)?.column_set())?;
    println!("A_3 columns independent: {}", a3.independent);
    let prefix = qi_check_mitm(&IntVectorSet::from_bigints(lambda.prefix(2))?)?;
    println!("Λ prefix through ν = 2 independent: {}", prefix.independent);
    Ok(())
}

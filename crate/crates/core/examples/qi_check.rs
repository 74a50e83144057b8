//! Quasi-independence by exhaustive search and by meet-in-the-middle.

use riesz::qi::{qi_check_bruteforce, qi_check_mitm, IntVectorSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for values in [vec![1, 2, 3], vec![3, 4, 5], vec![1, 3, 9, 27, 81], vec![5, 7, 12, 30, 31, 60]] {
        let set = IntVectorSet::from_integers(&values)?;
        let brute = qi_check_bruteforce(&set)?;
        let mitm = qi_check_mitm(&set)?;
        assert_eq!(brute.witness, mitm.witness);
        println!("{values:?}: independent {}, witness {:?}", brute.independent, brute.witness);
    }
    let vectors = IntVectorSet::from_vectors(&[vec![1, 0], vec![0, 1], vec![1, -1]])?;
    println!("vectors: {:?}", qi_check_bruteforce(&vectors)?.witness);
    Ok(())
}

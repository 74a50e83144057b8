use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::{Coefficient, CoefficientSequence, PhaseSource, RieszSpec};

/// Name recorded next to the seed in every randomized output.
pub const PHASE_GENERATOR: &str = "ChaCha8Rng";

/// Replaces `θ_j` by `θ_j + ω_j mod 2π` with `ω_j` independent and uniform on
/// `[0, 2π)`, drawn from a ChaCha8 stream seeded by `seed`. Moduli are kept;
/// zero coefficients keep their canonical zero phase.
pub fn randomize_phases(spec: &RieszSpec, seed: u64) -> RieszSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = spec
        .coeffs()
        .entries()
        .iter()
        .map(|c| {
            // One draw per index, even for zero moduli, so index j always
            // consumes the j-th variate.
            let omega = rng.random::<f64>() * TAU;
            Coefficient::polar(c.r, c.theta + omega)
        })
        .collect();
    let coeffs = CoefficientSequence::new(entries).with_phase_source(PhaseSource {
        seed,
        generator: PHASE_GENERATOR.to_string(),
    });
    spec.with_coeffs(coeffs)
        .expect("moduli and frequencies are unchanged")
}

//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Runs without the libtest harness so the lines appear in every run.

use std::f64::consts::{PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use riesz::analysis::{
    alpha_energy_band_series, alpha_energy_direct, band_edges, band_plancherel_mass,
    dimension_bounds, interval_measure, peyriere_integral, smooth_by_vp, smoothed_partial_product,
    BandVariant, IntegralMethod, IntervalUpperBound, PeyriereOptions, SeriesVerdict,
};
use riesz::classify::{classify_pair, series_gap_l2, Criterion, Outcome, TailBehavior, TailDeclarations};
use riesz::qi::{
    build_lambda, build_qi_matrix, n_nu, n_nu_recurrence, qi_check_bruteforce, qi_check_mitm,
    sidon_lower_estimate, sidon_union_bound, verify_mesh_bound, IntVectorSet, SidonOptions,
};
use riesz::riesz::{
    convolve_products, eval_partial_product, expand_partial_product, gram_centered_exponentials,
    Coefficient, CoefficientSequence, FrequencySequence, Regime, RieszSpec,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn powers_of_four(count: usize, coeffs: Vec<Coefficient>) -> RieszSpec {
    RieszSpec::new(
        FrequencySequence::geometric(4, count).unwrap(),
        CoefficientSequence::new(coeffs),
        Regime::Lacunary3,
    )
    .unwrap()
}

fn random_coeffs(rng: &mut ChaCha8Rng, count: usize) -> Vec<Coefficient> {
    (0..count)
        .map(|_| Coefficient::polar(rng.random::<f64>(), rng.random::<f64>() * TAU))
        .collect()
}

fn constant(count: usize, r: f64) -> Vec<Coefficient> {
    vec![Coefficient::polar(r, 0.0); count]
}

fn expansion_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let spec = powers_of_four(6, random_coeffs(&mut rng, 6));
        let p = expand_partial_product(&spec, 5).unwrap();
        worst = worst.max((p.coeff(0) - 1.0).norm());
        for j in 0..6 {
            worst = worst.max((p.coeff(spec.lambda(j)) - spec.a(j) / 2.0).norm());
            for k in 0..6 {
                if j != k {
                    let m = spec.lambda(j) + spec.lambda(k);
                    worst = worst.max((p.coeff(m) - spec.a(j) * spec.a(k) / 4.0).norm());
                }
            }
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("50 draws, max deviation {worst:e}"))
}

fn parseval() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for n in 0..=6 {
        for _ in 0..10 {
            let spec = powers_of_four(7, random_coeffs(&mut rng, 7));
            let p = expand_partial_product(&spec, n).unwrap();
            let product: f64 = (0..=n).map(|j| 1.0 + spec.a(j).norm_sqr() / 2.0).product();
            // band Plancherel: the constant term plus the mass of each band
            let bands = 1.0 + 2.0 * (0..=n).map(|j| band_plancherel_mass(&spec, j) / 2.0).sum::<f64>();
            worst = worst.max((p.l2_mass() - product).abs()).max((bands - product).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("n = 0..6, max deviation {worst:e}"))
}

fn gram_system() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut exact_err, mut quad_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..5 {
        let spec = powers_of_four(7, random_coeffs(&mut rng, 7));
        let depth = 6;
        let degree = spec.freqs().partial_sum(depth);
        let m = 4 * (degree as usize + 2 * spec.lambda(5) as usize);
        let weights: Vec<f64> = (0..m)
            .map(|k| eval_partial_product(&spec, depth, TAU * k as f64 / m as f64).unwrap())
            .collect();
        for j in 0..=5 {
            for k in 0..=5 {
                let expected = if j == k { 1.0 - spec.a(j).norm_sqr() / 4.0 } else { 0.0 };
                let g = gram_centered_exponentials(&spec, j, k, depth).unwrap();
                exact_err = exact_err.max((g - expected).norm());
                let (aj, ak) = (spec.a(j).conj() / 2.0, spec.a(k).conj() / 2.0);
                let q: Complex64 = weights
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| {
                        let t = TAU * i as f64 / m as f64;
                        let fj = Complex64::cis(spec.lambda(j) as f64 * t) - aj;
                        let fk = Complex64::cis(spec.lambda(k) as f64 * t) - ak;
                        fj * fk.conj() * w
                    })
                    .sum::<Complex64>()
                    / m as f64;
                quad_err = quad_err.max((q - expected).norm());
            }
        }
    }
    ensure(exact_err <= 1e-12, || format!("coefficient algebra off by {exact_err:e}"))?;
    ensure(quad_err <= 1e-6, || format!("quadrature off by {quad_err:e}"))?;
    Ok(format!("exact {exact_err:e}, quadrature {quad_err:e}"))
}

fn convolution() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let a = powers_of_four(6, random_coeffs(&mut rng, 6));
        let b = powers_of_four(6, random_coeffs(&mut rng, 6));
        let half: Vec<Complex64> = (0..6).map(|j| a.a(j) * b.a(j) / 2.0).collect();
        let ab = a.with_coeffs(CoefficientSequence::from_complex(&half)).unwrap();
        let conv = convolve_products(&expand_partial_product(&a, 5).unwrap(), &expand_partial_product(&b, 5).unwrap());
        let expected = expand_partial_product(&ab, 5).unwrap();
        ensure(conv.same_support(&expected), || "supports differ".into())?;
        worst = worst.max(conv.max_abs_diff(&expected));
    }
    ensure(worst <= 1e-15, || format!("max deviation {worst:e}"))?;

    // μ_a and its image under t ↦ 2t have disjoint spectra off zero.
    let a = powers_of_four(6, constant(6, 1.0));
    let p = expand_partial_product(&a, 5).unwrap();
    let image = expand_partial_product(&a.dilated(2).unwrap(), 5).unwrap();
    ensure(image == p.dilate(2), || "dilated spec differs from dilated coefficients".into())?;
    let lebesgue = convolve_products(&p, &image);
    let support: Vec<(i64, Complex64)> = lebesgue.iter().collect();
    ensure(support == vec![(0, Complex64::new(1.0, 0.0))], || format!("convolution is {support:?}"))?;
    Ok(format!("max deviation {worst:e}; dilation pair gives {{0: 1}}"))
}

fn energy_thresholds() -> Check {
    let mut checked = 0;
    for a in [0.25, 0.5, 1.0] {
        let spec = powers_of_four(14, constant(14, a));
        let threshold = 1.0 - (1.0f64 + a * a).ln() / 4f64.ln();
        for k in (-5..=5).filter(|&k| k != 0) {
            let alpha = threshold + k as f64 * 1e-3;
            if !(alpha > 0.0 && alpha < 1.0) {
                continue;
            }
            let report = alpha_energy_band_series(&spec, alpha, 12, BandVariant::Product).unwrap();
            let convergent = 4f64.powf(alpha - 1.0) * (1.0 + a * a) < 1.0;
            let expected = if convergent { SeriesVerdict::Convergent } else { SeriesVerdict::Divergent };
            ensure(report.verdict == expected, || {
                format!("a = {a}, alpha = {alpha}: {:?}, expected {expected:?}", report.verdict)
            })?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for alpha in [0.2, 0.5, 0.8] {
        let spec = powers_of_four(8, random_coeffs(&mut rng, 8));
        let exact = alpha_energy_band_series(&spec, alpha, 6, BandVariant::Exact).unwrap();
        let poly = expand_partial_product(&spec, 6).unwrap();
        let direct = alpha_energy_direct(&poly, alpha, spec.freqs().partial_sum(6), &band_edges(&spec, 6)).unwrap();
        ensure(exact.partial_sums.len() == direct.partial_sums.len(), || "band counts differ".into())?;
        for (x, y) in exact.partial_sums.iter().zip(&direct.partial_sums) {
            worst = worst.max((x - y).abs());
        }
    }
    ensure(worst <= 1e-10, || format!("band_exact vs direct off by {worst:e}"))?;
    Ok(format!("{checked} threshold verdicts; band_exact vs direct {worst:e}"))
}

fn dimension_bracket() -> Check {
    let opts = PeyriereOptions { seed: 17, ..Default::default() };
    let flat = powers_of_four(9, constant(9, 0.0));
    for method in [IntegralMethod::Quadrature, IntegralMethod::MonteCarlo] {
        let d = dimension_bounds(&flat, 1..=3, 6, method, &opts).unwrap();
        ensure(d.lower == 1.0 && d.upper == 1.0, || format!("{method:?}: a = 0 gives ({}, {})", d.lower, d.upper))?;
    }
    let spec = powers_of_four(9, constant(9, 1.0));
    let (mut gap, mut lowest): (f64, f64) = (0.0, 1.0);
    for n in 1..=5 {
        let q = peyriere_integral(&spec, n, n + 3, IntegralMethod::Quadrature, &opts).unwrap();
        let mc = peyriere_integral(&spec, n, n + 3, IntegralMethod::MonteCarlo, &opts).unwrap();
        ensure(q.valid && mc.valid, || format!("n = {n}: too many clipped nodes"))?;
        gap = gap.max((q.value - mc.value).abs());
        lowest = lowest.min(1.0 - q.value).min(1.0 - mc.value);
    }
    ensure(gap <= 3e-3, || format!("quadrature and Monte Carlo differ by {gap:e}"))?;
    ensure(lowest >= 0.48, || format!("1 - L_n drops to {lowest}"))?;
    Ok(format!("a = 0 gives (1, 1); max |quad - mc| {gap:.2e}, min 1 - L_n {lowest:.4}"))
}

fn kernel_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut coeff_err, mut grid_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..3 {
        let spec = powers_of_four(7, random_coeffs(&mut rng, 7));
        for n in 0..=4 {
            ensure(spec.freqs().gap(n) == Some(true), || format!("gap fails at n = {n}"))?;
            let smoothed = smoothed_partial_product(&spec, n, 6).unwrap();
            let p = expand_partial_product(&spec, n).unwrap();
            ensure(smoothed.same_support(&p), || format!("n = {n}: supports differ"))?;
            coeff_err = coeff_err.max(smoothed.max_abs_diff(&p));
            let t = rng.random::<f64>() * TAU;
            let direct = smooth_by_vp(&spec, n, 6, t).unwrap();
            grid_err = grid_err.max((direct - eval_partial_product(&spec, n, t).unwrap()).abs());
            for k in 0..10_000 {
                let t = TAU * k as f64 / 10_000.0;
                grid_err = grid_err.max((smoothed.eval_real(t) - eval_partial_product(&spec, n, t).unwrap()).abs());
            }
        }
    }
    ensure(coeff_err == 0.0, || format!("coefficients differ by {coeff_err:e}"))?;
    ensure(grid_err <= 1e-8, || format!("grid values differ by {grid_err:e}"))?;
    Ok(format!("coefficientwise exact, grid {grid_err:e}"))
}

fn interval_bound() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (n, j_max) = (2, 6);
    let mut least_slack = f64::INFINITY;
    for _ in 0..10 {
        let spec = powers_of_four(7, random_coeffs(&mut rng, 7));
        let upper = IntervalUpperBound::new(&spec, n, j_max).unwrap();
        for _ in 0..100 {
            let t = rng.random::<f64>() * TAU;
            let s = 10f64.powf(-3.0 * rng.random::<f64>()) * 0.5;
            let mass = interval_measure(&spec, j_max, t, s).unwrap();
            let bound = upper.bound(t, s).total;
            ensure(bound >= mass, || format!("t = {t}, s = {s}: bound {bound} < mass {mass}"))?;
            least_slack = least_slack.min(bound - mass);
        }
    }
    Ok(format!("1000 intervals, least slack {least_slack:.3e}"))
}

fn qi_construction() -> Check {
    for nu in 1..=8u32 {
        let closed = (1u64 << (nu - 1)) * (2 + nu as u64);
        ensure(n_nu(nu) == closed && n_nu_recurrence(nu) == closed, || format!("N_{nu} mismatch"))?;
        ensure(build_qi_matrix(nu).unwrap().col_count() as u64 == closed, || format!("A_{nu} width"))?;
    }
    for nu in 1..=2 {
        let v = qi_check_bruteforce(&build_qi_matrix(nu).unwrap().column_set()).unwrap();
        ensure(v.independent, || format!("A_{nu} columns dependent: {:?}", v.witness))?;
    }
    let v = qi_check_mitm(&build_qi_matrix(3).unwrap().column_set()).unwrap();
    ensure(v.independent, || format!("A_3 columns dependent: {:?}", v.witness))?;
    let lambda = build_lambda(2).unwrap();
    let v = qi_check_bruteforce(&IntVectorSet::from_bigints(lambda.prefix(2)).unwrap()).unwrap();
    ensure(v.independent, || format!("Λ prefix dependent: {:?}", v.witness))?;
    Ok("A_1, A_2 exhaustive, A_3 by meet-in-the-middle, 11-element Λ prefix exhaustive".into())
}

fn mesh_sharpness() -> Check {
    let mut rows = 0;
    for nu in 1..=6u32 {
        let expected = (1usize << (nu - 1)) * (2 + nu as usize);
        let report = verify_mesh_bound(nu).unwrap();
        ensure(report.rows.len() == 1 << nu, || format!("ν = {nu}: {} rows", report.rows.len()))?;
        for row in &report.rows {
            let k = row.k as f64;
            ensure(row.count == expected, || format!("ν = {nu}, k = {}: count {}", row.k, row.count))?;
            ensure(row.count as f64 >= 0.25 * k * k.log2(), || format!("ν = {nu}, k = {}: quarter bound", row.k))?;
            if row.k == 1 << nu {
                ensure(row.count as f64 > 0.5 * k * k.log2(), || format!("ν = {nu}: half bound"))?;
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} (ν, k) pairs"))
}

fn sidon_bounds() -> Check {
    let single = sidon_union_bound(1).unwrap();
    let exact = 3.0 * 3f64.sqrt();
    ensure((single - exact).abs() <= 1e-9, || format!("S_1 = {single}"))?;
    let sets: [&[i64]; 5] = [&[1, 4, 16, 64], &[1, 3, 9, 27, 81], &[1, 2, 4, 8, 16], &[3, 4, 5], &[2, 7, 19, 50, 130, 341]];
    let mut best: f64 = 0.0;
    for set in sets {
        let qi = qi_check_bruteforce(&IntVectorSet::from_integers(set).unwrap()).unwrap();
        ensure(qi.independent, || format!("{set:?} is not quasi-independent"))?;
        let e = sidon_lower_estimate(set, &SidonOptions { trials: 200, seed: 11, ..Default::default() }).unwrap();
        ensure(e.lower_bound >= 1.0 && e.lower_bound <= exact + 1e-9, || format!("{set:?}: {}", e.lower_bound))?;
        best = best.max(e.lower_bound);
    }
    Ok(format!("3√3 = {single}; largest certified lower bound {best:.4}"))
}

fn classifier() -> Check {
    let count = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let base = random_coeffs(&mut rng, count);
    let a = powers_of_four(count.min(30), base[..30].to_vec());
    let full = powers_of_four(30, constant(30, 1.0));
    let zero = powers_of_four(30, constant(30, 0.0));
    let rotated = powers_of_four(
        30,
        base[..30]
            .iter()
            .enumerate()
            .map(|(j, c)| Coefficient::polar(c.r, c.theta + 1.0 / (j + 1) as f64))
            .collect(),
    );
    let convergent = TailDeclarations { l2_gap: TailBehavior::Convergent, ..Default::default() };
    let divergent = TailDeclarations { l2_gap: TailBehavior::Divergent, ..Default::default() };
    let cases = [
        (&a, &a, convergent, Outcome::Equivalent, Criterion::TrivialEqual),
        (&full, &zero, divergent, Outcome::MutuallySingular, Criterion::L2GapDivergent),
        (&a, &rotated, convergent, Outcome::Equivalent, Criterion::EqualModuliGapConvergent),
    ];
    for (x, y, tails, outcome, criterion) in cases {
        let v = classify_pair(x, y, &tails).unwrap();
        ensure(v.outcome == outcome && v.criterion == Some(criterion), || {
            format!("expected {outcome:?}/{criterion:?}, got {:?}/{:?}", v.outcome, v.criterion)
        })?;
    }
    // the declared-convergent gap really is bounded: |Δθ_j| = 1/(j+1)
    let gap = series_gap_l2(a.coeffs(), rotated.coeffs(), 30).unwrap().last();
    ensure(gap <= PI * PI / 6.0, || format!("gap {gap}"))?;
    Ok("trivial_equal, l2_gap_divergent, equal_moduli_gap_convergent".into())
}

fn combination(set: &[Vec<i64>], eps: &[i8]) -> Vec<i128> {
    let dim = set[0].len();
    (0..dim)
        .map(|d| set.iter().zip(eps).map(|(v, &e)| e as i128 * v[d] as i128).sum())
        .collect()
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut dependent, mut independent) = (0, 0);
    for case in 0..200 {
        let k = rng.random_range(1..=12);
        let dim = if case % 4 == 0 { 2 } else { 1 };
        let range = if case % 2 == 0 { 40 } else { 4000 };
        let mut set: Vec<Vec<i64>> = Vec::new();
        while set.len() < k {
            let v: Vec<i64> = (0..dim).map(|_| rng.random_range(-range..=range)).collect();
            if v.iter().any(|&x| x != 0) && !set.contains(&v) {
                set.push(v);
            }
        }
        let vs = IntVectorSet::from_vectors(&set).unwrap();
        let brute = qi_check_bruteforce(&vs).unwrap();
        let mitm = qi_check_mitm(&vs).unwrap();
        ensure(brute.independent == mitm.independent && brute.witness == mitm.witness, || {
            format!("case {case}: {brute:?} vs {mitm:?}")
        })?;
        match &brute.witness {
            Some(w) => {
                ensure(w.iter().any(|&e| e != 0), || format!("case {case}: trivial witness"))?;
                ensure(combination(&set, w).iter().all(|&x| x == 0), || format!("case {case}: witness fails"))?;
                dependent += 1;
            }
            None => independent += 1,
        }
    }
    Ok(format!("200 sets: {dependent} dependent with verified witnesses, {independent} independent"))
}

struct Criterion13 {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion13 { id: 1, name: "expansion identities", limit: Some(Duration::from_secs(1)), run: expansion_identities },
        Criterion13 { id: 2, name: "Parseval", limit: Some(Duration::from_secs(1)), run: parseval },
        Criterion13 { id: 3, name: "Gram system", limit: None, run: gram_system },
        Criterion13 { id: 4, name: "convolution theorem", limit: None, run: convolution },
        Criterion13 { id: 5, name: "energy thresholds", limit: None, run: energy_thresholds },
        Criterion13 { id: 6, name: "dimension bracket", limit: Some(Duration::from_secs(60)), run: dimension_bracket },
        Criterion13 { id: 7, name: "kernel identity", limit: None, run: kernel_identity },
        Criterion13 { id: 8, name: "interval bound", limit: None, run: interval_bound },
        Criterion13 { id: 9, name: "QI construction", limit: Some(Duration::from_secs(120)), run: qi_construction },
        Criterion13 { id: 10, name: "mesh sharpness", limit: None, run: mesh_sharpness },
        Criterion13 { id: 11, name: "Sidon bounds", limit: None, run: sidon_bounds },
        Criterion13 { id: 12, name: "classifier", limit: None, run: classifier },
        Criterion13 { id: 13, name: "oracle equivalence", limit: None, run: oracle_equivalence },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

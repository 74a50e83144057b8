use std::path::Path;

use num_bigint::BigInt;
use num_complex::Complex64;

use super::report::{join, num, Report};
use super::specfile::{parse_spec_value, read_spec_document, schema_validate, Diagnostic};
use super::{
    CliError, Command, EnergyVariantArg, MeshCommand, MethodArg, QiCommand, QiMethodArg,
    RunConfig, SidonCommand,
};
use crate::analysis::{
    alpha_energy_band_series, alpha_energy_direct, band_edges, dimension_bounds,
    energy_dimension_bound, local_holder, BandVariant, IntegralMethod, IntervalMass,
    IntervalUpperBound, PeyriereOptions,
};
use crate::classify::{
    build_divergence_witness, classify_pair, witness_series_at, TailDeclarations,
};
use crate::qi::{
    build_lambda, build_qi_matrix, mesh_intersection, n_nu, qi_check_bruteforce, qi_check_mitm,
    sidon_lower_estimate, sidon_union_bound, verify_mesh_bound, IntVectorSet, Mesh, SidonOptions,
    BRUTEFORCE_MAX, SIDON_ROUNDED, SIDON_SHARPER_KNOWN,
};
use crate::riesz::{
    convolve_products, eval_partial_product, expand_partial_product, gram_centered_exponentials,
    spectrum_bands, CoefficientSequence, Regime, RieszSpec, PHASE_GENERATOR,
};
use crate::trig::TrigPolynomial;

/// Largest number of terms a CLI expansion may produce, `3^13`.
pub const MAX_EXPANSION_TERMS: u64 = 1_594_323;

fn diagnostics_error(d: &[Diagnostic]) -> CliError {
    let lines: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    CliError::validation(d[0].rule, format!("{} violation(s):\n  {}", d.len(), lines.join("\n  ")))
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("cannot read {}: {e}", path.display()))
}

fn load_spec(path: &Path) -> Result<RieszSpec, CliError> {
    let doc = read_spec_document(path)
        .map_err(|e| io_error(path, e))?
        .map_err(|d| diagnostics_error(&[d]))?;
    let (spec, diags) = parse_spec_value(&doc);
    match spec {
        Some(s) if diags.is_empty() => Ok(s),
        _ => Err(diagnostics_error(&diags)),
    }
}

fn check_expansion(spec: &RieszSpec, depth: usize) -> Result<(), CliError> {
    spec.check_index(depth)?;
    let active = spec.coeffs().entries()[..=depth].iter().filter(|c| c.r > 0.0).count();
    let terms = 3u64.checked_pow(active as u32).unwrap_or(u64::MAX);
    if terms > MAX_EXPANSION_TERMS {
        return Err(CliError::Resource(format!(
            "expanding {active} nonzero factors gives up to {terms} terms, above the cap of {MAX_EXPANSION_TERMS}"
        )));
    }
    Ok(())
}

fn expand(spec: &RieszSpec, depth: usize) -> Result<TrigPolynomial, CliError> {
    check_expansion(spec, depth)?;
    Ok(expand_partial_product(spec, depth)?)
}

fn describe_spec(report: &mut Report, prefix: &str, spec: &RieszSpec) {
    let key = |k: &str| format!("{prefix}{k}");
    report.summary(&key("regime"), spec.regime().to_string());
    report.summary(&key("factors"), spec.len().to_string());
    if let Some(p) = spec.coeffs().phase_source() {
        report.summary(&key("phase_seed"), p.seed.to_string());
        report.summary(&key("phase_generator"), p.generator.clone());
    }
}

fn require_seed(config: &RunConfig, what: &str) -> Result<u64, CliError> {
    config
        .seed
        .ok_or_else(|| CliError::validation("seed required", format!("{what} is stochastic; pass --seed")))
}

fn coefficient_rows(report: &mut Report, poly: &TrigPolynomial) {
    for (m, c) in poly.iter() {
        report.row(vec![m.to_string(), num(c.re), num(c.im)]);
    }
}

pub(super) fn dispatch(config: &RunConfig) -> Result<Report, CliError> {
    match &config.command {
        Command::Coeffs(a) => {
            let spec = load_spec(&a.spec)?;
            let poly = expand(&spec, a.depth)?;
            let mut r = Report::new("coeffs", &["frequency", "re", "im"]);
            describe_spec(&mut r, "", &spec);
            r.summary("terms", poly.len().to_string());
            coefficient_rows(&mut r, &poly);
            Ok(r)
        }
        Command::Eval { base, t, grid } => {
            let spec = load_spec(&base.spec)?;
            let mut points = t.clone();
            if let Some(m) = *grid {
                if m == 0 || m > 1 << 22 {
                    return Err(CliError::Resource(format!("grid of {m} points is outside 1..=4194304")));
                }
                points.extend((0..m).map(|k| std::f64::consts::TAU * k as f64 / m as f64));
            }
            if points.is_empty() {
                return Err(CliError::validation("evaluation points", "pass --t or --grid"));
            }
            let mut r = Report::new("eval", &["t", "value"]);
            describe_spec(&mut r, "", &spec);
            for p in points {
                r.row(vec![num(p), num(eval_partial_product(&spec, base.depth, p)?)]);
            }
            Ok(r)
        }
        Command::Spectrum(a) => {
            let spec = load_spec(&a.spec)?;
            let bands = spectrum_bands(&spec, a.depth)?;
            let mut r = Report::new("spectrum", &["index", "lambda", "min", "max", "count"]);
            describe_spec(&mut r, "", &spec);
            r.summary("disjoint", bands.windows(2).all(|w| w[0].max < w[1].min).to_string());
            for b in bands {
                r.row(vec![
                    b.index.to_string(),
                    spec.lambda(b.index).to_string(),
                    b.min.to_string(),
                    b.max.to_string(),
                    b.count.to_string(),
                ]);
            }
            Ok(r)
        }
        Command::Convolve { pair, depth } => {
            let a = load_spec(&pair.spec_a)?;
            let b = load_spec(&pair.spec_b)?;
            let conv = convolve_products(&expand(&a, *depth)?, &expand(&b, *depth)?);
            let mut r = Report::new("convolve", &["frequency", "re", "im"]);
            describe_spec(&mut r, "a.", &a);
            describe_spec(&mut r, "b.", &b);
            if a.freqs() == b.freqs() && a.regime() == Regime::Lacunary3 && b.regime() == Regime::Lacunary3 {
                let half: Vec<Complex64> = (0..a.len()).map(|j| a.a(j) * b.a(j) / 2.0).collect();
                let target = a.with_coeffs(CoefficientSequence::from_complex(&half))?;
                let expected = expand(&target, *depth)?;
                r.summary("product_rule_max_diff", num(conv.max_abs_diff(&expected)));
                r.summary("product_rule_same_support", conv.same_support(&expected).to_string());
            }
            coefficient_rows(&mut r, &conv);
            Ok(r)
        }
        Command::Gram { base, n } => {
            let spec = load_spec(&base.spec)?;
            check_expansion(&spec, base.depth)?;
            let n = match n {
                Some(n) => *n,
                None => base.depth.checked_sub(1).ok_or_else(|| {
                    CliError::validation("index range", "depth must be at least 1 when --n is omitted")
                })?,
            };
            let mut r = Report::new("gram", &["j", "k", "re", "im", "expected", "abs_error"]);
            describe_spec(&mut r, "", &spec);
            let mut worst: f64 = 0.0;
            for j in 0..=n {
                for k in 0..=n {
                    let g = gram_centered_exponentials(&spec, j, k, base.depth)?;
                    let expected = if j == k { 1.0 - spec.a(j).norm_sqr() / 4.0 } else { 0.0 };
                    let err = (g - Complex64::new(expected, 0.0)).norm();
                    worst = worst.max(err);
                    r.row(vec![j.to_string(), k.to_string(), num(g.re), num(g.im), num(expected), num(err)]);
                }
            }
            r.summary("max_abs_error", num(worst));
            Ok(r)
        }
        Command::Energy { spec, alpha, variant, n_max } => {
            let spec = load_spec(spec)?;
            let (report, bound) = match variant {
                EnergyVariantArg::Direct => {
                    let poly = expand(&spec, *n_max)?;
                    let cutoff = spec.freqs().partial_sum(*n_max);
                    let edges = band_edges(&spec, *n_max);
                    (alpha_energy_direct(&poly, *alpha, cutoff, &edges)?, None)
                }
                EnergyVariantArg::BandProduct | EnergyVariantArg::BandExact => {
                    let v = if *variant == EnergyVariantArg::BandProduct {
                        BandVariant::Product
                    } else {
                        BandVariant::Exact
                    };
                    let e = alpha_energy_band_series(&spec, *alpha, *n_max, v)?;
                    (e, Some(energy_dimension_bound(&spec, v)?))
                }
            };
            let mut r = Report::new("energy", &["alpha", "band", "term", "partial_sum", "verdict"]);
            describe_spec(&mut r, "", &spec);
            let verdict = serde_json::to_value(report.verdict).expect("enum serializes");
            let verdict = verdict.as_str().expect("unit variant").to_string();
            r.summary("verdict", verdict.clone());
            r.summary("ratio", report.ratio.map_or("none".to_string(), num));
            r.summary("total", num(report.total()));
            if let Some(b) = bound {
                r.summary("dimension_lower_bound", num(b));
            }
            for (i, (t, s)) in report.terms.iter().zip(&report.partial_sums).enumerate() {
                r.row(vec![num(*alpha), i.to_string(), num(*t), num(*s), verdict.clone()]);
            }
            Ok(r)
        }
        Command::Dim {
            spec,
            n_from,
            n_to,
            depth,
            method,
            samples,
            nodes_per_degree,
        } => {
            let spec = load_spec(spec)?;
            let depth = depth.unwrap_or(n_to + 3);
            let (method, seed) = match method {
                MethodArg::Quadrature => (IntegralMethod::Quadrature, config.seed.unwrap_or(0)),
                MethodArg::MonteCarlo => (IntegralMethod::MonteCarlo, require_seed(config, "dim --method monte_carlo")?),
            };
            let opts = PeyriereOptions {
                nodes_per_degree: *nodes_per_degree,
                samples: *samples,
                seed,
                ..Default::default()
            };
            let d = dimension_bounds(&spec, *n_from..=*n_to, depth, method, &opts)?;
            let mut r = Report::new(
                "dim",
                &["n", "l_n", "integral", "nodes", "samples", "clipped", "valid"],
            );
            describe_spec(&mut r, "", &spec);
            r.summary("depth", d.depth.to_string());
            r.summary("lower", num(d.lower));
            r.summary("upper", num(d.upper));
            r.summary("clamped", d.clamped.to_string());
            r.summary("all_valid", d.estimates.iter().all(|e| e.valid).to_string());
            if method == IntegralMethod::MonteCarlo {
                r.summary("seed", seed.to_string());
                r.summary("generator", PHASE_GENERATOR);
            }
            for e in &d.estimates {
                r.row(vec![
                    e.n.to_string(),
                    num(e.value),
                    num(e.integral),
                    e.nodes.to_string(),
                    e.samples.map_or(String::new(), |s| s.to_string()),
                    e.clipped.to_string(),
                    e.valid.to_string(),
                ]);
            }
            Ok(r)
        }
        Command::Interval { spec, n, j_max, depth, t, s } => {
            let spec = load_spec(spec)?;
            let depth = depth.unwrap_or(*j_max);
            check_expansion(&spec, depth.max(*j_max))?;
            let upper = IntervalUpperBound::new(&spec, *n, *j_max)?;
            let mass = IntervalMass::new(&spec, depth)?;
            let mut r = Report::new("interval", &["t", "s", "measure", "bound", "head", "resolved", "holds"]);
            describe_spec(&mut r, "", &spec);
            let mut failures = 0usize;
            let mut rows = Vec::new();
            for &tt in t {
                for &ss in s {
                    let m = mass.measure(tt, ss);
                    let b = upper.bound(tt, ss);
                    let holds = b.total >= m;
                    failures += usize::from(!holds);
                    rows.push(vec![
                        num(tt),
                        num(ss),
                        num(m),
                        num(b.total),
                        num(b.head),
                        mass.resolves(ss).to_string(),
                        holds.to_string(),
                    ]);
                }
            }
            r.summary("all_hold", (failures == 0).to_string());
            r.summary("failures", failures.to_string());
            for row in rows {
                r.row(row);
            }
            Ok(r)
        }
        Command::Holder { base, t, scales } => {
            let spec = load_spec(&base.spec)?;
            check_expansion(&spec, base.depth)?;
            let mut r = Report::new("holder", &["t", "s", "measure", "ratio", "alpha_estimate"]);
            describe_spec(&mut r, "", &spec);
            for &tt in t {
                let h = local_holder(&spec, base.depth, tt, scales)?;
                let est = h.alpha_estimate.map_or(String::new(), num);
                for sc in &h.scales {
                    r.row(vec![
                        num(tt),
                        num(sc.s),
                        num(sc.measure),
                        sc.ratio.map_or(String::new(), num),
                        est.clone(),
                    ]);
                }
            }
            Ok(r)
        }
        Command::Classify { pair, tails } => {
            let a = load_spec(&pair.spec_a)?;
            let b = load_spec(&pair.spec_b)?;
            let tails: TailDeclarations = match tails {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
                    serde_json::from_str(&text)
                        .map_err(|e| CliError::validation("tail declarations", e.to_string()))?
                }
                None => TailDeclarations::default(),
            };
            let v = classify_pair(&a, &b, &tails)?;
            let mut columns = vec!["j"];
            columns.extend(v.evidence.iter().map(|e| e.series));
            let mut r = Report::new("classify", &columns);
            let tag = |x: serde_json::Value| x.as_str().unwrap_or("none").to_string();
            r.summary("outcome", tag(serde_json::to_value(v.outcome).expect("serializes")));
            r.summary("criterion", tag(serde_json::to_value(v.criterion).expect("serializes")));
            for e in &v.evidence {
                r.summary(&format!("{}.declared", e.series), tag(serde_json::to_value(e.declared_tail).expect("serializes")));
                r.summary(&format!("{}.numeric_trend", e.series), num(e.numeric_trend));
            }
            let len = v.evidence.iter().map(|e| e.partial_sums.len()).max().unwrap_or(0);
            for j in 0..len {
                let mut row = vec![j.to_string()];
                row.extend(v.evidence.iter().map(|e| e.partial_sums.get(j).map_or(String::new(), |x| num(*x))));
                r.row(row);
            }
            Ok(r)
        }
        Command::Witness { pair, terms, t } => {
            let a = load_spec(&pair.spec_a)?;
            let b = load_spec(&pair.spec_b)?;
            if a.freqs() != b.freqs() {
                return Err(CliError::validation("frequencies", "the two specs use different frequency sequences"));
            }
            let terms = terms.unwrap_or(a.len().min(b.len()));
            let w = build_divergence_witness(a.coeffs(), b.coeffs(), terms)?;
            let series = witness_series_at(&w, a.coeffs(), b.coeffs(), a.freqs(), *t);
            let gap = series.real_gap();
            let mut r = Report::new(
                "witness",
                &["j", "sigma", "c_re", "c_im", "partial_inner", "l2_partial", "l2_tail_bound", "real_gap"],
            );
            r.summary("l2_bound", num(w.l2_bound()));
            r.summary("l2_norm", num(*w.l2_norm_partial.last().expect("terms > 0")));
            r.summary("inner_sum", num(*w.partial_inner.last().expect("terms > 0")));
            for j in 0..w.c.len() {
                r.row(vec![
                    j.to_string(),
                    num(w.sigma[j]),
                    num(w.c[j].re),
                    num(w.c[j].im),
                    num(w.partial_inner[j]),
                    num(w.l2_norm_partial[j]),
                    if w.sigma[j] > 0.0 { num(w.l2_tail_bound(j)) } else { String::new() },
                    gap.get(j).map_or(String::new(), |x| num(*x)),
                ]);
            }
            Ok(r)
        }
        Command::Qi(q) => qi(q),
        Command::Mesh(m) => mesh(m),
        Command::Sidon(s) => sidon(config, s),
        Command::Validate { spec } => {
            let diags = schema_validate(spec).map_err(|e| io_error(spec, e))?;
            if !diags.is_empty() {
                return Err(diagnostics_error(&diags));
            }
            let s = load_spec(spec)?;
            let mut r = Report::new("validate", &["index", "lambda", "r", "theta", "gap"]);
            r.summary("valid", "true");
            describe_spec(&mut r, "", &s);
            let summary = s.summary();
            r.summary("ratio_min", num(summary.ratio_min));
            r.summary("ratio_max", num(summary.ratio_max));
            for (j, c) in s.coeffs().entries().iter().enumerate() {
                r.row(vec![
                    j.to_string(),
                    s.lambda(j).to_string(),
                    num(c.r),
                    num(c.theta),
                    summary.gaps.get(j).map_or(String::new(), |g| g.to_string()),
                ]);
            }
            Ok(r)
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::validation("integer input", format!("{s:?} is not an integer")))
}

fn qi(q: &QiCommand) -> Result<Report, CliError> {
    match q {
        QiCommand::Check { values, vectors, method } => {
            let set = match vectors {
                Some(v) => IntVectorSet::new(
                    v.split(';')
                        .map(|row| row.split(',').map(parse_int).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?,
                )?,
                None => IntVectorSet::from_bigints(&values.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>, _>>()?)?,
            };
            let use_brute = match method {
                QiMethodArg::Auto => set.len() <= BRUTEFORCE_MAX,
                QiMethodArg::Bruteforce => true,
                QiMethodArg::Mitm => false,
            };
            let v = if use_brute { qi_check_bruteforce(&set)? } else { qi_check_mitm(&set)? };
            let mut r = Report::new("qi check", &["index", "element", "epsilon"]);
            r.summary("independent", v.independent.to_string());
            r.summary("witness", v.witness.as_ref().map_or("none".to_string(), |w| join(w)));
            r.summary("method", v.method);
            if let Some(w) = &v.witness {
                r.summary("witness_verified", set.is_relation(w).to_string());
            }
            for (i, e) in set.elements().iter().enumerate() {
                r.row(vec![
                    i.to_string(),
                    join(e),
                    v.witness.as_ref().map_or("0".to_string(), |w| w[i].to_string()),
                ]);
            }
            Ok(r)
        }
        QiCommand::Build { nu } => {
            let a = build_qi_matrix(*nu)?;
            let mut columns = vec!["column".to_string()];
            columns.extend((0..a.row_count()).map(|i| format!("row_{i}")));
            let cols: Vec<&str> = columns.iter().map(|s| s.as_str()).collect();
            let mut r = Report::new("qi build", &cols);
            r.summary("nu", nu.to_string());
            r.summary("rows", a.row_count().to_string());
            r.summary("columns", a.col_count().to_string());
            r.summary("n_nu", n_nu(*nu).to_string());
            for c in 0..a.col_count() {
                let mut row = vec![c.to_string()];
                row.extend(a.column(c).iter().map(|x| x.to_string()));
                r.row(row);
            }
            Ok(r)
        }
        QiCommand::Lambda { nu } => {
            let l = build_lambda(*nu)?;
            let mut r = Report::new("qi lambda", &["index", "block", "column", "gamma"]);
            r.summary("nu", nu.to_string());
            r.summary("elements", l.len().to_string());
            for (block, range) in &l.blocks {
                for (c, i) in range.clone().enumerate() {
                    r.row(vec![i.to_string(), block.to_string(), c.to_string(), l.gamma[i].to_string()]);
                }
            }
            Ok(r)
        }
    }
}

fn read_lambda_file(path: &Path) -> Result<Vec<BigInt>, CliError> {
    let file = std::fs::File::open(path).map_err(|e| io_error(path, e))?;
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(file);
    let bad = |m: String| CliError::validation("lambda file", m);
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = headers
        .iter()
        .position(|h| h == "gamma")
        .ok_or_else(|| bad(format!("{} has no gamma column", path.display())))?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        out.push(parse_int(rec.get(col).unwrap_or(""))?);
    }
    if out.is_empty() {
        return Err(bad(format!("{} has no rows", path.display())));
    }
    Ok(out)
}

fn mesh(m: &MeshCommand) -> Result<Report, CliError> {
    match m {
        MeshCommand::Count { lambda, block, k } => {
            let gamma = read_lambda_file(lambda)?;
            let k = k.unwrap_or(1usize.checked_shl(*block).unwrap_or(0));
            let reach = gamma.iter().map(|g| g.magnitude().clone()).max().map(BigInt::from).unwrap_or_default();
            let mesh = Mesh::beta_block(*block, k, &reach)?;
            let count = mesh_intersection(&gamma, &mesh)?;
            let mut r = Report::new("mesh count", &["index", "gamma"]);
            let log = (k as f64).log2();
            r.summary("block", block.to_string());
            r.summary("k", k.to_string());
            r.summary("count", count.count.to_string());
            r.summary("method", format!("{:?}", count.method).to_lowercase());
            r.summary("n_nu", n_nu(*block).to_string());
            r.summary("quarter_bound", num(0.25 * k as f64 * log));
            r.summary("half_bound", num(0.5 * k as f64 * log));
            for i in count.members {
                r.row(vec![i.to_string(), gamma[i].to_string()]);
            }
            Ok(r)
        }
        MeshCommand::Bound { nu } => {
            let rep = verify_mesh_bound(*nu)?;
            let mut r = Report::new("mesh bound", &["k", "count", "quarter_bound", "half_bound", "holds"]);
            r.summary("nu", nu.to_string());
            r.summary("n_nu", rep.n_nu.to_string());
            r.summary("all_hold", rep.all_hold().to_string());
            for row in rep.rows {
                r.row(vec![
                    row.k.to_string(),
                    row.count.to_string(),
                    num(row.quarter_bound),
                    row.half_bound.map_or(String::new(), num),
                    row.holds.to_string(),
                ]);
            }
            Ok(r)
        }
    }
}

fn sidon(config: &RunConfig, s: &SidonCommand) -> Result<Report, CliError> {
    match s {
        SidonCommand::Bound { k } => {
            let b = sidon_union_bound(*k)?;
            let mut r = Report::new("sidon bound", &["k", "bound"]);
            r.summary("bound", num(b));
            if *k == 1 {
                r.summary("rounded", num(SIDON_ROUNDED));
                r.summary("sharper_known", num(SIDON_SHARPER_KNOWN));
            }
            r.row(vec![k.to_string(), num(b)]);
            Ok(r)
        }
        SidonCommand::Estimate { set, trials, grid_factor, refine_passes } => {
            let seed = require_seed(config, "sidon estimate")?;
            let opts = SidonOptions {
                trials: *trials,
                seed,
                grid_factor: *grid_factor,
                refine_passes: *refine_passes,
            };
            let e = sidon_lower_estimate(set, &opts)?;
            let mut r = Report::new("sidon estimate", &["trial", "running_max"]);
            r.summary("lower_bound", num(e.lower_bound));
            r.summary("upper_bound_single_set", num(sidon_union_bound(1)?));
            r.summary("degree", e.degree.to_string());
            r.summary("grid", e.grid.to_string());
            r.summary("certification_factor", num(e.certification_factor));
            r.summary("seed", e.seed.to_string());
            r.summary("generator", e.generator);
            for (i, x) in e.trace.iter().enumerate() {
                r.row(vec![i.to_string(), num(*x)]);
            }
            Ok(r)
        }
    }
}

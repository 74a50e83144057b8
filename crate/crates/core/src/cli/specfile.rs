//! JSON spec files and their validation.
//!
//! ```json
//! {
//!   "frequencies": {"rule": "geometric", "base": 4, "count": 8},
//!   "coefficients": {"constant": {"r": 0.5, "theta": 0.0}},
//!   "regime": "lacunary3"
//! }
//! ```
//!
//! `frequencies` is `{"rule": "geometric", "base", "count"}` or
//! `{"rule": "explicit", "values": [...]}`; `coefficients` is one of
//! `{"constant": {"r", "theta"}}`, `{"explicit": [{"r", "theta"}, ...]}` or
//! `{"random_phase": {"r", "seed"}}`; `regime` is `lacunary3` (the default)
//! or `dyadic`.

use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::riesz::{
    randomize_phases, Coefficient, CoefficientSequence, FrequencySequence, Regime, RieszSpec,
};

/// One schema or rule violation, located by a JSON path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub path: String,
    pub rule: &'static str,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: [{}] {}", self.path, self.rule, self.message)
    }
}

struct Collector(Vec<Diagnostic>);

impl Collector {
    fn push(&mut self, path: impl Into<String>, rule: &'static str, message: impl Into<String>) {
        self.0.push(Diagnostic {
            path: path.into(),
            rule,
            message: message.into(),
        });
    }

    fn object<'v>(&mut self, v: &'v Value, path: &str) -> Option<&'v Map<String, Value>> {
        let o = v.as_object();
        if o.is_none() {
            self.push(path, "schema", "expected an object");
        }
        o
    }

    fn unknown_keys(&mut self, o: &Map<String, Value>, path: &str, allowed: &[&str]) {
        for k in o.keys() {
            if !allowed.contains(&k.as_str()) {
                self.push(format!("{path}.{k}"), "schema", format!("unknown field; expected one of {}", allowed.join(", ")));
            }
        }
    }

    fn required<'v>(&mut self, o: &'v Map<String, Value>, path: &str, key: &str) -> Option<&'v Value> {
        let v = o.get(key);
        if v.is_none() {
            self.push(format!("{path}.{key}"), "schema", "missing required field");
        }
        v
    }

    fn int(&mut self, v: &Value, path: &str) -> Option<i64> {
        let i = v.as_i64();
        if i.is_none() {
            self.push(path, "schema", "expected an integer");
        }
        i
    }

    fn uint(&mut self, v: &Value, path: &str) -> Option<u64> {
        let i = v.as_u64();
        if i.is_none() {
            self.push(path, "schema", "expected a nonnegative integer");
        }
        i
    }

    fn number(&mut self, v: &Value, path: &str) -> Option<f64> {
        let x = v.as_f64();
        if x.is_none() {
            self.push(path, "schema", "expected a number");
        }
        x
    }

    fn modulus(&mut self, v: &Value, path: &str) -> Option<f64> {
        let r = self.number(v, path)?;
        if r < 0.0 {
            self.push(path, "modulus", format!("modulus must be nonnegative, got {r}"));
            return None;
        }
        if r > 1.0 {
            self.push(path, "modulus bound", format!("|a_j| <= 1 is required, got {r}"));
        }
        Some(r)
    }

    fn polar(&mut self, v: &Value, path: &str) -> Option<Coefficient> {
        let o = self.object(v, path)?;
        self.unknown_keys(o, path, &["r", "theta"]);
        let r = self.required(o, path, "r").and_then(|x| self.modulus(x, &format!("{path}.r")));
        let theta = match o.get("theta") {
            Some(t) => self.number(t, &format!("{path}.theta")),
            None => Some(0.0),
        };
        Some(Coefficient::polar(r?, theta?))
    }
}

fn parse_frequencies(c: &mut Collector, v: &Value) -> Option<Vec<i64>> {
    let path = "$.frequencies";
    let o = c.object(v, path)?;
    let rule = c.required(o, path, "rule")?;
    match rule.as_str() {
        Some("geometric") => {
            c.unknown_keys(o, path, &["rule", "base", "count"]);
            let base = c.required(o, path, "base").and_then(|b| c.int(b, "$.frequencies.base"));
            let count = c.required(o, path, "count").and_then(|n| c.uint(n, "$.frequencies.count"));
            let (base, count) = (base?, count?);
            if base < 2 {
                c.push("$.frequencies.base", "frequency base", format!("base must be at least 2, got {base}"));
                return None;
            }
            if count == 0 {
                c.push("$.frequencies.count", "frequencies", "count must be at least 1");
                return None;
            }
            match FrequencySequence::geometric(base, count as usize) {
                Ok(f) => Some(f.values().to_vec()),
                Err(e) => {
                    c.push("$.frequencies.count", "frequency range", e.to_string());
                    None
                }
            }
        }
        Some("explicit") => {
            c.unknown_keys(o, path, &["rule", "values"]);
            let values = c.required(o, path, "values")?;
            let Some(arr) = values.as_array() else {
                c.push("$.frequencies.values", "schema", "expected an array of integers");
                return None;
            };
            if arr.is_empty() {
                c.push("$.frequencies.values", "frequencies", "at least one frequency is required");
                return None;
            }
            let mut out = Vec::with_capacity(arr.len());
            let mut ok = true;
            for (j, x) in arr.iter().enumerate() {
                let p = format!("$.frequencies.values[{j}]");
                match c.int(x, &p) {
                    Some(v) if v > 0 => out.push(v),
                    Some(v) => {
                        c.push(p, "positive frequencies", format!("frequencies must be positive integers, got {v}"));
                        ok = false;
                    }
                    None => ok = false,
                }
            }
            if !ok {
                return None;
            }
            for j in 1..out.len() {
                if out[j] <= out[j - 1] {
                    c.push(format!("$.frequencies.values[{j}]"), "increasing frequencies", "frequencies must be strictly increasing");
                    ok = false;
                }
            }
            if ok {
                if let Err(e) = FrequencySequence::explicit(out.clone()) {
                    c.push("$.frequencies.values", "frequency range", e.to_string());
                    return None;
                }
            }
            ok.then_some(out)
        }
        _ => {
            c.push("$.frequencies.rule", "schema", "expected \"geometric\" or \"explicit\"");
            None
        }
    }
}

enum RawCoefficients {
    Fixed(Vec<Coefficient>),
    Constant(Coefficient),
    RandomPhase { r: f64, seed: u64 },
}

fn parse_coefficients(c: &mut Collector, v: &Value) -> Option<RawCoefficients> {
    let path = "$.coefficients";
    let o = c.object(v, path)?;
    if o.len() != 1 {
        c.push(path, "schema", "expected exactly one of constant, explicit, random_phase");
        return None;
    }
    let (key, inner) = o.iter().next().expect("one entry");
    let path = format!("{path}.{key}");
    match key.as_str() {
        "constant" => c.polar(inner, &path).map(RawCoefficients::Constant),
        "explicit" => {
            let Some(arr) = inner.as_array() else {
                c.push(path, "schema", "expected an array of {r, theta} objects");
                return None;
            };
            let parsed: Vec<Option<Coefficient>> = arr
                .iter()
                .enumerate()
                .map(|(j, x)| c.polar(x, &format!("{path}[{j}]")))
                .collect();
            parsed.into_iter().collect::<Option<Vec<_>>>().map(RawCoefficients::Fixed)
        }
        "random_phase" => {
            let o = c.object(inner, &path)?;
            c.unknown_keys(o, &path, &["r", "seed"]);
            let r = c.required(o, &path, "r").and_then(|x| c.modulus(x, &format!("{path}.r")));
            let seed = c.required(o, &path, "seed").and_then(|x| c.uint(x, &format!("{path}.seed")));
            Some(RawCoefficients::RandomPhase { r: r?, seed: seed? })
        }
        other => {
            c.push(path.clone(), "schema", format!("unknown coefficient rule {other:?}; expected constant, explicit or random_phase"));
            None
        }
    }
}

fn check_regime(c: &mut Collector, freqs: &[i64], moduli: &[f64], regime: Regime) {
    match regime {
        Regime::Lacunary3 => {
            for j in 1..freqs.len() {
                if freqs[j] < 3 * freqs[j - 1] {
                    c.push(
                        format!("$.frequencies[{j}]"),
                        "lacunarity",
                        format!(
                            "λ_{{j+1}} >= 3·λ_j is required in the lacunary3 regime; λ[{}] = {}, λ[{j}] = {} (use regime \"dyadic\" for powers of two)",
                            j - 1,
                            freqs[j - 1],
                            freqs[j]
                        ),
                    );
                }
            }
        }
        Regime::Dyadic => {
            if freqs[0] & (freqs[0] - 1) != 0 {
                c.push("$.frequencies[0]", "dyadic frequencies", "the dyadic regime needs powers of two");
            }
            for j in 1..freqs.len() {
                if freqs[j] != 2 * freqs[j - 1] {
                    c.push(format!("$.frequencies[{j}]"), "dyadic frequencies", "the dyadic regime needs λ_{j+1} = 2·λ_j");
                }
            }
            for (j, &r) in moduli.iter().enumerate() {
                if r >= 1.0 {
                    c.push(format!("$.coefficients[{j}]"), "dyadic modulus", format!("the dyadic regime needs sup |a_j| < 1, got {r}"));
                }
            }
        }
    }
}

/// Parses a spec document, listing every violation found. A spec is
/// returned only when the list is empty.
pub fn parse_spec_value(doc: &Value) -> (Option<RieszSpec>, Vec<Diagnostic>) {
    let mut c = Collector(Vec::new());
    let Some(o) = c.object(doc, "$") else {
        return (None, c.0);
    };
    c.unknown_keys(o, "$", &["frequencies", "coefficients", "regime"]);
    let freqs = c.required(o, "$", "frequencies").and_then(|v| parse_frequencies(&mut c, v));
    let coeffs = c.required(o, "$", "coefficients").and_then(|v| parse_coefficients(&mut c, v));
    let regime = match o.get("regime") {
        None => Some(Regime::Lacunary3),
        Some(v) => match v.as_str() {
            Some("lacunary3") => Some(Regime::Lacunary3),
            Some("dyadic") => Some(Regime::Dyadic),
            _ => {
                c.push("$.regime", "schema", "expected \"lacunary3\" or \"dyadic\"");
                None
            }
        },
    };
    let (Some(freqs), Some(coeffs), Some(regime)) = (freqs, coeffs, regime) else {
        return (None, c.0);
    };
    let n = freqs.len();
    let (entries, seed) = match coeffs {
        RawCoefficients::Fixed(e) => {
            if e.len() != n {
                c.push(
                    "$.coefficients.explicit",
                    "lengths",
                    format!("{} coefficients for {n} frequencies", e.len()),
                );
                return (None, c.0);
            }
            (e, None)
        }
        RawCoefficients::Constant(a) => (vec![a; n], None),
        RawCoefficients::RandomPhase { r, seed } => (vec![Coefficient::polar(r, 0.0); n], Some(seed)),
    };
    let moduli: Vec<f64> = entries.iter().map(|e| e.r).collect();
    check_regime(&mut c, &freqs, &moduli, regime);
    if moduli.iter().any(|&r| r > 1.0) || !c.0.is_empty() {
        return (None, c.0);
    }
    let spec = FrequencySequence::explicit(freqs)
        .and_then(|f| RieszSpec::new(f, CoefficientSequence::new(entries), regime));
    match spec {
        Ok(s) => (Some(seed.map_or(s.clone(), |seed| randomize_phases(&s, seed))), c.0),
        Err(e) => {
            c.push("$", "spec", e.to_string());
            (None, c.0)
        }
    }
}

/// Reads and parses a spec file; syntax errors become a single diagnostic.
pub fn read_spec_document(path: &Path) -> std::io::Result<Result<Value, Diagnostic>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text).map_err(|e| Diagnostic {
        path: "$".to_string(),
        rule: "json syntax",
        message: e.to_string(),
    }))
}

/// All diagnostics for the file at `path`; empty for a valid spec.
pub fn schema_validate(path: &Path) -> std::io::Result<Vec<Diagnostic>> {
    Ok(match read_spec_document(path)? {
        Ok(doc) => parse_spec_value(&doc).1,
        Err(d) => vec![d],
    })
}

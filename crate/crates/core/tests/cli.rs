//! Golden-file tests for the `riesz` binary. Set `UPDATE_GOLDEN=1` to
//! rewrite the expected outputs after an intentional change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn riesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz"))
        .args(args)
        .current_dir(dir("data"))
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn golden(name: &str, args: &[&str]) {
    let out = riesz(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = dir("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        out.stdout == expected,
        "{name} differs from golden output:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

fn fails(args: &[&str], expected: i32, needle: &str) {
    let out = riesz(args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(code(&out), expected, "{args:?}: {stderr}");
    assert!(stderr.contains(needle), "{args:?}: {stderr:?} lacks {needle:?}");
}

#[test]
fn golden_reports() {
    golden("coeffs.csv", &["coeffs", "--spec", "half.json", "--depth", "2"]);
    golden("coeffs_dyadic.csv", &["coeffs", "--spec", "dyadic.json", "--depth", "3"]);
    golden("coeffs_random.json", &["coeffs", "--spec", "random.json", "--depth", "1", "--format", "json"]);
    golden("spectrum.csv", &["spectrum", "--spec", "half.json", "--depth", "5"]);
    golden("gram.csv", &["gram", "--spec", "half.json", "--depth", "3"]);
    golden("convolve.csv", &["convolve", "--spec-a", "half.json", "--spec-b", "half.json", "--depth", "2"]);
    golden("energy.csv", &["energy", "--spec", "half.json", "--alpha", "0.6", "--variant", "band_product", "--n-max", "5"]);
    golden("classify.csv", &["classify", "--spec-a", "full.json", "--spec-b", "zero.json", "--tails", "tails_divergent.json"]);
    golden("qi_check.csv", &["qi", "check", "--values", "1,2,3"]);
    golden("qi_check_vectors.csv", &["qi", "check", "--vectors", "1,0;0,1;1,1"]);
    golden("qi_build.csv", &["qi", "build", "--nu", "2"]);
    golden("qi_lambda.csv", &["qi", "lambda", "--nu", "2"]);
    golden("mesh_bound.csv", &["mesh", "bound", "--nu", "2"]);
    golden("sidon_bound.csv", &["sidon", "bound", "--k", "1"]);
    golden("validate.csv", &["validate", "--spec", "half.json"]);
}

#[test]
fn qi_check_reports_the_relation() {
    let out = riesz(&["qi", "check", "--values", "1,2,3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# independent: false\n"));
    assert!(text.contains("# witness: 1,1,-1\n"));
    let out = riesz(&["qi", "check", "--values", "3,4,5"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("# independent: true\n"));
}

#[test]
fn validation_failures_exit_2() {
    fails(&["validate", "--spec", "bad_modulus.json"], 2, "modulus bound");
    fails(&["validate", "--spec", "base_two.json"], 2, "lacunarity");
    fails(&["validate", "--spec", "malformed.json"], 2, "json syntax");
    fails(&["coeffs", "--spec", "bad_modulus.json", "--depth", "1"], 2, "$.coefficients.constant.r");
    fails(&["coeffs", "--spec", "half.json", "--depth", "9"], 2, "index range");
    fails(&["spectrum", "--spec", "dyadic.json", "--depth", "2"], 2, "regime");
    fails(&["energy", "--spec", "half.json", "--alpha", "1.5", "--n-max", "3"], 2, "alpha");
    fails(&["classify", "--spec-a", "full.json", "--spec-b", "zero.json", "--tails", "tails_bad.json"], 2, "tail declarations");
    fails(&["classify", "--spec-a", "full.json", "--spec-b", "half.json"], 2, "different frequency");
    fails(&["dim", "--spec", "full.json", "--n-to", "2", "--method", "monte_carlo"], 2, "seed required");
    fails(&["sidon", "estimate", "--set", "1,4,16"], 2, "seed required");
    fails(&["qi", "check", "--values", "1,1"], 2, "coincide");
    fails(&["qi", "check", "--values", "1,x"], 2, "not an integer");
    fails(&["qi", "build", "--nu", "0"], 2, "outside");
}

#[test]
fn resource_refusals_exit_3() {
    fails(&["coeffs", "--spec", "long.json", "--depth", "15"], 3, "resource cap");
    fails(&["qi", "check", "--values", &(1..=40).map(|i| i.to_string()).collect::<Vec<_>>().join(",")], 3, "resource cap");
    fails(&["qi", "check", "--method", "bruteforce", "--values", &(1..=20).map(|i| (i * 1000).to_string()).collect::<Vec<_>>().join(",")], 3, "resource cap");
    fails(&["qi", "lambda", "--nu", "9"], 3, "resource cap");
    fails(&["sidon", "estimate", "--seed", "1", "--set", &(0..70).map(|i| i.to_string()).collect::<Vec<_>>().join(",")], 3, "resource cap");
}

#[test]
fn usage_and_io_errors() {
    fails(&["bogus"], 1, "unrecognized subcommand");
    fails(&["coeffs", "--spec", "half.json"], 1, "--depth");
    fails(&["coeffs", "--spec", "missing.json", "--depth", "1"], 4, "cannot read");
    assert_eq!(code(&riesz(&["--help"])), 0);
}

#[test]
fn stochastic_reports_are_reproducible_and_thread_independent() {
    let cases: [&[&str]; 3] = [
        &["sidon", "estimate", "--set", "1,4,16,64", "--trials", "16", "--seed", "7"],
        &["dim", "--spec", "full.json", "--n-to", "2", "--method", "monte_carlo", "--seed", "3"],
        &["coeffs", "--spec", "random.json", "--depth", "2"],
    ];
    for args in cases {
        let one = riesz(&[args, &["--threads", "1"]].concat());
        let four = riesz(&[args, &["--threads", "4"]].concat());
        let again = riesz(args);
        assert_eq!(code(&one), 0, "{}", String::from_utf8_lossy(&one.stderr));
        assert_eq!(one.stdout, four.stdout);
        assert_eq!(one.stdout, again.stdout);
    }
    let sidon = String::from_utf8(riesz(cases[0]).stdout).unwrap();
    assert!(sidon.contains("# config.seed: 7\n") && sidon.contains("# generator: ChaCha8Rng\n"));
    let dim = String::from_utf8(riesz(cases[1]).stdout).unwrap();
    assert!(dim.contains("# seed: 3\n") && dim.contains("# generator: ChaCha8Rng\n"));
    let other = riesz(&["sidon", "estimate", "--set", "1,4,16,64", "--trials", "16", "--seed", "8"]);
    assert_ne!(other.stdout, riesz(cases[0]).stdout);
}

#[test]
fn out_file_matches_stdout_and_mesh_reads_it() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("lambda.csv");
    let p = path.to_str().unwrap();
    let out = riesz(&["qi", "lambda", "--nu", "3", "--emit", p]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("elements: 31"));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.lines().any(|l| l == "index,block,column,gamma"));

    for (block, n) in [(1, 3), (2, 8), (3, 20)] {
        let out = riesz(&["mesh", "count", "--lambda", p, "--block", &block.to_string()]);
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains(&format!("# count: {n}\n")), "{text}");
    }
}

#[test]
fn classify_canonical_pairs() {
    let verdict = |a: &str, b: &str, tails: &str| {
        let out = riesz(&["classify", "--spec-a", a, "--spec-b", b, "--tails", tails]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        let get = |k: &str| {
            text.lines()
                .find_map(|l| l.strip_prefix(&format!("# {k}: ")))
                .unwrap()
                .to_string()
        };
        (get("outcome"), get("criterion"))
    };
    assert_eq!(verdict("half.json", "half.json", "tails_convergent.json"), ("equivalent".into(), "trivial_equal".into()));
    assert_eq!(verdict("full.json", "zero.json", "tails_divergent.json"), ("mutually_singular".into(), "l2_gap_divergent".into()));
    assert_eq!(
        verdict("random.json", "random_other.json", "tails_convergent.json"),
        ("equivalent".into(), "equal_moduli_gap_convergent".into())
    );
}

#[test]
fn json_mirrors_csv() {
    let csv = String::from_utf8(riesz(&["qi", "build", "--nu", "1"]).stdout).unwrap();
    let json: serde_json::Value =
        serde_json::from_slice(&riesz(&["qi", "build", "--nu", "1", "--format", "json"]).stdout).unwrap();
    let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
    let columns: Vec<&str> = json["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(header, columns.join(","));
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), json["rows"].as_array().unwrap().len());
    assert_eq!(json["summary"]["n_nu"], "3");
    assert_eq!(json["config"]["nu"], "1");
}

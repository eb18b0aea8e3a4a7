use std::f64::consts::{E, PI};
use std::process::{Command, Output};

use jcx_core::measures::{Extended, MeasureOptions, MeasureSet};
use jcx_core::PolyParams;
use serde_json::Value;

fn jcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jcx")).args(args).env_remove("JCX_MAX_EVALS").output().expect("run jcx")
}

fn stdout(args: &[&str]) -> String {
    let out = jcx(args);
    assert!(out.status.success(), "jcx {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn measure_uniform_density() {
    let v = json(&["measure", "-n", "0", "-a", "0", "-b", "0"]);
    assert_eq!(v["c_lmc"].as_f64().unwrap(), 1.0);
    assert!(close(v["variance"].as_f64().unwrap(), 1.0 / 3.0, 1e-15));
    assert!(close(v["spreading_length"].as_f64().unwrap(), 2.0, 1e-12));
}

#[test]
fn measure_legendre_degree_one() {
    let v = json(&["measure", "-n", "1", "-a", "0", "-b", "0"]);
    assert_eq!(v["fisher"].as_f64().unwrap(), 12.0);
    // F·V with V = ⟨x²⟩ = 3/5 for ρ = 3x²/2
    assert!(close(v["c_cr"].as_f64().unwrap(), 7.2, 1e-15));
    assert!(close(v["w2"].as_f64().unwrap(), 0.9, 1e-14));
}

#[test]
fn measure_marks_infinite_fisher() {
    let v = json(&["measure", "-n", "3", "-a", "0.5", "-b", "0.5"]);
    assert_eq!(v["fisher"], "inf");
    assert_eq!(v["c_cr"], "inf");
    assert_eq!(v["c_fs"], "inf");
    assert!(v["c_lmc"].as_f64().unwrap().is_finite());
}

#[test]
fn measure_json_keys_in_order() {
    let text = stdout(&["measure", "-n", "2", "-a", "1.5", "-b", "2"]);
    let keys = [
        "\"n\"",
        "\"alpha\"",
        "\"beta\"",
        "\"variance\"",
        "\"fisher\"",
        "\"shannon_E\"",
        "\"shannon_I\"",
        "\"shannon_S\"",
        "\"spreading_length\"",
        "\"w2\"",
        "\"lq_norms\"",
        "\"c_cr\"",
        "\"c_fs\"",
        "\"c_lmc\"",
        "\"errors\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap_or_else(|| panic!("{k}"))).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
}

#[test]
fn measure_json_round_trips_bit_for_bit() {
    for (n, a, b) in [(0, 0.0, 0.0), (3, 0.5, 0.5), (7, 2.0, 3.0), (4, -0.75, 0.0), (12, 1.25, -0.3)] {
        let (ns, as_, bs) = (n.to_string(), a.to_string(), b.to_string());
        let text = stdout(&["measure", "-n", &ns, "-a", &as_, "-b", &bs]);
        let parsed: MeasureSet = serde_json::from_str(&text).unwrap();
        let p = PolyParams::new(n, a, b).unwrap();
        let direct = MeasureSet::compute(&p, &MeasureOptions::for_params(&p)).unwrap();
        assert_eq!(parsed, direct, "({n}, {a}, {b})");
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    }
}

#[test]
fn measure_output_is_internally_consistent() {
    for (n, a, b) in [(1, 0.0, 0.0), (5, 0.0, 2.0), (6, 2.0, 3.0), (9, 1.5, 1.5), (4, 0.3, 0.7)] {
        let (ns, as_, bs) = (n.to_string(), a.to_string(), b.to_string());
        let text = stdout(&["measure", "-n", &ns, "-a", &as_, "-b", &bs]);
        let m: MeasureSet = serde_json::from_str(&text).unwrap();
        let l = m.spreading_length;
        match m.fisher {
            Extended::Finite(f) => {
                assert!(close(m.c_cr.finite().unwrap(), f * m.variance, 1e-12));
                assert!(close(m.c_fs.finite().unwrap(), f * l * l / (2.0 * PI * E), 1e-12));
            }
            Extended::Infinite => assert!(m.c_cr.is_infinite() && m.c_fs.is_infinite()),
        }
        assert!(close(m.c_lmc.finite().unwrap(), m.w2.finite().unwrap() * l, 1e-12));
    }
}

#[test]
fn measure_csv_has_the_json_columns() {
    let rows = csv_rows(&stdout(&["measure", "-n", "1", "--format", "csv"]));
    assert_eq!(rows.len(), 2);
    let header = &rows[0];
    for key in ["n", "alpha", "beta", "variance", "fisher", "shannon_E", "w2", "c_cr", "c_fs", "c_lmc"] {
        assert!(header.iter().any(|h| h == key), "{key}");
    }
    let col = |k: &str| rows[1][header.iter().position(|h| h == k).unwrap()].clone();
    assert_eq!(col("fisher"), "12");
    let inf = csv_rows(&stdout(&["measure", "-n", "2", "-a", "0.5", "--format", "csv"]));
    let idx = inf[0].iter().position(|h| h == "c_cr").unwrap();
    assert_eq!(inf[1][idx], "inf");
}

#[test]
fn measure_is_deterministic() {
    let args = ["measure", "-n", "15", "-a", "2.5", "-b", "-0.25"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn measure_writes_to_file() {
    let dir = std::env::temp_dir().join(format!("jcx-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    let printed = stdout(&["measure", "-n", "2"]);
    let out = stdout(&["measure", "-n", "2", "--out", path.to_str().unwrap()]);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn asym_examples() {
    let v = json(&["asym", "--regime", "degree", "--measure", "ls"]);
    assert!(close(v["coefficient_or_value"].as_f64().unwrap(), PI / E, 1e-15));
    assert_eq!(v["law"], "constant");
    let v = json(&["asym", "--regime", "alpha", "--measure", "cfs", "-n", "1", "-b", "2"]);
    assert!(close(v["coefficient_or_value"].as_f64().unwrap(), 7.0 / (24.0 * PI * E), 1e-14));
    let v = json(&["asym", "--regime", "degree", "--measure", "clmc", "-a", "1", "-b", "1"]);
    assert!(close(v["coefficient_or_value"].as_f64().unwrap(), 3.0 / (PI * E), 1e-14));
    for key in ["measure", "regime", "law", "coefficient_or_value", "applicability"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn asym_variants() {
    let paper = json(&["asym", "--regime", "alpha", "--measure", "clmc", "-b", "2"]);
    let derived = json(&["asym", "--regime", "alpha", "--measure", "clmc", "-b", "2", "--variant", "derived"]);
    assert!(close(paper["coefficient_or_value"].as_f64().unwrap(), 3.0 / 16.0, 1e-14));
    assert!(close(derived["coefficient_or_value"].as_f64().unwrap(), 3.0 / 32.0, 1e-14));
    let np = json(&["asym", "--regime", "alpha", "--measure", "np", "-a", "7", "-b", "1.5", "--p", "3"]);
    assert!(np["ln_value"].as_f64().unwrap().is_finite());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| jcx(args).status.code().unwrap();
    assert_eq!(code(&["measure", "-n", "2", "-a", "-1.5"]), 2);
    assert_eq!(code(&["measure", "-n", "2", "--tol", "-1"]), 2);
    assert_eq!(code(&["measure", "-n", "3000"]), 2);
    assert_eq!(code(&["measure", "--bogus"]), 2);
    assert_eq!(code(&["asym", "--regime", "degree", "--measure", "ccr", "-a", "0.5", "-b", "0.5"]), 3);
    assert_eq!(code(&["asym", "--regime", "alpha", "--measure", "fisher", "-b", "1"]), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_jcx"))
        .args(["measure", "-n", "3", "-a", "2", "-b", "3"])
        .env("JCX_MAX_EVALS", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let out = jcx(&["asym", "--regime", "degree", "--measure", "ccr", "-a", "0.5", "-b", "0.5"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("α > 1, β > 1"));
}

#[test]
fn sweep_ccr_degree() {
    let rows = csv_rows(&stdout(&["sweep", "--regime", "degree", "--measure", "ccr", "--n-grid", "25:100:2"]));
    assert_eq!(rows[0].join(","), "sweep_value,numeric,predicted,ratio,error_estimate");
    assert_eq!(rows.len(), 4);
    let values: Vec<f64> = rows[1..].iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(values, vec![25.0, 50.0, 100.0]);
    let ratio: f64 = rows[3][3].parse().unwrap();
    let n = 100.0f64;
    let exact =
        2.0 * n * (n + 1.0) * ((n + 1.0).powi(2) / (2.0 * n + 3.0) + n * n / (2.0 * n - 1.0)) / (2.0 * n.powi(3));
    assert!(close(ratio, exact, 1e-14));
    assert!((ratio - 1.01507).abs() < 1e-5);
}

#[test]
fn sweep_fisher_alpha_monotone() {
    let rows = csv_rows(&stdout(&[
        "sweep",
        "--regime",
        "alpha",
        "--measure",
        "fisher",
        "-n",
        "0",
        "-b",
        "2",
        "--alpha-grid",
        "100:10000:10",
    ]));
    let dev: Vec<f64> = rows[1..].iter().map(|r| (r[3].parse::<f64>().unwrap() - 1.0).abs()).collect();
    assert_eq!(dev.len(), 3);
    assert!(dev.windows(2).all(|w| w[1] < w[0]), "{dev:?}");
}

#[test]
fn sweep_spreading_length_degree() {
    let rows = csv_rows(&stdout(&["sweep", "--regime", "degree", "--measure", "ls", "--n-grid", "100:100:2"]));
    let ratio: f64 = rows[1][3].parse().unwrap();
    assert!((ratio - 1.0).abs() <= 0.05);
}

#[test]
fn sweep_independent_of_thread_count() {
    let args = ["sweep", "--regime", "alpha", "--measure", "s", "-n", "1", "-b", "2", "--alpha-grid", "16:1024:2"];
    let run = |threads: &str| {
        let out =
            Command::new(env!("CARGO_BIN_EXE_jcx")).args(args).env("RAYON_NUM_THREADS", threads).output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn sweep_rejects_bad_grids() {
    let code = |args: &[&str]| jcx(args).status.code().unwrap();
    assert_eq!(code(&["sweep", "--regime", "degree", "--measure", "ccr", "--n-grid", "10:5:2"]), 2);
    assert_eq!(code(&["sweep", "--regime", "degree", "--measure", "ccr", "--n-grid", "10:50"]), 2);
    assert_eq!(code(&["sweep", "--regime", "degree", "--measure", "ccr", "--alpha-grid", "10:50:2"]), 2);
    assert_eq!(code(&["sweep", "--regime", "degree", "--measure", "np", "--n-grid", "10:50:2"]), 3);
}

#[test]
fn lmc_compare_rows() {
    let rows = csv_rows(&stdout(&["lmc-compare", "--lambda-grid", "3:4.5:1.5", "--betas", "l-2,2"]));
    let header = &rows[0];
    let col = |row: &Vec<String>, k: &str| row[header.iter().position(|h| h == k).unwrap()].clone();
    // λ = 3, β = λ - 2 = 1, α = λ - 2 = 1
    let r = rows.iter().find(|r| r[0] == "3" && r[1] == "l-2").unwrap();
    let v: f64 = col(r, "alpha_lambda_minus_2").parse().unwrap();
    assert!(close(v, 3.0 / (PI * E), 1e-14));
    // λ = 4.5 with β = 2: α = 2.5 under the first mapping
    assert!(rows.iter().any(|r| r[0] == "4.5" && r[1] == "2"));
    let rows = csv_rows(&stdout(&["lmc-compare", "--lambda-grid", "4:4:2", "--betas", "l-2"]));
    let v: f64 = rows[1][3].parse().unwrap();
    assert!(close(v, 2.0 / (PI * E), 1e-14));
}

#[test]
fn lmc_compare_marks_unsupported() {
    let rows = csv_rows(&stdout(&["lmc-compare", "--lambda-grid", "1.5:1.5:2", "--betas", "2"]));
    assert_eq!(rows[1][3], "unsupported");
    assert_ne!(rows[1][4], "unsupported");
    assert_eq!(jcx(&["lmc-compare", "--lambda-grid", "0.5:2:2"]).status.code(), Some(2));
}

#[test]
fn rule_csv() {
    assert_eq!(stdout(&["rule", "-a", "0", "-b", "0", "-m", "1"]), "index,node,weight\n0,0,2\n");
    let rows = csv_rows(&stdout(&["rule", "-m", "2"]));
    let s = 1.0 / 3f64.sqrt();
    for (row, sign) in rows[1..].iter().zip([-1.0, 1.0]) {
        let x: f64 = row[1].parse().unwrap();
        assert!((x - sign * s).abs() <= f64::EPSILON * s);
        assert!(close(row[2].parse().unwrap(), 1.0, 1e-15));
    }
    let rows = csv_rows(&stdout(&["rule", "-a", "2", "-b", "3", "-m", "4"]));
    let sum: f64 = rows[1..].iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!(close(sum, 16.0 / 15.0, 1e-14));
}

#[test]
fn rule_round_trips_and_validates() {
    let text = stdout(&["rule", "-a", "-0.5", "-b", "1.5", "-m", "9"]);
    let rule = jcx_core::quadrature::gauss_jacobi_rule(-0.5, 1.5, 9).unwrap();
    for (row, (x, w)) in csv_rows(&text)[1..].iter().zip(rule.nodes().iter().zip(rule.weights())) {
        assert_eq!(row[1].parse::<f64>().unwrap(), *x);
        assert_eq!(row[2].parse::<f64>().unwrap(), w);
    }
    let v = json(&["rule", "-m", "3", "--format", "json"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
    assert_eq!(jcx(&["rule", "-m", "0"]).status.code(), Some(2));
    assert_eq!(jcx(&["rule", "-m", "10", "--max-nodes", "5"]).status.code(), Some(2));
}

use std::process::{Command, Output};

use ggr_core::golden::m_of_sadic;
use ggr_core::numerics::{Bracket, SolveOptions};
use ggr_core::words::SAdicSpec;
use serde_json::Value;

fn ggr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggr")).args(args).env_remove("GGR_PRECISION").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

fn mid(b: &Value) -> f64 {
    0.5 * (num(&b["lo"]) + num(&b["hi"]))
}

fn rows(csv_text: &str) -> Vec<(f64, f64, String)> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["m", "G", "branch", "sigma"]);
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            assert!(r.iter().all(|c| !c.is_empty()), "{r:?}");
            (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].to_string())
        })
        .collect()
}

#[test]
fn golden_values() {
    let v = json(&ggr(&["golden", "--m", "2"]));
    assert_eq!(v["schemaVersion"], 1);
    assert!((mid(&v["value"]) - 2.0).abs() < 1e-12);
    assert!(v["enclosureWidth"].as_f64().unwrap() < 1e-12);

    let v = json(&ggr(&["golden", "--m", "1.9"]));
    assert!((mid(&v["value"]) - 19.0 / 9.0).abs() < 1e-12);
    assert_eq!(v["branch"], "f");
    assert_eq!(v["witness"], "id");

    let v = json(&ggr(&["golden", "--alphabet", "0,1,1.9"]));
    assert!((mid(&v["value"]) - 19.0 / 9.0).abs() < 1e-12);
}

#[test]
fn larger_alphabets_use_the_numeric_bracket() {
    let v = json(&ggr(&["golden", "--alphabet", "0,1,4,5"]));
    assert_eq!(v["method"], "estimate");
    assert_eq!(v["estimate"]["q"], "8/3");
    assert!(num(&v["estimate"]["upper"]["lo"]) <= 8.0 / 3.0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["golden", "--m", "0.5"][..],
        &["golden", "--m", "abc"],
        &["golden", "--m", "2", "--precision", "200"],
        &["golden", "--m", "2", "--tol", "-1"],
        &["golden", "--m", "2", "--format", "csv"],
        &["golden"],
        &["graph", "--m-lo", "2", "--m-hi", "3"],
        &["verify", "nope"],
        &["count", "--x", "5", "--beta", "2"],
        &["count", "--x", "0", "--beta", "1"],
    ] {
        assert_eq!(ggr(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn precision_from_the_environment() {
    let run = |p: &str| {
        Command::new(env!("CARGO_BIN_EXE_ggr")).args(["golden", "--m", "2"]).env("GGR_PRECISION", p).output().unwrap()
    };
    assert_eq!(run("32").status.code(), Some(2));
    assert_eq!(run("80").status.code(), Some(0));
}

#[test]
fn full_graph() {
    let out = ggr(&["graph", "--m-lo", "1.001", "--m-hi", "2", "--resolution", "1e-3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("m,G,branch,sigma\n"));
    let rows = rows(&text);
    assert!(rows.windows(2).all(|p| p[0].0 < p[1].0));
    let tol = 1e-3;
    for (m, g, branch) in &rows {
        assert!(["f", "g", "sqrt", "boundary"].contains(&branch.as_str()));
        assert!(*g >= 2.0 - tol && *g <= 1.0 + 2f64.sqrt() + tol, "{m}: {g}");
    }
    // 𝒢 touches 2 at m = 4/3; the sampled row closest to it sits within tol.
    let near = rows.iter().min_by(|a, b| (a.0 - 4.0 / 3.0).abs().total_cmp(&(b.0 - 4.0 / 3.0).abs())).unwrap();
    assert!((near.1 - 2.0).abs() <= tol, "{near:?}");
    let f_side: Vec<_> = rows.iter().filter(|r| (1.76..=1.99).contains(&r.0)).collect();
    assert!(f_side.windows(2).all(|p| p[0].1 > p[1].1));
}

#[test]
fn graph_output_is_deterministic_and_svg_follows_the_table() {
    let args = ["graph", "--m-lo", "1.5", "--m-hi", "2", "--resolution", "1e-2"];
    let a = ggr(&args).stdout;
    assert_eq!(a, ggr(&args).stdout);
    let n = rows(&String::from_utf8(a).unwrap()).len();
    let svg = String::from_utf8(ggr(&[&args[..], &["--format", "svg"]].concat()).stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), n);
    let v = json(&ggr(&[&args[..], &["--format", "json"]].concat()));
    assert_eq!(v["rows"].as_array().unwrap().len(), n);
}

#[test]
fn writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("ggr-cli-test-{}.json", std::process::id()));
    let out = ggr(&["golden", "--m", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["branch"], "boundary");
}

#[test]
fn verify_suites() {
    for suite in ["klp", "remark23", "two-expansions"] {
        let v = json(&ggr(&["verify", suite]));
        assert_eq!(v["passed"], true, "{suite}");
        assert_eq!(v["suite"], suite);
        assert_eq!(v["schemaVersion"], 1);
    }
}

#[test]
fn counting_expansions() {
    let v = json(&ggr(&["count", "--x", "0", "--beta", "2.2", "--alphabet", "0,1,1.5"]));
    assert_eq!(v["aliveCount"], 1);
    assert_eq!(v["pinnedWords"][0], "(0)");

    let v = json(&ggr(&["count", "--x", "1", "--beta", "1.5", "--depth", "12"]));
    assert_eq!(v["aliveCount"], 54);
    assert_eq!(v["truncated"], false);
}

#[test]
fn two_expansions_at_the_all_tau_one_point() {
    let m = m_of_sadic(&SAdicSpec::constant(1).unwrap(), SolveOptions::default()).unwrap();
    let beta = Bracket::from_f64(1.0) + m.sqrt();
    let x = m / beta;
    let (m, beta, x) = (m.mid().to_decimal(30), beta.mid().to_decimal(30), x.mid().to_decimal(30));
    let alphabet = format!("0,1,{m}");
    let v = json(&ggr(&["count", "--x", &x, "--beta", &beta, "--alphabet", &alphabet, "--depth", "30"]));
    assert_eq!(v["aliveCount"], 2, "{v}");
}

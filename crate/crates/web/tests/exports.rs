use ggr_web::{count_expansions, golden, graph};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn golden_at_plateau_and_f_branch() {
    let v = parse(&golden("2"));
    assert!((v["value"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let v = parse(&golden("1.9"));
    assert!((v["value"].as_f64().unwrap() - 19.0 / 9.0).abs() < 1e-12);
    assert_eq!(v["branch"], "f");
    assert!(parse(&golden("0.5"))["error"].is_string());
    assert!(parse(&golden("x"))["error"].is_string());
}

#[test]
fn graph_is_csv() {
    let csv = graph(1.5, 2.0, 1e-2);
    assert!(csv.starts_with("m,G,branch,sigma\n"));
    assert!(csv.lines().count() > 60);
    assert!(parse(&graph(2.0, 3.0, 1e-2))["error"].is_string());
}

#[test]
fn counts() {
    let v = parse(&count_expansions("1", "1.5", "0,1", 12));
    assert_eq!(v["aliveCount"], 54);
    let v = parse(&count_expansions("0", "2", "0,1", 10));
    assert_eq!(v["aliveCount"], 1);
    assert_eq!(v["pinnedWords"][0], "(0)");
    assert!(parse(&count_expansions("5", "2", "0,1", 10))["error"].is_string());
    assert!(parse(&count_expansions("1", "1", "0,1", 10))["error"].is_string());
}

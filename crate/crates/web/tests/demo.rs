use parcol_web::{canonicalize_json, gray_json, hopf_stiefel_json, parse_graph};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn gray_payload() {
    let v = parse(&gray_json(16, 2).unwrap());
    assert_eq!(v["num_colors"], 7);
    assert_eq!(v["labels"].as_array().unwrap().len(), 16);
    assert_eq!(v["edges"].as_array().unwrap().len(), 15 + 14);
    assert_eq!(v["bounds"]["lower"], 5);
    assert_eq!(v["census"]["4"], 2);

    let v = parse(&gray_json(8, 5).unwrap());
    assert_eq!(v["in_regime"], false);
    assert!(v["census"].is_null());

    assert!(gray_json(1, 1).is_err());
    assert!(gray_json(4096, 2).is_err());
}

#[test]
fn canonicalize_payload() {
    let v = parse(&canonicalize_json("cycle 4", "1,2,1,3").unwrap());
    assert_eq!(v["spec"], true);
    assert_eq!(v["num_colors_star"], 2);

    let v = parse(&canonicalize_json("cycle 4", "1,1,2,2").unwrap());
    assert_eq!(v["spec"], false);
    assert_eq!(v["parity_walk_between"].as_array().unwrap().len(), 2);

    let v = parse(&canonicalize_json(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#, "1,2").unwrap());
    assert_eq!(v["spec"], true);

    assert!(canonicalize_json("cycle 4", "1,2").is_err());
    assert!(canonicalize_json("cycle x", "1").is_err());
    assert!(canonicalize_json("", "1").is_err());
}

#[test]
fn graph_size_limit() {
    assert!(parse_graph("hypercube 6").is_ok());
    assert!(parse_graph("hypercube 7").is_err());
    assert!(parse_graph("complete 65").is_err());
}

#[test]
fn table_payload() {
    let v = parse(&hopf_stiefel_json(4).unwrap());
    assert_eq!(v["rows"][1][2], 4);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert!(hopf_stiefel_json(0).is_err());
    assert!(hopf_stiefel_json(65).is_err());
}

//! Replays the fuzz corpus seeds through the same invariants as the fuzz
//! targets, so they run on stable with every `cargo test`.

use std::fs;
use std::path::PathBuf;

use sopsigma::dot::parse_dot_edges;
use sopsigma::json::{
    map_to_json, parse_embedding_map, parse_pattern, parse_poset, parse_set_system,
    pattern_to_json, poset_to_json, set_system_to_json,
};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (
                path.display().to_string(),
                fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn poset_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("poset_json") {
        if let Ok(p) = parse_poset(&text) {
            let once = poset_to_json(&p);
            assert_eq!(parse_poset(&once).unwrap(), p, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn pattern_seeds() {
    for (name, text) in seeds("pattern_json") {
        if let Ok(p) = parse_pattern(&text) {
            assert_eq!(parse_pattern(&pattern_to_json(&p)).unwrap(), p, "{name}");
        }
    }
}

#[test]
fn set_system_seeds() {
    for (name, text) in seeds("set_system_json") {
        if let Ok(s) = parse_set_system(&text) {
            assert_eq!(
                parse_set_system(&set_system_to_json(&s)).unwrap(),
                s,
                "{name}"
            );
        }
    }
}

#[test]
fn embedding_map_seeds() {
    for (name, text) in seeds("embedding_map_json") {
        if let Ok(m) = parse_embedding_map(&text) {
            assert_eq!(parse_embedding_map(&map_to_json(&m)).unwrap(), m, "{name}");
        }
    }
}

#[test]
fn dot_seeds() {
    let all: Vec<_> = seeds("dot_edges")
        .iter()
        .flat_map(|(_, text)| parse_dot_edges(text))
        .collect();
    assert!(all.contains(&("x\"y".to_string(), "z".to_string())));
    assert!(all.contains(&("α_0".to_string(), "β_1".to_string())));
}

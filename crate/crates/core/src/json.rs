//! JSON formats.
//!
//! ```text
//! poset:      {"elements": [..], "lt": [["a", "b"], ..]}
//! pattern:    {"indices": [..], "inconsistent": [["i", "j"], ..], "consistent": [["i", ..], ..]}
//! set system: {"universe": [..], "sets": {"name": [..], ..}}
//! embedding:  {"map": {"source label": "target label", ..}}
//! ```
//!
//! Poset input may list any generating pairs; output is always transitively
//! closed. Parse errors carry a path to the offending field, e.g.
//! `lt[3][1]`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::embedding::OrderEmbedding;
use crate::error::{Error, Result};
use crate::pattern::ConsistencyPattern;
use crate::poset::{close_strict_pairs, Poset};
use crate::setsystem::SetSystem;
use crate::sigma::SigmaPatternPoset;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub lt: Vec<[String; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDoc {
    pub indices: Vec<String>,
    pub inconsistent: Vec<[String; 2]>,
    pub consistent: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSystemDoc {
    pub universe: Vec<String>,
    pub sets: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDoc {
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Serialize)]
pub struct SigmaAuditDoc {
    pub poset: PosetDoc,
    pub r0: Vec<[String; 2]>,
    pub r1: Vec<[String; 2]>,
    pub r2: Vec<[String; 2]>,
}

fn from_text<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::schema("$", format!("{e}")))
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Rejects repeated labels, pointing at the second occurrence.
fn distinct_labels<'a>(field: &str, labels: &'a [String]) -> Result<HashMap<&'a str, usize>> {
    let mut seen = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if seen.insert(l.as_str(), i).is_some() {
            return Err(Error::schema(
                format!("{field}[{i}]"),
                format!("duplicate label `{l}`"),
            ));
        }
    }
    Ok(seen)
}

fn known(known: &HashMap<&str, usize>, path: String, label: &str) -> Result<()> {
    if known.contains_key(label) {
        Ok(())
    } else {
        Err(Error::schema(path, format!("unknown element `{label}`")))
    }
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    poset_from_doc(from_text(text)?)
}

pub fn poset_from_doc(doc: PosetDoc) -> Result<Poset> {
    let labels = distinct_labels("elements", &doc.elements)?;
    for (i, [a, b]) in doc.lt.iter().enumerate() {
        known(&labels, format!("lt[{i}][0]"), a)?;
        known(&labels, format!("lt[{i}][1]"), b)?;
    }
    close_strict_pairs(
        doc.elements.iter().cloned(),
        doc.lt.iter().map(|[a, b]| (a, b)),
    )
    .map_err(|e| Error::schema("lt", e.to_string()))
}

pub fn poset_doc(p: &Poset) -> PosetDoc {
    PosetDoc {
        elements: p.elements().to_vec(),
        lt: p.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

pub fn poset_to_json(p: &Poset) -> String {
    pretty(&poset_doc(p))
}

pub fn parse_pattern(text: &str) -> Result<ConsistencyPattern> {
    let doc: PatternDoc = from_text(text)?;
    let labels = distinct_labels("indices", &doc.indices)?;
    for (i, [a, b]) in doc.inconsistent.iter().enumerate() {
        known(&labels, format!("inconsistent[{i}][0]"), a)?;
        known(&labels, format!("inconsistent[{i}][1]"), b)?;
        if a == b {
            return Err(Error::schema(
                format!("inconsistent[{i}]"),
                "an inconsistent pair needs two distinct indices",
            ));
        }
    }
    let mut sets = HashSet::new();
    for (k, c) in doc.consistent.iter().enumerate() {
        for (x, j) in c.iter().enumerate() {
            known(&labels, format!("consistent[{k}][{x}]"), j)?;
        }
        let mut key: Vec<&str> = c.iter().map(String::as_str).collect();
        key.sort_unstable();
        key.dedup();
        if !sets.insert(key) {
            return Err(Error::schema(
                format!("consistent[{k}]"),
                "duplicate consistent set",
            ));
        }
    }
    ConsistencyPattern::new(
        doc.indices,
        doc.inconsistent.iter().map(|[a, b]| (a, b)),
        doc.consistent,
    )
    .map_err(|e| Error::schema("$", e.to_string()))
}

pub fn pattern_to_json(p: &ConsistencyPattern) -> String {
    pretty(&PatternDoc {
        indices: p.indices().to_vec(),
        inconsistent: p.inconsistent_labels(),
        consistent: p.consistent_labels(),
    })
}

pub fn parse_set_system(text: &str) -> Result<SetSystem> {
    let doc: SetSystemDoc = from_text(text)?;
    let points = distinct_labels("universe", &doc.universe)?;
    for (name, members) in &doc.sets {
        for (x, m) in members.iter().enumerate() {
            if !points.contains_key(m.as_str()) {
                return Err(Error::schema(
                    format!("sets.{name}[{x}]"),
                    format!("`{m}` is not in the universe"),
                ));
            }
        }
    }
    SetSystem::new(doc.universe, doc.sets).map_err(|e| Error::schema("$", e.to_string()))
}

pub fn set_system_to_json(s: &SetSystem) -> String {
    let order: HashMap<&str, usize> = s
        .universe()
        .iter()
        .enumerate()
        .map(|(i, u)| (u.as_str(), i))
        .collect();
    let sets = s
        .sets()
        .iter()
        .map(|(name, members)| {
            let mut m: Vec<String> = members.iter().cloned().collect();
            m.sort_by_key(|x| order[x.as_str()]);
            (name.clone(), m)
        })
        .collect();
    pretty(&SetSystemDoc {
        universe: s.universe().to_vec(),
        sets,
    })
}

pub fn parse_embedding_map(text: &str) -> Result<BTreeMap<String, String>> {
    Ok(from_text::<EmbeddingDoc>(text)?.map)
}

pub fn map_to_json(map: &BTreeMap<String, String>) -> String {
    pretty(&EmbeddingDoc { map: map.clone() })
}

pub fn embedding_to_json(e: &OrderEmbedding) -> String {
    map_to_json(&e.map())
}

pub fn sigma_audit_to_json(s: &SigmaPatternPoset) -> String {
    let pairs = |r: &crate::sigma::PairSet| r.iter().map(|(a, b)| [a.clone(), b.clone()]).collect();
    pretty(&SigmaAuditDoc {
        poset: poset_doc(&s.poset),
        r0: pairs(&s.r0),
        r1: pairs(&s.r1),
        r2: pairs(&s.r2),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    pretty(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_tp2;

    fn schema_path(e: Error) -> String {
        match e {
            Error::Schema { path, .. } => path,
            other => panic!("not a schema error: {other:?}"),
        }
    }

    #[test]
    fn poset_input_is_closed_on_output() {
        let p = parse_poset(r#"{"elements":["a","b","c"],"lt":[["a","b"],["b","c"]]}"#).unwrap();
        let back: PosetDoc = serde_json::from_str(&poset_to_json(&p)).unwrap();
        assert_eq!(back.lt.len(), 3);
        assert_eq!(parse_poset(&poset_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn poset_errors_point_at_fields() {
        let e = parse_poset(r#"{"elements":["a"],"lt":[["a","z"]]}"#).unwrap_err();
        assert_eq!(schema_path(e), "lt[0][1]");
        let e = parse_poset(r#"{"elements":["a","a"],"lt":[]}"#).unwrap_err();
        assert_eq!(schema_path(e), "elements[1]");
        let e = parse_poset(r#"{"elements":["a","b"],"lt":[["a","b"],["b","a"]]}"#).unwrap_err();
        assert_eq!(schema_path(e), "lt");
        let e = parse_poset(r#"{"elements":["a"],"lt":[],"extra":1}"#).unwrap_err();
        assert_eq!(schema_path(e), "$");
    }

    #[test]
    fn pattern_roundtrip() {
        let p = gen_tp2(2, 3).unwrap();
        assert_eq!(parse_pattern(&pattern_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn pattern_errors_point_at_fields() {
        let e = parse_pattern(
            r#"{"indices":["1","2"],"inconsistent":[["1","2"]],"consistent":[["1"],["1"]]}"#,
        )
        .unwrap_err();
        assert_eq!(schema_path(e), "consistent[1]");
        let e = parse_pattern(r#"{"indices":["1"],"inconsistent":[["1","1"]],"consistent":[]}"#)
            .unwrap_err();
        assert_eq!(schema_path(e), "inconsistent[0]");
    }

    #[test]
    fn set_system_roundtrip_and_errors() {
        let text = r#"{"universe":["x","y"],"sets":{"A":["y","x"],"B":[]}}"#;
        let s = parse_set_system(text).unwrap();
        assert_eq!(parse_set_system(&set_system_to_json(&s)).unwrap(), s);
        let e = parse_set_system(r#"{"universe":["x"],"sets":{"A":["q"]}}"#).unwrap_err();
        assert_eq!(schema_path(e), "sets.A[0]");
    }
}

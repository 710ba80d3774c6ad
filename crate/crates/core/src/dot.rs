//! Hasse diagrams in the DOT language.

use crate::poset::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The transitive reduction as a directed graph, one rank per level, lowest
/// level at the bottom. Nodes and edges are emitted in a fixed order.
pub fn export_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (h, level) in p.levels().iter().enumerate() {
        let nodes: Vec<String> = level.iter().map(|l| quote(l)).collect();
        out.push_str(&format!(
            "  subgraph level_{h} {{ rank=same; {}; }}\n",
            nodes.join("; ")
        ));
    }
    for (a, b) in p.transitive_reduction() {
        out.push_str(&format!("  {} -> {};\n", quote(&a), quote(&b)));
    }
    out.push_str("}\n");
    out
}

/// Edges `(from, to)` of a DOT document written by [`export_dot`].
pub fn parse_dot_edges(dot: &str) -> Vec<(String, String)> {
    let unquote = |s: &str| {
        s.trim()
            .trim_end_matches(';')
            .trim()
            .trim_matches('"')
            .replace("\\\"", "\"")
            .replace("\\\\", "\\")
    };
    dot.lines()
        .filter_map(|line| line.split_once(" -> "))
        .map(|(a, b)| (unquote(a), unquote(b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain() {
        let p = Poset::new(["a", "b"], [("a", "b")]).unwrap();
        let dot = export_dot(&p);
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert!(dot.contains("rank=same; \"a\";"));
        assert!(dot.contains("rank=same; \"b\";"));
        assert_eq!(parse_dot_edges(&dot), vec![("a".into(), "b".into())]);
    }

    #[test]
    fn quotes_are_escaped() {
        let p = Poset::new(["x\"y", "z"], [("x\"y", "z")]).unwrap();
        assert_eq!(
            parse_dot_edges(&export_dot(&p)),
            vec![("x\"y".into(), "z".into())]
        );
    }

    #[test]
    fn deterministic() {
        let p = Poset::new(["c", "a", "b"], [("a", "c"), ("b", "c")]).unwrap();
        assert_eq!(export_dot(&p), export_dot(&p.clone()));
    }
}

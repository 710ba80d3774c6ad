//! Finite fragments of the named consistency patterns, and chains.
//!
//! Tree indices are strings over the digits `0..branching` (so `"01"` is the
//! second child of the first child of the root); the root is never an index.
//! Grid cells are written `(row,col)` and the SOP₃ indices `(i,level)`.

use crate::error::{Error, Result};
use crate::pattern::ConsistencyPattern;
use crate::poset::Poset;

/// Largest number of consistent sets a generator will produce.
pub const MAX_CONSISTENT_SETS: usize = 10_000;

/// Nodes of the `branching`-ary tree at lengths `1..=depth`, shortest first.
fn tree_nodes(depth: usize, branching: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut layer = vec![String::new()];
    for _ in 0..depth {
        layer = layer
            .iter()
            .flat_map(|s| (0..branching).map(move |d| format!("{s}{d}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn is_prefix(a: &str, b: &str) -> bool {
    a.len() < b.len() && b.starts_with(a)
}

fn comparable(a: &str, b: &str) -> bool {
    is_prefix(a, b) || is_prefix(b, a)
}

/// Root-to-leaf branches with the root removed.
fn branches(depth: usize, branching: usize) -> Vec<Vec<String>> {
    tree_nodes(depth, branching)
        .into_iter()
        .filter(|s| s.len() == depth)
        .map(|leaf| (1..=depth).map(|l| leaf[..l].to_string()).collect())
        .collect()
}

fn guard_sets(count: u128) -> Result<()> {
    if count > MAX_CONSISTENT_SETS as u128 {
        return Err(Error::BoundExceeded {
            what: "number of consistent sets",
            value: usize::try_from(count).unwrap_or(usize::MAX),
            bound: MAX_CONSISTENT_SETS,
        });
    }
    Ok(())
}

fn guard_branching(branching: usize) -> Result<()> {
    if branching > 10 {
        return Err(Error::BoundExceeded {
            what: "branching",
            value: branching,
            bound: 10,
        });
    }
    Ok(())
}

fn pairs_where<F>(nodes: &[String], mut rel: F) -> Vec<(String, String)>
where
    F: FnMut(&str, &str) -> bool,
{
    let mut out = Vec::new();
    for (x, a) in nodes.iter().enumerate() {
        for b in &nodes[x + 1..] {
            if rel(a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// TP₁ on the binary tree: incomparable pairs are inconsistent, branches are
/// consistent.
pub fn gen_tp1(depth: usize) -> Result<ConsistencyPattern> {
    if depth < 2 {
        return Err(Error::DegenerateParameter(format!(
            "tp1 depth {depth} < 2: every node has a single incomparable partner"
        )));
    }
    guard_sets(1u128 << depth.min(127))?;
    let nodes = tree_nodes(depth, 2);
    let inconsistent = pairs_where(&nodes, |a, b| !comparable(a, b));
    ConsistencyPattern::new(nodes, inconsistent, branches(depth, 2))
}

/// TP₂ on a `rows × cols` grid: cells in the same row are inconsistent, every
/// transversal (one cell per row) is consistent.
pub fn gen_tp2(rows: usize, cols: usize) -> Result<ConsistencyPattern> {
    if rows < 2 {
        return Err(Error::DegenerateParameter(format!("tp2 rows {rows} < 2")));
    }
    if cols < 3 {
        return Err(Error::DegenerateParameter(format!(
            "tp2 cols {cols} < 3: each cell needs two same-row partners"
        )));
    }
    guard_sets((cols as u128).checked_pow(rows as u32).unwrap_or(u128::MAX))?;
    let cell = |r: usize, c: usize| format!("({r},{c})");
    let indices: Vec<String> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| cell(r, c)))
        .collect();
    let inconsistent: Vec<(String, String)> = (0..rows)
        .flat_map(|r| {
            (0..cols).flat_map(move |a| (a + 1..cols).map(move |b| (cell(r, a), cell(r, b))))
        })
        .collect();
    let mut transversals: Vec<Vec<String>> = vec![Vec::new()];
    for r in 0..rows {
        transversals = transversals
            .into_iter()
            .flat_map(|t| {
                (0..cols).map(move |c| {
                    let mut t = t.clone();
                    t.push(cell(r, c));
                    t
                })
            })
            .collect();
    }
    ConsistencyPattern::new(indices, inconsistent, transversals)
}

fn maximal_antichains_below(node: &str, depth: usize) -> Vec<Vec<String>> {
    let mut out = vec![vec![node.to_string()]];
    if node.len() < depth {
        let left = maximal_antichains_below(&format!("{node}0"), depth);
        let right = maximal_antichains_below(&format!("{node}1"), depth);
        for l in &left {
            for r in &right {
                out.push(l.iter().chain(r).cloned().collect());
            }
        }
    }
    out
}

fn antichain_count(remaining: usize) -> u128 {
    // Maximal antichains of a complete binary tree with `remaining` levels.
    (1..remaining).fold(1u128, |m, _| m.saturating_mul(m).saturating_add(1))
}

/// ATP on the binary tree: comparable pairs are inconsistent, every maximal
/// antichain is consistent.
pub fn gen_atp(depth: usize) -> Result<ConsistencyPattern> {
    if depth < 3 {
        return Err(Error::DegenerateParameter(format!(
            "atp depth {depth} < 3: some leaf has a single comparable partner"
        )));
    }
    let half = antichain_count(depth);
    guard_sets(half.saturating_mul(half))?;
    let nodes = tree_nodes(depth, 2);
    let inconsistent = pairs_where(&nodes, comparable);
    let left = maximal_antichains_below("0", depth);
    let right = maximal_antichains_below("1", depth);
    let mut consistent = Vec::new();
    for l in &left {
        for r in &right {
            let mut c: Vec<String> = l.iter().chain(r).cloned().collect();
            c.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            consistent.push(c);
        }
    }
    ConsistencyPattern::new(nodes, inconsistent, consistent)
}

pub fn sop3_index(i: i64, level: u8) -> String {
    format!("({i},{level})")
}

/// SOP₃ truncated to `{-n..n} × {0,1}`: `(i,0)`, `(j,1)` are inconsistent iff
/// `i ≥ j`; consistent sets are `C_k = {(i,0) : i < k} ∪ {(j,1) : j ≥ k}` for
/// `-n ≤ k ≤ n+1`, intersected with the range.
pub fn gen_sop3(n: usize) -> Result<ConsistencyPattern> {
    if n < 1 {
        return Err(Error::DegenerateParameter(
            "sop3 n must be at least 1".into(),
        ));
    }
    guard_sets(2 * n as u128 + 2)?;
    let n = n as i64;
    let range = || -n..=n;
    let indices: Vec<String> = range()
        .map(|i| sop3_index(i, 0))
        .chain(range().map(|j| sop3_index(j, 1)))
        .collect();
    let inconsistent: Vec<(String, String)> = range()
        .flat_map(|i| (-n..=i).map(move |j| (sop3_index(i, 0), sop3_index(j, 1))))
        .collect();
    let consistent: Vec<Vec<String>> = (-n..=n + 1)
        .map(|k| {
            (-n..k)
                .map(|i| sop3_index(i, 0))
                .chain((k..=n).map(|j| sop3_index(j, 1)))
                .collect()
        })
        .collect();
    ConsistencyPattern::new(indices, inconsistent, consistent)
}

/// The usual tree property TP on the `branching`-ary tree: siblings are
/// inconsistent, branches are consistent. Not maximal.
pub fn gen_tp(depth: usize, branching: usize) -> Result<ConsistencyPattern> {
    if depth < 2 || branching < 2 {
        return Err(Error::DegenerateParameter(format!(
            "tp needs depth >= 2 and branching >= 2, got depth {depth}, branching {branching}"
        )));
    }
    guard_branching(branching)?;
    guard_sets(
        (branching as u128)
            .checked_pow(depth as u32)
            .unwrap_or(u128::MAX),
    )?;
    let nodes = tree_nodes(depth, branching);
    let siblings = |a: &str, b: &str| a.len() == b.len() && a[..a.len() - 1] == b[..b.len() - 1];
    let inconsistent = pairs_where(&nodes, siblings);
    ConsistencyPattern::new(nodes, inconsistent, branches(depth, branching))
}

/// The `n`-chain `0 < 1 < ... < n-1`.
pub fn gen_chain(n: usize) -> Result<Poset> {
    if n < 1 {
        return Err(Error::DegenerateParameter(
            "chain length must be at least 1".into(),
        ));
    }
    let width = (n - 1).to_string().len();
    let labels: Vec<String> = (0..n).map(|i| format!("c{i:0width$}")).collect();
    let pairs: Vec<(String, String)> = labels
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    Poset::new(labels.clone(), pairs)
}

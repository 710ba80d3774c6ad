//! All finite posets of a given size, up to isomorphism.
//!
//! Posets of size `n` are grown from those of size `n - 1` by adding one new
//! element together with a down-closed set below it and an up-closed set
//! above it. Candidates are deduplicated by a canonical form: the
//! lexicographically least adjacency matrix over all orderings that respect an
//! isomorphism-invariant per-element key.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::Poset;

pub const DEFAULT_ENUMERATION_BOUND: usize = 6;

/// Largest size the canonical form supports (one adjacency row per byte).
pub const MAX_ENUMERATION_SIZE: usize = 8;

/// Pairwise non-isomorphic posets covering every poset on `n` points, in
/// canonical-form order. Elements are labelled `"0"`, `"1"`, ...
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    enumerate_posets_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_posets_bounded(n: usize, bound: usize) -> Result<Vec<Poset>> {
    let bound = bound.min(MAX_ENUMERATION_SIZE);
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "poset size",
            value: n,
            bound,
        });
    }
    let mut layer = vec![Relation::empty(0)];
    for size in 1..=n {
        let mut next: BTreeMap<Vec<u8>, Relation> = BTreeMap::new();
        for r in &layer {
            for child in r.extensions() {
                let form = canonical_form(&child);
                next.entry(form).or_insert_with(|| child.canonical(size));
            }
        }
        layer = next.into_values().collect();
    }
    Ok(layer.iter().map(Relation::to_poset).collect())
}

/// Canonical form of an arbitrary poset of at most [`MAX_ENUMERATION_SIZE`]
/// elements; equal forms iff isomorphic.
pub fn poset_canonical_form(p: &Poset) -> Result<Vec<u8>> {
    if p.len() > MAX_ENUMERATION_SIZE {
        return Err(Error::BoundExceeded {
            what: "poset size",
            value: p.len(),
            bound: MAX_ENUMERATION_SIZE,
        });
    }
    let mut r = Relation::empty(p.len());
    for (a, b) in p.index_pairs() {
        r.up[a] |= 1 << b;
    }
    Ok(canonical_form(&r))
}

/// Closed strict relation on `0..n`; `up[a]` has bit `b` set iff `a < b`.
#[derive(Clone)]
struct Relation {
    up: Vec<u8>,
}

impl Relation {
    fn empty(n: usize) -> Self {
        Relation { up: vec![0; n] }
    }

    fn len(&self) -> usize {
        self.up.len()
    }

    fn down(&self, b: usize) -> u8 {
        (0..self.len())
            .filter(|&a| self.up[a] & (1 << b) != 0)
            .fold(0, |acc, a| acc | 1 << a)
    }

    /// Every one-point extension by a new top-index element.
    fn extensions(&self) -> Vec<Relation> {
        let n = self.len();
        let full = if n == 0 { 0u16 } else { (1u16 << n) - 1 };
        let downs: Vec<u8> = (0..=full as u8)
            .take(1 << n)
            .filter(|&d| self.is_down_closed(d))
            .collect();
        let ups: Vec<u8> = (0..=full as u8)
            .take(1 << n)
            .filter(|&u| self.is_up_closed(u))
            .collect();
        let mut out = Vec::new();
        for &d in &downs {
            for &u in &ups {
                if d & u != 0 || !self.all_below(d, u) {
                    continue;
                }
                let mut up = self.up.clone();
                for (a, row) in up.iter_mut().enumerate() {
                    if d & (1 << a) != 0 {
                        *row |= 1 << n;
                    }
                }
                up.push(u);
                out.push(Relation { up });
            }
        }
        out
    }

    fn is_down_closed(&self, d: u8) -> bool {
        (0..self.len()).all(|b| d & (1 << b) == 0 || self.down(b) & !d == 0)
    }

    fn is_up_closed(&self, u: u8) -> bool {
        (0..self.len()).all(|a| u & (1 << a) == 0 || self.up[a] & !u == 0)
    }

    fn all_below(&self, d: u8, u: u8) -> bool {
        (0..self.len()).all(|a| d & (1 << a) == 0 || self.up[a] & u == u)
    }

    /// The relation rewritten along its canonical ordering.
    fn canonical(&self, n: usize) -> Relation {
        let order = canonical_order(self);
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut up = vec![0u8; n];
        for a in 0..n {
            for b in 0..n {
                if self.up[a] & (1 << b) != 0 {
                    up[pos[a]] |= 1 << pos[b];
                }
            }
        }
        Relation { up }
    }

    fn to_poset(&self) -> Poset {
        let n = self.len();
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(&str, &str)> = (0..n)
            .flat_map(|a| {
                let labels = &labels;
                (0..n)
                    .filter(move |&b| self.up[a] & (1 << b) != 0)
                    .map(move |b| (labels[a].as_str(), labels[b].as_str()))
            })
            .collect();
        Poset::new(labels.iter().cloned(), pairs).expect("enumerated relations are strict orders")
    }
}

fn invariant_keys(r: &Relation) -> Vec<(u32, u32)> {
    (0..r.len())
        .map(|v| (r.down(v).count_ones(), r.up[v].count_ones()))
        .collect()
}

fn encode(r: &Relation, order: &[usize]) -> Vec<u8> {
    order
        .iter()
        .map(|&a| {
            order
                .iter()
                .enumerate()
                .filter(|&(_, &b)| r.up[a] & (1 << b) != 0)
                .fold(0u8, |acc, (j, _)| acc | 1 << j)
        })
        .collect()
}

fn canonical_order(r: &Relation) -> Vec<usize> {
    let keys = invariant_keys(r);
    let mut sorted: Vec<usize> = (0..r.len()).collect();
    sorted.sort_by_key(|&v| (keys[v], v));
    let slot_keys: Vec<(u32, u32)> = sorted.iter().map(|&v| keys[v]).collect();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let mut current = Vec::with_capacity(r.len());
    let mut used = vec![false; r.len()];
    permute(r, &keys, &slot_keys, &mut current, &mut used, &mut best);
    best.map(|(_, o)| o).unwrap_or_default()
}

fn permute(
    r: &Relation,
    keys: &[(u32, u32)],
    slot_keys: &[(u32, u32)],
    current: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<(Vec<u8>, Vec<usize>)>,
) {
    let slot = current.len();
    if slot == r.len() {
        let code = encode(r, current);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, current.clone()));
        }
        return;
    }
    for v in 0..r.len() {
        if used[v] || keys[v] != slot_keys[slot] {
            continue;
        }
        used[v] = true;
        current.push(v);
        permute(r, keys, slot_keys, current, used, best);
        current.pop();
        used[v] = false;
    }
}

fn canonical_form(r: &Relation) -> Vec<u8> {
    let order = canonical_order(r);
    let mut form: Vec<u8> = invariant_keys(r)
        .iter()
        .map(|&(d, u)| (d as u8) << 4 | u as u8)
        .collect();
    form.sort_unstable();
    form.extend(encode(r, &order));
    form
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::is_isomorphic;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_posets(0).unwrap().len(), 1);
        assert_eq!(enumerate_posets(1).unwrap().len(), 1);
        assert_eq!(enumerate_posets(2).unwrap().len(), 2);
        assert_eq!(enumerate_posets(3).unwrap().len(), 5);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_posets(7),
            Err(Error::BoundExceeded { bound: 6, .. })
        ));
        assert!(enumerate_posets_bounded(7, 7).is_ok());
        assert!(matches!(
            enumerate_posets_bounded(9, 20),
            Err(Error::BoundExceeded { bound: 8, .. })
        ));
    }

    #[test]
    fn outputs_are_pairwise_non_isomorphic() {
        let ps = enumerate_posets(4).unwrap();
        for (i, a) in ps.iter().enumerate() {
            for b in &ps[i + 1..] {
                assert!(!is_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Poset::new(["x", "y", "z"], [("x", "y")]).unwrap();
        let b = Poset::new(["x", "y", "z"], [("z", "x")]).unwrap();
        let c = Poset::new(["x", "y", "z"], [("z", "x"), ("y", "x")]).unwrap();
        assert_eq!(
            poset_canonical_form(&a).unwrap(),
            poset_canonical_form(&b).unwrap()
        );
        assert_ne!(
            poset_canonical_form(&a).unwrap(),
            poset_canonical_form(&c).unwrap()
        );
    }
}

//! Order embeddings between finite posets.
//!
//! [`check_embedding`] is a plain pairwise checker; [`find_embedding`] is a
//! backtracking search. The search never trusts itself: every map it returns
//! goes through the checker before it is handed out.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Why a map between posets fails to be an order embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two source elements share an image.
    NotInjective { a: String, b: String, image: String },
    /// `lower < upper` in the source but not between the images.
    NotPreserved { lower: String, upper: String },
    /// The images of `lower`, `upper` are related but the elements are not.
    NotReflected { lower: String, upper: String },
    /// A source element has no image, or its image is not in the target.
    Unmapped { element: String },
}

/// Every way in which `map` (source index to target index) fails to be an
/// order embedding. Empty means it is one.
pub fn check_embedding(source: &Poset, target: &Poset, map: &[usize]) -> Vec<Violation> {
    let mut out = Vec::new();
    if map.len() != source.len() {
        for i in map.len()..source.len() {
            out.push(Violation::Unmapped {
                element: source.label(i).to_string(),
            });
        }
        return out;
    }
    for (i, &t) in map.iter().enumerate() {
        if t >= target.len() {
            out.push(Violation::Unmapped {
                element: source.label(i).to_string(),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for a in 0..source.len() {
        for b in 0..source.len() {
            if a == b {
                continue;
            }
            if a < b && map[a] == map[b] {
                out.push(Violation::NotInjective {
                    a: source.label(a).to_string(),
                    b: source.label(b).to_string(),
                    image: target.label(map[a]).to_string(),
                });
            }
            let src = source.lt_idx(a, b);
            let tgt = target.lt_idx(map[a], map[b]);
            let (lower, upper) = (source.label(a).to_string(), source.label(b).to_string());
            if src && !tgt {
                out.push(Violation::NotPreserved { lower, upper });
            } else if !src && tgt {
                out.push(Violation::NotReflected { lower, upper });
            }
        }
    }
    out
}

/// Label-level variant of [`check_embedding`].
pub fn check_label_map(
    source: &Poset,
    target: &Poset,
    map: &BTreeMap<String, String>,
) -> Vec<Violation> {
    let mut idx = Vec::with_capacity(source.len());
    let mut missing = Vec::new();
    for e in source.elements() {
        match map.get(e).and_then(|t| target.index_of(t)) {
            Some(t) => idx.push(t),
            None => {
                missing.push(Violation::Unmapped { element: e.clone() });
                idx.push(usize::MAX);
            }
        }
    }
    if !missing.is_empty() {
        return missing;
    }
    check_embedding(source, target, &idx)
}

/// An injective map that preserves and reflects the strict order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderEmbedding {
    source: Poset,
    target: Poset,
    map: Vec<usize>,
}

impl OrderEmbedding {
    /// Builds an embedding from a label map, verifying it.
    pub fn new(source: Poset, target: Poset, map: &BTreeMap<String, String>) -> Result<Self> {
        let violations = check_label_map(&source, &target, map);
        if let Some(v) = violations.first() {
            return Err(Error::InvalidEmbedding(format!(
                "{} violation(s), first: {v:?}",
                violations.len()
            )));
        }
        let map = source
            .elements()
            .iter()
            .map(|e| target.index_of(&map[e]).expect("checked above"))
            .collect();
        Ok(OrderEmbedding {
            source,
            target,
            map,
        })
    }

    pub fn from_indices(source: Poset, target: Poset, map: Vec<usize>) -> Result<Self> {
        let violations = check_embedding(&source, &target, &map);
        if let Some(v) = violations.first() {
            return Err(Error::InvalidEmbedding(format!(
                "{} violation(s), first: {v:?}",
                violations.len()
            )));
        }
        Ok(OrderEmbedding {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn indices(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, label: &str) -> Option<&str> {
        self.source
            .index_of(label)
            .map(|i| self.target.label(self.map[i]))
    }

    pub fn map(&self) -> BTreeMap<String, String> {
        self.source
            .elements()
            .iter()
            .zip(&self.map)
            .map(|(s, &t)| (s.clone(), self.target.label(t).to_string()))
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &OrderEmbedding) -> Result<OrderEmbedding> {
        if self.target != other.source {
            return Err(Error::InvalidEmbedding(
                "target of the first map is not the source of the second".into(),
            ));
        }
        let map = self.map.iter().map(|&t| other.map[t]).collect();
        OrderEmbedding::from_indices(self.source.clone(), other.target.clone(), map)
    }
}

/// Per-element quantities an embedding can only increase.
struct Profile {
    height: Vec<usize>,
    depth: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
}

impl Profile {
    fn of(p: &Poset) -> Self {
        Profile {
            height: p.height_vec(),
            depth: p.depth_vec(),
            up: (0..p.len())
                .map(|i| p.above_idx(i).count_ones(..))
                .collect(),
            down: (0..p.len())
                .map(|i| p.below_idx(i).count_ones(..))
                .collect(),
        }
    }

    fn dominated_by(&self, x: usize, other: &Profile, y: usize) -> bool {
        self.height[x] <= other.height[y]
            && self.depth[x] <= other.depth[y]
            && self.up[x] <= other.up[y]
            && self.down[x] <= other.down[y]
    }
}

/// Searches for an order embedding of `sub` into `sup`.
///
/// Backtracking with forward checking: each unassigned source element keeps
/// a domain of admissible targets, filtered by the (height, depth, up-degree,
/// down-degree) profile and by every assignment made so far. The next element
/// is the one with the smallest domain, ties broken by index, and candidates
/// are tried in index order, so the result is deterministic.
pub fn find_embedding(sub: &Poset, sup: &Poset) -> Option<OrderEmbedding> {
    let n = sub.len();
    let m = sup.len();
    if n > m {
        return None;
    }
    let (ps, pt) = (Profile::of(sub), Profile::of(sup));
    let mut domains = Vec::with_capacity(n);
    for x in 0..n {
        let mut d = FixedBitSet::with_capacity(m);
        for y in 0..m {
            if ps.dominated_by(x, &pt, y) {
                d.insert(y);
            }
        }
        if d.is_clear() {
            return None;
        }
        domains.push(d);
    }
    let incomparable: Vec<FixedBitSet> = (0..m)
        .map(|y| {
            let mut s = FixedBitSet::with_capacity(m);
            s.insert_range(..);
            s.difference_with(sup.above_idx(y));
            s.difference_with(sup.below_idx(y));
            s.set(y, false);
            s
        })
        .collect();

    let mut search = Search {
        sub,
        sup,
        incomparable: &incomparable,
        assignment: vec![usize::MAX; n],
    };
    if !search.extend(domains, n) {
        return None;
    }
    let map = search.assignment;
    Some(
        OrderEmbedding::from_indices(sub.clone(), sup.clone(), map)
            .expect("search produced a map that fails the embedding checker"),
    )
}

struct Search<'a> {
    sub: &'a Poset,
    sup: &'a Poset,
    incomparable: &'a [FixedBitSet],
    assignment: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, domains: Vec<FixedBitSet>, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let x = (0..self.sub.len())
            .filter(|&x| self.assignment[x] == usize::MAX)
            .min_by_key(|&x| (domains[x].count_ones(..), x))
            .expect("remaining > 0");
        for y in domains[x].ones() {
            let mut next = domains.clone();
            let mut dead = false;
            for (z, domain) in next.iter_mut().enumerate() {
                if z == x || self.assignment[z] != usize::MAX {
                    continue;
                }
                let allowed = if self.sub.lt_idx(z, x) {
                    self.sup.below_idx(y)
                } else if self.sub.lt_idx(x, z) {
                    self.sup.above_idx(y)
                } else {
                    &self.incomparable[y]
                };
                domain.intersect_with(allowed);
                if domain.is_clear() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.assignment[x] = y;
            if self.extend(next, remaining - 1) {
                return true;
            }
            self.assignment[x] = usize::MAX;
        }
        false
    }
}

/// True iff a bijective order embedding exists.
pub fn is_isomorphic(a: &Poset, b: &Poset) -> bool {
    a.len() == b.len() && a.relation_size() == b.relation_size() && find_embedding(a, b).is_some()
}

//! Finite strict partial orders over string labels.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite strict partial order.
///
/// Elements are kept in lexicographic order, so index `i` always refers to
/// the `i`-th smallest label. The relation is stored transitively closed, as
/// one row of successors and one row of predecessors per element.
#[derive(Clone)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
}

/// Transitive closure of `pairs` over `elements`.
///
/// Fails with [`Error::CycleDetected`] when the closure is reflexive anywhere,
/// and with [`Error::UnknownElement`] when a pair names an undeclared label.
pub fn close_strict_pairs<E, P, A, B>(elements: E, pairs: P) -> Result<Poset>
where
    E: IntoIterator,
    E::Item: Into<String>,
    P: IntoIterator<Item = (A, B)>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
    elements.sort();
    if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateElement(w[0].clone()));
    }
    let index: HashMap<String, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let n = elements.len();
    let lookup = |l: &str| {
        index
            .get(l)
            .copied()
            .ok_or_else(|| Error::UnknownElement(l.to_string()))
    };

    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut reach = vec![FixedBitSet::with_capacity(n); n];
    for (a, b) in pairs {
        let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
        if !reach[a].contains(b) {
            edges[a].push(b);
        }
        reach[a].insert(b);
    }
    for k in 0..n {
        let row_k = reach[k].clone();
        for row in reach.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
    if let Some(start) = (0..n).find(|&i| reach[i].contains(i)) {
        return Err(Error::CycleDetected(
            shortest_cycle(&edges, start)
                .into_iter()
                .map(|i| elements[i].clone())
                .collect(),
        ));
    }
    Ok(Poset::from_closed_rows(elements, index, reach))
}

/// Shortest cycle through `start` along generating edges, closed back on
/// `start` (first and last entries coincide).
fn shortest_cycle(edges: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; edges.len()];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &edges[v] {
            if w == start {
                let mut path = vec![start];
                let mut cur = v;
                while cur != start {
                    path.push(cur);
                    cur = parent[cur];
                }
                path.push(start);
                path.reverse();
                return path;
            }
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    vec![start, start]
}

impl Poset {
    fn from_closed_rows(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        above: Vec<FixedBitSet>,
    ) -> Self {
        let n = elements.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in above.iter().enumerate() {
            for b in row.ones() {
                below[b].insert(a);
            }
        }
        Poset {
            elements,
            index,
            above,
            below,
        }
    }

    /// Same as [`close_strict_pairs`].
    pub fn new<E, P, A, B>(elements: E, pairs: P) -> Result<Self>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        P: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        close_strict_pairs(elements, pairs)
    }

    pub fn antichain<E>(elements: E) -> Result<Self>
    where
        E: IntoIterator,
        E::Item: Into<String>,
    {
        close_strict_pairs(elements, std::iter::empty::<(&str, &str)>())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    /// `a < b` by label. Unknown labels are never related.
    pub fn lt(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.lt_idx(a, b),
            _ => false,
        }
    }

    pub fn lt_idx(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn comparable_idx(&self, a: usize, b: usize) -> bool {
        self.lt_idx(a, b) || self.lt_idx(b, a)
    }

    /// Strict successors of `a`, as a bitset over element indices.
    pub fn above_idx(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    /// Strict predecessors of `a`.
    pub fn below_idx(&self, a: usize) -> &FixedBitSet {
        &self.below[a]
    }

    /// Number of pairs in the strict relation.
    pub fn relation_size(&self) -> usize {
        self.above.iter().map(|r| r.count_ones(..)).sum()
    }

    /// All pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.index_pairs()
            .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }

    pub fn pair_set(&self) -> BTreeSet<(String, String)> {
        self.pairs().into_iter().collect()
    }

    pub fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.above
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
    }

    /// Length of the longest strictly descending chain below each element,
    /// by index.
    pub fn height_vec(&self) -> Vec<usize> {
        longest_chains(self.len(), |v| self.below[v].ones())
    }

    /// Length of the longest strictly ascending chain above each element.
    pub fn depth_vec(&self) -> Vec<usize> {
        longest_chains(self.len(), |v| self.above[v].ones())
    }

    pub fn heights(&self) -> BTreeMap<String, usize> {
        self.elements
            .iter()
            .cloned()
            .zip(self.height_vec())
            .collect()
    }

    /// Elements grouped by height; `levels()[n]` is the `n`-th level.
    pub fn levels(&self) -> Vec<Vec<String>> {
        let heights = self.height_vec();
        let top = heights.iter().copied().max().map_or(0, |h| h + 1);
        let mut levels = vec![Vec::new(); top];
        for (i, h) in heights.into_iter().enumerate() {
            levels[h].push(self.elements[i].clone());
        }
        levels
    }

    /// The reversed order.
    pub fn dual(&self) -> Poset {
        Poset {
            elements: self.elements.clone(),
            index: self.index.clone(),
            above: self.below.clone(),
            below: self.above.clone(),
        }
    }

    /// Covering pairs: `a < b` with nothing strictly between.
    pub fn transitive_reduction(&self) -> BTreeSet<(String, String)> {
        self.index_pairs()
            .filter(|&(a, b)| self.above[a].intersection(&self.below[b]).next().is_none())
            .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect()
    }

    /// Restriction of the order to `subset`.
    pub fn induced<I, S>(&self, subset: I) -> Result<Poset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut keep = Vec::new();
        for s in subset {
            let s = s.as_ref();
            keep.push(
                self.index_of(s)
                    .ok_or_else(|| Error::UnknownElement(s.to_string()))?,
            );
        }
        keep.sort_unstable();
        keep.dedup();
        let pairs: Vec<(&str, &str)> = keep
            .iter()
            .flat_map(|&a| {
                keep.iter()
                    .filter(move |&&b| self.lt_idx(a, b))
                    .map(move |&b| (self.label(a), self.label(b)))
            })
            .collect();
        close_strict_pairs(keep.iter().map(|&i| self.label(i).to_string()), pairs)
    }

    /// Renames every element; `f` must be injective on the carrier.
    pub fn relabel<F>(&self, mut f: F) -> Result<Poset>
    where
        F: FnMut(&str) -> String,
    {
        let names: Vec<String> = self.elements.iter().map(|e| f(e)).collect();
        let pairs: Vec<(&str, &str)> = self
            .index_pairs()
            .map(|(a, b)| (names[a].as_str(), names[b].as_str()))
            .collect();
        close_strict_pairs(names.iter().cloned(), pairs)
    }

    /// Disjoint union, each part's labels prefixed with `"{k}:"`.
    pub fn disjoint_sum(parts: &[Poset]) -> Poset {
        let mut elements = Vec::new();
        let mut pairs = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            elements.extend(p.elements.iter().map(|e| format!("{k}:{e}")));
            pairs.extend(
                p.pairs()
                    .into_iter()
                    .map(|(a, b)| (format!("{k}:{a}"), format!("{k}:{b}"))),
            );
        }
        close_strict_pairs(elements, pairs).expect("disjoint sum of posets is a poset")
    }
}

fn longest_chains<F, I>(n: usize, neighbours: F) -> Vec<usize>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    // The relation is closed, so the number of strict predecessors orders a
    // topological sort.
    let mut order: Vec<(usize, usize)> = (0..n).map(|v| (neighbours(v).count(), v)).collect();
    order.sort_unstable();
    let mut out = vec![0; n];
    for (_, v) in order {
        out[v] = neighbours(v).map(|u| out[u] + 1).max().unwrap_or(0);
    }
    out
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.above == other.above
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("lt", &self.pairs())
            .finish()
    }
}

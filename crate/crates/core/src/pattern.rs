//! Consistency patterns `(J, I, C)` and their axioms.
//!
//! `J` is an ordered list of index labels, `I` a set of two-element subsets
//! of `J` (inconsistent pairs) and `C` a list of pairwise distinct subsets of
//! `J` (consistent sets). Index positions in `J` are used internally; every
//! set is reported back in `J` order.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::report::{Check, Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyPattern {
    indices: Vec<String>,
    position: HashMap<String, usize>,
    inconsistent: BTreeSet<(usize, usize)>,
    consistent: Vec<BTreeSet<usize>>,
}

impl ConsistencyPattern {
    /// Checks the structural invariants only; the axioms are separate.
    pub fn new<J, S, P, A, B, C, D, T>(indices: J, inconsistent: P, consistent: C) -> Result<Self>
    where
        J: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
        C: IntoIterator<Item = D>,
        D: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        let indices: Vec<String> = indices.into_iter().map(Into::into).collect();
        let mut position = HashMap::with_capacity(indices.len());
        for (i, j) in indices.iter().enumerate() {
            if position.insert(j.clone(), i).is_some() {
                return Err(Error::DuplicateElement(j.clone()));
            }
        }
        let find = |l: &str| {
            position
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownElement(l.to_string()))
        };
        let mut pairs = BTreeSet::new();
        for (a, b) in inconsistent {
            let (a, b) = (find(a.as_ref())?, find(b.as_ref())?);
            if a == b {
                return Err(Error::InvalidPattern(format!(
                    "inconsistent pair {{{0}, {0}}} does not have two distinct elements",
                    indices[a]
                )));
            }
            pairs.insert((a.min(b), a.max(b)));
        }
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        let mut seen = BTreeSet::new();
        for c in consistent {
            let set = c
                .into_iter()
                .map(|t| find(t.as_ref()))
                .collect::<Result<BTreeSet<usize>>>()?;
            if !seen.insert(set.clone()) {
                return Err(Error::InvalidPattern(format!(
                    "duplicate consistent set {{{}}}",
                    set.iter()
                        .map(|&i| indices[i].as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                )));
            }
            sets.push(set);
        }
        Ok(ConsistencyPattern {
            indices,
            position,
            inconsistent: pairs,
            consistent: sets,
        })
    }

    pub fn indices(&self) -> &[String] {
        &self.indices
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.position.get(label).copied()
    }

    /// Inconsistent pairs by position, each with the smaller position first.
    pub fn inconsistent(&self) -> &BTreeSet<(usize, usize)> {
        &self.inconsistent
    }

    /// Consistent sets by position.
    pub fn consistent(&self) -> &[BTreeSet<usize>] {
        &self.consistent
    }

    pub fn is_inconsistent(&self, a: usize, b: usize) -> bool {
        self.inconsistent.contains(&(a.min(b), a.max(b)))
    }

    pub fn inconsistent_labels(&self) -> Vec<[String; 2]> {
        self.inconsistent
            .iter()
            .map(|&(a, b)| [self.indices[a].clone(), self.indices[b].clone()])
            .collect()
    }

    pub fn set_labels(&self, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&i| self.indices[i].clone()).collect()
    }

    pub fn consistent_labels(&self) -> Vec<Vec<String>> {
        self.consistent.iter().map(|c| self.set_labels(c)).collect()
    }

    /// `{j1,j2,...}` in `J` order; names the consistent set in derived labels.
    pub fn set_name(&self, set: &BTreeSet<usize>) -> String {
        format!("{{{}}}", self.set_labels(set).join(","))
    }

    /// Restriction to the indices in `keep`: `I` restricted, and only the
    /// consistent sets contained in `keep`.
    pub fn restrict<S: AsRef<str>>(&self, keep: &[S]) -> Result<ConsistencyPattern> {
        let mut mask = vec![false; self.indices.len()];
        for k in keep {
            let k = k.as_ref();
            mask[self
                .position(k)
                .ok_or_else(|| Error::UnknownElement(k.to_string()))?] = true;
        }
        let labels = |s: &BTreeSet<usize>| self.set_labels(s);
        ConsistencyPattern::new(
            self.indices
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask[i])
                .map(|(_, j)| j.clone()),
            self.inconsistent
                .iter()
                .filter(|&&(a, b)| mask[a] && mask[b])
                .map(|&(a, b)| (self.indices[a].clone(), self.indices[b].clone())),
            self.consistent
                .iter()
                .filter(|c| c.iter().all(|&i| mask[i]))
                .map(labels),
        )
    }

    /// Indices that are inconsistent with `j`.
    fn partners(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.indices.len()).filter(move |&i| i != j && self.is_inconsistent(i, j))
    }
}

/// (C1) no component empty; (C2) no inconsistent pair is contained in, or
/// contains, a consistent set.
pub fn validate_pattern(p: &ConsistencyPattern) -> Report {
    let mut c1 = Vec::new();
    if p.indices.is_empty() {
        c1.push(Witness::note("J is empty"));
    }
    if p.inconsistent.is_empty() {
        c1.push(Witness::note("I is empty"));
    }
    if p.consistent.is_empty() {
        c1.push(Witness::note("C is empty"));
    }
    let mut c2 = Vec::new();
    for &(a, b) in &p.inconsistent {
        for c in &p.consistent {
            let pair_in_c = c.contains(&a) && c.contains(&b);
            let c_in_pair = c.iter().all(|&x| x == a || x == b);
            if pair_in_c || c_in_pair {
                c2.push(Witness::PairAndSet {
                    pair: [p.indices[a].clone(), p.indices[b].clone()],
                    set: p.set_labels(c),
                });
            }
        }
    }
    Report::new(vec![
        Check::from_witnesses("C1", c1),
        Check::from_witnesses("C2", c2),
    ])
}

/// (M1) every non-inconsistent pair lies in a consistent set; (M2) consistent
/// sets are maximal; (M3) every index has at least two inconsistent partners.
pub fn check_maximality(p: &ConsistencyPattern) -> Report {
    let n = p.indices.len();
    let mut m1 = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if p.is_inconsistent(a, b) {
                continue;
            }
            if !p
                .consistent
                .iter()
                .any(|c| c.contains(&a) && c.contains(&b))
            {
                m1.push(Witness::pair(p.indices[a].clone(), p.indices[b].clone()));
            }
        }
    }
    let mut m2 = Vec::new();
    for c in &p.consistent {
        for j in (0..n).filter(|j| !c.contains(j)) {
            if !c.iter().any(|&i| p.is_inconsistent(i, j)) {
                m2.push(Witness::SetAndIndex {
                    set: p.set_labels(c),
                    index: p.indices[j].clone(),
                });
            }
        }
    }
    let m3 = (0..n)
        .filter(|&j| p.partners(j).take(2).count() < 2)
        .map(|j| Witness::index(p.indices[j].clone()))
        .collect();
    Report::new(vec![
        Check::from_witnesses("M1", m1),
        Check::from_witnesses("M2", m2),
        Check::from_witnesses("M3", m3),
    ])
}

/// Any two distinct consistent sets contain an inconsistent pair between
/// them.
pub fn check_weak_maximality(p: &ConsistencyPattern) -> Report {
    let mut w = Vec::new();
    for (x, c) in p.consistent.iter().enumerate() {
        for d in &p.consistent[x + 1..] {
            let split = c
                .iter()
                .any(|&i| d.iter().any(|&j| p.is_inconsistent(i, j)));
            if !split {
                w.push(Witness::SetPair {
                    left: p.set_labels(c),
                    right: p.set_labels(d),
                });
            }
        }
    }
    Report::new(vec![Check::from_witnesses("weak maximality", w)])
}

/// Every index lies in some consistent set.
pub fn check_coverage(p: &ConsistencyPattern) -> Report {
    let uncovered = (0..p.indices.len())
        .filter(|j| !p.consistent.iter().any(|c| c.contains(j)))
        .map(|j| Witness::index(p.indices[j].clone()))
        .collect();
    Report::new(vec![Check::from_witnesses("coverage", uncovered)])
}

/// True iff C1, C2, M1, M2 and M3 all pass.
pub fn is_maximal(p: &ConsistencyPattern) -> bool {
    validate_pattern(p).passed() && check_maximality(p).passed()
}

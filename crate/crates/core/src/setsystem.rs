//! Finite set systems and their inclusion posets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::embedding::{find_embedding, OrderEmbedding};
use crate::enumerate::{enumerate_posets_bounded, DEFAULT_ENUMERATION_BOUND};
use crate::error::{Error, Result};
use crate::poset::{close_strict_pairs, Poset};
use crate::report::{Check, Report, Witness};

/// A finite universe of points and a family of named subsets of it.
///
/// Distinct names may denote the same set; [`inclusion_poset`] identifies
/// them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    universe: Vec<String>,
    sets: BTreeMap<String, BTreeSet<String>>,
}

impl SetSystem {
    pub fn new<U, S, I, N, M>(universe: U, sets: I) -> Result<Self>
    where
        U: IntoIterator<Item = S>,
        S: Into<String>,
        I: IntoIterator<Item = (N, M)>,
        N: Into<String>,
        M: IntoIterator,
        M::Item: Into<String>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for u in &universe {
            if !seen.insert(u.as_str()) {
                return Err(Error::DuplicateElement(u.clone()));
            }
        }
        let mut out = BTreeMap::new();
        for (name, members) in sets {
            let name = name.into();
            let members: BTreeSet<String> = members.into_iter().map(Into::into).collect();
            if let Some(m) = members.iter().find(|m| !seen.contains(m.as_str())) {
                return Err(Error::UnknownElement(m.clone()));
            }
            if out.insert(name.clone(), members).is_some() {
                return Err(Error::DuplicateElement(name));
            }
        }
        Ok(SetSystem {
            universe,
            sets: out,
        })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn sets(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.sets
    }

    pub fn set(&self, name: &str) -> Option<&BTreeSet<String>> {
        self.sets.get(name)
    }

    fn bitsets(&self) -> BTreeMap<&str, FixedBitSet> {
        let pos: HashMap<&str, usize> = self
            .universe
            .iter()
            .enumerate()
            .map(|(i, u)| (u.as_str(), i))
            .collect();
        self.sets
            .iter()
            .map(|(name, members)| {
                let mut b = FixedBitSet::with_capacity(self.universe.len());
                for m in members {
                    b.insert(pos[m.as_str()]);
                }
                (name.as_str(), b)
            })
            .collect()
    }
}

/// The extensional quotient of `s` under strict inclusion.
///
/// Each class of equal sets is represented by its lexicographically least
/// name. Returns the poset together with the map from every set name to its
/// representative.
pub fn inclusion_poset(s: &SetSystem) -> (Poset, BTreeMap<String, String>) {
    let bits = s.bitsets();
    let mut classes: BTreeMap<&FixedBitSet, &str> = BTreeMap::new();
    let mut rep = BTreeMap::new();
    for (name, b) in &bits {
        // Names arrive sorted, so the first name of a class is its least.
        let r = *classes.entry(b).or_insert(name);
        rep.insert(name.to_string(), r.to_string());
    }
    let reps: Vec<(&str, &FixedBitSet)> = classes.iter().map(|(b, n)| (*n, *b)).collect();
    let mut pairs = Vec::new();
    for &(a, sa) in &reps {
        for &(b, sb) in &reps {
            if a != b && sa.is_subset(sb) {
                pairs.push((a, b));
            }
        }
    }
    let poset = close_strict_pairs(reps.iter().map(|(n, _)| n.to_string()), pairs)
        .expect("strict inclusion between distinct sets is a strict order");
    (poset, rep)
}

/// Some embedding of `sigma` into the inclusion poset of `s`.
pub fn has_sop(s: &SetSystem, sigma: &Poset) -> Option<OrderEmbedding> {
    find_embedding(sigma, &inclusion_poset(s).0)
}

/// Whether every poset of size at most `k` embeds into the inclusion poset
/// of `s`. One check per size; failures name the missing posets.
pub fn has_sup(s: &SetSystem, k: usize) -> Result<Report> {
    has_sup_bounded(s, k, DEFAULT_ENUMERATION_BOUND)
}

pub fn has_sup_bounded(s: &SetSystem, k: usize, bound: usize) -> Result<Report> {
    let (target, _) = inclusion_poset(s);
    let mut report = Report::default();
    for m in 1..=k {
        let posets = enumerate_posets_bounded(m, bound)?;
        let total = posets.len();
        let missing: Vec<Witness> = posets
            .iter()
            .filter(|p| find_embedding(p, &target).is_none())
            .map(|p| {
                let rel: Vec<String> = p.pairs().iter().map(|(a, b)| format!("{a}<{b}")).collect();
                Witness::note(format!("{m} points, relations [{}]", rel.join(", ")))
            })
            .collect();
        let found = total - missing.len();
        report.push(
            Check::from_witnesses(format!("posets of size {m}"), missing)
                .with_detail(format!("{found} of {total} embed")),
        );
    }
    Ok(report)
}

/// Principal down-sets: one set `{t : t ≤ s}` named `s` for every element.
pub fn down_set_system(p: &Poset) -> SetSystem {
    let sets: Vec<(String, Vec<String>)> = (0..p.len())
        .map(|s| {
            let members = p
                .below_idx(s)
                .ones()
                .chain(std::iter::once(s))
                .map(|t| p.label(t).to_string())
                .collect();
            (p.label(s).to_string(), members)
        })
        .collect();
    SetSystem::new(p.elements().iter().cloned(), sets).expect("down-sets lie in the carrier")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::is_isomorphic;
    use crate::generators::gen_chain;

    #[test]
    fn quotient_merges_equal_sets() {
        let s = SetSystem::new(
            ["1", "2"],
            [("A", vec!["1"]), ("B", vec!["1", "2"]), ("C", vec!["1"])],
        )
        .unwrap();
        let (p, rep) = inclusion_poset(&s);
        assert_eq!(p.elements(), &["A".to_string(), "B".to_string()]);
        assert!(p.lt("A", "B"));
        assert_eq!(rep["C"], "A");
    }

    #[test]
    fn disjoint_sets_form_antichain() {
        let s = SetSystem::new(
            ["1", "2", "3"],
            [("x", vec!["1"]), ("y", vec!["2"]), ("z", vec!["3"])],
        )
        .unwrap();
        let (p, _) = inclusion_poset(&s);
        assert_eq!(p.len(), 3);
        assert_eq!(p.relation_size(), 0);
        assert!(has_sop(&s, &gen_chain(2).unwrap()).is_none());
    }

    #[test]
    fn invalid_systems() {
        assert!(matches!(
            SetSystem::new(["1", "1"], Vec::<(&str, Vec<&str>)>::new()),
            Err(Error::DuplicateElement(_))
        ));
        assert!(matches!(
            SetSystem::new(["1"], [("x", vec!["2"])]),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn down_sets_of_chain() {
        let p = Poset::new(["a", "b"], [("a", "b")]).unwrap();
        let s = down_set_system(&p);
        assert_eq!(s.set("a").unwrap().len(), 1);
        assert_eq!(s.set("b").unwrap().len(), 2);
        assert!(is_isomorphic(&inclusion_poset(&s).0, &p));
        let anti = Poset::antichain(["x", "y"]).unwrap();
        assert!(down_set_system(&anti).sets().values().all(|s| s.len() == 1));
    }

    #[test]
    fn chain_system_lacks_sup() {
        let s = down_set_system(&gen_chain(3).unwrap());
        let r = has_sup(&s, 2).unwrap();
        assert_eq!(
            r.status("posets of size 1"),
            Some(crate::report::Status::Pass)
        );
        assert!(r.get("posets of size 2").unwrap().failed());
    }

    #[test]
    fn empty_set_system_has_sup_one() {
        let s = SetSystem::new(Vec::<String>::new(), [("e", Vec::<String>::new())]).unwrap();
        assert!(has_sup(&s, 1).unwrap().passed());
    }
}

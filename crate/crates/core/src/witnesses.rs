//! Witness constructions in both directions.
//!
//! Left to right, each construction turns a combinatorial witness (a
//! half-graph, a shattered family, a model of a consistency pattern) into a
//! set system whose inclusion order contains the target poset, and emits the
//! intended map next to the system. Right to left, an order embedding of the
//! target poset into an inclusion poset is turned back into the
//! combinatorial witness.
//!
//! "Consistent" is read as "has nonempty intersection" and implication as
//! set inclusion, all over a finite universe.

use std::collections::{BTreeMap, BTreeSet};

use crate::embedding::{
    check_embedding, check_label_map, find_embedding, OrderEmbedding, Violation,
};
use crate::error::{Error, Result};
use crate::pattern::{validate_pattern, ConsistencyPattern};
use crate::poset::Poset;
use crate::report::{Check, Report, Witness};
use crate::setsystem::{inclusion_poset, SetSystem};
use crate::sigma::{
    ip_beta, op_alpha, op_beta, sigma_ip_bounded, sigma_op, sigma_pattern, subset_members,
    SigmaLabels,
};

pub const DEFAULT_IP_SETS_BOUND: usize = 4;

/// Map from target-poset labels to set names.
pub type IntendedMap = BTreeMap<String, String>;

fn point(i: i64) -> String {
    format!("a_{i}")
}

/// The raw half-graph: points `a_i` and sets `B_j = {a_i : i < j}` for
/// `-n ≤ i, j ≤ n`.
pub fn op_half_graph_sets(n: usize) -> Result<SetSystem> {
    if n < 1 {
        return Err(Error::DegenerateParameter("half graph needs n >= 1".into()));
    }
    let n = n as i64;
    SetSystem::new(
        (-n..=n).map(point),
        (-n..=n).map(|j| (format!("B_{j}"), (-n..j).map(point).collect::<Vec<_>>())),
    )
}

/// Sets realizing `Σ_OP(n)` over the universe `{a_i : -n ≤ i ≤ n}`:
/// `S_α_i = {a_i}` and `S_β_j = {a_i : i < -j or 0 ≤ i < j}` for `0 < i, j ≤ n`.
///
/// The intended map shifts indices by one: `α_i ↦ S_α_{i+1}` and
/// `β_j ↦ S_β_{j+1}`, since the positive indices carry the construction.
pub fn op_sigma_sets(n: usize) -> Result<(SetSystem, IntendedMap)> {
    if n < 1 {
        return Err(Error::DegenerateParameter(
            "op_sigma_sets needs n >= 1".into(),
        ));
    }
    let m = n as i64;
    let mut sets = Vec::new();
    let mut map = IntendedMap::new();
    for i in 1..=m {
        let name = format!("S_α_{i}");
        sets.push((name.clone(), vec![point(i)]));
        map.insert(op_alpha(i as usize - 1), name);
    }
    for j in 1..=m {
        let name = format!("S_β_{j}");
        let members: Vec<String> = (-m..=m)
            .filter(|&i| i < -j || (0..j).contains(&i))
            .map(point)
            .collect();
        sets.push((name.clone(), members));
        map.insert(op_beta(j as usize - 1), name);
    }
    Ok((SetSystem::new((-m..=m).map(point), sets)?, map))
}

/// Sets realizing `Σ_IP(n)`: `S_α_i = {a_i}` and, for the subset `V` with bit
/// code `k`, `S_β_V = {a_i : i ∈ V} ∪ {tail_k}`. The one-point tails are
/// pairwise disjoint, which keeps distinct β-sets incomparable.
pub fn ip_sigma_sets(n: usize) -> Result<(SetSystem, IntendedMap)> {
    ip_sigma_sets_bounded(n, DEFAULT_IP_SETS_BOUND)
}

pub fn ip_sigma_sets_bounded(n: usize, bound: usize) -> Result<(SetSystem, IntendedMap)> {
    if n < 1 {
        return Err(Error::DegenerateParameter(
            "ip_sigma_sets needs n >= 1".into(),
        ));
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "ip_sigma_sets n",
            value: n,
            bound,
        });
    }
    let universe = (0..n)
        .map(|i| format!("a_{i}"))
        .chain((0..1usize << n).map(|k| format!("tail_{k}")));
    let mut sets = Vec::new();
    let mut map = IntendedMap::new();
    for i in 0..n {
        let name = format!("S_α_{i}");
        sets.push((name.clone(), vec![format!("a_{i}")]));
        map.insert(op_alpha(i), name);
    }
    for code in 0..1usize << n {
        let members = subset_members(code, n);
        let label = ip_beta(&members);
        let name = format!("S_{label}");
        let mut set: Vec<String> = members.iter().map(|i| format!("a_{i}")).collect();
        set.push(format!("tail_{code}"));
        sets.push((name.clone(), set));
        map.insert(label, name);
    }
    Ok((SetSystem::new(universe, sets)?, map))
}

/// Resolves an intended map (poset label to set name) into an order
/// embedding into the inclusion poset of `s`.
pub fn intended_embedding(
    s: &SetSystem,
    sigma: &Poset,
    intended: &IntendedMap,
) -> Result<OrderEmbedding> {
    let (target, rep) = inclusion_poset(s);
    let resolved = resolve(intended, &rep)?;
    OrderEmbedding::new(sigma.clone(), target, &resolved)
}

/// Everything that keeps an intended map from being an order embedding.
pub fn intended_violations(
    s: &SetSystem,
    sigma: &Poset,
    intended: &IntendedMap,
) -> Result<Vec<Violation>> {
    let (target, rep) = inclusion_poset(s);
    let resolved = resolve(intended, &rep)?;
    Ok(check_label_map(sigma, &target, &resolved))
}

fn resolve(intended: &IntendedMap, rep: &BTreeMap<String, String>) -> Result<IntendedMap> {
    intended
        .iter()
        .map(|(k, v)| {
            rep.get(v)
                .map(|r| (k.clone(), r.clone()))
                .ok_or_else(|| Error::UnknownElement(v.clone()))
        })
        .collect()
}

/// Checks that `e` is a valid embedding of `source` into the inclusion poset
/// of `s`, returning the set behind each source element.
fn embedded_sets<'a>(
    s: &'a SetSystem,
    e: &OrderEmbedding,
    source: &Poset,
) -> Result<BTreeMap<String, &'a BTreeSet<String>>> {
    if e.source() != source {
        return Err(Error::InvalidEmbedding(
            "embedding source is not the expected poset".into(),
        ));
    }
    let (target, _) = inclusion_poset(s);
    if e.target() != &target {
        return Err(Error::InvalidEmbedding(
            "embedding target is not the inclusion poset of the system".into(),
        ));
    }
    let violations = check_embedding(source, &target, e.indices());
    if let Some(v) = violations.first() {
        return Err(Error::InvalidEmbedding(format!("{v:?}")));
    }
    Ok(e.map()
        .into_iter()
        .map(|(k, v)| {
            let set = s.set(&v).expect("inclusion poset elements are set names");
            (k, set)
        })
        .collect())
}

/// `M[i][j] = (S_{e(α_i)} ⊆ S_{e(β_j)})` for an embedding of `Σ_OP(n)`.
pub fn extract_half_graph(s: &SetSystem, e: &OrderEmbedding) -> Result<Vec<Vec<bool>>> {
    let n = e.source().len() / 2;
    let sets = embedded_sets(s, e, &sigma_op(n.max(1))?)?;
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| sets[&op_alpha(i)].is_subset(sets[&op_beta(j)]))
                .collect()
        })
        .collect())
}

/// `M[i][V] = (S_{e(α_i)} ⊆ S_{e(β_V)})` for an embedding of `Σ_IP(n)`,
/// with columns indexed by subset code.
pub fn extract_shattering(s: &SetSystem, e: &OrderEmbedding) -> Result<Vec<Vec<bool>>> {
    let alphas = e
        .source()
        .elements()
        .iter()
        .filter(|l| l.starts_with('α'))
        .count();
    let sets = embedded_sets(s, e, &sigma_ip_bounded(alphas.max(1), usize::MAX)?)?;
    Ok((0..alphas)
        .map(|i| {
            (0..1usize << alphas)
                .map(|code| {
                    sets[&op_alpha(i)].is_subset(sets[&ip_beta(&subset_members(code, alphas))])
                })
                .collect()
        })
        .collect())
}

/// A family of sets indexed by the pattern's indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternWitness {
    pub system: SetSystem,
    pub pattern: ConsistencyPattern,
}

impl PatternWitness {
    fn set(&self, j: usize) -> BTreeSet<String> {
        self.system
            .set(&self.pattern.indices()[j])
            .cloned()
            .unwrap_or_default()
    }

    /// Common points of the sets indexed by the `k`-th consistent set.
    pub fn intersection(&self, k: usize) -> BTreeSet<String> {
        let mut members = self.pattern.consistent()[k].iter();
        let Some(&first) = members.next() else {
            return self.system.universe().iter().cloned().collect();
        };
        members.fold(self.set(first), |acc, &j| {
            acc.intersection(&self.set(j)).cloned().collect()
        })
    }

    /// Inconsistent pairs index disjoint sets; consistent sets index sets
    /// with a common point.
    pub fn check(&self) -> Report {
        let p = &self.pattern;
        let disjoint = p
            .inconsistent()
            .iter()
            .filter(|&&(a, b)| !self.set(a).is_disjoint(&self.set(b)))
            .map(|&(a, b)| Witness::pair(p.indices()[a].clone(), p.indices()[b].clone()))
            .collect();
        let meets = (0..p.consistent().len())
            .filter(|&k| self.intersection(k).is_empty())
            .map(|k| Witness::Set {
                set: p.set_labels(&p.consistent()[k]),
            })
            .collect();
        Report::new(vec![
            Check::from_witnesses("inconsistent pairs disjoint", disjoint),
            Check::from_witnesses("consistent sets intersect", meets),
        ])
    }
}

fn require_valid(p: &ConsistencyPattern) -> Result<()> {
    let r = validate_pattern(p);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::InvalidPattern(r.to_human().trim_end().to_string()))
    }
}

fn model_points(p: &ConsistencyPattern, padding: bool) -> (Vec<String>, Vec<String>, Vec<String>) {
    let a: Vec<String> = p
        .consistent()
        .iter()
        .map(|c| format!("a_{}", p.set_name(c)))
        .collect();
    let e: Vec<String> = p.indices().iter().map(|j| format!("e_{j}")).collect();
    let pads = if padding {
        vec!["pad_0".to_string(), "pad_1".to_string()]
    } else {
        Vec::new()
    };
    (a, e, pads)
}

/// The canonical model of a pattern: one point `a_C` per consistent set, one
/// point `e_j` per index, and two padding points. The set for `j` is
/// `{a_C : j ∈ C}`; the `e_j` and the padding lie in no set.
pub fn canonical_pattern_model(p: &ConsistencyPattern) -> Result<PatternWitness> {
    require_valid(p)?;
    let (a, e, pads) = model_points(p, true);
    let sets = p.indices().iter().enumerate().map(|(j, label)| {
        let members: Vec<String> = p
            .consistent()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&j))
            .map(|(k, _)| a[k].clone())
            .collect();
        (label.clone(), members)
    });
    let system = SetSystem::new(a.iter().chain(&e).chain(&pads).cloned(), sets)?;
    Ok(PatternWitness {
        system,
        pattern: p.clone(),
    })
}

/// Sets realizing `Σ_P` over the canonical model's universe `U`:
///
/// * `S_α_C = {a_C}`, `S_δ_C = U ∖ {a_C}`,
/// * `S_β_j = {a_C : j ∈ C} ∪ {e_j}`, `S_γ_j = U ∖ S_β_j`.
///
/// Set names are the `Σ_P` labels, so the intended map is the identity.
/// With `padding` off the two padding points are left out of `U`.
pub fn pattern_sigma_sets(
    p: &ConsistencyPattern,
    padding: bool,
) -> Result<(SetSystem, IntendedMap)> {
    require_valid(p)?;
    let l = SigmaLabels::of(p);
    let (a, e, pads) = model_points(p, padding);
    let universe: Vec<String> = a.iter().chain(&e).chain(&pads).cloned().collect();
    let complement = |s: &BTreeSet<String>| -> Vec<String> {
        universe
            .iter()
            .filter(|u| !s.contains(*u))
            .cloned()
            .collect()
    };
    let mut sets: Vec<(String, Vec<String>)> = Vec::new();
    for ((alpha, delta), point) in l.alpha.iter().zip(&l.delta).zip(&a) {
        sets.push((alpha.clone(), vec![point.clone()]));
        sets.push((delta.clone(), complement(&BTreeSet::from([point.clone()]))));
    }
    for (j, ej) in e.iter().enumerate() {
        let beta: BTreeSet<String> = p
            .consistent()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&j))
            .map(|(k, _)| a[k].clone())
            .chain(std::iter::once(ej.clone()))
            .collect();
        sets.push((l.gamma[j].clone(), complement(&beta)));
        sets.push((l.beta[j].clone(), beta.into_iter().collect()));
    }
    let map = l.all().into_iter().map(|x| (x.clone(), x)).collect();
    Ok((SetSystem::new(universe.clone(), sets)?, map))
}

/// Reads a pattern witness off an embedding of `Σ_P` into the inclusion
/// poset of `s`: the set for `j` is `S_{e(β_j)} ∖ S_{e(γ_j)}`.
///
/// Disjointness on inconsistent pairs follows from `β_j < γ_i`. A common
/// point for `C` exists because `S_{e(α_C)}` cannot be covered by the
/// `S_{e(γ_j)}`, `j ∈ C`: each of them lies inside `S_{e(δ_C)}`, and
/// `α_C < δ_C` fails.
pub fn extract_pattern_witness(
    s: &SetSystem,
    e: &OrderEmbedding,
    p: &ConsistencyPattern,
) -> Result<PatternWitness> {
    let sigma = sigma_pattern(p)?;
    let sets = embedded_sets(s, e, &sigma.poset)?;
    let l = &sigma.labels;
    let family = p.indices().iter().enumerate().map(|(j, label)| {
        let members: Vec<String> = sets[&l.beta[j]]
            .difference(sets[&l.gamma[j]])
            .cloned()
            .collect();
        (label.clone(), members)
    });
    Ok(PatternWitness {
        system: SetSystem::new(s.universe().iter().cloned(), family)?,
        pattern: p.clone(),
    })
}

/// Level of a `Σ_P` label: α 0, β 1, γ 2, δ 3.
pub fn sigma_level(label: &str) -> Option<usize> {
    match label.chars().next()? {
        'α' => Some(0),
        'β' => Some(1),
        'γ' => Some(2),
        'δ' => Some(3),
        _ => None,
    }
}

/// Violations grouped by the levels of the two elements involved, as report
/// checks named `levels a-b`.
pub fn violations_by_level(violations: &[Violation]) -> Vec<Check> {
    let mut groups: BTreeMap<(usize, usize), Vec<Witness>> = BTreeMap::new();
    for a in 0..4 {
        for b in a..4 {
            groups.insert((a, b), Vec::new());
        }
    }
    let mut other = Vec::new();
    for v in violations {
        let (lower, upper, expected) = match v {
            Violation::NotPreserved { lower, upper } => (lower, upper, true),
            Violation::NotReflected { lower, upper } => (lower, upper, false),
            _ => {
                other.push(Witness::note(format!("{v:?}")));
                continue;
            }
        };
        let w = Witness::Relation {
            lower: lower.clone(),
            upper: upper.clone(),
            expected,
            actual: !expected,
        };
        match (sigma_level(lower), sigma_level(upper)) {
            (Some(x), Some(y)) => groups.entry((x.min(y), x.max(y))).or_default().push(w),
            _ => other.push(w),
        }
    }
    let mut checks: Vec<Check> = groups
        .into_iter()
        .map(|((a, b), ws)| Check::from_witnesses(format!("levels {a}-{b}"), ws))
        .collect();
    checks.push(Check::from_witnesses("injective", other));
    checks
}

/// Realization and extraction on one pattern: the intended map
/// of [`pattern_sigma_sets`] checked level by level, an independent search
/// for some embedding, and the pattern witness extracted back from it.
pub fn pattern_roundtrip(p: &ConsistencyPattern, padding: bool) -> Result<Report> {
    let sigma = sigma_pattern(p)?;
    let (system, intended) = pattern_sigma_sets(p, padding)?;
    let violations = intended_violations(&system, &sigma.poset, &intended)?;
    let mut report = Report::new(violations_by_level(&violations));
    let (target, _) = inclusion_poset(&system);

    match find_embedding(&sigma.poset, &target) {
        Some(_) => report.push(Check::from_witnesses("independent search", vec![])),
        None => report.push(Check::from_witnesses(
            "independent search",
            vec![Witness::note(
                "no embedding of Σ_P into the inclusion poset",
            )],
        )),
    }

    if violations.is_empty() {
        let e = intended_embedding(&system, &sigma.poset, &intended)?;
        let w = extract_pattern_witness(&system, &e, p)?;
        for mut c in w.check().checks {
            c.name = format!("extracted: {}", c.name);
            report.push(c);
        }
    } else {
        report.push(Check::not_applicable(
            "extracted witness",
            "intended map is not an embedding",
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_sop3, gen_tp, gen_tp2};
    use crate::sigma::sigma_ip;

    fn names(s: &BTreeSet<String>) -> Vec<&str> {
        s.iter().map(String::as_str).collect()
    }

    #[test]
    fn half_graph_n1() {
        let s = op_half_graph_sets(1).unwrap();
        assert!(s.set("B_-1").unwrap().is_empty());
        assert_eq!(names(s.set("B_0").unwrap()), ["a_-1"]);
        assert_eq!(names(s.set("B_1").unwrap()), ["a_-1", "a_0"]);
    }

    #[test]
    fn op_sets_n2() {
        let (s, map) = op_sigma_sets(2).unwrap();
        let mut b1: Vec<&str> = names(s.set("S_β_1").unwrap());
        b1.sort();
        assert_eq!(b1, ["a_-2", "a_0"]);
        assert_eq!(names(s.set("S_β_2").unwrap()), ["a_0", "a_1"]);
        let a1 = s.set("S_α_1").unwrap();
        assert!(a1.is_subset(s.set("S_β_2").unwrap()));
        assert!(!a1.is_subset(s.set("S_β_1").unwrap()));
        assert_eq!(map["α_0"], "S_α_1");
    }

    #[test]
    fn ip_sets_n1() {
        let (s, map) = ip_sigma_sets(1).unwrap();
        assert_eq!(names(s.set("S_β_{}").unwrap()), ["tail_0"]);
        assert_eq!(names(s.set("S_β_{0}").unwrap()), ["a_0", "tail_1"]);
        let (p, _) = inclusion_poset(&s);
        assert_eq!(p.relation_size(), 1);
        assert!(p.lt("S_α_0", "S_β_{0}"));
        assert!(intended_embedding(&s, &sigma_ip(1).unwrap(), &map).is_ok());
        assert!(matches!(ip_sigma_sets(5), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn canonical_model_tp2() {
        let p = gen_tp2(2, 3).unwrap();
        let w = canonical_pattern_model(&p).unwrap();
        assert_eq!(w.system.set("(0,0)").unwrap().len(), 3);
        assert!(w.check().passed());
        for k in 0..p.consistent().len() {
            let a = format!("a_{}", p.set_name(&p.consistent()[k]));
            assert!(w.intersection(k).contains(&a));
        }
    }

    #[test]
    fn gamma_sets_complement_beta_sets() {
        let p = gen_sop3(1).unwrap();
        let (s, _) = pattern_sigma_sets(&p, true).unwrap();
        let l = SigmaLabels::of(&p);
        let u = s.universe().len();
        for j in 0..p.indices().len() {
            let b = s.set(&l.beta[j]).unwrap();
            let g = s.set(&l.gamma[j]).unwrap();
            assert!(b.is_disjoint(g));
            assert_eq!(b.len() + g.len(), u);
        }
        for k in 0..p.consistent().len() {
            assert_eq!(s.set(&l.alpha[k]).unwrap().len(), 1);
            assert_eq!(s.set(&l.delta[k]).unwrap().len(), u - 1);
        }
        assert!(s.sets().values().all(|x| !x.is_empty() && x.len() < u));
    }

    #[test]
    fn tp_roundtrip_fails_between_levels_1_and_2() {
        let r = pattern_roundtrip(&gen_tp(3, 3).unwrap(), true).unwrap();
        assert!(!r.passed());
        let bad: Vec<&str> = r
            .checks
            .iter()
            .filter(|c| c.failed())
            .map(|c| c.name.as_str())
            .collect();
        assert!(bad.contains(&"levels 1-2"), "{bad:?}");
    }

    #[test]
    fn sop3_roundtrip_passes() {
        let r = pattern_roundtrip(&gen_sop3(1).unwrap(), true).unwrap();
        assert!(r.passed(), "{}", r.to_human());
    }

    #[test]
    fn extraction_rejects_foreign_embedding() {
        let p = gen_tp2(2, 3).unwrap();
        let (s, _) = op_sigma_sets(2).unwrap();
        let e =
            intended_embedding(&s, &sigma_op(2).unwrap(), &op_sigma_sets(2).unwrap().1).unwrap();
        assert!(matches!(
            extract_pattern_witness(&s, &e, &p),
            Err(Error::InvalidEmbedding(_))
        ));
    }
}

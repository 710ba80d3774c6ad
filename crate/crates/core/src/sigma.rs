//! The target posets `Σ_OP`, `Σ_IP` and `Σ_P`.
//!
//! `Σ_P` is built from a consistency pattern with four families of points,
//! `α_C`, `β_j`, `γ_j`, `δ_C`, generated by
//!
//! * `α_C < β_i` and `γ_i < δ_C` whenever `i ∈ C`,
//! * `β_i < γ_j` whenever `{i, j}` is inconsistent,
//!
//! and closed transitively. The closure is recorded in two composition steps
//! (`r1 = r0 ∪ r0∘r0`, `r2 = r1 ∪ r1∘r1`) next to a generic fixpoint closure,
//! so the closed-form description of each stage can be audited.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::pattern::{check_coverage, check_maximality, validate_pattern, ConsistencyPattern};
use crate::poset::{close_strict_pairs, Poset};
use crate::report::{Check, Report, Witness};

pub const DEFAULT_SIGMA_IP_BOUND: usize = 5;

pub type PairSet = BTreeSet<(String, String)>;

pub fn op_alpha(i: usize) -> String {
    format!("α_{i}")
}

pub fn op_beta(j: usize) -> String {
    format!("β_{j}")
}

/// `Σ_OP` truncated to `n`: `α_i < β_j` iff `i < j`, for `i, j < n`.
pub fn sigma_op(n: usize) -> Result<Poset> {
    if n < 1 {
        return Err(Error::DegenerateParameter("sigma_op needs n >= 1".into()));
    }
    let elements = (0..n).map(op_alpha).chain((0..n).map(op_beta));
    let pairs: Vec<(String, String)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (op_alpha(i), op_beta(j))))
        .collect();
    close_strict_pairs(elements, pairs)
}

/// Members of the subset with bit code `code`.
pub fn subset_members(code: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| code & (1 << i) != 0).collect()
}

pub fn ip_beta(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(usize::to_string).collect();
    format!("β_{{{}}}", inner.join(","))
}

/// `Σ_IP` truncated to `n`: `α_i < β_W` iff `i ∈ W`, for every `W ⊆ {0..n-1}`.
pub fn sigma_ip(n: usize) -> Result<Poset> {
    sigma_ip_bounded(n, DEFAULT_SIGMA_IP_BOUND)
}

pub fn sigma_ip_bounded(n: usize, bound: usize) -> Result<Poset> {
    if n < 1 {
        return Err(Error::DegenerateParameter("sigma_ip needs n >= 1".into()));
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "sigma_ip n",
            value: n,
            bound,
        });
    }
    let betas: Vec<(usize, String)> = (0..1usize << n)
        .map(|code| (code, ip_beta(&subset_members(code, n))))
        .collect();
    let elements = (0..n)
        .map(op_alpha)
        .chain(betas.iter().map(|(_, b)| b.clone()));
    let pairs: Vec<(String, String)> = betas
        .iter()
        .flat_map(|(code, b)| {
            subset_members(*code, n)
                .into_iter()
                .map(move |i| (op_alpha(i), b.clone()))
        })
        .collect();
    close_strict_pairs(elements, pairs)
}

/// Labels of the four point families of `Σ_P`.
#[derive(Debug, Clone)]
pub struct SigmaLabels {
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub gamma: Vec<String>,
    pub delta: Vec<String>,
}

impl SigmaLabels {
    pub fn of(p: &ConsistencyPattern) -> Self {
        let sets: Vec<String> = p.consistent().iter().map(|c| p.set_name(c)).collect();
        SigmaLabels {
            alpha: sets.iter().map(|s| format!("α_{s}")).collect(),
            beta: p.indices().iter().map(|j| format!("β_{j}")).collect(),
            gamma: p.indices().iter().map(|j| format!("γ_{j}")).collect(),
            delta: sets.iter().map(|s| format!("δ_{s}")).collect(),
        }
    }

    /// All labels, in family order α, β, γ, δ.
    pub fn all(&self) -> Vec<String> {
        self.alpha
            .iter()
            .chain(&self.beta)
            .chain(&self.gamma)
            .chain(&self.delta)
            .cloned()
            .collect()
    }
}

/// `Σ_P` together with the stages of its closure.
#[derive(Debug, Clone)]
pub struct SigmaPatternPoset {
    pub poset: Poset,
    /// Generating relation.
    pub r0: PairSet,
    pub r1: PairSet,
    pub r2: PairSet,
    pub pattern: ConsistencyPattern,
    pub labels: SigmaLabels,
}

/// Generating relation of `Σ_P`, straight from the definition.
pub fn generating_pairs(p: &ConsistencyPattern, l: &SigmaLabels) -> PairSet {
    let mut r0 = PairSet::new();
    for (k, c) in p.consistent().iter().enumerate() {
        for &i in c {
            r0.insert((l.alpha[k].clone(), l.beta[i].clone()));
            r0.insert((l.gamma[i].clone(), l.delta[k].clone()));
        }
    }
    for &(i, j) in p.inconsistent() {
        r0.insert((l.beta[i].clone(), l.gamma[j].clone()));
        r0.insert((l.beta[j].clone(), l.gamma[i].clone()));
    }
    r0
}

fn compose_step(rel: &[FixedBitSet]) -> Vec<FixedBitSet> {
    rel.iter()
        .map(|row| {
            let mut next = row.clone();
            for b in row.ones() {
                next.union_with(&rel[b]);
            }
            next
        })
        .collect()
}

fn to_pairs(rel: &[FixedBitSet], names: &[String]) -> PairSet {
    rel.iter()
        .enumerate()
        .flat_map(|(a, row)| {
            row.ones()
                .map(move |b| (names[a].clone(), names[b].clone()))
        })
        .collect()
}

/// Builds `Σ_P`. The pattern must pass (C1) and (C2).
pub fn sigma_pattern(p: &ConsistencyPattern) -> Result<SigmaPatternPoset> {
    let valid = validate_pattern(p);
    if !valid.passed() {
        return Err(Error::InvalidPattern(
            valid.to_human().trim_end().to_string(),
        ));
    }
    let labels = SigmaLabels::of(p);
    let names = labels.all();
    let r0 = generating_pairs(p, &labels);

    let position: std::collections::HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut rel = vec![FixedBitSet::with_capacity(names.len()); names.len()];
    for (a, b) in &r0 {
        rel[position[a.as_str()]].insert(position[b.as_str()]);
    }
    let rel1 = compose_step(&rel);
    let rel2 = compose_step(&rel1);

    let poset =
        close_strict_pairs(names.iter().cloned(), r0.iter().cloned()).map_err(|e| match e {
            Error::CycleDetected(c) => Error::NotAStrictOrder(format!("cycle {}", c.join(" < "))),
            other => other,
        })?;
    Ok(SigmaPatternPoset {
        poset,
        r1: to_pairs(&rel1, &names),
        r2: to_pairs(&rel2, &names),
        r0,
        pattern: p.clone(),
        labels,
    })
}

/// `R0 ∪ {(α_C, γ_j), (β_j, δ_C) : j ∉ C}`.
pub fn closed_form_r1(p: &ConsistencyPattern) -> PairSet {
    let l = SigmaLabels::of(p);
    let mut out = generating_pairs(p, &l);
    for (k, c) in p.consistent().iter().enumerate() {
        for j in (0..p.indices().len()).filter(|j| !c.contains(j)) {
            out.insert((l.alpha[k].clone(), l.gamma[j].clone()));
            out.insert((l.beta[j].clone(), l.delta[k].clone()));
        }
    }
    out
}

/// `closed_form_r1 ∪ {(α_C, δ_C') : C ≠ C'}`.
pub fn closed_form_r2(p: &ConsistencyPattern) -> PairSet {
    let l = SigmaLabels::of(p);
    let mut out = closed_form_r1(p);
    let m = p.consistent().len();
    for a in 0..m {
        for d in (0..m).filter(|&d| d != a) {
            out.insert((l.alpha[a].clone(), l.delta[d].clone()));
        }
    }
    out
}

fn diff_witnesses(actual: &PairSet, expected: &PairSet) -> Vec<Witness> {
    let rel = |(a, b): &(String, String), expected, actual| Witness::Relation {
        lower: a.clone(),
        upper: b.clone(),
        expected,
        actual,
    };
    expected
        .difference(actual)
        .map(|p| rel(p, true, false))
        .chain(actual.difference(expected).map(|p| rel(p, false, true)))
        .collect()
}

/// Checks strictness, the closure audit, and the three structural properties:
///
/// * P1: heights are 0, 1, 2, 3 on α, β, γ, δ;
/// * P2: `α_C < δ_C'` for `C ≠ C'`, never `α_C < δ_C`;
/// * P3: for every `(j, C)`, `j ∈ C`, `α_C < β_j`, `¬ α_C < γ_j`,
///   `γ_j < δ_C`, `¬ β_j < δ_C` are all true or all false.
pub fn verify_sigma_properties(s: &SigmaPatternPoset) -> Report {
    let p = &s.pattern;
    let l = &s.labels;
    let q = &s.poset;
    let maximality = check_maximality(p);
    let m2 = maximality.get("M2").is_some_and(Check::passed);
    let maximal = validate_pattern(p).passed() && maximality.passed();
    let mut report = Report::default();

    // Strictness, checked pair by pair on the stored relation.
    let pairs = q.pair_set();
    let mut strict = Vec::new();
    for (a, b) in &pairs {
        if a == b {
            strict.push(Witness::pair(a.clone(), b.clone()));
        }
    }
    for (a, b) in &pairs {
        for (b2, c) in pairs.range((b.clone(), String::new())..) {
            if b2 != b {
                break;
            }
            if !pairs.contains(&(a.clone(), c.clone())) {
                strict.push(Witness::Relation {
                    lower: a.clone(),
                    upper: c.clone(),
                    expected: true,
                    actual: false,
                });
            }
        }
    }
    report.push(Check::from_witnesses("strict order", strict));

    let chain_ok = s.r0.is_subset(&s.r1) && s.r1.is_subset(&s.r2);
    report.push(
        Check::from_witnesses("r2 = closure", diff_witnesses(&s.r2, &pairs)).with_detail(
            if chain_ok {
                "r0 ⊆ r1 ⊆ r2"
            } else {
                "r0 ⊆ r1 ⊆ r2 violated"
            },
        ),
    );
    if m2 {
        report.push(Check::from_witnesses(
            "closed form r1",
            diff_witnesses(&s.r1, &closed_form_r1(p)),
        ));
        report.push(Check::from_witnesses(
            "closed form r2",
            diff_witnesses(&s.r2, &closed_form_r2(p)),
        ));
    } else {
        for name in ["closed form r1", "closed form r2"] {
            report.push(Check::not_applicable(name, "pattern fails M2"));
        }
    }

    let alpha: BTreeSet<&String> = l.alpha.iter().collect();
    let delta: BTreeSet<&String> = l.delta.iter().collect();
    let extremes =
        s.r2.iter()
            .filter(|(a, b)| delta.contains(a) || alpha.contains(b))
            .map(|(a, b)| Witness::pair(a.clone(), b.clone()))
            .collect();
    report.push(Check::from_witnesses("α minimal, δ maximal", extremes));

    let note = |c: Check| {
        if maximal {
            c
        } else {
            c.with_detail("pattern is not maximal")
        }
    };

    if check_coverage(p).passed() {
        let heights = q.heights();
        let mut p1 = Vec::new();
        for (family, level) in [(&l.alpha, 0), (&l.beta, 1), (&l.gamma, 2), (&l.delta, 3)] {
            for e in family {
                if heights[e] != level {
                    p1.push(Witness::Height {
                        element: e.clone(),
                        expected: level,
                        actual: heights[e],
                    });
                }
            }
        }
        if q.levels().len() != 4 {
            p1.push(Witness::note(format!(
                "{} levels, expected 4",
                q.levels().len()
            )));
        }
        report.push(note(Check::from_witnesses("P1", p1)));
    } else {
        report.push(Check::not_applicable(
            "P1",
            "some index lies in no consistent set (its β has height 0)",
        ));
    }

    let mut p2 = Vec::new();
    for (a, alpha) in l.alpha.iter().enumerate() {
        for (d, delta) in l.delta.iter().enumerate() {
            let expected = a != d;
            let actual = q.lt(alpha, delta);
            if expected != actual {
                p2.push(Witness::Relation {
                    lower: alpha.clone(),
                    upper: delta.clone(),
                    expected,
                    actual,
                });
            }
        }
    }
    report.push(note(Check::from_witnesses("P2", p2)));

    let mut p3 = Vec::new();
    for (k, c) in p.consistent().iter().enumerate() {
        for j in 0..p.indices().len() {
            let conditions = [
                c.contains(&j),
                q.lt(&l.alpha[k], &l.beta[j]),
                !q.lt(&l.alpha[k], &l.gamma[j]),
                q.lt(&l.gamma[j], &l.delta[k]),
                !q.lt(&l.beta[j], &l.delta[k]),
            ];
            if conditions.iter().any(|&x| x != conditions[0]) {
                p3.push(Witness::SetAndIndex {
                    set: p.set_labels(c),
                    index: p.indices()[j].clone(),
                });
            }
        }
    }
    report.push(note(Check::from_witnesses("P3", p3)));
    report
}

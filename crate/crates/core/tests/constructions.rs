//! Invariants of the Σ constructions and the witness systems.

use std::collections::BTreeMap;

use sopsigma::embedding::{check_label_map, find_embedding, is_isomorphic};
use sopsigma::generators::{gen_atp, gen_chain, gen_sop3, gen_tp, gen_tp1, gen_tp2};
use sopsigma::pattern::{check_maximality, ConsistencyPattern};
use sopsigma::setsystem::{down_set_system, has_sop, inclusion_poset};
use sopsigma::sigma::{sigma_ip, sigma_op, sigma_pattern, verify_sigma_properties, SigmaLabels};
use sopsigma::witnesses::{
    extract_half_graph, extract_pattern_witness, extract_shattering, intended_embedding,
    intended_violations, ip_sigma_sets, op_half_graph_sets, op_sigma_sets, pattern_sigma_sets,
    sigma_level,
};
use sopsigma::{OrderEmbedding, Poset, Status, Violation};

fn maximal_patterns() -> Vec<(&'static str, ConsistencyPattern)> {
    vec![
        ("tp1(3)", gen_tp1(3).unwrap()),
        ("tp2(2,3)", gen_tp2(2, 3).unwrap()),
        ("tp2(3,3)", gen_tp2(3, 3).unwrap()),
        ("atp(3)", gen_atp(3).unwrap()),
        ("sop3(2)", gen_sop3(2).unwrap()),
    ]
}

#[test]
fn sigma_pattern_properties_on_maximal_patterns() {
    for (name, p) in maximal_patterns() {
        let s = sigma_pattern(&p).unwrap();
        let r = verify_sigma_properties(&s);
        assert!(r.passed(), "{name}:\n{}", r.to_human());
        for check in [
            "P1",
            "P2",
            "P3",
            "closed form r1",
            "closed form r2",
            "strict order",
        ] {
            assert_eq!(r.status(check), Some(Status::Pass), "{name} {check}");
        }
        assert_eq!(s.poset.levels().len(), 4, "{name}");
    }
}

#[test]
fn atp_has_no_alpha_below_own_delta() {
    let s = sigma_pattern(&gen_atp(3).unwrap()).unwrap();
    for (a, d) in s.labels.alpha.iter().zip(&s.labels.delta) {
        assert!(!s.poset.lt(a, d));
    }
}

#[test]
fn sigma_pattern_is_self_dual() {
    let p = gen_tp2(2, 3).unwrap();
    let s = sigma_pattern(&p).unwrap();
    let l = &s.labels;
    // α ↔ δ and β ↔ γ, index by index.
    let mut swap = BTreeMap::new();
    for (a, d) in l.alpha.iter().zip(&l.delta) {
        swap.insert(a.clone(), d.clone());
        swap.insert(d.clone(), a.clone());
    }
    for (b, g) in l.beta.iter().zip(&l.gamma) {
        swap.insert(b.clone(), g.clone());
        swap.insert(g.clone(), b.clone());
    }
    let dual = s.poset.dual();
    assert!(OrderEmbedding::new(dual.clone(), s.poset.clone(), &swap).is_ok());
    assert!(is_isomorphic(&dual, &s.poset));
}

#[test]
fn sigma_op_sub_and_dual_structure() {
    let p = sigma_op(4).unwrap();
    // The positive-index part is again Σ_OP, one size smaller.
    let positive: Vec<String> = (1..4)
        .flat_map(|i| [format!("α_{i}"), format!("β_{i}")])
        .collect();
    assert!(is_isomorphic(
        &p.induced(&positive).unwrap(),
        &sigma_op(3).unwrap()
    ));
    assert_eq!(
        p.height_vec().into_iter().max(),
        p.dual().height_vec().into_iter().max()
    );
}

#[test]
fn sigma_pattern_levels_zero_and_three() {
    let s = sigma_pattern(&gen_tp2(2, 3).unwrap()).unwrap();
    let l = &s.labels;
    let ends: Vec<&String> = l.alpha.iter().chain(&l.delta).collect();
    let sub = s.poset.induced(&ends).unwrap();
    for (x, a) in l.alpha.iter().enumerate() {
        for (y, d) in l.delta.iter().enumerate() {
            assert_eq!(sub.lt(a, d), x != y);
        }
    }
    assert_eq!(sub.relation_size(), 9 * 8);
}

#[test]
fn truncations_embed_monotonically() {
    for n in 1..5 {
        assert!(find_embedding(&sigma_op(n).unwrap(), &sigma_op(n + 1).unwrap()).is_some());
    }
    for n in 1..4 {
        assert!(find_embedding(&sigma_ip(n).unwrap(), &sigma_ip(n + 1).unwrap()).is_some());
    }
    let full = gen_tp1(3).unwrap();
    // Drop the subtree under "11"; branches through it go with it.
    let keep: Vec<String> = full
        .indices()
        .iter()
        .filter(|j| !j.starts_with("11"))
        .cloned()
        .collect();
    let sub = full.restrict(&keep).unwrap();
    assert!(!sub.consistent().is_empty());
    let a = sigma_pattern(&sub).unwrap().poset;
    let b = sigma_pattern(&full).unwrap().poset;
    assert!(find_embedding(&a, &b).is_some());
}

#[test]
fn chain_embeds_in_longer_chain() {
    for n in 1..6 {
        assert!(find_embedding(&gen_chain(n).unwrap(), &gen_chain(n + 2).unwrap()).is_some());
    }
}

#[test]
fn half_graph_is_a_chain() {
    for n in 1..5 {
        let s = op_half_graph_sets(n).unwrap();
        let (p, _) = inclusion_poset(&s);
        assert_eq!(p.len(), 2 * n + 1);
        assert!(is_isomorphic(&p, &gen_chain(2 * n + 1).unwrap()));
        let idx: Vec<i64> = (-(n as i64)..=n as i64).collect();
        for &i in &idx {
            for &j in &idx {
                let member = s
                    .set(&format!("B_{j}"))
                    .unwrap()
                    .contains(&format!("a_{i}"));
                assert_eq!(member, i < j);
            }
        }
    }
}

#[test]
fn op_sets_realize_sigma_op() {
    for n in 1..=5 {
        let (s, map) = op_sigma_sets(n).unwrap();
        let sigma = sigma_op(n).unwrap();
        let e = intended_embedding(&s, &sigma, &map).unwrap();
        assert!(has_sop(&s, &sigma).is_some());
        if n == 3 {
            assert!(is_isomorphic(&inclusion_poset(&s).0, &sigma));
        }
        let m = extract_half_graph(&s, &e).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, i < j);
            }
        }
    }
    let (s, map) = op_sigma_sets(1).unwrap();
    let e = intended_embedding(&s, &sigma_op(1).unwrap(), &map).unwrap();
    assert_eq!(extract_half_graph(&s, &e).unwrap(), vec![vec![false]]);
}

#[test]
fn op_beta_sets_pairwise_incomparable() {
    let n = 4;
    let (s, _) = op_sigma_sets(n).unwrap();
    for j0 in 1..=n as i64 {
        for j1 in j0 + 1..=n as i64 {
            let b0 = s.set(&format!("S_β_{j0}")).unwrap();
            let b1 = s.set(&format!("S_β_{j1}")).unwrap();
            assert!(b1.contains(&format!("a_{j0}")) && !b0.contains(&format!("a_{j0}")));
            assert!(b0.contains(&format!("a_{}", -j1)) && !b1.contains(&format!("a_{}", -j1)));
        }
    }
}

#[test]
fn ip_sets_realize_sigma_ip_exhaustively() {
    for n in 1..=4 {
        let (s, map) = ip_sigma_sets(n).unwrap();
        let sigma = sigma_ip(n).unwrap();
        // Pairwise, both directions.
        for a in sigma.elements() {
            for b in sigma.elements() {
                let sa = s.set(&map[a]).unwrap();
                let sb = s.set(&map[b]).unwrap();
                let incl = a != b && sa.is_subset(sb);
                assert_eq!(incl, sigma.lt(a, b), "{a} {b}");
            }
        }
        let e = intended_embedding(&s, &sigma, &map).unwrap();
        assert_eq!(inclusion_poset(&s).0.len(), n + (1 << n));
        let m = extract_shattering(&s, &e).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (code, &x) in row.iter().enumerate() {
                assert_eq!(x, code & (1 << i) != 0);
            }
        }
    }
}

#[test]
fn pattern_sets_embed_exactly_for_maximal_patterns() {
    for (name, p) in maximal_patterns() {
        for padding in [true, false] {
            let (s, map) = pattern_sigma_sets(&p, padding).unwrap();
            let sigma = sigma_pattern(&p).unwrap().poset;
            let v = intended_violations(&s, &sigma, &map).unwrap();
            assert!(v.is_empty(), "{name} padding={padding}: {v:?}");
            // No extra inclusions on the image.
            let (incl, rep) = inclusion_poset(&s);
            for a in sigma.elements() {
                for b in sigma.elements() {
                    assert_eq!(incl.lt(&rep[&map[a]], &rep[&map[b]]), sigma.lt(a, b));
                }
            }
        }
    }
}

#[test]
fn pattern_sets_tp2_membership() {
    let p = gen_tp2(2, 3).unwrap();
    let (s, _) = pattern_sigma_sets(&p, true).unwrap();
    let l = SigmaLabels::of(&p);
    for (k, c) in p.consistent().iter().enumerate() {
        for j in 0..p.indices().len() {
            let sub = s
                .set(&l.alpha[k])
                .unwrap()
                .is_subset(s.set(&l.beta[j]).unwrap());
            assert_eq!(sub, c.contains(&j));
        }
    }
    for i in 0..p.indices().len() {
        for j in 0..p.indices().len() {
            let sub = s
                .set(&l.beta[j])
                .unwrap()
                .is_subset(s.set(&l.gamma[i]).unwrap());
            assert_eq!(sub, p.is_inconsistent(i, j));
        }
    }
}

#[test]
fn tp_sets_are_a_homomorphism_but_not_an_embedding() {
    for (d, b) in [(3, 3), (2, 3), (3, 2)] {
        let p = gen_tp(d, b).unwrap();
        let (s, map) = pattern_sigma_sets(&p, true).unwrap();
        let sigma = sigma_pattern(&p).unwrap().poset;
        let v = intended_violations(&s, &sigma, &map).unwrap();
        assert!(!v.is_empty());
        let mut level_pairs = std::collections::BTreeSet::new();
        for x in &v {
            match x {
                Violation::NotReflected { lower, upper } => {
                    level_pairs.insert((sigma_level(lower).unwrap(), sigma_level(upper).unwrap()));
                }
                other => panic!("relation not preserved: {other:?}"),
            }
        }
        assert!(
            level_pairs.contains(&(1, 2)),
            "tp({d},{b}): {level_pairs:?}"
        );
        // Unwanted inclusions only ever go upward by two levels at most.
        assert!(
            level_pairs.iter().all(|&(a, b)| b > a && b - a <= 2),
            "{level_pairs:?}"
        );
        if (d, b) == (3, 3) {
            println!("tp(3,3) unwanted inclusions at levels {level_pairs:?}");
        }
    }
    // The documented instance: two incomparable non-siblings.
    let p = gen_tp(3, 3).unwrap();
    let (s, map) = pattern_sigma_sets(&p, true).unwrap();
    let sigma = sigma_pattern(&p).unwrap().poset;
    let v = intended_violations(&s, &sigma, &map).unwrap();
    assert!(v.contains(&Violation::NotReflected {
        lower: "β_00".into(),
        upper: "γ_10".into()
    }));
}

#[test]
fn extraction_roundtrips_on_maximal_patterns() {
    for (name, p) in maximal_patterns() {
        let (s, map) = pattern_sigma_sets(&p, true).unwrap();
        let sigma = sigma_pattern(&p).unwrap().poset;
        let e = intended_embedding(&s, &sigma, &map).unwrap();
        let w = extract_pattern_witness(&s, &e, &p).unwrap();
        assert!(w.check().passed(), "{name}");
        for (k, c) in p.consistent().iter().enumerate() {
            assert!(w.intersection(k).contains(&format!("a_{}", p.set_name(c))));
        }
    }
}

#[test]
fn extraction_from_searched_embeddings() {
    // The embedding found by search need not be the intended map.
    for p in [gen_tp2(2, 3).unwrap(), gen_sop3(1).unwrap()] {
        let (s, _) = pattern_sigma_sets(&p, true).unwrap();
        let sigma = sigma_pattern(&p).unwrap().poset;
        let e = has_sop(&s, &sigma).unwrap();
        assert!(extract_pattern_witness(&s, &e, &p)
            .unwrap()
            .check()
            .passed());
    }
}

#[test]
fn extraction_needs_no_maximality() {
    // Down-sets realize any poset; extraction then works for TP as well.
    for p in [
        gen_tp(3, 3).unwrap(),
        gen_tp(2, 2).unwrap(),
        gen_tp2(2, 3).unwrap(),
    ] {
        assert!(!check_maximality(&p).passed() || p.indices().len() == 6);
        let sigma = sigma_pattern(&p).unwrap().poset;
        let s = down_set_system(&sigma);
        let e = has_sop(&s, &sigma).unwrap();
        assert!(extract_pattern_witness(&s, &e, &p)
            .unwrap()
            .check()
            .passed());
    }
}

#[test]
fn down_sets_realize_via_principal_ideals() {
    let p = sigma_op(4).unwrap();
    let s = down_set_system(&p);
    let identity: BTreeMap<String, String> = p
        .elements()
        .iter()
        .map(|e| (e.clone(), e.clone()))
        .collect();
    let (incl, _) = inclusion_poset(&s);
    assert!(check_label_map(&p, &incl, &identity).is_empty());
    assert!(has_sop(&s, &p).is_some());
}

#[test]
fn inclusion_classes_are_distinct_sets() {
    let (s, _) = pattern_sigma_sets(&gen_tp1(2).unwrap(), true).unwrap();
    let (p, rep) = inclusion_poset(&s);
    let sets: Vec<_> = p.elements().iter().map(|e| s.set(e).unwrap()).collect();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            assert_ne!(a, b);
        }
    }
    for (name, r) in &rep {
        assert_eq!(s.set(name), s.set(r));
    }
    let _: &Poset = &p;
}

#[test]
fn pattern_set_shapes() {
    for (name, p) in maximal_patterns() {
        for padding in [true, false] {
            let (s, _) = pattern_sigma_sets(&p, padding).unwrap();
            let l = SigmaLabels::of(&p);
            let u = s.universe().len();
            for (b, g) in l.beta.iter().zip(&l.gamma) {
                let (b, g) = (s.set(b).unwrap(), s.set(g).unwrap());
                assert!(b.is_disjoint(g) && b.len() + g.len() == u, "{name}");
            }
            for a in &l.alpha {
                assert_eq!(s.set(a).unwrap().len(), 1, "{name}");
            }
            for d in &l.delta {
                assert_eq!(s.set(d).unwrap().len(), u - 1, "{name}");
            }
            for set in s.sets().values() {
                assert!(!set.is_empty() && set.len() < u, "{name} padding={padding}");
            }
        }
    }
}

use super::*;
use crate::graphs::construct_graph;

fn g(expr: &str) -> Graph {
    construct_graph(expr).unwrap()
}

fn grp(spec: &str) -> GroupSpec {
    spec.parse().unwrap()
}

fn h(expr: &str) -> BalancedFactor {
    BalancedFactor::new(g(expr)).unwrap()
}

/// Magic constant as `z` in `Z_c × A`, asserting the `A` part is `a_0`.
fn mu_z(report: &ConstructionReport) -> u64 {
    let (z, a) = report.split_mu().unwrap();
    assert!(report.split.as_ref().unwrap().complement().is_identity(&a));
    z
}

#[test]
fn theorem_tags_round_trip() {
    for t in Theorem::ALL {
        assert_eq!(Theorem::from_tag(t.tag()), Some(t));
    }
    assert_eq!(Theorem::from_tag("nope"), None);
}

#[test]
fn matching_join_examples() {
    let z5 = grp("Z5");
    let r = label_matching_join(5, &z5).unwrap();
    assert_eq!(r.predicted_mu, z5.zero());
    assert_eq!(r.labeling.label(4), &z5.zero());
    let z33 = grp("Z3xZ3");
    let r = label_matching_join(9, &z33).unwrap();
    assert_eq!(r.labeling.label(8), &z33.zero());
    assert!(label_matching_join(4, &grp("Z4")).is_err());
    assert!(matches!(label_matching_join(5, &grp("Z7")), Err(ConstructError::OrderMismatch { .. })));
}

#[test]
fn star_examples() {
    let z4 = grp("Z4");
    let r = label_star(3, &z4).unwrap().unwrap();
    assert_eq!(r.labeling.label(0), &z4.element(&[1]).unwrap());
    assert_eq!(r.predicted_mu, z4.element(&[1]).unwrap());
    let v4 = grp("Z2xZ2");
    assert_eq!(label_star(3, &v4).unwrap().unwrap().predicted_mu, v4.zero());
    assert!(label_star(5, &grp("Z6")).unwrap().is_none());
}

#[test]
fn star_exists_iff_n_not_1_mod_4() {
    for n in 1..=11 {
        for group in crate::abelian::enumerate_abelian_groups(n as u64 + 1) {
            let found = label_star(n, &group).unwrap().is_some();
            assert_eq!(found, n % 4 != 1, "K_1,{n} over {group}");
        }
    }
}

#[test]
fn c4k2_lex_examples() {
    let r = label_lex_c4k2(&g("K(2)"), 1, &grp("Z6xZ2")).unwrap();
    assert_eq!(mu_z(&r), 1);
    let r = label_lex_c4k2(&g("C(3)"), 1, &grp("Z6xZ3")).unwrap();
    assert_eq!(mu_z(&r), 4);
    assert_eq!(r.theorem, Theorem::C4k2Lex);
    assert!(matches!(label_lex_c4k2(&g("P(3)"), 1, &grp("Z6xZ3")), Err(ConstructError::Precondition(_))));
}

#[test]
fn c4k2_dir_examples() {
    let r = label_dir_c4k2(&g("K(4)"), 1, &grp("Z6xZ4")).unwrap();
    assert_eq!(mu_z(&r), 0);
    let r = label_dir_c4k2(&g("C(6)"), 1, &grp("Z6xZ6")).unwrap();
    assert_eq!(mu_z(&r), 2);
    let err = label_dir_c4k2(&g("P(3)"), 1, &grp("Z6xZ3")).unwrap_err();
    assert!(err.to_string().contains("degrees not all ≡ m mod 6"), "{err}");
}

#[test]
fn c4k2_needs_split() {
    // order 12 = 6 * 2 but Z2xZ2xZ3 has a Z6 factor; Z4xZ3 does not
    assert!(label_lex_c4k2(&g("K(2)"), 1, &grp("Z2xZ2xZ3")).is_ok());
    assert!(matches!(label_lex_c4k2(&g("K(2)"), 1, &grp("Z4xZ3")), Err(ConstructError::NoCyclicFactor { .. })));
}

#[test]
fn balanced_lex_examples() {
    let c4 = h("C(4)");
    let r = label_lex_balanced_pow2(&g("P(3)"), &c4, &grp("Z2xZ6"), 1).unwrap();
    assert_eq!((r.theorem, mu_z(&r)), (Theorem::BalancedSmallLex, 1));
    let r = label_lex_balanced_pow2(&g("K(4)"), &c4, &grp("Z4xZ4"), 2).unwrap();
    assert_eq!((r.theorem, mu_z(&r)), (Theorem::BalancedLargeLex, 1));
    assert!(matches!(
        label_lex_balanced_pow2(&g("P(3)"), &c4, &grp("Z4xZ3"), 2),
        Err(ConstructError::DegreeResidues { .. })
    ));
}

#[test]
fn balanced_dir_examples() {
    let c4 = h("C(4)");
    let r = label_dir_balanced_pow2(&g("C(4)"), &c4, &grp("Z2xZ8"), 1).unwrap();
    assert_eq!((r.theorem, mu_z(&r)), (Theorem::BalancedSmallDir, 0));
    let r = label_dir_balanced_pow2(&g("K(4)"), &c4, &grp("Z4xZ4"), 2).unwrap();
    assert_eq!((r.theorem, mu_z(&r)), (Theorem::BalancedLargeDir, 1));
    for s in 1..=2 {
        assert!(label_dir_balanced_pow2(&g("P(3)"), &c4, &grp("Z4xZ3"), s).is_err());
    }
}

#[test]
fn balanced_large_past_k() {
    // s = 3 > k = 2; Z8 forces 2 | n
    let r = label_lex_balanced_pow2(&g("K(2)"), &h("C(4)"), &grp("Z8"), 3).unwrap();
    assert_eq!(r.theorem, Theorem::BalancedLargeLex);
    assert!(matches!(
        label_lex_balanced_pow2(&g("K(3)"), &h("C(4)"), &grp("Z4xZ3"), 3),
        Err(ConstructError::NoCyclicFactor { .. })
    ));
}

#[test]
fn even_degree_examples() {
    let c4 = h("C(4)");
    let r = label_lex_even_degrees(&g("C(3)"), &c4, &grp("Z4xZ3")).unwrap();
    assert_eq!(mu_z(&r), 3);
    assert!(label_lex_even_degrees(&g("Km(2,2,2)"), &c4, &grp("Z4xZ6")).is_ok());
    assert!(matches!(label_lex_even_degrees(&g("K(2)"), &c4, &grp("Z4xZ2")), Err(ConstructError::Precondition(_))));
}

#[test]
fn kmn_examples() {
    let c4 = h("C(4)");
    let r = label_lex_kmn_mixed(2, 3, &c4, &grp("Z4xZ5")).unwrap();
    assert_eq!((r.theorem, mu_z(&r)), (Theorem::KmnMixedLex, 3));
    let r = label_lex_kmn_mixed(2, 3, &c4, &grp("Z2xZ2xZ5")).unwrap();
    assert_eq!((r.theorem, mu_z(&r)), (Theorem::BalancedSmallLex, 1));
    assert!(label_lex_kmn_mixed(3, 3, &c4, &grp("Z4xZ6")).is_err());
    // K_{4,4} is 4-regular: r = 2 is even
    let even_r = h("Kb(4,4)");
    assert!(label_lex_kmn_mixed(2, 3, &even_r, &grp("Z8xZ5")).is_err());
}

#[test]
fn kmn_larger_blocks() {
    let c4 = h("C(4)");
    for (m, n) in [(2, 1), (4, 1), (4, 3), (2, 5), (6, 3)] {
        let order = 4 * (m + n) as u64;
        for group in crate::abelian::enumerate_abelian_groups(order) {
            let r = label_lex_kmn_mixed(m, n, &c4, &group).unwrap();
            assert!(matches!(r.theorem, Theorem::KmnMixedLex | Theorem::BalancedSmallLex));
        }
    }
}

#[test]
fn auto_examples() {
    let c4 = h("C(4)");
    let r = auto_label(&g("C(3)"), &c4, Product::Lex, &grp("Z12")).unwrap();
    assert_eq!((r.theorem, mu_z(&r)), (Theorem::EvenDegreesLex, 3));
    let r = auto_label(&g("C(3)"), &c4, Product::Lex, &grp("Z2xZ2xZ3")).unwrap();
    assert_eq!((r.theorem, mu_z(&r)), (Theorem::BalancedSmallLex, 1));
    let err = auto_label(&g("P(3)"), &c4, Product::Dir, &grp("Z12")).unwrap_err();
    let ConstructError::NoApplicableTheorem(attempts) = &err else { panic!("{err}") };
    assert!(!attempts.is_empty());
    assert!(err.to_string().contains("degrees not all ≡ m"), "{err}");
}

#[test]
fn auto_single_graph() {
    let r = auto_label_single(&g("join(C(4),K(1))"), &grp("Z5")).unwrap();
    assert_eq!(r.theorem, Theorem::MatchingJoin);
    let r = auto_label_single(&g("S(3)"), &grp("Z2xZ2")).unwrap();
    assert_eq!(r.theorem, Theorem::Star);
    assert!(auto_label_single(&g("P(4)"), &grp("Z4")).is_err());
}

/// Sums each block `H_i` and each twin pair and compares with the
/// constants the constructions are built from.
fn assert_block_sums(
    report: &ConstructionReport,
    h: &BalancedFactor,
    block: impl Fn(usize) -> i64,
    twin: impl Fn(usize) -> i64,
) {
    let split = report.split.as_ref().unwrap();
    let group = split.group();
    let a0 = split.complement().zero();
    let blocks = report.labeling.len() / h.order();
    for i in 0..blocks {
        let ids = i * h.order()..(i + 1) * h.order();
        let sum = group.sum(ids.map(|v| report.labeling.label(v))).unwrap();
        assert_eq!(sum, split.from_pair(block(i), &a0).unwrap(), "block {i} of {}", report.theorem);
        for &(x, y) in h.pairing().pairs() {
            let pair =
                group.add(report.labeling.label(i * h.order() + x), report.labeling.label(i * h.order() + y)).unwrap();
            assert_eq!(pair, split.from_pair(twin(i), &a0).unwrap());
        }
    }
}

#[test]
fn block_and_twin_sums() {
    let c6 = BalancedFactor::c4k2(1).unwrap();
    let r = label_lex_c4k2(&g("C(3)"), 1, &grp("Z6xZ3")).unwrap();
    assert_block_sums(&r, &c6, |_| 3, |_| 5);

    let c4 = h("C(4)");
    let r = label_lex_balanced_pow2(&g("P(3)"), &c4, &grp("Z2xZ6"), 1).unwrap();
    assert_block_sums(&r, &c4, |_| 0, |_| 1);
    let r = label_lex_balanced_pow2(&g("K(4)"), &c4, &grp("Z4xZ4"), 2).unwrap();
    assert_block_sums(&r, &c4, |_| -2, |_| 3);
    let r = label_lex_even_degrees(&g("C(3)"), &c4, &grp("Z4xZ3")).unwrap();
    assert_block_sums(&r, &c4, |_| -2, |_| 3);
    let r = label_lex_kmn_mixed(2, 3, &c4, &grp("Z4xZ5")).unwrap();
    assert_block_sums(&r, &c4, |_| 2, |i| if i < 2 { 1 } else { 3 });
}

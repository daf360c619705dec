use std::sync::Arc;

use morita_core::corpus;
use morita_core::groupoid::{
    action_corpus, check_biprincipal, check_left_principal, hs_tensor, is_isomorphic_bibundle, morita_decide,
    opposite_bibundle, rep_report, unit_bibundle, FiniteGroupoid,
};
use proptest::prelude::*;

fn groupoids() -> Vec<Arc<FiniteGroupoid>> {
    corpus::groupoids().into_iter().map(|n| n.value).collect()
}

/// Orbit count by union-find over arrows.
fn brute_orbit_count(g: &FiniteGroupoid) -> usize {
    let mut parent: Vec<usize> = (0..g.object_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] == x { x } else { let r = find(p, p[x]); p[x] = r; r }
    }
    for x in 0..g.arrow_count() {
        let (a, b) = (find(&mut parent, g.s(x)), find(&mut parent, g.t(x)));
        parent[a] = b;
    }
    (0..g.object_count()).filter(|&q| find(&mut parent, q) == q).count()
}

#[test]
fn orbit_counts_match_union_find() {
    for g in groupoids() {
        assert_eq!(g.orbits().len(), brute_orbit_count(&g));
    }
}

#[test]
fn morita_decide_is_an_equivalence_relation() {
    let gs = groupoids();
    let eq: Vec<Vec<bool>> = gs.iter().map(|a| gs.iter().map(|b| morita_decide(a, b).is_equivalent()).collect()).collect();
    for i in 0..gs.len() {
        assert!(eq[i][i]);
        for j in 0..gs.len() {
            assert_eq!(eq[i][j], eq[j][i]);
            for k in 0..gs.len() {
                assert!(!(eq[i][j] && eq[j][k]) || eq[i][k]);
            }
        }
    }
}

#[test]
fn certificates_compose_to_certificates() {
    let gs = groupoids();
    for a in &gs {
        for b in &gs {
            let Some(m) = morita_decide(a, b).certificate().cloned() else { continue };
            let back = opposite_bibundle(&m);
            let round = hs_tensor(&m, &back).unwrap().bibundle;
            assert!(check_biprincipal(&round).holds);
            assert!(is_isomorphic_bibundle(&round, &unit_bibundle(a)).unwrap().is_found());
        }
    }
}

#[test]
fn rep_report_passes_on_certificates() {
    let pt = Arc::new(FiniteGroupoid::point());
    let p2 = Arc::new(FiniteGroupoid::pair(2));
    let m = morita_decide(&p2, &pt).certificate().cloned().unwrap();
    let r = rep_report(&m, 3).unwrap();
    assert!(r.passes(), "{:?}", r.failures);
    assert!(rep_report(&unit_bibundle(&p2), 3).unwrap().passes());
}

#[test]
fn action_corpus_sizes_are_bounded() {
    let z2 = Arc::new(FiniteGroupoid::cyclic(2));
    let sizes: Vec<usize> = action_corpus(&z2, 3).iter().map(|a| a.len()).collect();
    // 0, {1}, {2}, {1,1}, {1,2}, {1,1,1}
    assert_eq!(sizes, vec![0, 1, 2, 2, 3, 3]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn unit_laws_hold_for_cells(i in 0usize..64) {
        let cells = corpus::groupoid_coherence_cells().unwrap();
        let m = &cells[i % cells.len()].value;
        prop_assert!(check_left_principal(m).holds);
        let l = hs_tensor(&unit_bibundle(m.left_groupoid()), m).unwrap().bibundle;
        let r = hs_tensor(m, &unit_bibundle(m.right_groupoid())).unwrap().bibundle;
        prop_assert!(is_isomorphic_bibundle(&l, m).unwrap().is_found());
        prop_assert!(is_isomorphic_bibundle(&r, m).unwrap().is_found());
    }

    #[test]
    fn tensor_cardinality_is_pullback_over_orbits(pick in any::<prop::sample::Index>()) {
        let cells = corpus::groupoid_coherence_cells().unwrap();
        let composable: Vec<_> = cells.iter()
            .flat_map(|m| cells.iter().map(move |n| (&m.value, &n.value)))
            .filter(|(m, n)| m.right_groupoid() == n.left_groupoid())
            .collect();
        let (m, n) = *pick.get(&composable);
        let t = hs_tensor(m, n).unwrap();
        // pairs with σ(x) = τ(y), counted directly
        let pairs = (0..m.len()).flat_map(|x| (0..n.len()).map(move |y| (x, y)))
            .filter(|&(x, y)| m.sigma(x) == n.tau(y)).count();
        prop_assert_eq!(t.pairs.len(), pairs);
        // the middle groupoid acts freely on pairs, so classes have full orbit size
        let h = m.right_groupoid();
        let orbit_total: usize = (0..t.bibundle.len()).map(|c| h.arrows_to(m.sigma(t.representative(c).0)).len()).sum();
        prop_assert_eq!(orbit_total, pairs);
    }
}

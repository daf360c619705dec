use morita_core::cstar::{
    certify_equivalence_cstar, compacts_iso, conjugate, interior_tensor, is_full, unit_correspondence, CstarVerdict,
};
use morita_core::{MultimatrixAlgebra, MultiplicityBimodule};
use proptest::prelude::*;

fn algebra(max_blocks: usize) -> impl Strategy<Value = MultimatrixAlgebra> {
    proptest::collection::vec(1usize..4, 1..=max_blocks).prop_map(|b| MultimatrixAlgebra::new(b).unwrap())
}

/// Multiplicity matrix with no zero row. Zero columns are allowed.
fn correspondence(a: MultimatrixAlgebra, b: MultimatrixAlgebra) -> impl Strategy<Value = MultiplicityBimodule> {
    let (r, c) = (a.block_count(), b.block_count());
    proptest::collection::vec(0u32..3, r * c).prop_filter_map("degenerate", move |v| {
        let mult: Vec<Vec<u32>> = v.chunks(c).map(<[u32]>::to_vec).collect();
        MultiplicityBimodule::new(a.clone(), b.clone(), mult).ok()
    })
}

fn chain() -> impl Strategy<Value = (MultiplicityBimodule, MultiplicityBimodule, MultiplicityBimodule)> {
    (algebra(3), algebra(3), algebra(3), algebra(3)).prop_flat_map(|(a, b, c, d)| {
        (correspondence(a, b.clone()), correspondence(b, c.clone()), correspondence(c, d))
    })
}

/// Matrix product, by the definition.
fn brute_product(x: &[Vec<u32>], y: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let inner = y.len();
    let cols = y[0].len();
    x.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * y[k][j]).sum()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tensor_multiplies_multiplicities((e, f, g) in chain()) {
        let ef = interior_tensor(&e, &f).unwrap();
        let expected = brute_product(e.mult(), f.mult());
        prop_assert_eq!(ef.mult(), expected.as_slice());
        let lhs = interior_tensor(&ef, &g).unwrap();
        let rhs = interior_tensor(&e, &interior_tensor(&f, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn units_are_strict((e, _, _) in chain()) {
        prop_assert_eq!(interior_tensor(&unit_correspondence(e.left()), &e).unwrap(), e.clone());
        prop_assert_eq!(interior_tensor(&e, &unit_correspondence(e.right())).unwrap(), e.clone());
    }

    #[test]
    fn certification_is_exactly_permutation((e, _, _) in chain()) {
        let v = certify_equivalence_cstar(&e);
        prop_assert_eq!(v.is_certified(), e.is_permutation());
        if let CstarVerdict::Certified { conjugate: c, .. } = v {
            let there_and_back = interior_tensor(&e, &c).unwrap();
            prop_assert_eq!(there_and_back, unit_correspondence(e.left()));
        }
    }

    #[test]
    fn conjugate_transposes((e, _, _) in chain()) {
        let c = conjugate(&e);
        prop_assert_eq!(c.left(), e.right());
        prop_assert_eq!(conjugate(&c), e.clone());
        for (i, row) in e.mult().iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                prop_assert_eq!(c.mult()[j][i], x);
            }
        }
    }

    #[test]
    fn compacts_iso_iff_dimensions_agree((e, _, _) in chain()) {
        let r = compacts_iso(&e);
        // rows are nonzero, so A embeds; onto iff the dimensions agree
        let dim_a: u64 = e.left().blocks().iter().map(|&n| (n * n) as u64).sum();
        let dim_k: u64 = r.k.iter().map(|&k| k * k).sum();
        prop_assert_eq!(r.isomorphic, dim_a == dim_k);
        let zero_column = (0..e.right().block_count()).any(|j| e.mult().iter().all(|row| row[j] == 0));
        prop_assert_eq!(is_full(&e), !zero_column);
    }
}

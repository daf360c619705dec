use std::sync::Arc;

use morita_core::algebra::{hom_space, is_isomorphic_bimodule, tensor_over};
use morita_core::corpus;
use morita_core::morita::{certify_equivalence, end_ring, inverse_candidate};
use morita_core::{Bimodule, ExactMatrix, FiniteDimAlgebra, IsoSearch, PrimeField};
use proptest::prelude::*;

/// Number of `S`-balanced bilinear forms `M × N → F`, by enumerating every
/// bilinear form. Equals `p^dim(M ⊗_S N)`.
fn brute_balanced_forms(m: &Bimodule, n: &Bimodule) -> usize {
    let f = m.field();
    let p = f.p();
    let (dm, dn) = (m.dim(), n.dim());
    let cells = dm * dn;
    let total = (p as usize).pow(cells as u32);
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let form = ExactMatrix::from_fn(f, dm, dn, |_, _| {
            let x = (c % p as usize) as u32;
            c /= p as usize;
            x
        });
        // B(x·s, y) = B(x, s·y): Rt_M(s)ᵀ B = B L_N(s)
        let balanced = m
            .right_action()
            .iter()
            .zip(n.left_action())
            .all(|(rs, ls)| rs.transpose().mul(&form) == form.mul(ls));
        count += usize::from(balanced);
    }
    count
}

fn small_cells() -> Vec<Bimodule> {
    corpus::ring_coherence_cells(PrimeField::new(2).unwrap())
        .into_iter()
        .chain(corpus::ring_coherence_cells(PrimeField::new(3).unwrap()))
        .map(|c| c.value)
        .collect()
}

#[test]
fn tensor_dimension_matches_balanced_forms() {
    let cells = small_cells();
    let mut checked = 0;
    for m in &cells {
        for n in cells.iter().filter(|n| n.left_algebra() == m.right_algebra()) {
            if (m.field().p() as usize).pow((m.dim() * n.dim()) as u32) > 1 << 16 {
                continue;
            }
            let t = tensor_over(m, n).unwrap();
            let p = m.field().p() as usize;
            assert_eq!(brute_balanced_forms(m, n), p.pow(t.bimodule.dim() as u32));
            assert!(t.projection.mul(&t.section).is_identity());
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} pairs");
}

#[test]
fn hom_space_matches_enumeration() {
    let f = PrimeField::new(2).unwrap();
    let cells = corpus::ring_coherence_cells(f);
    for m in cells.iter().map(|c| &c.value) {
        for n in cells.iter().map(|c| &c.value) {
            if m.left_algebra() != n.left_algebra() || m.right_algebra() != n.right_algebra() {
                continue;
            }
            let cells = m.dim() * n.dim();
            if cells > 16 {
                continue;
            }
            let mut brute = 0usize;
            for code in 0..(1usize << cells) {
                let x = ExactMatrix::from_fn(f, n.dim(), m.dim(), |i, j| ((code >> (i * m.dim() + j)) & 1) as u32);
                let ok = m.left_action().iter().zip(n.left_action()).all(|(a, b)| x.mul(a) == b.mul(&x))
                    && m.right_action().iter().zip(n.right_action()).all(|(a, b)| x.mul(a) == b.mul(&x));
                brute += usize::from(ok);
            }
            assert_eq!(brute, 1 << hom_space(m, n).unwrap().len());
        }
    }
}

#[test]
fn unit_bimodule_is_a_two_sided_unit() {
    for m in small_cells() {
        let l = tensor_over(&Bimodule::unit(m.left_algebra()), &m).unwrap().bimodule;
        let r = tensor_over(&m, &Bimodule::unit(m.right_algebra())).unwrap().bimodule;
        let search = IsoSearch::default();
        assert!(is_isomorphic_bimodule(&l, &m, &search).unwrap().is_found());
        assert!(is_isomorphic_bimodule(&r, &m, &search).unwrap().is_found());
    }
}

#[test]
fn inverse_of_column_module_is_row_module() {
    let search = IsoSearch::default();
    for p in [2, 3] {
        let f = PrimeField::new(p).unwrap();
        let col = Bimodule::column_module(f, 2);
        let inv = inverse_candidate(&col).unwrap();
        assert!(is_isomorphic_bimodule(&inv, &Bimodule::row_module(f, 2), &search).unwrap().is_found());
        assert!(end_ring(&col).unwrap().certificate().is_some());
        assert!(certify_equivalence(&Bimodule::row_module(f, 2), &search).unwrap().is_certified());
    }
}

#[test]
fn progenerator_with_wrong_endomorphisms_is_refuted() {
    let f = PrimeField::new(2).unwrap();
    let a = Arc::new(FiniteDimAlgebra::truncated_polynomial(f, 2));
    let verdict = certify_equivalence(&Bimodule::unit(&a).direct_sum(&Bimodule::unit(&a)).unwrap(), &IsoSearch::default())
        .unwrap();
    // A ⊕ A is a progenerator, but End is M2(A), not A
    assert!(!verdict.is_certified());
    assert!(verdict.refutation().unwrap().proven);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn change_of_basis_preserves_isomorphism_class(idx in 0usize..16, seed in any::<u64>()) {
        let cells = small_cells();
        let m = &cells[idx % cells.len()];
        let f = m.field();
        let d = m.dim();
        prop_assume!(d > 0);
        // a unipotent upper triangular basis change is always invertible
        let mut s = seed;
        let basis = ExactMatrix::from_fn(f, d, d, |i, j| {
            if i == j { 1 } else if i < j { s = s.rotate_left(7) ^ 0x9e37; (s % u64::from(f.p())) as u32 } else { 0 }
        });
        let n = m.change_basis(&basis).unwrap();
        let search = IsoSearch::with_seed(seed);
        prop_assert!(is_isomorphic_bimodule(m, &n, &search).unwrap().is_found());
    }

    #[test]
    fn tensor_is_associative_up_to_isomorphism(pick in any::<prop::sample::Index>()) {
        let cells = small_cells();
        let composable = |x: &Bimodule, y: &Bimodule| x.right_algebra() == y.left_algebra();
        let mut triples = Vec::new();
        for a in &cells {
            for b in cells.iter().filter(|b| composable(a, b)) {
                for c in cells.iter().filter(|c| composable(b, c)) {
                    triples.push((a, b, c));
                }
            }
        }
        prop_assume!(!triples.is_empty());
        let (a, b, c) = *pick.get(&triples);
        let ab_c = tensor_over(&tensor_over(a, b).unwrap().bimodule, c).unwrap().bimodule;
        let a_bc = tensor_over(a, &tensor_over(b, c).unwrap().bimodule).unwrap().bimodule;
        prop_assert_eq!(ab_c.dim(), a_bc.dim());
        prop_assert!(is_isomorphic_bimodule(&ab_c, &a_bc, &IsoSearch::default()).unwrap().is_found());
    }
}

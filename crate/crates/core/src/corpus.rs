//! Bundled instance corpora for the three calculi.
//!
//! Every function here is deterministic; entries come out in a fixed order
//! with stable names.

use std::sync::Arc;

use crate::algebra::{Bimodule, FiniteDimAlgebra};
use crate::cstar::{all_matrices, MultimatrixAlgebra, MultiplicityBimodule};
use crate::error::Result;
use crate::groupoid::{functor_to_bibundle, opposite_bibundle, unit_bibundle, Bibundle, FiniteGroupoid, GroupoidFunctor};
use crate::linalg::{ExactMatrix, PrimeField};

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named {
        name: name.into(),
        value,
    }
}

/// `F_2` and `F_3`.
pub fn small_fields() -> Vec<PrimeField> {
    vec![PrimeField::new(2).expect("prime"), PrimeField::new(3).expect("prime")]
}

/// Algebras of dimension at most 4 over `field`.
pub fn algebras(field: PrimeField) -> Vec<Named<Arc<FiniteDimAlgebra>>> {
    let p = field.p();
    vec![
        named(format!("F{p}"), Arc::new(FiniteDimAlgebra::scalars(field))),
        named(format!("F{p}xF{p}"), Arc::new(FiniteDimAlgebra::diagonal(field, 2))),
        named(format!("F{p}[x]/x^2"), Arc::new(FiniteDimAlgebra::truncated_polynomial(field, 2))),
        named(format!("F{p}[x]/x^3"), Arc::new(FiniteDimAlgebra::truncated_polynomial(field, 3))),
        named(format!("T2(F{p})"), Arc::new(FiniteDimAlgebra::upper_triangular(field, 2))),
        named(format!("M2(F{p})"), Arc::new(FiniteDimAlgebra::matrix(field, 2))),
    ]
}

/// `A = F_p[x]/(x²)` with `x` acting as zero on `F_p`, on the left.
fn dual_numbers_simple_left(field: PrimeField) -> Bimodule {
    let a = Arc::new(FiniteDimAlgebra::truncated_polynomial(field, 2));
    Bimodule::left_module(&a, 1, vec![ExactMatrix::identity(field, 1), ExactMatrix::zeros(field, 1, 1)])
        .expect("x acts nilpotently")
}

/// The same simple module on the right.
fn dual_numbers_simple_right(field: PrimeField) -> Bimodule {
    let a = Arc::new(FiniteDimAlgebra::truncated_polynomial(field, 2));
    Bimodule::right_module(&a, 1, vec![ExactMatrix::identity(field, 1), ExactMatrix::zeros(field, 1, 1)])
        .expect("x acts nilpotently")
}

/// `F_p²` as an `F_p × F_p`-`F_p` bimodule where the first idempotent acts
/// as the identity and the second as zero.
fn collapsed_pair(field: PrimeField) -> Bimodule {
    let r = Arc::new(FiniteDimAlgebra::diagonal(field, 2));
    Bimodule::left_module(&r, 2, vec![ExactMatrix::identity(field, 2), ExactMatrix::zeros(field, 2, 2)])
        .expect("idempotents act as complementary projections")
}

/// The unit of `F_p × F_p` twisted by swapping the factors.
fn swapped_pair(field: PrimeField) -> Bimodule {
    let r = Arc::new(FiniteDimAlgebra::diagonal(field, 2));
    let swap = ExactMatrix::from_rows(field, &[vec![0, 1], vec![1, 0]]).expect("square");
    Bimodule::from_homomorphism(&r, &r, &swap).expect("swap is an automorphism")
}

/// `F_p → F_p[x]/(x²)`, the unit inclusion, as a bimodule.
fn scalars_into_dual_numbers(field: PrimeField) -> Bimodule {
    let k = Arc::new(FiniteDimAlgebra::scalars(field));
    let a = Arc::new(FiniteDimAlgebra::truncated_polynomial(field, 2));
    let rho = ExactMatrix::from_rows(field, &[vec![1], vec![0]]).expect("column");
    Bimodule::from_homomorphism(&k, &a, &rho).expect("unit inclusion")
}

/// Column vectors `F_p²` as a `T_2`-`F_p` bimodule.
fn triangular_column(field: PrimeField) -> Bimodule {
    let t2 = Arc::new(FiniteDimAlgebra::upper_triangular(field, 2));
    // basis E_00, E_01, E_11
    let e = |a: usize, b: usize| ExactMatrix::from_fn(field, 2, 2, |i, j| u32::from(i == a && j == b));
    Bimodule::left_module(&t2, 2, vec![e(0, 0), e(0, 1), e(1, 1)]).expect("T2 acts on columns")
}

/// 1-cells for the ring coherence suite: units, Morita contexts and a few
/// non-invertible bimodules.
pub fn ring_coherence_cells(field: PrimeField) -> Vec<Named<Bimodule>> {
    let p = field.p();
    let k = Arc::new(FiniteDimAlgebra::scalars(field));
    let a = Arc::new(FiniteDimAlgebra::truncated_polynomial(field, 2));
    let m2 = Arc::new(FiniteDimAlgebra::matrix(field, 2));
    let kk = Bimodule::unit(&k).direct_sum(&Bimodule::unit(&k)).expect("same algebras");
    vec![
        named(format!("1_F{p}"), Bimodule::unit(&k)),
        named(format!("F{p}^2"), kk),
        named(format!("1_M2(F{p})"), Bimodule::unit(&m2)),
        named(format!("col2(F{p})"), Bimodule::column_module(field, 2)),
        named(format!("row2(F{p})"), Bimodule::row_module(field, 2)),
        named(format!("1_F{p}[x]/x^2"), Bimodule::unit(&a)),
        named(format!("simple_left(F{p}[x]/x^2)"), dual_numbers_simple_left(field)),
        named(format!("simple_right(F{p}[x]/x^2)"), dual_numbers_simple_right(field)),
    ]
}

/// Bimodules for comparing the two Morita certification routes: units and
/// Morita contexts (equivalences) next to bimodules that fail some stage.
pub fn ring_morita_corpus() -> Vec<Named<Bimodule>> {
    let mut out = Vec::new();
    for field in small_fields() {
        let p = field.p();
        for alg in algebras(field) {
            out.push(named(format!("1_{}", alg.name), Bimodule::unit(&alg.value)));
        }
        for n in [2, 3] {
            out.push(named(format!("col{n}(F{p})"), Bimodule::column_module(field, n)));
            out.push(named(format!("row{n}(F{p})"), Bimodule::row_module(field, n)));
        }
        let k = Arc::new(FiniteDimAlgebra::scalars(field));
        let kk = Bimodule::unit(&k).direct_sum(&Bimodule::unit(&k)).expect("same algebras");
        out.push(named(format!("F{p}^2"), kk));
        out.push(named(format!("swap(F{p}xF{p})"), swapped_pair(field)));
        out.push(named(format!("collapsed(F{p}xF{p})"), collapsed_pair(field)));
        out.push(named(format!("simple_left(F{p}[x]/x^2)"), dual_numbers_simple_left(field)));
        out.push(named(format!("simple_right(F{p}[x]/x^2)"), dual_numbers_simple_right(field)));
        out.push(named(format!("F{p}->F{p}[x]/x^2"), scalars_into_dual_numbers(field)));
        out.push(named(format!("colT2(F{p})"), triangular_column(field)));
        let m2 = Arc::new(FiniteDimAlgebra::matrix(field, 2));
        out.push(named(format!("0_M2(F{p})"), Bimodule::zero(&m2, &k)));
    }
    out
}

/// Objects of the multimatrix corpus: one to three blocks.
pub fn multimatrix_objects() -> Vec<MultimatrixAlgebra> {
    [vec![2], vec![1, 2], vec![1, 1, 2]]
        .into_iter()
        .map(|b| MultimatrixAlgebra::new(b).expect("positive blocks"))
        .collect()
}

/// Every nondegenerate multiplicity matrix with entries at most `max_entry`
/// between two corpus objects.
pub fn multimatrix_sweep(max_entry: u32) -> Vec<MultiplicityBimodule> {
    let objs = multimatrix_objects();
    let mut out = Vec::new();
    for a in &objs {
        for b in &objs {
            for e in all_matrices(a.block_count(), b.block_count(), max_entry) {
                if let Ok(m) = MultiplicityBimodule::new(a.clone(), b.clone(), e) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// A fixed family for multimatrix coherence: for each ordered pair of
/// corpus objects, the all-ones matrix, a matrix with a 2 in its first row,
/// and a partial permutation padded to be nondegenerate.
pub fn multimatrix_coherence_cells() -> Vec<MultiplicityBimodule> {
    let objs = multimatrix_objects();
    let mut out = Vec::new();
    for a in &objs {
        for b in &objs {
            let (r, c) = (a.block_count(), b.block_count());
            let ones = vec![vec![1; c]; r];
            let mut twos = vec![vec![0; c]; r];
            for (i, row) in twos.iter_mut().enumerate() {
                row[i % c] = if i == 0 { 2 } else { 1 };
            }
            let diag: Vec<Vec<u32>> = (0..r).map(|i| (0..c).map(|j| u32::from(j == i.min(c - 1))).collect()).collect();
            for e in [ones, twos, diag] {
                let m = MultiplicityBimodule::new(a.clone(), b.clone(), e).expect("no zero rows");
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Eight groupoids with at most six arrows each.
pub fn groupoids() -> Vec<Named<Arc<FiniteGroupoid>>> {
    let point = FiniteGroupoid::point();
    vec![
        named("point", point.clone()),
        named("discrete2", FiniteGroupoid::discrete(2)),
        named("pair2", FiniteGroupoid::pair(2)),
        named("Z2", FiniteGroupoid::cyclic(2)),
        named("Z4", FiniteGroupoid::cyclic(4)),
        named("Z2xZ2", FiniteGroupoid::abelian(&[2, 2])),
        named("pair2+point", FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2), &point)),
        named("Z2+point", FiniteGroupoid::disjoint_union(&FiniteGroupoid::cyclic(2), &point)),
    ]
    .into_iter()
    .map(|n| named(n.name, Arc::new(n.value)))
    .collect()
}

/// Left principal bibundles for the groupoid coherence suite, carriers of
/// at most four points.
pub fn groupoid_coherence_cells() -> Result<Vec<Named<Bibundle>>> {
    let pt = Arc::new(FiniteGroupoid::point());
    let p2 = Arc::new(FiniteGroupoid::pair(2));
    let z2 = Arc::new(FiniteGroupoid::cyclic(2));
    let z3 = Arc::new(FiniteGroupoid::cyclic(3));
    // pt → P2 picking object 0, Z2 → pt and pt → Z2
    let incl = GroupoidFunctor::new(Arc::clone(&pt), Arc::clone(&p2), vec![0], vec![0])?;
    let collapse = GroupoidFunctor::new(Arc::clone(&z2), Arc::clone(&pt), vec![0], vec![0, 0])?;
    let pick = GroupoidFunctor::new(Arc::clone(&pt), Arc::clone(&z2), vec![0], vec![0])?;
    // inversion on Z3: 1 ↦ 2
    let inversion = GroupoidFunctor::new(Arc::clone(&z3), Arc::clone(&z3), vec![0], vec![0, 2, 1])?;
    let into_pair = functor_to_bibundle(&incl)?;
    let from_z2 = functor_to_bibundle(&collapse)?;
    Ok(vec![
        named("1_point", unit_bibundle(&pt)),
        named("1_pair2", unit_bibundle(&p2)),
        named("1_Z2", unit_bibundle(&z2)),
        named("1_Z3", unit_bibundle(&z3)),
        named("point->pair2", into_pair.clone()),
        named("pair2->point", opposite_bibundle(&into_pair)),
        named("regular(Z2)", opposite_bibundle(&functor_to_bibundle(&pick)?)),
        named("trivial(Z2)^op", opposite_bibundle(&from_z2)),
        named("twist(Z3)", functor_to_bibundle(&inversion)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::check_left_principal;

    #[test]
    fn corpora_are_well_formed() {
        assert_eq!(ring_morita_corpus().len(), 2 * (6 + 4 + 8));
        assert_eq!(groupoids().len(), 8);
        assert!(groupoids().iter().all(|g| g.value.arrow_count() <= 6));
        for cell in groupoid_coherence_cells().unwrap() {
            assert!(check_left_principal(&cell.value).holds, "{}", cell.name);
            assert!(cell.value.len() <= 4);
        }
        for f in small_fields() {
            assert!(algebras(f).iter().all(|a| a.value.dim() <= 4));
            assert_eq!(ring_coherence_cells(f).len(), 8);
        }
        assert_eq!(multimatrix_objects().len(), 3);
    }

    #[test]
    fn sweep_counts() {
        // nondegenerate r × c matrices over {0, 1}: (2^c - 1)^r
        let count: usize = (1..=3usize)
            .flat_map(|r| (1..=3usize).map(move |c| (2usize.pow(c as u32) - 1).pow(r as u32)))
            .sum();
        assert_eq!(multimatrix_sweep(1).len(), count);
    }
}

//! Finite-dimensional C*-algebras and their correspondences.
//!
//! A multimatrix algebra `⊕_i M_{n_i}` is recorded by its block sizes. A
//! Hilbert bimodule between two of them is, up to unitary equivalence, a
//! nonnegative integer matrix `E` whose entry `E_ij` counts how often the
//! simple module of block `i` on the left pairs with block `j` on the right.
//! The interior tensor product is matrix multiplication, which is strictly
//! associative and unital, so this calculus is a strict 2-category.

use serde::Serialize;

use crate::algebra::IsoOutcome;
use crate::bicat::ArrowCalculus;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultimatrixAlgebra {
    blocks: Vec<usize>,
}

impl MultimatrixAlgebra {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if let Some(i) = blocks.iter().position(|&n| n == 0) {
            return Err(Error::Shape(format!("block {i} has size 0")));
        }
        Ok(MultimatrixAlgebra { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Complex dimension `sum n_i^2`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum()
    }
}

/// A correspondence `A → E ⇌ B` given by its multiplicity matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplicityBimodule {
    left: MultimatrixAlgebra,
    right: MultimatrixAlgebra,
    mult: Vec<Vec<u32>>,
}

impl MultiplicityBimodule {
    /// Rejects a zero row: the left action would not be nondegenerate.
    pub fn new(left: MultimatrixAlgebra, right: MultimatrixAlgebra, mult: Vec<Vec<u32>>) -> Result<Self> {
        let (r, c) = (left.block_count(), right.block_count());
        if mult.len() != r || mult.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: (r, c),
                found: (mult.len(), mult.first().map_or(0, Vec::len)),
            });
        }
        if let Some(i) = mult.iter().position(|row| row.iter().all(|&e| e == 0)) {
            return Err(Error::Degenerate(i));
        }
        Ok(MultiplicityBimodule { left, right, mult })
    }

    pub fn left(&self) -> &MultimatrixAlgebra {
        &self.left
    }

    pub fn right(&self) -> &MultimatrixAlgebra {
        &self.right
    }

    pub fn mult(&self) -> &[Vec<u32>] {
        &self.mult
    }

    /// Sizes `k_j = sum_i E_ij n_i` of the right Hilbert module over each
    /// block of `B`; also the block sizes of `K_B(E)`.
    pub fn module_dims(&self) -> Vec<u64> {
        (0..self.right.block_count())
            .map(|j| {
                self.mult
                    .iter()
                    .zip(self.left.blocks())
                    .map(|(row, &n)| u64::from(row[j]) * n as u64)
                    .sum()
            })
            .collect()
    }

    pub fn is_permutation(&self) -> bool {
        let r = self.mult.len();
        let c = self.right.block_count();
        r == c
            && self.mult.iter().all(|row| row.iter().filter(|&&e| e != 0).count() == 1 && row.iter().all(|&e| e <= 1))
            && (0..c).all(|j| self.mult.iter().filter(|row| row[j] != 0).count() == 1)
    }
}

pub fn interior_tensor(e1: &MultiplicityBimodule, e2: &MultiplicityBimodule) -> Result<MultiplicityBimodule> {
    if e1.right != e2.left {
        return Err(Error::AlgebraMismatch);
    }
    let inner = e1.right.block_count();
    let cols = e2.right.block_count();
    let mult: Vec<Vec<u32>> = e1
        .mult
        .iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * e2.mult[k][j]).sum()).collect())
        .collect();
    if let Some(i) = mult.iter().position(|row| row.iter().all(|&e| e == 0)) {
        return Err(Error::DegenerateResult(i));
    }
    Ok(MultiplicityBimodule {
        left: e1.left.clone(),
        right: e2.right.clone(),
        mult,
    })
}

/// The standard form: multiplicity one on each block.
pub fn unit_correspondence(b: &MultimatrixAlgebra) -> MultiplicityBimodule {
    let n = b.block_count();
    MultiplicityBimodule {
        left: b.clone(),
        right: b.clone(),
        mult: (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect(),
    }
}

/// Every right block meets the module.
pub fn is_full(e: &MultiplicityBimodule) -> bool {
    (0..e.right.block_count()).all(|j| e.mult.iter().any(|row| row[j] != 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactsReport {
    /// The left action maps `A` onto `K_B(E)`.
    pub isomorphic: bool,
    /// `k_j = sum_i E_ij n_i`.
    pub k: Vec<u64>,
}

/// `A → K_B(E) = ⊕_{k_j > 0} M_{k_j}` embeds block `i` into block `j` with
/// multiplicity `E_ij`. It is onto exactly when every nonzero column holds a
/// single 1 and no row meets two nonzero columns.
pub fn compacts_iso(e: &MultiplicityBimodule) -> CompactsReport {
    let live: Vec<usize> = (0..e.right.block_count())
        .filter(|&j| e.mult.iter().any(|row| row[j] != 0))
        .collect();
    let columns_ok = live.iter().all(|&j| {
        let col: Vec<u32> = e.mult.iter().map(|row| row[j]).collect();
        col.iter().sum::<u32>() == 1
    });
    let rows_ok = e.mult.iter().all(|row| live.iter().filter(|&&j| row[j] != 0).count() == 1);
    CompactsReport {
        isomorphic: columns_ok && rows_ok,
        k: e.module_dims(),
    }
}

/// The conjugate space: `B → Ē ⇌ A` with multiplicities `Eᵀ`.
pub fn conjugate(e: &MultiplicityBimodule) -> MultiplicityBimodule {
    let (r, c) = (e.left.block_count(), e.right.block_count());
    MultiplicityBimodule {
        left: e.right.clone(),
        right: e.left.clone(),
        mult: (0..c).map(|j| (0..r).map(|i| e.mult[i][j]).collect()).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CstarCondition {
    Full,
    CompactsIso,
    RoundTrip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CstarVerdict {
    Certified {
        conjugate: MultiplicityBimodule,
        /// `E ⊗ Ē`, equal to the unit on `A`.
        forward: MultiplicityBimodule,
        /// `Ē ⊗ E`, equal to the unit on `B`.
        backward: MultiplicityBimodule,
        compacts: CompactsReport,
    },
    Refuted {
        condition: CstarCondition,
        compacts: CompactsReport,
    },
}

impl CstarVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, CstarVerdict::Certified { .. })
    }
}

pub fn certify_equivalence_cstar(e: &MultiplicityBimodule) -> CstarVerdict {
    let compacts = compacts_iso(e);
    if !is_full(e) {
        return CstarVerdict::Refuted {
            condition: CstarCondition::Full,
            compacts,
        };
    }
    if !compacts.isomorphic {
        return CstarVerdict::Refuted {
            condition: CstarCondition::CompactsIso,
            compacts,
        };
    }
    let bar = conjugate(e);
    let forward = interior_tensor(e, &bar);
    let backward = interior_tensor(&bar, e);
    match (forward, backward) {
        (Ok(f), Ok(b)) if f == unit_correspondence(&e.left) && b == unit_correspondence(&e.right) => {
            CstarVerdict::Certified {
                conjugate: bar,
                forward: f,
                backward: b,
                compacts,
            }
        }
        _ => CstarVerdict::Refuted {
            condition: CstarCondition::RoundTrip,
            compacts,
        },
    }
}

/// A 2-cell of the strict calculus: the identity between equal
/// correspondences. `source` and `target` are kept so composites can be
/// compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceMap {
    pub source: MultiplicityBimodule,
    pub target: MultiplicityBimodule,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CstarCalculus;

impl CstarCalculus {
    fn identity_between(&self, source: MultiplicityBimodule, target: MultiplicityBimodule) -> Result<CorrespondenceMap> {
        if source != target {
            return Err(Error::Shape(format!(
                "no 2-cell between distinct multiplicity matrices {:?} and {:?}",
                source.mult, target.mult
            )));
        }
        Ok(CorrespondenceMap { source, target })
    }
}

impl ArrowCalculus for CstarCalculus {
    type Object = MultimatrixAlgebra;
    type Cell = MultiplicityBimodule;
    type TwoCell = CorrespondenceMap;
    type Witness = ();

    fn name(&self) -> &'static str {
        "cstar"
    }

    fn source(&self, f: &MultiplicityBimodule) -> MultimatrixAlgebra {
        f.left.clone()
    }

    fn target(&self, f: &MultiplicityBimodule) -> MultimatrixAlgebra {
        f.right.clone()
    }

    fn unit(&self, a: &MultimatrixAlgebra) -> MultiplicityBimodule {
        unit_correspondence(a)
    }

    fn compose_with_witness(&self, f: &MultiplicityBimodule, g: &MultiplicityBimodule) -> Result<(MultiplicityBimodule, ())> {
        if f.right != g.left {
            return Err(Error::NotComposable);
        }
        Ok((interior_tensor(f, g)?, ()))
    }

    fn associator(&self, f: &MultiplicityBimodule, g: &MultiplicityBimodule, h: &MultiplicityBimodule) -> Result<CorrespondenceMap> {
        let lhs = self.compose(&self.compose(f, g)?, h)?;
        let rhs = self.compose(f, &self.compose(g, h)?)?;
        self.identity_between(lhs, rhs)
    }

    fn left_unitor(&self, f: &MultiplicityBimodule) -> Result<CorrespondenceMap> {
        let lhs = self.compose(&unit_correspondence(&f.left), f)?;
        self.identity_between(lhs, f.clone())
    }

    fn right_unitor(&self, f: &MultiplicityBimodule) -> Result<CorrespondenceMap> {
        let lhs = self.compose(f, &unit_correspondence(&f.right))?;
        self.identity_between(lhs, f.clone())
    }

    fn identity_2cell(&self, f: &MultiplicityBimodule) -> CorrespondenceMap {
        CorrespondenceMap {
            source: f.clone(),
            target: f.clone(),
        }
    }

    fn vertical_compose(&self, first: &CorrespondenceMap, second: &CorrespondenceMap) -> Result<CorrespondenceMap> {
        if first.target != second.source {
            return Err(Error::NotComposable);
        }
        self.identity_between(first.source.clone(), second.target.clone())
    }

    fn horizontal_compose(&self, alpha: &CorrespondenceMap, beta: &CorrespondenceMap) -> Result<CorrespondenceMap> {
        let source = self.compose(&alpha.source, &beta.source)?;
        let target = self.compose(&alpha.target, &beta.target)?;
        self.identity_between(source, target)
    }

    fn is_iso(&self, alpha: &CorrespondenceMap) -> bool {
        alpha.source == alpha.target
    }

    fn find_iso(&self, f: &MultiplicityBimodule, g: &MultiplicityBimodule) -> Result<IsoOutcome<CorrespondenceMap>> {
        if f.left != g.left || f.right != g.right {
            return Err(Error::ObjectMismatch);
        }
        Ok(if f == g {
            IsoOutcome::Found(self.identity_2cell(f))
        } else {
            IsoOutcome::Absent { proven: true }
        })
    }

    fn sample_endomorphisms(&self, f: &MultiplicityBimodule, count: usize, _seed: u64) -> Vec<CorrespondenceMap> {
        vec![self.identity_2cell(f); count.min(1)]
    }

    fn is_strict(&self) -> bool {
        true
    }
}

/// Every `r × c` matrix with entries in `0..=max_entry`, row-major
/// little-endian order.
pub fn all_matrices(r: usize, c: usize, max_entry: u32) -> Vec<Vec<Vec<u32>>> {
    let base = max_entry as usize + 1;
    let total = base.pow((r * c) as u32);
    (0..total)
        .map(|mut code| {
            (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| {
                            let d = (code % base) as u32;
                            code /= base;
                            d
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicat::{check_pentagon, check_triangle, verify_object_isomorphism};

    fn alg(b: &[usize]) -> MultimatrixAlgebra {
        MultimatrixAlgebra::new(b.to_vec()).unwrap()
    }

    fn corr(l: &[usize], r: &[usize], m: &[&[u32]]) -> MultiplicityBimodule {
        MultiplicityBimodule::new(alg(l), alg(r), m.iter().map(|row| row.to_vec()).collect()).unwrap()
    }

    #[test]
    fn tensor_examples() {
        let e2 = corr(&[1, 1], &[2], &[&[1], &[1]]);
        let u = unit_correspondence(&alg(&[1, 1]));
        assert_eq!(interior_tensor(&u, &e2).unwrap(), e2);
        let e1 = corr(&[2], &[1, 1], &[&[1, 1]]);
        assert_eq!(interior_tensor(&e1, &e2).unwrap().mult(), &[vec![2]]);
        let p = corr(&[1, 2], &[2, 1], &[&[0, 1], &[1, 0]]);
        assert_eq!(interior_tensor(&p, &conjugate(&p)).unwrap(), unit_correspondence(&alg(&[1, 2])));
        assert_eq!(interior_tensor(&e1, &e1).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn unit_and_conjugate() {
        assert_eq!(unit_correspondence(&alg(&[2, 3])).mult(), &[vec![1, 0], vec![0, 1]]);
        assert!(unit_correspondence(&alg(&[])).mult().is_empty());
        let e = corr(&[1, 1], &[1, 1], &[&[1, 2], &[0, 1]]);
        assert_eq!(conjugate(&e).mult(), &[vec![1, 0], vec![2, 1]]);
        assert_eq!(conjugate(&conjugate(&e)), e);
    }

    #[test]
    fn fullness_and_compacts() {
        assert!(is_full(&unit_correspondence(&alg(&[1, 2]))));
        assert!(!is_full(&corr(&[1, 1], &[1, 1], &[&[1, 0], &[1, 0]])));
        assert!(is_full(&corr(&[1, 1], &[1], &[&[1], &[1]])));

        let swap = corr(&[2, 3], &[3, 2], &[&[0, 1], &[1, 0]]);
        let c = compacts_iso(&swap);
        assert!(c.isomorphic);
        assert_eq!(c.k, vec![3, 2]);
        assert!(!compacts_iso(&corr(&[2], &[1, 1], &[&[1, 1]])).isomorphic);
        let double = compacts_iso(&corr(&[2], &[1], &[&[2]]));
        assert!(!double.isomorphic);
        assert_eq!(double.k, vec![4]);
    }

    #[test]
    fn certification() {
        assert!(certify_equivalence_cstar(&corr(&[2, 3], &[3, 2], &[&[0, 1], &[1, 0]])).is_certified());
        // M_2 and C are Morita equivalent
        assert!(certify_equivalence_cstar(&corr(&[2], &[1], &[&[1]])).is_certified());
        let v = certify_equivalence_cstar(&corr(&[2], &[1, 1], &[&[1, 1]]));
        let CstarVerdict::Refuted { condition, compacts } = v else { panic!() };
        assert_eq!(condition, CstarCondition::CompactsIso);
        assert_eq!(compacts.k, vec![2, 2]);
        assert_eq!(
            MultiplicityBimodule::new(alg(&[1, 1, 1]), alg(&[1, 1]), vec![vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap_err(),
            Error::Degenerate(2)
        );
    }

    #[test]
    fn strict_coherence() {
        let calc = CstarCalculus;
        let e = corr(&[1, 2], &[2], &[&[1], &[2]]);
        let f = corr(&[2], &[1, 2], &[&[1, 1]]);
        assert!(check_pentagon(&calc, &e, &f, &e, &f).unwrap().holds);
        assert!(check_triangle(&calc, &e, &f).unwrap().holds);
        let p = corr(&[1, 2], &[2, 1], &[&[0, 1], &[1, 0]]);
        assert!(verify_object_isomorphism(&calc, &p, &conjugate(&p)).unwrap().is_isomorphic());
        assert!(!verify_object_isomorphism(&calc, &e, &conjugate(&e)).unwrap().is_isomorphic());
    }
}

//! Bimodules over finite-dimensional algebras as a bicategory.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bimodule::hom_basis;
use super::{is_isomorphic_bimodule, tensor_over, Bimodule, BimoduleMap, FiniteDimAlgebra, IsoOutcome, IsoSearch, TensorProduct};
use crate::bicat::ArrowCalculus;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

/// Objects are algebras, 1-cells bimodules, 2-cells bimodule maps.
#[derive(Clone, Copy, Debug, Default)]
pub struct RingCalculus {
    pub search: IsoSearch,
}

impl RingCalculus {
    pub fn new(search: IsoSearch) -> Self {
        RingCalculus { search }
    }
}

/// Multiplication `A ⊗_k M → M` for the left action: column `i * dim M + j`
/// is `e_i · x_j`.
fn left_multiplication_map(m: &Bimodule) -> ExactMatrix {
    let d = m.dim();
    let r = m.left_algebra().dim();
    ExactMatrix::from_fn(m.field(), d, r * d, |row, col| m.left_action()[col / d].get(row, col % d))
}

/// Multiplication `M ⊗_k A → M` for the right action: column `j * dim A + k`
/// is `x_j · e_k`.
fn right_multiplication_map(m: &Bimodule) -> ExactMatrix {
    let d = m.dim();
    let s = m.right_algebra().dim();
    ExactMatrix::from_fn(m.field(), d, d * s, |row, col| m.right_action()[col % s].get(row, col / s))
}

impl ArrowCalculus for RingCalculus {
    type Object = Arc<FiniteDimAlgebra>;
    type Cell = Bimodule;
    type TwoCell = BimoduleMap;
    type Witness = TensorProduct;

    fn name(&self) -> &'static str {
        "rings"
    }

    fn source(&self, f: &Bimodule) -> Arc<FiniteDimAlgebra> {
        Arc::clone(f.left_algebra())
    }

    fn target(&self, f: &Bimodule) -> Arc<FiniteDimAlgebra> {
        Arc::clone(f.right_algebra())
    }

    fn unit(&self, a: &Arc<FiniteDimAlgebra>) -> Bimodule {
        Bimodule::unit(a)
    }

    fn compose_with_witness(&self, f: &Bimodule, g: &Bimodule) -> Result<(Bimodule, TensorProduct)> {
        if f.right_algebra() != g.left_algebra() {
            return Err(Error::NotComposable);
        }
        let t = tensor_over(f, g)?;
        Ok((t.bimodule.clone(), t))
    }

    fn associator(&self, m: &Bimodule, n: &Bimodule, p: &Bimodule) -> Result<BimoduleMap> {
        let (mn, t1) = self.compose_with_witness(m, n)?;
        let (_, t2) = self.compose_with_witness(&mn, p)?;
        let (np, u1) = self.compose_with_witness(n, p)?;
        let (_, u2) = self.compose_with_witness(m, &np)?;
        let f = m.field();
        let id_p = ExactMatrix::identity(f, p.dim());
        let id_m = ExactMatrix::identity(f, m.dim());
        // lift a class of (MN)P to x⊗y⊗z, then project into M(NP)
        let lift = t1.section.kron(&id_p).mul(&t2.section);
        let push = u2.projection.mul(&id_m.kron(&u1.projection));
        let matrix = push.mul(&lift);
        debug_assert_eq!(
            matrix.mul(&t2.projection).mul(&t1.projection.kron(&id_p)),
            push,
            "associator must not depend on the chosen lift"
        );
        BimoduleMap::new(t2.bimodule, u2.bimodule, matrix)
    }

    fn left_unitor(&self, m: &Bimodule) -> Result<BimoduleMap> {
        let one = Bimodule::unit(m.left_algebra());
        let t = tensor_over(&one, m)?;
        let matrix = left_multiplication_map(m).mul(&t.section);
        BimoduleMap::new(t.bimodule, m.clone(), matrix)
    }

    fn right_unitor(&self, m: &Bimodule) -> Result<BimoduleMap> {
        let one = Bimodule::unit(m.right_algebra());
        let t = tensor_over(m, &one)?;
        let matrix = right_multiplication_map(m).mul(&t.section);
        BimoduleMap::new(t.bimodule, m.clone(), matrix)
    }

    fn identity_2cell(&self, f: &Bimodule) -> BimoduleMap {
        BimoduleMap::identity(f)
    }

    fn vertical_compose(&self, first: &BimoduleMap, second: &BimoduleMap) -> Result<BimoduleMap> {
        first.then(second)
    }

    fn horizontal_compose(&self, alpha: &BimoduleMap, beta: &BimoduleMap) -> Result<BimoduleMap> {
        let src = tensor_over(&alpha.source, &beta.source).map_err(|_| Error::NotComposable)?;
        let tgt = tensor_over(&alpha.target, &beta.target).map_err(|_| Error::NotComposable)?;
        let matrix = tgt.projection.mul(&alpha.matrix.kron(&beta.matrix)).mul(&src.section);
        Ok(BimoduleMap {
            source: src.bimodule,
            target: tgt.bimodule,
            matrix,
        })
    }

    fn is_iso(&self, alpha: &BimoduleMap) -> bool {
        alpha.is_iso()
    }

    fn find_iso(&self, f: &Bimodule, g: &Bimodule) -> Result<IsoOutcome<BimoduleMap>> {
        is_isomorphic_bimodule(f, g, &self.search)
    }

    fn sample_endomorphisms(&self, f: &Bimodule, count: usize, seed: u64) -> Vec<BimoduleMap> {
        let basis = hom_basis(f, f);
        let field = f.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mut x = ExactMatrix::zeros(field, f.dim(), f.dim());
                for b in &basis {
                    x.add_scaled(rng.gen_range(0..field.p()), b);
                }
                BimoduleMap {
                    source: f.clone(),
                    target: f.clone(),
                    matrix: x,
                }
            })
            .collect()
    }
}

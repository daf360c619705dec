//! Finite-dimensional unital associative algebras over `F_p` and their
//! bimodules.
//!
//! An algebra is stored by its structure constants on a fixed basis
//! `e_0, .., e_{n-1}`: `e_i e_j = sum_k c[i][j][k] e_k`. Constructors validate
//! associativity and the unit law exhaustively over all basis triples.

pub(crate) mod bimodule;
pub mod calculus;
pub mod enumerate;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, PrimeField};

pub use bimodule::{
    hom_space, is_isomorphic_bimodule, tensor_over, Bimodule, BimoduleMap, IsoOutcome, IsoSearch,
    TensorProduct,
};
pub use calculus::RingCalculus;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteDimAlgebra {
    field: PrimeField,
    dim: usize,
    constants: Vec<u32>,
    unit: Vec<u32>,
}

impl FiniteDimAlgebra {
    /// Checks a structure-constant table `c[i][j][k]` and a unit vector.
    pub fn new(field: PrimeField, constants: &[Vec<Vec<u32>>], unit: &[u32]) -> Result<Self> {
        let dim = constants.len();
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for (i, plane) in constants.iter().enumerate() {
            if plane.len() != dim {
                return Err(Error::Shape(format!("row {i} of structure constants has length {}", plane.len())));
            }
            for (j, v) in plane.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::Shape(format!("product e_{i} e_{j} has length {}", v.len())));
                }
                flat.extend(v.iter().map(|&c| c % field.p()));
            }
        }
        Self::from_flat(field, dim, flat, unit.to_vec())
    }

    /// Flat table indexed `i * dim^2 + j * dim + k`.
    pub fn from_flat(field: PrimeField, dim: usize, constants: Vec<u32>, unit: Vec<u32>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::Shape(format!(
                "expected {} structure constants for dimension {dim}, found {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        if unit.len() != dim {
            return Err(Error::Shape(format!("unit vector has length {}, expected {dim}", unit.len())));
        }
        let algebra = FiniteDimAlgebra {
            field,
            dim,
            constants: constants.into_iter().map(|c| c % field.p()).collect(),
            unit: unit.into_iter().map(|c| c % field.p()).collect(),
        };
        algebra.check_axioms()?;
        Ok(algebra)
    }

    fn check_axioms(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitViolation(i));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j);
                for k in 0..self.dim {
                    let lhs = self.mul(&ij, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), &self.basis_product(j, k));
                    if lhs != rhs {
                        return Err(Error::AssociativityViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The field itself as a one-dimensional algebra.
    pub fn scalars(field: PrimeField) -> Self {
        FiniteDimAlgebra {
            field,
            dim: 1,
            constants: vec![1],
            unit: vec![1],
        }
    }

    /// `M_n(F_p)` on matrix units; `E_ab` has index `a * n + b`.
    pub fn matrix(field: PrimeField, n: usize) -> Self {
        let dim = n * n;
        let mut constants = vec![0; dim * dim * dim];
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    // E_ab E_bd = E_ad
                    let i = a * n + b;
                    let j = b * n + d;
                    let k = a * n + d;
                    constants[i * dim * dim + j * dim + k] = 1;
                }
            }
        }
        let mut unit = vec![0; dim];
        for a in 0..n {
            unit[a * n + a] = 1;
        }
        FiniteDimAlgebra {
            field,
            dim,
            constants,
            unit,
        }
    }

    /// Upper triangular `n × n` matrices, basis `E_ab` (`a <= b`) in
    /// lexicographic order.
    pub fn upper_triangular(field: PrimeField, n: usize) -> Self {
        let units: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let dim = units.len();
        let index = |a: usize, b: usize| units.iter().position(|&u| u == (a, b));
        let mut constants = vec![0; dim * dim * dim];
        for (i, &(a, b)) in units.iter().enumerate() {
            for (j, &(c, d)) in units.iter().enumerate() {
                if b == c {
                    let k = index(a, d).expect("upper triangular closed under products");
                    constants[i * dim * dim + j * dim + k] = 1;
                }
            }
        }
        let mut unit = vec![0; dim];
        for a in 0..n {
            unit[index(a, a).unwrap()] = 1;
        }
        FiniteDimAlgebra {
            field,
            dim,
            constants,
            unit,
        }
    }

    /// `F_p[x] / (x^n)` on the monomial basis.
    pub fn truncated_polynomial(field: PrimeField, n: usize) -> Self {
        let mut constants = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    constants[i * n * n + j * n + i + j] = 1;
                }
            }
        }
        let mut unit = vec![0; n];
        if n > 0 {
            unit[0] = 1;
        }
        FiniteDimAlgebra {
            field,
            dim: n,
            constants,
            unit,
        }
    }

    /// `F_p^n` with coordinatewise product.
    pub fn diagonal(field: PrimeField, n: usize) -> Self {
        let mut constants = vec![0; n * n * n];
        for i in 0..n {
            constants[i * n * n + i * n + i] = 1;
        }
        FiniteDimAlgebra {
            field,
            dim: n,
            constants,
            unit: vec![1; n],
        }
    }

    /// Direct product `A × B`, basis of `A` followed by basis of `B`.
    pub fn direct_product(a: &Self, b: &Self) -> Result<Self> {
        if a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let dim = a.dim + b.dim;
        let mut constants = vec![0; dim * dim * dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    constants[i * dim * dim + j * dim + k] = a.structure_constant(i, j, k);
                }
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                for k in 0..b.dim {
                    let (ii, jj, kk) = (a.dim + i, a.dim + j, a.dim + k);
                    constants[ii * dim * dim + jj * dim + kk] = b.structure_constant(i, j, k);
                }
            }
        }
        let mut unit = a.unit.clone();
        unit.extend_from_slice(&b.unit);
        Ok(FiniteDimAlgebra {
            field: a.field,
            dim,
            constants,
            unit,
        })
    }

    /// `A ⊗ B` over `F_p`; basis `a_i ⊗ b_j` has index `i * dim(B) + j`.
    pub fn tensor(a: &Self, b: &Self) -> Result<Self> {
        if a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let f = a.field;
        let dim = a.dim * b.dim;
        let mut constants = vec![0; dim * dim * dim];
        for i in 0..a.dim {
            for k in 0..a.dim {
                for m in 0..a.dim {
                    let ca = a.structure_constant(i, k, m);
                    if ca == 0 {
                        continue;
                    }
                    for j in 0..b.dim {
                        for l in 0..b.dim {
                            for n in 0..b.dim {
                                let cb = b.structure_constant(j, l, n);
                                let x = i * b.dim + j;
                                let y = k * b.dim + l;
                                let z = m * b.dim + n;
                                constants[x * dim * dim + y * dim + z] = f.mul(ca, cb);
                            }
                        }
                    }
                }
            }
        }
        let unit = a
            .unit
            .iter()
            .flat_map(|&u| b.unit.iter().map(move |&v| f.mul(u, v)))
            .collect();
        Ok(FiniteDimAlgebra {
            field: f,
            dim,
            constants,
            unit,
        })
    }

    /// Same basis, reversed product.
    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let mut constants = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    constants[i * d * d + j * d + k] = self.structure_constant(j, i, k);
                }
            }
        }
        FiniteDimAlgebra {
            field: self.field,
            dim: d,
            constants,
            unit: self.unit.clone(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.constants[i * self.dim * self.dim + j * self.dim + k]
    }

    pub fn structure_constants(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| (0..self.dim).map(|k| self.structure_constant(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<u32> {
        let start = i * self.dim * self.dim + j * self.dim;
        self.constants[start..start + self.dim].to_vec()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = f.mul(ai, bj);
                let start = i * self.dim * self.dim + j * self.dim;
                for (k, &ck) in self.constants[start..start + self.dim].iter().enumerate() {
                    if ck != 0 {
                        out[k] = f.add(out[k], f.mul(c, ck));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a x` on coordinate columns.
    pub fn left_multiplication(&self, a: &[u32]) -> ExactMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        ExactMatrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `x ↦ x a` on coordinate columns.
    pub fn right_multiplication(&self, a: &[u32]) -> ExactMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        ExactMatrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Checks that `rho` (columns = images of basis elements of `self` in
    /// `target`) is a unital multiplicative map.
    pub fn check_homomorphism(&self, target: &FiniteDimAlgebra, rho: &ExactMatrix) -> Result<()> {
        if self.field != target.field {
            return Err(Error::FieldMismatch);
        }
        if rho.shape() != (target.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                expected: (target.dim, self.dim),
                found: rho.shape(),
            });
        }
        if rho.mul_vec(&self.unit) != target.unit {
            return Err(Error::NotAHomomorphism(vec![]));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = rho.mul_vec(&self.basis_product(i, j));
                let rhs = target.mul(&rho.column(i), &rho.column(j));
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism(vec![i, j]));
                }
            }
        }
        Ok(())
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }
}

impl fmt::Debug for FiniteDimAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteDimAlgebra")
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("unit", &self.unit)
            .finish_non_exhaustive()
    }
}

/// Validates a raw structure-constant table; alias of [`FiniteDimAlgebra::new`].
pub fn validate_algebra(field: PrimeField, constants: &[Vec<Vec<u32>>], unit: &[u32]) -> Result<FiniteDimAlgebra> {
    FiniteDimAlgebra::new(field, constants, unit)
}

/// The canonical `R`-`R` bimodule; same as [`Bimodule::unit`].
pub fn unit_bimodule(r: &Arc<FiniteDimAlgebra>) -> Bimodule {
    Bimodule::unit(r)
}

/// The `R`-`S` bimodule `S` twisted by a homomorphism `rho: R → S`; same as
/// [`Bimodule::from_homomorphism`].
pub fn hom_to_bimodule(r: &Arc<FiniteDimAlgebra>, s: &Arc<FiniteDimAlgebra>, rho: &ExactMatrix) -> Result<Bimodule> {
    Bimodule::from_homomorphism(r, s, rho)
}

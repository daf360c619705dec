use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, PrimeField};

/// An `R`-`S` bimodule on `F_p^dim`.
///
/// `left_action[i]` is the matrix of `x ↦ e_i x` and `right_action[j]` the
/// matrix of `x ↦ x e_j`, both acting on coordinate columns. The right action
/// is therefore an anti-representation: `Rt(a) Rt(b) = Rt(ba)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bimodule {
    left: Arc<FiniteDimAlgebra>,
    right: Arc<FiniteDimAlgebra>,
    dim: usize,
    left_action: Vec<ExactMatrix>,
    right_action: Vec<ExactMatrix>,
}

impl Bimodule {
    pub fn new(
        left: Arc<FiniteDimAlgebra>,
        right: Arc<FiniteDimAlgebra>,
        dim: usize,
        left_action: Vec<ExactMatrix>,
        right_action: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let m = Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        };
        m.check_axioms()?;
        Ok(m)
    }

    fn check_axioms(&self) -> Result<()> {
        let f = self.field();
        if self.right.field() != f {
            return Err(Error::FieldMismatch);
        }
        if self.left_action.len() != self.left.dim() || self.right_action.len() != self.right.dim() {
            return Err(Error::Shape(format!(
                "expected {} left and {} right action matrices, found {} and {}",
                self.left.dim(),
                self.right.dim(),
                self.left_action.len(),
                self.right_action.len()
            )));
        }
        for a in self.left_action.iter().chain(&self.right_action) {
            if a.shape() != (self.dim, self.dim) || a.field() != f {
                return Err(Error::DimensionMismatch {
                    expected: (self.dim, self.dim),
                    found: a.shape(),
                });
            }
        }
        let id = ExactMatrix::identity(f, self.dim);
        if self.act_left(self.left.unit()) != id {
            return Err(Error::ActionViolation {
                law: "left unit",
                witness: vec![],
            });
        }
        if self.act_right(self.right.unit()) != id {
            return Err(Error::ActionViolation {
                law: "right unit",
                witness: vec![],
            });
        }
        for i in 0..self.left.dim() {
            for j in 0..self.left.dim() {
                let lhs = self.left_action[i].mul(&self.left_action[j]);
                if lhs != self.act_left(&self.left.basis_product(i, j)) {
                    return Err(Error::ActionViolation {
                        law: "left multiplicativity",
                        witness: vec![i, j],
                    });
                }
            }
        }
        for i in 0..self.right.dim() {
            for j in 0..self.right.dim() {
                let lhs = self.right_action[i].mul(&self.right_action[j]);
                if lhs != self.act_right(&self.right.basis_product(j, i)) {
                    return Err(Error::ActionViolation {
                        law: "right multiplicativity",
                        witness: vec![i, j],
                    });
                }
            }
        }
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::ActionViolation {
                        law: "actions commute",
                        witness: vec![i, j],
                    });
                }
            }
        }
        Ok(())
    }

    /// The canonical `R`-`R` bimodule `R`.
    pub fn unit(r: &Arc<FiniteDimAlgebra>) -> Self {
        let left_action = (0..r.dim()).map(|i| r.left_multiplication(&r.basis_vector(i))).collect();
        let right_action = (0..r.dim()).map(|i| r.right_multiplication(&r.basis_vector(i))).collect();
        Bimodule {
            left: Arc::clone(r),
            right: Arc::clone(r),
            dim: r.dim(),
            left_action,
            right_action,
        }
    }

    /// `R →ρ S ← S`: the space `S` with `r·s = ρ(r) s` and right
    /// multiplication. Columns of `rho` are the images of the basis of `R`.
    pub fn from_homomorphism(
        r: &Arc<FiniteDimAlgebra>,
        s: &Arc<FiniteDimAlgebra>,
        rho: &ExactMatrix,
    ) -> Result<Self> {
        r.check_homomorphism(s, rho)?;
        let left_action = (0..r.dim()).map(|i| s.left_multiplication(&rho.column(i))).collect();
        let right_action = (0..s.dim()).map(|i| s.right_multiplication(&s.basis_vector(i))).collect();
        Bimodule::new(Arc::clone(r), Arc::clone(s), s.dim(), left_action, right_action)
    }

    /// Column vectors `F_p^n` as an `M_n(F_p)`-`F_p` bimodule.
    pub fn column_module(field: PrimeField, n: usize) -> Self {
        let mn = Arc::new(FiniteDimAlgebra::matrix(field, n));
        let k = Arc::new(FiniteDimAlgebra::scalars(field));
        let left_action = (0..n * n)
            .map(|idx| {
                let (a, b) = (idx / n, idx % n);
                ExactMatrix::from_fn(field, n, n, |i, j| u32::from(i == a && j == b))
            })
            .collect();
        Bimodule {
            left: mn,
            right: k,
            dim: n,
            left_action,
            right_action: vec![ExactMatrix::identity(field, n)],
        }
    }

    /// Row vectors `F_p^n` as an `F_p`-`M_n(F_p)` bimodule.
    pub fn row_module(field: PrimeField, n: usize) -> Self {
        let mn = Arc::new(FiniteDimAlgebra::matrix(field, n));
        let k = Arc::new(FiniteDimAlgebra::scalars(field));
        // e_a · E_ab = e_b
        let right_action = (0..n * n)
            .map(|idx| {
                let (a, b) = (idx / n, idx % n);
                ExactMatrix::from_fn(field, n, n, |i, j| u32::from(i == b && j == a))
            })
            .collect();
        Bimodule {
            left: k,
            right: mn,
            dim: n,
            left_action: vec![ExactMatrix::identity(field, n)],
            right_action,
        }
    }

    /// A left `S`-module, presented as an `S`-`F_p` bimodule.
    pub fn left_module(s: &Arc<FiniteDimAlgebra>, dim: usize, action: Vec<ExactMatrix>) -> Result<Self> {
        let f = s.field();
        Bimodule::new(
            Arc::clone(s),
            Arc::new(FiniteDimAlgebra::scalars(f)),
            dim,
            action,
            vec![ExactMatrix::identity(f, dim)],
        )
    }

    /// A right `S`-module, presented as an `F_p`-`S` bimodule.
    pub fn right_module(s: &Arc<FiniteDimAlgebra>, dim: usize, action: Vec<ExactMatrix>) -> Result<Self> {
        let f = s.field();
        Bimodule::new(
            Arc::new(FiniteDimAlgebra::scalars(f)),
            Arc::clone(s),
            dim,
            vec![ExactMatrix::identity(f, dim)],
            action,
        )
    }

    pub fn zero(left: &Arc<FiniteDimAlgebra>, right: &Arc<FiniteDimAlgebra>) -> Self {
        let f = left.field();
        Bimodule {
            left: Arc::clone(left),
            right: Arc::clone(right),
            dim: 0,
            left_action: vec![ExactMatrix::zeros(f, 0, 0); left.dim()],
            right_action: vec![ExactMatrix::zeros(f, 0, 0); right.dim()],
        }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Self> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::AlgebraMismatch);
        }
        let block = |a: &ExactMatrix, b: &ExactMatrix| {
            let (n, m) = (a.rows(), b.rows());
            ExactMatrix::from_fn(a.field(), n + m, n + m, |i, j| match (i < n, j < n) {
                (true, true) => a.get(i, j),
                (false, false) => b.get(i - n, j - n),
                _ => 0,
            })
        };
        Ok(Bimodule {
            left: Arc::clone(&self.left),
            right: Arc::clone(&self.right),
            dim: self.dim + other.dim,
            left_action: self.left_action.iter().zip(&other.left_action).map(|(a, b)| block(a, b)).collect(),
            right_action: self.right_action.iter().zip(&other.right_action).map(|(a, b)| block(a, b)).collect(),
        })
    }

    /// Same bimodule in a new basis: the columns of `basis` are the new
    /// basis vectors written in the old coordinates.
    pub fn change_basis(&self, basis: &ExactMatrix) -> Result<Self> {
        let inv = basis.inverse().ok_or(Error::Shape("change of basis is not invertible".into()))?;
        let conj = |a: &ExactMatrix| inv.mul(a).mul(basis);
        Bimodule::new(
            Arc::clone(&self.left),
            Arc::clone(&self.right),
            self.dim,
            self.left_action.iter().map(conj).collect(),
            self.right_action.iter().map(conj).collect(),
        )
    }

    pub fn field(&self) -> PrimeField {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<FiniteDimAlgebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<FiniteDimAlgebra> {
        &self.right
    }

    pub fn left_action(&self) -> &[ExactMatrix] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[ExactMatrix] {
        &self.right_action
    }

    /// Matrix of `x ↦ a x` for an arbitrary element `a` of the left algebra.
    pub fn act_left(&self, a: &[u32]) -> ExactMatrix {
        combine(self.field(), self.dim, &self.left_action, a)
    }

    /// Matrix of `x ↦ x b` for an arbitrary element `b` of the right algebra.
    pub fn act_right(&self, b: &[u32]) -> ExactMatrix {
        combine(self.field(), self.dim, &self.right_action, b)
    }
}

fn combine(field: PrimeField, dim: usize, basis: &[ExactMatrix], coeffs: &[u32]) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(field, dim, dim);
    for (m, &c) in basis.iter().zip(coeffs) {
        out.add_scaled(c, m);
    }
    out
}

/// An intertwiner between two bimodules over the same algebra pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    pub source: Bimodule,
    pub target: Bimodule,
    pub matrix: ExactMatrix,
}

impl BimoduleMap {
    pub fn new(source: Bimodule, target: Bimodule, matrix: ExactMatrix) -> Result<Self> {
        if source.left != target.left || source.right != target.right {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::DimensionMismatch {
                expected: (target.dim, source.dim),
                found: matrix.shape(),
            });
        }
        for (i, (a, b)) in source.left_action.iter().zip(&target.left_action).enumerate() {
            if matrix.mul(a) != b.mul(&matrix) {
                return Err(Error::NotIntertwiner("left", i));
            }
        }
        for (i, (a, b)) in source.right_action.iter().zip(&target.right_action).enumerate() {
            if matrix.mul(a) != b.mul(&matrix) {
                return Err(Error::NotIntertwiner("right", i));
            }
        }
        Ok(BimoduleMap { source, target, matrix })
    }

    pub fn identity(m: &Bimodule) -> Self {
        BimoduleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: ExactMatrix::identity(m.field(), m.dim),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &BimoduleMap) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::NotComposable);
        }
        Ok(BimoduleMap {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(&self.matrix),
        })
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.matrix.inverse()?;
        Some(BimoduleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.matrix.is_invertible()
    }
}

/// `M ⊗_S N` together with the maps relating it to the scalar tensor space.
///
/// `projection` sends the basis tensor `x_i ⊗ y_j` (index `i * dim N + j`)
/// to its class; `section` picks the representative basis tensors of the
/// quotient basis, so `projection * section = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorProduct {
    pub bimodule: Bimodule,
    pub projection: ExactMatrix,
    pub section: ExactMatrix,
}

/// Horizontal composite `M ⊗_S N` of an `R`-`S` and an `S`-`T` bimodule.
///
/// The quotient basis is indexed by the non-pivot columns of the reduced
/// relation matrix.
pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<TensorProduct> {
    if m.right != n.left {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let total = dm * dn;
    let id_m = ExactMatrix::identity(f, dm);
    let id_n = ExactMatrix::identity(f, dn);

    // Column c of kron(Rt_M(s), I) - kron(I, L_N(s)) is (x·s)⊗y - x⊗(s·y)
    // for the basis tensor c; transposing turns relations into rows.
    let blocks: Vec<ExactMatrix> = m
        .right_action
        .iter()
        .zip(&n.left_action)
        .map(|(rs, ls)| rs.kron(&id_n).sub(&id_m.kron(ls)).transpose())
        .collect();
    let relations = ExactMatrix::vstack_all(f, total, &blocks);
    let reduced = relations.rref();
    let free: Vec<usize> = (0..total).filter(|c| !reduced.pivots.contains(c)).collect();
    let q = free.len();

    let mut projection = ExactMatrix::zeros(f, q, total);
    for (j, &c) in free.iter().enumerate() {
        projection.set(j, c, 1);
    }
    for (r, &pc) in reduced.pivots.iter().enumerate() {
        // e_pc ≡ e_pc - row_r, which is supported on free columns
        for (j, &c) in free.iter().enumerate() {
            projection.set(j, pc, f.neg(reduced.reduced.get(r, c)));
        }
    }
    let section = ExactMatrix::from_fn(f, total, q, |i, j| u32::from(free[j] == i));

    let descend = |k: ExactMatrix| projection.mul(&k.select_columns(&free));
    let left_action = m.left_action.iter().map(|l| descend(l.kron(&id_n))).collect();
    let right_action = n.right_action.iter().map(|r| descend(id_m.kron(r))).collect();
    let bimodule = Bimodule::new(Arc::clone(&m.left), Arc::clone(&n.right), q, left_action, right_action)?;
    Ok(TensorProduct {
        bimodule,
        projection,
        section,
    })
}

/// Basis matrices (`dim N × dim M`) of the space of bimodule maps `M → N`.
pub(crate) fn hom_basis(m: &Bimodule, n: &Bimodule) -> Vec<ExactMatrix> {
    let pairs: Vec<(&ExactMatrix, &ExactMatrix)> = m
        .left_action
        .iter()
        .zip(&n.left_action)
        .chain(m.right_action.iter().zip(&n.right_action))
        .collect();
    intertwiners(m.field(), m.dim, n.dim, &pairs)
}

/// Basis of `{X (rows × cols) : X A = B X for every (A, B)}` with `A` of side
/// `cols` and `B` of side `rows`.
pub(crate) fn intertwiners(
    f: PrimeField,
    cols: usize,
    rows: usize,
    pairs: &[(&ExactMatrix, &ExactMatrix)],
) -> Vec<ExactMatrix> {
    let id_c = ExactMatrix::identity(f, cols);
    let id_r = ExactMatrix::identity(f, rows);
    // X A - B X on row-major vec(X): kron(I, Aᵀ) - kron(B, I)
    let blocks: Vec<ExactMatrix> = pairs
        .iter()
        .map(|(a, b)| id_r.kron(&a.transpose()).sub(&b.kron(&id_c)))
        .collect();
    let constraints = ExactMatrix::vstack_all(f, cols * rows, &blocks);
    let kernel = constraints.kernel_basis();
    (0..kernel.cols())
        .map(|c| {
            let v = kernel.column(c);
            ExactMatrix::from_fn(f, rows, cols, |i, j| v[i * cols + j])
        })
        .collect()
}

/// Basis of the space of bimodule maps `M → N`.
pub fn hom_space(m: &Bimodule, n: &Bimodule) -> Result<Vec<BimoduleMap>> {
    if m.left != n.left || m.right != n.right {
        return Err(Error::AlgebraMismatch);
    }
    hom_basis(m, n)
        .into_iter()
        .map(|x| BimoduleMap::new(m.clone(), n.clone(), x))
        .collect()
}

/// Budget for searching an invertible element of a hom space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoSearch {
    /// Enumerate every linear combination when `p^dim(hom)` is at most this.
    pub exhaustive_limit: u64,
    /// Otherwise try this many pseudo-random combinations.
    pub random_trials: usize,
    pub seed: u64,
}

impl Default for IsoSearch {
    fn default() -> Self {
        IsoSearch {
            exhaustive_limit: 4096,
            random_trials: 256,
            seed: 0,
        }
    }
}

impl IsoSearch {
    pub fn with_seed(seed: u64) -> Self {
        IsoSearch {
            seed,
            ..Self::default()
        }
    }
}

/// Result of an isomorphism search. `Absent { proven: false }` means the
/// randomized branch ran out of trials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome<T> {
    Found(T),
    Absent { proven: bool },
}

impl<T> IsoOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoOutcome::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            IsoOutcome::Found(t) => Some(t),
            IsoOutcome::Absent { .. } => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> IsoOutcome<U> {
        match self {
            IsoOutcome::Found(t) => IsoOutcome::Found(f(t)),
            IsoOutcome::Absent { proven } => IsoOutcome::Absent { proven },
        }
    }
}

/// Looks for an invertible `F_p`-combination of `basis` (all square, side
/// `n`).
pub(crate) fn find_invertible(
    field: PrimeField,
    n: usize,
    basis: &[ExactMatrix],
    search: &IsoSearch,
) -> IsoOutcome<ExactMatrix> {
    let p = field.p() as u64;
    let k = basis.len();
    let combo = |coeffs: &[u32]| {
        let mut acc = ExactMatrix::zeros(field, n, n);
        for (b, &c) in basis.iter().zip(coeffs) {
            acc.add_scaled(c, b);
        }
        acc
    };
    let space = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p));
    if let Some(total) = space.filter(|&t| t <= search.exhaustive_limit) {
        let mut coeffs = vec![0u32; k];
        for _ in 0..total {
            let x = combo(&coeffs);
            if x.is_invertible() {
                return IsoOutcome::Found(x);
            }
            // little-endian odometer
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < field.p() {
                    break;
                }
                *c = 0;
            }
        }
        return IsoOutcome::Absent { proven: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    for _ in 0..search.random_trials {
        let coeffs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..field.p())).collect();
        let x = combo(&coeffs);
        if x.is_invertible() {
            return IsoOutcome::Found(x);
        }
    }
    IsoOutcome::Absent { proven: false }
}

/// Searches for a bimodule isomorphism `M → N`.
pub fn is_isomorphic_bimodule(m: &Bimodule, n: &Bimodule, search: &IsoSearch) -> Result<IsoOutcome<BimoduleMap>> {
    if m.left != n.left || m.right != n.right {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim != n.dim {
        return Ok(IsoOutcome::Absent { proven: true });
    }
    if m == n {
        return Ok(IsoOutcome::Found(BimoduleMap::identity(m)));
    }
    let basis = hom_basis(m, n);
    Ok(find_invertible(m.field(), m.dim, &basis, search).map(|x| BimoduleMap {
        source: m.clone(),
        target: n.clone(),
        matrix: x,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
        let total = (p as usize).pow(n as u32);
        (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let d = (code % p as usize) as u32;
                        code /= p as usize;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn unit_bimodule_shapes() {
        let k = Arc::new(FiniteDimAlgebra::scalars(f(2)));
        let u = Bimodule::unit(&k);
        assert_eq!(u.dim(), 1);
        assert!(u.left_action()[0].is_identity());

        let m2 = Arc::new(FiniteDimAlgebra::matrix(f(2), 2));
        let u = Bimodule::unit(&m2);
        assert_eq!(u.dim(), 4);
        // left multiplication by E_11 kills the second row of every matrix
        assert_eq!(u.left_action()[0].rank(), 2);
        Bimodule::new(m2.clone(), m2.clone(), 4, u.left_action.clone(), u.right_action.clone()).unwrap();
    }

    #[test]
    fn bad_actions_rejected() {
        let m2 = Arc::new(FiniteDimAlgebra::matrix(f(2), 2));
        let col = Bimodule::column_module(f(2), 2);
        let mut la = col.left_action().to_vec();
        la.swap(0, 3);
        let err = Bimodule::left_module(&m2, 2, la).unwrap_err();
        assert!(matches!(err, Error::ActionViolation { .. }));
    }

    #[test]
    fn from_homomorphism_cases() {
        let k = Arc::new(FiniteDimAlgebra::scalars(f(2)));
        let m2 = Arc::new(FiniteDimAlgebra::matrix(f(2), 2));
        let id = ExactMatrix::identity(f(2), 4);
        assert_eq!(Bimodule::from_homomorphism(&m2, &m2, &id).unwrap(), Bimodule::unit(&m2));

        let diag = ExactMatrix::column_vector(f(2), m2.unit());
        let b = Bimodule::from_homomorphism(&k, &m2, &diag).unwrap();
        assert_eq!(b.dim(), 4);
        assert!(b.left_action()[0].is_identity());

        // transpose is an anti-homomorphism of M_2, not a homomorphism
        let transpose = ExactMatrix::from_fn(f(2), 4, 4, |i, j| u32::from(i == (j % 2) * 2 + j / 2));
        let err = Bimodule::from_homomorphism(&m2, &m2, &transpose).unwrap_err();
        let Error::NotAHomomorphism(w) = err else { panic!() };
        let (a, b) = (w[0], w[1]);
        let lhs = transpose.mul_vec(&m2.basis_product(a, b));
        let rhs = m2.mul(&transpose.column(a), &transpose.column(b));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn tensor_over_scalars_has_full_dimension() {
        let k = Arc::new(FiniteDimAlgebra::scalars(f(2)));
        let u = Bimodule::unit(&k);
        let t = tensor_over(&u, &u).unwrap();
        assert_eq!(t.bimodule.dim(), 1);

        let col = Bimodule::column_module(f(2), 2);
        let row = Bimodule::row_module(f(2), 2);
        let t = tensor_over(&col, &row).unwrap();
        assert_eq!(t.bimodule.dim(), 4);
        assert!(t.projection.mul(&t.section).is_identity());
    }

    /// Oracle: the relation span computed by enumerating all
    /// `(x·s)⊗y - x⊗(s·y)` for *every* vector x, y and basis s, then the
    /// quotient dimension as total minus rank of the span.
    fn brute_force_tensor_dim(m: &Bimodule, n: &Bimodule) -> usize {
        let fld = m.field();
        let p = fld.p();
        let mut rels = Vec::new();
        for x in all_vectors(p, m.dim()) {
            for y in all_vectors(p, n.dim()) {
                for s in 0..m.right_algebra().dim() {
                    let xs = m.right_action()[s].mul_vec(&x);
                    let sy = n.left_action()[s].mul_vec(&y);
                    let mut row = vec![0u32; m.dim() * n.dim()];
                    for i in 0..m.dim() {
                        for j in 0..n.dim() {
                            row[i * n.dim() + j] = fld.sub(fld.mul(xs[i], y[j]), fld.mul(x[i], sy[j]));
                        }
                    }
                    rels.push(row);
                }
            }
        }
        let total = m.dim() * n.dim();
        total - ExactMatrix::from_rows_with_cols(fld, &rels, total).unwrap().rank()
    }

    #[test]
    fn tensor_dimension_matches_brute_force() {
        let col = Bimodule::column_module(f(2), 2);
        let row = Bimodule::row_module(f(2), 2);
        let m2 = Arc::new(FiniteDimAlgebra::matrix(f(2), 2));
        let cases = [
            (row.clone(), col.clone()),
            (col.clone(), row.clone()),
            (Bimodule::unit(&m2), col.clone()),
            (row.clone(), Bimodule::unit(&m2)),
        ];
        for (a, b) in cases {
            let t = tensor_over(&a, &b).unwrap();
            assert_eq!(t.bimodule.dim(), brute_force_tensor_dim(&a, &b));
        }
        // row ⊗_{M_2} col = F_2
        assert_eq!(tensor_over(&row, &col).unwrap().bimodule.dim(), 1);
    }

    #[test]
    fn column_row_is_matrix_algebra() {
        let col = Bimodule::column_module(f(2), 2);
        let row = Bimodule::row_module(f(2), 2);
        let t = tensor_over(&col, &row).unwrap();
        let m2 = Arc::new(FiniteDimAlgebra::matrix(f(2), 2));
        let iso = is_isomorphic_bimodule(&t.bimodule, &Bimodule::unit(&m2), &IsoSearch::default()).unwrap();
        let map = iso.found().expect("column ⊗ row ≅ M_2");
        assert!(map.is_iso());
        BimoduleMap::new(map.source.clone(), map.target.clone(), map.matrix.clone()).unwrap();
        let back = map.inverse().unwrap();
        assert!(map.then(&back).unwrap().matrix.is_identity());
    }

    #[test]
    fn tensor_mismatch() {
        let col = Bimodule::column_module(f(2), 2);
        assert_eq!(tensor_over(&col, &col).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn unitors_exist() {
        let col = Bimodule::column_module(f(3), 2);
        let l = Bimodule::unit(col.left_algebra());
        let r = Bimodule::unit(col.right_algebra());
        let search = IsoSearch::default();
        let lt = tensor_over(&l, &col).unwrap().bimodule;
        let rt = tensor_over(&col, &r).unwrap().bimodule;
        assert!(is_isomorphic_bimodule(&lt, &col, &search).unwrap().is_found());
        assert!(is_isomorphic_bimodule(&rt, &col, &search).unwrap().is_found());
    }

    /// Oracle: count intertwiners by enumerating every `dim × dim` matrix.
    fn brute_force_hom_count(m: &Bimodule, n: &Bimodule) -> usize {
        let p = m.field().p();
        all_vectors(p, m.dim() * n.dim())
            .into_iter()
            .filter(|v| {
                let x = ExactMatrix::from_fn(m.field(), n.dim(), m.dim(), |i, j| v[i * m.dim() + j]);
                BimoduleMap::new(m.clone(), n.clone(), x).is_ok()
            })
            .count()
    }

    #[test]
    fn hom_space_examples() {
        let col = Bimodule::column_module(f(2), 2);
        let homs = hom_space(&col, &col).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(2usize.pow(homs.len() as u32), brute_force_hom_count(&col, &col));

        let sum = col.direct_sum(&col).unwrap();
        assert_eq!(hom_space(&sum, &col).unwrap().len(), 2);
        assert_eq!(hom_space(&sum, &sum).unwrap().len(), 4);

        let row = Bimodule::row_module(f(2), 2);
        assert_eq!(hom_space(&col, &row).unwrap_err(), Error::AlgebraMismatch);

        let k = Arc::new(FiniteDimAlgebra::truncated_polynomial(f(2), 2));
        let u = Bimodule::unit(&k);
        let homs = hom_space(&u, &u).unwrap();
        assert_eq!(2usize.pow(homs.len() as u32), brute_force_hom_count(&u, &u));
        assert!(homs.iter().all(|h| BimoduleMap::new(h.source.clone(), h.target.clone(), h.matrix.clone()).is_ok()));
    }

    #[test]
    fn iso_search_basic() {
        let col = Bimodule::column_module(f(2), 2);
        let s = IsoSearch::default();
        let found = is_isomorphic_bimodule(&col, &col, &s).unwrap().found().unwrap();
        assert!(found.matrix.is_identity());

        let sum = col.direct_sum(&col).unwrap();
        assert_eq!(is_isomorphic_bimodule(&col, &sum, &s).unwrap(), IsoOutcome::Absent { proven: true });

        // a change of basis is detected as isomorphic
        let basis = ExactMatrix::from_rows(f(2), &[[1, 1], [0, 1]]).unwrap();
        let twisted = col.change_basis(&basis).unwrap();
        assert!(is_isomorphic_bimodule(&col, &twisted, &s).unwrap().is_found());
        assert!(is_isomorphic_bimodule(&twisted, &col, &s).unwrap().is_found());
    }

    #[test]
    fn zero_dimensional_bimodules_flow() {
        let k = Arc::new(FiniteDimAlgebra::scalars(f(2)));
        let m2 = Arc::new(FiniteDimAlgebra::matrix(f(2), 2));
        let z = Bimodule::zero(&m2, &k);
        let t = tensor_over(&z, &Bimodule::row_module(f(2), 2)).unwrap();
        assert_eq!(t.bimodule.dim(), 0);
        assert!(is_isomorphic_bimodule(&z, &z.clone(), &IsoSearch::default()).unwrap().is_found());
        assert_eq!(hom_space(&z, &Bimodule::column_module(f(2), 2)).unwrap().len(), 0);
    }
}

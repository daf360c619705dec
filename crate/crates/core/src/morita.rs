//! Morita certification for algebra bimodules.
//!
//! An `R`-`S` bimodule `M` is invertible iff it is finitely generated
//! projective on both sides and `R → End_{S^op}(M)` is an isomorphism. The
//! inverse is `Hom_{S^op}(M, S)`. Everything below turns those conditions
//! into linear systems and reports either explicit certificates or the
//! stage that failed.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::bimodule::intertwiners;
use crate::algebra::enumerate::{bimodules, left_modules, CorpusCaps};
use crate::algebra::{
    hom_space, is_isomorphic_bimodule, tensor_over, Bimodule, BimoduleMap, FiniteDimAlgebra, IsoOutcome, IsoSearch,
    RingCalculus,
};
use crate::bicat::{verify_object_isomorphism, ObjectIsoVerdict};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, PrimeField};

/// Subsets of candidate generators tried before settling for the full
/// basis.
const SUBSET_BUDGET: usize = 50_000;
/// Use every nonzero vector as a generator candidate while `p^dim` is at
/// most this.
const FULL_POOL_LIMIT: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `M` as a left `R`-module.
    Left,
    /// `M` as a right `S`-module.
    Right,
}

/// `x = sum_i x_i φ_i(x)` for every `x`, on the chosen side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityCertificate {
    pub side: Side,
    pub generators: Vec<Vec<u32>>,
    /// `φ_i` as `dim(A) × dim(M)` matrices, `A` the acting algebra.
    pub functionals: Vec<ExactMatrix>,
}

impl ProjectivityCertificate {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Re-checks the dual-basis identity on every basis vector of `m`.
    pub fn verify(&self, m: &Bimodule) -> bool {
        let actions = side_actions(m, self.side);
        let f = m.field();
        (0..m.dim()).all(|b| {
            let mut x = vec![0u32; m.dim()];
            x[b] = 1;
            let mut acc = vec![0u32; m.dim()];
            for (g, phi) in self.generators.iter().zip(&self.functionals) {
                let coeffs = phi.mul_vec(&x);
                for (k, &c) in coeffs.iter().enumerate() {
                    let v = actions[k].mul_vec(g);
                    for (a, vi) in acc.iter_mut().zip(v) {
                        *a = f.add(*a, f.mul(c, vi));
                    }
                }
            }
            acc == x
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FgpOutcome {
    Certified(ProjectivityCertificate),
    /// The identity is not in the image of the evaluation map, which is a
    /// proof of non-projectivity.
    Refuted { side: Side, detail: String },
}

impl FgpOutcome {
    pub fn certificate(&self) -> Option<&ProjectivityCertificate> {
        match self {
            FgpOutcome::Certified(c) => Some(c),
            FgpOutcome::Refuted { .. } => None,
        }
    }
}

/// Action matrices of the acting algebra on `m`, and the matching regular
/// action of that algebra on itself, for the given side.
fn side_actions(m: &Bimodule, side: Side) -> Vec<ExactMatrix> {
    match side {
        Side::Left => m.left_action().to_vec(),
        Side::Right => m.right_action().to_vec(),
    }
}

fn regular_actions(m: &Bimodule, side: Side) -> Vec<ExactMatrix> {
    match side {
        Side::Left => {
            let r = m.left_algebra();
            (0..r.dim()).map(|k| r.left_multiplication(&r.basis_vector(k))).collect()
        }
        Side::Right => {
            let s = m.right_algebra();
            (0..s.dim()).map(|k| s.right_multiplication(&s.basis_vector(k))).collect()
        }
    }
}

/// Basis of the linear maps `M → A` that commute with the `A`-action on
/// the given side.
fn dual_space(m: &Bimodule, side: Side) -> Vec<ExactMatrix> {
    let actions = side_actions(m, side);
    let regular = regular_actions(m, side);
    let da = regular.len();
    let pairs: Vec<(&ExactMatrix, &ExactMatrix)> = actions.iter().zip(&regular).collect();
    intertwiners(m.field(), m.dim(), da, &pairs)
}

/// The endomorphism `y ↦ x · φ(y)` (or `φ(y) · x` on the left).
fn evaluation(f: PrimeField, actions: &[ExactMatrix], x: &[u32], phi: &ExactMatrix) -> ExactMatrix {
    let d = x.len();
    let mut out = ExactMatrix::zeros(f, d, d);
    for (k, a) in actions.iter().enumerate() {
        let v = a.mul_vec(x);
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..d {
                let c = f.add(out.get(i, j), f.mul(vi, phi.get(k, j)));
                out.set(i, j, c);
            }
        }
    }
    out
}

/// Solves `sum a_ij x_i H_j(-) = id` and returns the functionals.
fn dual_basis_for(
    f: PrimeField,
    dim: usize,
    actions: &[ExactMatrix],
    homs: &[ExactMatrix],
    generators: &[Vec<u32>],
) -> Option<Vec<ExactMatrix>> {
    let columns: Vec<Vec<u32>> = generators
        .iter()
        .flat_map(|x| homs.iter().map(move |h| evaluation(f, actions, x, h).entries().to_vec()))
        .collect();
    let system = ExactMatrix::from_columns(f, dim * dim, &columns);
    let target = ExactMatrix::identity(f, dim);
    let coeffs = system.solve(target.entries()).expect("shapes agree")?;
    let da = homs.first().map_or(0, |h| h.rows());
    Some(
        (0..generators.len())
            .map(|i| {
                let mut phi = ExactMatrix::zeros(f, da, dim);
                for (j, h) in homs.iter().enumerate() {
                    phi.add_scaled(coeffs[i * homs.len() + j], h);
                }
                phi
            })
            .collect(),
    )
}

fn all_nonzero_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let total = (p as usize).pow(n as u32);
    (1..total)
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

/// Calls `visit` on each `k`-subset of `0..n` in lexicographic order until it
/// returns `true` or `budget` runs out. Returns whether `visit` succeeded.
fn search_subsets(n: usize, k: usize, budget: &mut usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut chosen: Vec<usize> = (0..k).collect();
    loop {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if visit(&chosen) {
            return true;
        }
        let mut i = k;
        while i > 0 && chosen[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        chosen[i - 1] += 1;
        for j in i..k {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
}

/// Finitely-generated-projective test on one side.
///
/// The identity lies in the span of the evaluations `y ↦ x φ(y)` iff the
/// module is projective; that is decided first, with all basis vectors as
/// generators. A smallest generating set is then looked for among small
/// subsets of candidate vectors.
pub fn check_fgp(m: &Bimodule, side: Side) -> FgpOutcome {
    let f = m.field();
    let dim = m.dim();
    let actions = side_actions(m, side);
    let homs = dual_space(m, side);
    let basis: Vec<Vec<u32>> = (0..dim)
        .map(|i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        })
        .collect();
    let Some(full) = dual_basis_for(f, dim, &actions, &homs, &basis) else {
        return FgpOutcome::Refuted {
            side,
            detail: "identity is not in the image of the evaluation map".into(),
        };
    };
    let pool = match (0..dim).try_fold(1u64, |acc, _| acc.checked_mul(u64::from(f.p()))) {
        Some(n) if n <= FULL_POOL_LIMIT => all_nonzero_vectors(f.p(), dim),
        _ => basis.clone(),
    };
    let mut budget = SUBSET_BUDGET;
    for k in 0..dim {
        let mut found = None;
        let hit = search_subsets(pool.len(), k, &mut budget, |idx| {
            let gens: Vec<Vec<u32>> = idx.iter().map(|&i| pool[i].clone()).collect();
            match dual_basis_for(f, dim, &actions, &homs, &gens) {
                Some(phis) => {
                    found = Some((gens, phis));
                    true
                }
                None => false,
            }
        });
        if hit {
            let (generators, functionals) = found.unwrap();
            return FgpOutcome::Certified(ProjectivityCertificate {
                side,
                generators,
                functionals,
            });
        }
        if budget == 0 {
            break;
        }
    }
    FgpOutcome::Certified(ProjectivityCertificate {
        side,
        generators: basis,
        functionals: full,
    })
}

/// `End_{S^op}(M)` on a computed basis, with the canonical map from `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndRing {
    pub algebra: Arc<FiniteDimAlgebra>,
    /// Endomorphisms as `dim M × dim M` matrices, one per basis element.
    pub basis: Vec<ExactMatrix>,
    /// Column `i` holds the coordinates of `L(e_i)`.
    pub canonical: ExactMatrix,
}

/// `R ≅ End_{S^op}(M)` through the left action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndIsoCertificate {
    pub map: ExactMatrix,
    pub inverse_map: ExactMatrix,
}

fn coordinates(basis: &[ExactMatrix], f: PrimeField, d: usize, x: &ExactMatrix) -> Option<Vec<u32>> {
    let columns: Vec<Vec<u32>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    ExactMatrix::from_columns(f, d * d, &columns).solve(x.entries()).expect("shapes agree")
}

/// Right-`S`-linear endomorphisms of `M` under composition.
pub fn end_ring(m: &Bimodule) -> Result<EndRing> {
    let f = m.field();
    let d = m.dim();
    let pairs: Vec<(&ExactMatrix, &ExactMatrix)> = m.right_action().iter().map(|a| (a, a)).collect();
    let basis = intertwiners(f, d, d, &pairs);
    let n = basis.len();
    let mut constants = vec![0u32; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let c = coordinates(&basis, f, d, &basis[i].mul(&basis[j])).expect("endomorphisms compose");
            constants[i * n * n + j * n..i * n * n + j * n + n].copy_from_slice(&c);
        }
    }
    let unit = coordinates(&basis, f, d, &ExactMatrix::identity(f, d)).expect("identity is linear");
    let algebra = Arc::new(FiniteDimAlgebra::from_flat(f, n, constants, unit)?);
    let images: Vec<Vec<u32>> = m
        .left_action()
        .iter()
        .map(|l| coordinates(&basis, f, d, l).expect("left action commutes with the right action"))
        .collect();
    let canonical = ExactMatrix::from_columns(f, n, &images);
    m.left_algebra().check_homomorphism(&algebra, &canonical)?;
    Ok(EndRing {
        algebra,
        basis,
        canonical,
    })
}

impl EndRing {
    pub fn certificate(&self) -> Option<EndIsoCertificate> {
        let inverse_map = self.canonical.inverse()?;
        Some(EndIsoCertificate {
            map: self.canonical.clone(),
            inverse_map,
        })
    }
}

/// `Hom_{S^op}(M, S)` as an `S`-`R` bimodule.
pub fn inverse_candidate(m: &Bimodule) -> Result<Bimodule> {
    let f = m.field();
    let s = m.right_algebra();
    let r = m.left_algebra();
    let homs = dual_space(m, Side::Right);
    let h = homs.len();
    let columns: Vec<Vec<u32>> = homs.iter().map(|x| x.entries().to_vec()).collect();
    let span = ExactMatrix::from_columns(f, s.dim() * m.dim(), &columns);
    let represent = |act: &dyn Fn(&ExactMatrix) -> ExactMatrix| -> ExactMatrix {
        let cols: Vec<Vec<u32>> = homs
            .iter()
            .map(|phi| span.solve(act(phi).entries()).expect("shapes agree").expect("action preserves the dual"))
            .collect();
        ExactMatrix::from_columns(f, h, &cols)
    };
    let left = (0..s.dim())
        .map(|k| {
            let lm = s.left_multiplication(&s.basis_vector(k));
            represent(&|phi| lm.mul(phi))
        })
        .collect();
    let right = m
        .left_action()
        .iter()
        .map(|l| represent(&|phi| phi.mul(l)))
        .collect();
    Bimodule::new(Arc::clone(s), Arc::clone(r), h, left, right)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    FgpRight,
    FgpLeft,
    EndomorphismRing,
    /// `M ⊗_S M⁻¹ ≅ R`
    RoundTripLeft,
    /// `M⁻¹ ⊗_R M ≅ S`
    RoundTripRight,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::FgpRight,
        Stage::FgpLeft,
        Stage::EndomorphismRing,
        Stage::RoundTripLeft,
        Stage::RoundTripRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::FgpRight => "fgp-right",
            Stage::FgpLeft => "fgp-left",
            Stage::EndomorphismRing => "endomorphism-ring",
            Stage::RoundTripLeft => "round-trip-left",
            Stage::RoundTripRight => "round-trip-right",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub bimodule: Bimodule,
    pub right_projective: ProjectivityCertificate,
    pub left_projective: ProjectivityCertificate,
    pub end_iso: EndIsoCertificate,
    pub inverse: Bimodule,
    /// `M ⊗_S M⁻¹ → R`
    pub unit_left: BimoduleMap,
    /// `M⁻¹ ⊗_R M → S`
    pub unit_right: BimoduleMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub stage: Stage,
    /// `false` only when an isomorphism search ran out of random trials.
    pub proven: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Certified(Box<EquivalenceCertificate>),
    Refuted(Refutation),
}

impl EquivalenceVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, EquivalenceVerdict::Certified(_))
    }

    pub fn certificate(&self) -> Option<&EquivalenceCertificate> {
        match self {
            EquivalenceVerdict::Certified(c) => Some(c),
            EquivalenceVerdict::Refuted(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            EquivalenceVerdict::Certified(_) => None,
            EquivalenceVerdict::Refuted(r) => Some(r),
        }
    }
}

fn refuted(stage: Stage, proven: bool, detail: impl Into<String>) -> EquivalenceVerdict {
    EquivalenceVerdict::Refuted(Refutation {
        stage,
        proven,
        detail: detail.into(),
    })
}

/// Runs every stage in order and stops at the first failure.
pub fn certify_equivalence(m: &Bimodule, search: &IsoSearch) -> Result<EquivalenceVerdict> {
    let right_projective = match check_fgp(m, Side::Right) {
        FgpOutcome::Certified(c) => c,
        FgpOutcome::Refuted { detail, .. } => return Ok(refuted(Stage::FgpRight, true, detail)),
    };
    let left_projective = match check_fgp(m, Side::Left) {
        FgpOutcome::Certified(c) => c,
        FgpOutcome::Refuted { detail, .. } => return Ok(refuted(Stage::FgpLeft, true, detail)),
    };
    let end = end_ring(m)?;
    let Some(end_iso) = end.certificate() else {
        return Ok(refuted(
            Stage::EndomorphismRing,
            true,
            format!(
                "canonical map R → End has shape {:?} and rank {}",
                end.canonical.shape(),
                end.canonical.rank()
            ),
        ));
    };
    let inverse = inverse_candidate(m)?;
    let forward = tensor_over(m, &inverse)?.bimodule;
    let unit_left = match is_isomorphic_bimodule(&forward, &Bimodule::unit(m.left_algebra()), search)? {
        IsoOutcome::Found(t) => t,
        IsoOutcome::Absent { proven } => {
            return Ok(refuted(Stage::RoundTripLeft, proven, "M ⊗ M⁻¹ is not isomorphic to R"))
        }
    };
    let backward = tensor_over(&inverse, m)?.bimodule;
    let unit_right = match is_isomorphic_bimodule(&backward, &Bimodule::unit(m.right_algebra()), search)? {
        IsoOutcome::Found(t) => t,
        IsoOutcome::Absent { proven } => {
            return Ok(refuted(Stage::RoundTripRight, proven, "M⁻¹ ⊗ M is not isomorphic to S"))
        }
    };
    Ok(EquivalenceVerdict::Certified(Box::new(EquivalenceCertificate {
        bimodule: m.clone(),
        right_projective,
        left_projective,
        end_iso,
        inverse,
        unit_left,
        unit_right,
    })))
}

/// The same question asked of the generic bicategory layer.
pub fn verify_via_bicategory(m: &Bimodule, search: &IsoSearch) -> Result<ObjectIsoVerdict<BimoduleMap>> {
    let inverse = inverse_candidate(m)?;
    verify_object_isomorphism(&RingCalculus::new(*search), m, &inverse)
}

/// Outcome of pushing a module corpus through `L ↦ M ⊗_S L`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InducedFunctorReport {
    /// Dimensions of the enumerated `S`-modules.
    pub module_dims: Vec<usize>,
    /// Dimensions of their images.
    pub image_dims: Vec<usize>,
    pub hom_pairs_checked: usize,
    pub hom_dimensions_preserved: bool,
    pub injective_on_classes: bool,
    pub round_trips_checked: usize,
    pub round_trips_ok: usize,
    /// `false` if some conclusion rests on a randomized search.
    pub exhaustive: bool,
    pub failures: Vec<String>,
}

impl InducedFunctorReport {
    pub fn passes(&self) -> bool {
        self.hom_dimensions_preserved && self.injective_on_classes && self.round_trips_ok == self.round_trips_checked
    }
}

/// Checks that `M ⊗_S -` preserves hom dimensions, is injective on
/// isomorphism classes, and is undone by `M⁻¹ ⊗_R -`, over all left
/// `S`-modules of dimension at most `cap`.
pub fn induced_functor_report(
    certificate: Option<&EquivalenceCertificate>,
    cap: usize,
    caps: &CorpusCaps,
    search: &IsoSearch,
) -> Result<InducedFunctorReport> {
    let cert = certificate.ok_or_else(|| Error::NotCertified("no equivalence certificate supplied".into()))?;
    let m = &cert.bimodule;
    let modules = left_modules(m.right_algebra(), cap, caps, search)?;
    let images = modules.iter().map(|l| tensor_over(m, l).map(|t| t.bimodule)).collect::<Result<Vec<_>>>()?;
    let mut report = InducedFunctorReport {
        module_dims: modules.iter().map(Bimodule::dim).collect(),
        image_dims: images.iter().map(Bimodule::dim).collect(),
        hom_dimensions_preserved: true,
        injective_on_classes: true,
        exhaustive: true,
        ..Default::default()
    };
    for (i, (l1, ml1)) in modules.iter().zip(&images).enumerate() {
        for (j, (l2, ml2)) in modules.iter().zip(&images).enumerate() {
            report.hom_pairs_checked += 1;
            let a = hom_space(l1, l2)?.len();
            let b = hom_space(ml1, ml2)?.len();
            if a != b {
                report.hom_dimensions_preserved = false;
                report.failures.push(format!("hom dimension {a} became {b} for modules {i}, {j}"));
            }
            if i < j {
                let before = is_isomorphic_bimodule(l1, l2, search)?;
                if let IsoOutcome::Absent { proven } = before {
                    report.exhaustive &= proven;
                    match is_isomorphic_bimodule(ml1, ml2, search)? {
                        IsoOutcome::Found(_) => {
                            report.injective_on_classes = false;
                            report.failures.push(format!("modules {i} and {j} have isomorphic images"));
                        }
                        IsoOutcome::Absent { proven } => report.exhaustive &= proven,
                    }
                }
            }
        }
    }
    for (i, (l, ml)) in modules.iter().zip(&images).enumerate() {
        report.round_trips_checked += 1;
        let back = tensor_over(&cert.inverse, ml)?.bimodule;
        match is_isomorphic_bimodule(&back, l, search)? {
            IsoOutcome::Found(_) => report.round_trips_ok += 1,
            IsoOutcome::Absent { proven } => {
                report.exhaustive &= proven;
                report.failures.push(format!("round trip fails on module {i}"));
            }
        }
    }
    Ok(report)
}

/// Result of looking for an equivalence bimodule without a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedMoritaVerdict {
    Equivalent(Box<EquivalenceCertificate>),
    /// No bimodule of dimension at most `cap` is an equivalence. Larger
    /// bimodules were not examined, so equivalence stays undecided.
    Unknown {
        cap: usize,
        candidates: usize,
        /// Every refutation below the cap is a proof.
        none_within_cap_proven: bool,
    },
}

/// Tries every `r`-`s` bimodule of dimension up to `cap`.
pub fn search_equivalence(
    r: &Arc<FiniteDimAlgebra>,
    s: &Arc<FiniteDimAlgebra>,
    cap: usize,
    caps: &CorpusCaps,
    search: &IsoSearch,
) -> Result<BoundedMoritaVerdict> {
    let corpus = bimodules(r, s, cap, caps, search)?;
    let mut proven = true;
    for m in &corpus {
        match certify_equivalence(m, search)? {
            EquivalenceVerdict::Certified(c) => return Ok(BoundedMoritaVerdict::Equivalent(c)),
            EquivalenceVerdict::Refuted(r) => proven &= r.proven,
        }
    }
    Ok(BoundedMoritaVerdict::Unknown {
        cap,
        candidates: corpus.len(),
        none_within_cap_proven: proven,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn shared(a: FiniteDimAlgebra) -> Arc<FiniteDimAlgebra> {
        Arc::new(a)
    }

    #[test]
    fn end_ring_examples() {
        let s = shared(FiniteDimAlgebra::truncated_polynomial(fp(2), 2));
        let e = end_ring(&Bimodule::unit(&s)).unwrap();
        assert_eq!(e.algebra.dim(), 2);
        assert!(e.certificate().is_some());

        let col = Bimodule::column_module(fp(2), 2);
        let e = end_ring(&col).unwrap();
        assert_eq!(e.algebra.dim(), 4);
        assert!(e.certificate().is_some());

        // F_2 acting by scalars on F_2^2
        let k = shared(FiniteDimAlgebra::scalars(fp(2)));
        let m = Bimodule::right_module(&k, 2, vec![ExactMatrix::identity(fp(2), 2)]).unwrap();
        let e = end_ring(&m).unwrap();
        assert_eq!(e.canonical.rank(), 1);
        assert!(e.certificate().is_none());
    }

    #[test]
    fn fgp_examples() {
        let s = shared(FiniteDimAlgebra::matrix(fp(2), 2));
        let FgpOutcome::Certified(c) = check_fgp(&Bimodule::unit(&s), Side::Right) else { panic!() };
        assert_eq!(c.generator_count(), 1);
        assert!(c.verify(&Bimodule::unit(&s)));

        // F_2 over F_2[x]/(x^2) with x acting as zero
        let t = shared(FiniteDimAlgebra::truncated_polynomial(fp(2), 2));
        let zero_x = ExactMatrix::zeros(fp(2), 1, 1);
        let m = Bimodule::right_module(&t, 1, vec![ExactMatrix::identity(fp(2), 1), zero_x]).unwrap();
        assert!(matches!(check_fgp(&m, Side::Right), FgpOutcome::Refuted { .. }));

        // free of rank 2 over F_2 and over F_3[x]/(x^2)
        let k = shared(FiniteDimAlgebra::scalars(fp(2)));
        let m = Bimodule::right_module(&k, 2, vec![ExactMatrix::identity(fp(2), 2)]).unwrap();
        let FgpOutcome::Certified(c) = check_fgp(&m, Side::Right) else { panic!() };
        assert_eq!(c.generator_count(), 2);
        assert!(c.verify(&m));

        let t3 = shared(FiniteDimAlgebra::truncated_polynomial(fp(3), 2));
        let u = Bimodule::unit(&t3);
        let free2 = u.direct_sum(&u).unwrap();
        let FgpOutcome::Certified(c) = check_fgp(&free2, Side::Right) else { panic!() };
        assert_eq!(c.generator_count(), 2);
        assert!(c.verify(&free2));
    }

    #[test]
    fn inverse_candidate_examples() {
        let s = shared(FiniteDimAlgebra::upper_triangular(fp(2), 2));
        let u = Bimodule::unit(&s);
        let inv = inverse_candidate(&u).unwrap();
        assert!(is_isomorphic_bimodule(&inv, &u, &IsoSearch::default()).unwrap().is_found());

        let col = Bimodule::column_module(fp(2), 2);
        let inv = inverse_candidate(&col).unwrap();
        assert_eq!(inv.dim(), 2);
        let row = Bimodule::row_module(fp(2), 2);
        assert!(is_isomorphic_bimodule(&inv, &row, &IsoSearch::default()).unwrap().is_found());

        let z = Bimodule::zero(col.left_algebra(), col.right_algebra());
        assert_eq!(inverse_candidate(&z).unwrap().dim(), 0);
    }

    #[test]
    fn certify_flagship_and_refutation() {
        let search = IsoSearch::default();
        let col = Bimodule::column_module(fp(2), 2);
        let v = certify_equivalence(&col, &search).unwrap();
        let c = v.certificate().expect("column module is an equivalence");
        assert!(c.right_projective.verify(&col) && c.left_projective.verify(&col));
        assert!(c.unit_left.is_iso() && c.unit_right.is_iso());
        assert!(verify_via_bicategory(&col, &search).unwrap().is_isomorphic());

        // F_2 × F_2 acting on F_2^2 through its first factor
        let r = shared(FiniteDimAlgebra::diagonal(fp(2), 2));
        let k = shared(FiniteDimAlgebra::scalars(fp(2)));
        let id = ExactMatrix::identity(fp(2), 2);
        let m = Bimodule::new(r, k, 2, vec![id.clone(), ExactMatrix::zeros(fp(2), 2, 2)], vec![id]).unwrap();
        let v = certify_equivalence(&m, &search).unwrap();
        assert_eq!(v.refutation().unwrap().stage, Stage::EndomorphismRing);
        assert!(!verify_via_bicategory(&m, &search).unwrap().is_isomorphic());
    }

    #[test]
    fn induced_functor_on_matrix_equivalence() {
        let search = IsoSearch::default();
        let col = Bimodule::column_module(fp(2), 2);
        let v = certify_equivalence(&col, &search).unwrap();
        let report = induced_functor_report(v.certificate(), 2, &CorpusCaps::default(), &search).unwrap();
        assert_eq!(report.module_dims, vec![0, 1, 2]);
        assert_eq!(report.image_dims, vec![0, 2, 4]);
        assert!(report.passes(), "{report:?}");
        assert_eq!(
            induced_functor_report(None, 2, &CorpusCaps::default(), &search).unwrap_err(),
            Error::NotCertified("no equivalence certificate supplied".into())
        );
    }

    #[test]
    fn bounded_search() {
        let search = IsoSearch::default();
        let r = shared(FiniteDimAlgebra::diagonal(fp(2), 2));
        let k = shared(FiniteDimAlgebra::scalars(fp(2)));
        let v = search_equivalence(&r, &k, 2, &CorpusCaps::default(), &search).unwrap();
        assert_eq!(
            v,
            BoundedMoritaVerdict::Unknown {
                cap: 2,
                candidates: 6,
                none_within_cap_proven: true
            }
        );
        let m2 = shared(FiniteDimAlgebra::matrix(fp(2), 2));
        let v = search_equivalence(&m2, &k, 2, &CorpusCaps::default(), &search).unwrap();
        assert!(matches!(v, BoundedMoritaVerdict::Equivalent(_)));
    }
}

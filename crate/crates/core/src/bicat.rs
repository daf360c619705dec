//! Generic bicategory layer.
//!
//! An [`ArrowCalculus`] supplies horizontal composition (with whatever
//! projection data its associators need), units, structural 2-cells and an
//! isomorphism search. The functions here evaluate the pentagon and triangle
//! identities, sampled naturality squares, and object isomorphism on top of
//! any such calculus.
//!
//! Composition is written diagrammatically: for `f` in `(a, b)` and `g` in
//! `(b, c)`, `compose(f, g)` lives in `(a, c)` (for rings this is
//! `M ⊗_S N`).

use std::fmt::Debug;

use serde::Serialize;

use crate::algebra::IsoOutcome;
use crate::error::{Error, Result};

pub trait ArrowCalculus {
    type Object: Clone + PartialEq + Debug;
    type Cell: Clone + Debug;
    type TwoCell: Clone + PartialEq + Debug;
    /// Extra data produced by a composition (projections, orbit tables).
    type Witness;

    fn name(&self) -> &'static str;

    /// Left object: `f` in `(a, b)` has source `a`.
    fn source(&self, f: &Self::Cell) -> Self::Object;
    /// Right object: `f` in `(a, b)` has target `b`.
    fn target(&self, f: &Self::Cell) -> Self::Object;

    fn unit(&self, a: &Self::Object) -> Self::Cell;

    fn compose_with_witness(&self, f: &Self::Cell, g: &Self::Cell) -> Result<(Self::Cell, Self::Witness)>;

    fn compose(&self, f: &Self::Cell, g: &Self::Cell) -> Result<Self::Cell> {
        self.compose_with_witness(f, g).map(|(c, _)| c)
    }

    /// `(fg)h → f(gh)`.
    fn associator(&self, f: &Self::Cell, g: &Self::Cell, h: &Self::Cell) -> Result<Self::TwoCell>;
    /// `1_a f → f`.
    fn left_unitor(&self, f: &Self::Cell) -> Result<Self::TwoCell>;
    /// `f 1_b → f`.
    fn right_unitor(&self, f: &Self::Cell) -> Result<Self::TwoCell>;

    fn identity_2cell(&self, f: &Self::Cell) -> Self::TwoCell;
    /// `first` followed by `second`.
    fn vertical_compose(&self, first: &Self::TwoCell, second: &Self::TwoCell) -> Result<Self::TwoCell>;
    /// `α: f → f'`, `β: g → g'` give `fg → f'g'`.
    fn horizontal_compose(&self, alpha: &Self::TwoCell, beta: &Self::TwoCell) -> Result<Self::TwoCell>;
    fn is_iso(&self, alpha: &Self::TwoCell) -> bool;

    /// Searches for an invertible 2-cell `f → g`.
    fn find_iso(&self, f: &Self::Cell, g: &Self::Cell) -> Result<IsoOutcome<Self::TwoCell>>;

    /// Deterministic sample of 2-cells `f → f` used for naturality checks.
    fn sample_endomorphisms(&self, f: &Self::Cell, count: usize, seed: u64) -> Vec<Self::TwoCell>;

    /// True when the calculus is strict, i.e. its structural 2-cells are
    /// identities.
    fn is_strict(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoherenceLaw {
    Pentagon,
    Triangle,
    LeftUnit,
    RightUnit,
    AssociatorNaturality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub law: CoherenceLaw,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CoherenceReport {
    fn holds(law: CoherenceLaw) -> Self {
        CoherenceReport { law, holds: true, witness: None }
    }

    fn fails(law: CoherenceLaw, witness: String) -> Self {
        CoherenceReport {
            law,
            holds: false,
            witness: Some(witness),
        }
    }
}

fn require_composable<C: ArrowCalculus>(calc: &C, cells: &[&C::Cell]) -> Result<()> {
    for pair in cells.windows(2) {
        if calc.target(pair[0]) != calc.source(pair[1]) {
            return Err(Error::NotComposable);
        }
    }
    Ok(())
}

/// Compares the two re-bracketings `((mn)p)q → m(n(pq))`.
pub fn check_pentagon<C: ArrowCalculus>(
    calc: &C,
    m: &C::Cell,
    n: &C::Cell,
    p: &C::Cell,
    q: &C::Cell,
) -> Result<CoherenceReport> {
    require_composable(calc, &[m, n, p, q])?;
    let mn = calc.compose(m, n)?;
    let pq = calc.compose(p, q)?;
    let np = calc.compose(n, p)?;

    // ((mn)p)q → (mn)(pq) → m(n(pq))
    let upper = calc.vertical_compose(&calc.associator(&mn, p, q)?, &calc.associator(m, n, &pq)?)?;

    // ((mn)p)q → (m(np))q → m((np)q) → m(n(pq))
    let step1 = calc.horizontal_compose(&calc.associator(m, n, p)?, &calc.identity_2cell(q))?;
    let step2 = calc.associator(m, &np, q)?;
    let step3 = calc.horizontal_compose(&calc.identity_2cell(m), &calc.associator(n, p, q)?)?;
    let lower = calc.vertical_compose(&calc.vertical_compose(&step1, &step2)?, &step3)?;

    Ok(if upper == lower {
        CoherenceReport::holds(CoherenceLaw::Pentagon)
    } else {
        CoherenceReport::fails(CoherenceLaw::Pentagon, format!("upper path {upper:?} differs from lower path {lower:?}"))
    })
}

/// Compares `(m 1) n → m (1 n) → m n` with `ρ_m ⊗ 1_n`.
pub fn check_triangle<C: ArrowCalculus>(calc: &C, m: &C::Cell, n: &C::Cell) -> Result<CoherenceReport> {
    require_composable(calc, &[m, n])?;
    let one = calc.unit(&calc.target(m));
    let through = calc.vertical_compose(
        &calc.associator(m, &one, n)?,
        &calc.horizontal_compose(&calc.identity_2cell(m), &calc.left_unitor(n)?)?,
    )?;
    let direct = calc.horizontal_compose(&calc.right_unitor(m)?, &calc.identity_2cell(n))?;
    Ok(if through == direct {
        CoherenceReport::holds(CoherenceLaw::Triangle)
    } else {
        CoherenceReport::fails(CoherenceLaw::Triangle, format!("{through:?} differs from {direct:?}"))
    })
}

/// The left unitor is invertible and natural on sampled endomorphisms.
pub fn check_left_unit<C: ArrowCalculus>(calc: &C, m: &C::Cell, samples: usize, seed: u64) -> Result<CoherenceReport> {
    let law = CoherenceLaw::LeftUnit;
    let lambda = calc.left_unitor(m)?;
    if !calc.is_iso(&lambda) {
        return Ok(CoherenceReport::fails(law, format!("left unitor {lambda:?} is not invertible")));
    }
    let one = calc.identity_2cell(&calc.unit(&calc.source(m)));
    for alpha in calc.sample_endomorphisms(m, samples, seed) {
        let lhs = calc.vertical_compose(&calc.horizontal_compose(&one, &alpha)?, &lambda)?;
        let rhs = calc.vertical_compose(&lambda, &alpha)?;
        if lhs != rhs {
            return Ok(CoherenceReport::fails(law, format!("naturality square fails for {alpha:?}")));
        }
    }
    Ok(CoherenceReport::holds(law))
}

/// The right unitor is invertible and natural on sampled endomorphisms.
pub fn check_right_unit<C: ArrowCalculus>(calc: &C, m: &C::Cell, samples: usize, seed: u64) -> Result<CoherenceReport> {
    let law = CoherenceLaw::RightUnit;
    let rho = calc.right_unitor(m)?;
    if !calc.is_iso(&rho) {
        return Ok(CoherenceReport::fails(law, format!("right unitor {rho:?} is not invertible")));
    }
    let one = calc.identity_2cell(&calc.unit(&calc.target(m)));
    for alpha in calc.sample_endomorphisms(m, samples, seed) {
        let lhs = calc.vertical_compose(&calc.horizontal_compose(&alpha, &one)?, &rho)?;
        let rhs = calc.vertical_compose(&rho, &alpha)?;
        if lhs != rhs {
            return Ok(CoherenceReport::fails(law, format!("naturality square fails for {alpha:?}")));
        }
    }
    Ok(CoherenceReport::holds(law))
}

/// The associator is invertible and its naturality square commutes for
/// sampled endomorphisms `α, β, γ` of `m, n, p`.
pub fn check_associator_naturality<C: ArrowCalculus>(
    calc: &C,
    m: &C::Cell,
    n: &C::Cell,
    p: &C::Cell,
    samples: usize,
    seed: u64,
) -> Result<CoherenceReport> {
    require_composable(calc, &[m, n, p])?;
    let law = CoherenceLaw::AssociatorNaturality;
    let a = calc.associator(m, n, p)?;
    if !calc.is_iso(&a) {
        return Ok(CoherenceReport::fails(law, format!("associator {a:?} is not invertible")));
    }
    let alphas = calc.sample_endomorphisms(m, samples, seed);
    let betas = calc.sample_endomorphisms(n, samples, seed.wrapping_add(1));
    let gammas = calc.sample_endomorphisms(p, samples, seed.wrapping_add(2));
    for ((alpha, beta), gamma) in alphas.iter().zip(&betas).zip(&gammas) {
        let left = calc.horizontal_compose(&calc.horizontal_compose(alpha, beta)?, gamma)?;
        let right = calc.horizontal_compose(alpha, &calc.horizontal_compose(beta, gamma)?)?;
        if calc.vertical_compose(&left, &a)? != calc.vertical_compose(&a, &right)? {
            return Ok(CoherenceReport::fails(
                law,
                format!("square fails for ({alpha:?}, {beta:?}, {gamma:?})"),
            ));
        }
    }
    Ok(CoherenceReport::holds(law))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoSide {
    /// `f ∘ g ≅ 1_a`
    Forward,
    /// `g ∘ f ≅ 1_b`
    Backward,
}

/// Either both round-trip isomorphisms, or the side that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectIsoVerdict<T> {
    Isomorphic {
        /// `f ∘ g → 1_a`
        forward: T,
        /// `g ∘ f → 1_b`
        backward: T,
    },
    Refuted {
        side: IsoSide,
        /// `false` when the failure comes from an exhausted randomized search.
        proven: bool,
    },
}

impl<T> ObjectIsoVerdict<T> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, ObjectIsoVerdict::Isomorphic { .. })
    }

    /// The verdict for `(g, f)`.
    pub fn swapped(self) -> Self {
        match self {
            ObjectIsoVerdict::Isomorphic { forward, backward } => ObjectIsoVerdict::Isomorphic {
                forward: backward,
                backward: forward,
            },
            ObjectIsoVerdict::Refuted { side, proven } => ObjectIsoVerdict::Refuted {
                side: match side {
                    IsoSide::Forward => IsoSide::Backward,
                    IsoSide::Backward => IsoSide::Forward,
                },
                proven,
            },
        }
    }
}

/// Certifies `a ≅ b` from `f` in `(a, b)` and `g` in `(b, a)`.
pub fn verify_object_isomorphism<C: ArrowCalculus>(
    calc: &C,
    f: &C::Cell,
    g: &C::Cell,
) -> Result<ObjectIsoVerdict<C::TwoCell>> {
    let (a, b) = (calc.source(f), calc.target(f));
    if calc.source(g) != b || calc.target(g) != a {
        return Err(Error::ObjectMismatch);
    }
    let fg = calc.compose(f, g)?;
    let forward = match calc.find_iso(&fg, &calc.unit(&a))? {
        IsoOutcome::Found(t) => t,
        IsoOutcome::Absent { proven } => {
            return Ok(ObjectIsoVerdict::Refuted {
                side: IsoSide::Forward,
                proven,
            })
        }
    };
    let gf = calc.compose(g, f)?;
    let backward = match calc.find_iso(&gf, &calc.unit(&b))? {
        IsoOutcome::Found(t) => t,
        IsoOutcome::Absent { proven } => {
            return Ok(ObjectIsoVerdict::Refuted {
                side: IsoSide::Backward,
                proven,
            })
        }
    };
    Ok(ObjectIsoVerdict::Isomorphic { forward, backward })
}

/// Runs every law on the given 1-cells: unit laws on each cell, triangles
/// and associator naturality on composable pairs/triples, pentagons on
/// composable quadruples. `max_arity` (2..=4) bounds the tuple length.
pub fn coherence_suite<C: ArrowCalculus>(
    calc: &C,
    cells: &[C::Cell],
    max_arity: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<(Vec<usize>, CoherenceReport)>> {
    let mut out = Vec::new();
    for (i, m) in cells.iter().enumerate() {
        out.push((vec![i], check_left_unit(calc, m, samples, seed)?));
        out.push((vec![i], check_right_unit(calc, m, samples, seed)?));
    }
    for tuple in composable_tuples(calc, cells, max_arity.min(4)) {
        let c = |k: usize| &cells[tuple[k]];
        let report = match tuple.len() {
            2 => check_triangle(calc, c(0), c(1))?,
            3 => check_associator_naturality(calc, c(0), c(1), c(2), samples, seed)?,
            4 => check_pentagon(calc, c(0), c(1), c(2), c(3))?,
            _ => continue,
        };
        out.push((tuple, report));
    }
    Ok(out)
}

/// All index tuples of length 2..=`max_len` whose cells compose in order,
/// in lexicographic order.
pub fn composable_tuples<C: ArrowCalculus>(calc: &C, cells: &[C::Cell], max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..cells.len()).map(|i| vec![i]).collect();
    for _ in 2..=max_len {
        let mut next = Vec::new();
        for t in &frontier {
            let last = &cells[*t.last().unwrap()];
            let tgt = calc.target(last);
            for (j, c) in cells.iter().enumerate() {
                if calc.source(c) == tgt {
                    let mut u = t.clone();
                    u.push(j);
                    next.push(u);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

//! Exhaustive enumeration of small modules and bimodules up to isomorphism.
//!
//! A representation is fixed by the images of a generating set of the
//! algebra. The first generator only needs to range over conjugacy class
//! representatives of `M_d(F_p)`; the others range over every matrix that
//! satisfies the generator's minimal polynomial. Each candidate is then
//! validated as a module and pruned against the ones already kept.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{is_isomorphic_bimodule, Bimodule, FiniteDimAlgebra, IsoSearch};
use crate::algebra::bimodule::hom_basis;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, PrimeField};

/// Size limits for corpus enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusCaps {
    pub max_module_dim: usize,
    pub max_algebra_dim: usize,
    /// Upper bound on raw candidate representations tried per dimension.
    pub candidate_limit: u64,
}

impl Default for CorpusCaps {
    fn default() -> Self {
        CorpusCaps {
            max_module_dim: 3,
            max_algebra_dim: 4,
            candidate_limit: 2_000_000,
        }
    }
}

/// The matrix spaces we walk are indexed by integers; beyond this many
/// matrices the walk is refused.
const MATRIX_SPACE_LIMIT: u64 = 1 << 21;

/// A spanning set of words in the generators: `words[0]` is the unit and
/// `words[k] = words[parent] * generator`.
#[derive(Clone, Debug)]
struct WordBasis {
    generators: Vec<Vec<u32>>,
    words: Vec<Option<(usize, usize)>>,
    /// Columns are the coordinates of the words.
    span: ExactMatrix,
}

fn word_basis(a: &FiniteDimAlgebra, generators: &[Vec<u32>]) -> Option<WordBasis> {
    let f = a.field();
    let n = a.dim();
    if n == 0 {
        return Some(WordBasis {
            generators: generators.to_vec(),
            words: vec![],
            span: ExactMatrix::zeros(f, 0, 0),
        });
    }
    let mut vecs = vec![a.unit().to_vec()];
    let mut words = vec![None];
    let mut next = 0;
    while next < vecs.len() && vecs.len() < n {
        for (g, gen) in generators.iter().enumerate() {
            let candidate = a.mul(&vecs[next], gen);
            let mut cols = vecs.clone();
            cols.push(candidate.clone());
            if ExactMatrix::from_columns(f, n, &cols).rank() == cols.len() {
                vecs.push(candidate);
                words.push(Some((next, g)));
                if vecs.len() == n {
                    break;
                }
            }
        }
        next += 1;
    }
    (vecs.len() == n).then(|| WordBasis {
        generators: generators.to_vec(),
        words,
        span: ExactMatrix::from_columns(f, n, &vecs),
    })
}

/// Smallest set of basis elements that generates `a` (with the unit).
fn basis_generators(a: &FiniteDimAlgebra) -> WordBasis {
    let n = a.dim();
    for size in 0..=n {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            let gens: Vec<Vec<u32>> = chosen.iter().map(|&i| a.basis_vector(i)).collect();
            if let Some(w) = word_basis(a, &gens) {
                return w;
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && chosen[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            chosen[i - 1] += 1;
            for k in i..size {
                chosen[k] = chosen[k - 1] + 1;
            }
        }
    }
    unreachable!("the full basis generates the algebra")
}

/// Monic minimal polynomial of `g`, lowest coefficient first.
fn minimal_polynomial(a: &FiniteDimAlgebra, g: &[u32]) -> Vec<u32> {
    let f = a.field();
    let n = a.dim();
    let mut powers = vec![a.unit().to_vec()];
    loop {
        let next = a.mul(powers.last().unwrap(), g);
        let basis = ExactMatrix::from_columns(f, n, &powers);
        if let Some(x) = basis.solve(&next).expect("shapes agree") {
            let mut poly: Vec<u32> = x.iter().map(|&c| f.neg(c)).collect();
            poly.push(1);
            return poly;
        }
        powers.push(next);
    }
}

fn evaluate_polynomial(poly: &[u32], x: &ExactMatrix) -> ExactMatrix {
    let f = x.field();
    // Horner
    let mut acc = ExactMatrix::zeros(f, x.rows(), x.cols());
    for &c in poly.iter().rev() {
        acc = acc.mul(x);
        acc.add_scaled(c, &ExactMatrix::identity(f, x.rows()));
    }
    acc
}

fn matrix_space_size(field: PrimeField, d: usize) -> Option<u64> {
    (0..d * d).try_fold(1u64, |acc, _| acc.checked_mul(u64::from(field.p())))
}

fn decode(field: PrimeField, d: usize, mut code: u64) -> ExactMatrix {
    let p = u64::from(field.p());
    let mut m = ExactMatrix::zeros(field, d, d);
    for i in 0..d * d {
        m.set(i / d, i % d, (code % p) as u32);
        code /= p;
    }
    m
}

fn encode(m: &ExactMatrix) -> u64 {
    let p = u64::from(m.field().p());
    m.entries().iter().rev().fold(0u64, |acc, &e| acc * p + u64::from(e))
}

/// One matrix from each conjugacy class of `M_d(F_p)`, the least in
/// encoding order.
pub fn conjugacy_representatives(field: PrimeField, d: usize) -> Result<Vec<ExactMatrix>> {
    let total = matrix_space_size(field, d)
        .filter(|&t| t <= MATRIX_SPACE_LIMIT)
        .ok_or(Error::CorpusTooLarge(u128::from(field.p()).pow((d * d) as u32)))?;
    // GL_d is generated by elementary transvections and one-entry diagonals.
    let mut conjugators = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut t = ExactMatrix::identity(field, d);
                t.set(i, j, 1);
                let mut ti = ExactMatrix::identity(field, d);
                ti.set(i, j, field.neg(1));
                conjugators.push((t, ti));
            }
        }
        let w = field.primitive_root();
        if w != 1 {
            let mut g = ExactMatrix::identity(field, d);
            g.set(i, i, w);
            let mut gi = ExactMatrix::identity(field, d);
            gi.set(i, i, field.inv(w).unwrap());
            conjugators.push((g, gi));
        }
    }
    let mut seen = vec![false; total as usize];
    let mut reps = Vec::new();
    for code in 0..total {
        if seen[code as usize] {
            continue;
        }
        seen[code as usize] = true;
        let rep = decode(field, d, code);
        let mut stack = vec![rep.clone()];
        while let Some(x) = stack.pop() {
            for (g, gi) in &conjugators {
                let y = g.mul(&x).mul(gi);
                let c = encode(&y) as usize;
                if !seen[c] {
                    seen[c] = true;
                    stack.push(y);
                }
            }
        }
        reps.push(rep);
    }
    Ok(reps)
}

/// Candidate action matrices for each generator.
fn generator_images(a: &FiniteDimAlgebra, words: &WordBasis, d: usize) -> Result<Vec<Vec<ExactMatrix>>> {
    let f = a.field();
    let total = matrix_space_size(f, d)
        .filter(|&t| t <= MATRIX_SPACE_LIMIT)
        .ok_or(Error::CorpusTooLarge(u128::from(f.p()).pow((d * d) as u32)))?;
    let mut out = Vec::new();
    for (g, gen) in words.generators.iter().enumerate() {
        let poly = minimal_polynomial(a, gen);
        let pool: Vec<ExactMatrix> = if g == 0 {
            conjugacy_representatives(f, d)?
        } else {
            (0..total).map(|c| decode(f, d, c)).collect()
        };
        out.push(pool.into_iter().filter(|x| evaluate_polynomial(&poly, x).is_zero()).collect());
    }
    Ok(out)
}

/// Turns generator images into the action of every basis element, if the
/// images satisfy the algebra's relations.
fn assemble(a: &Arc<FiniteDimAlgebra>, words: &WordBasis, inverse_span: &ExactMatrix, images: &[&ExactMatrix], d: usize) -> Option<Bimodule> {
    let f = a.field();
    let mut word_images: Vec<ExactMatrix> = Vec::with_capacity(words.words.len());
    for w in &words.words {
        let m = match w {
            None => ExactMatrix::identity(f, d),
            Some((parent, g)) => word_images[*parent].mul(images[*g]),
        };
        word_images.push(m);
    }
    // e_i = sum_k inverse_span[k][i] w_k
    let action = (0..a.dim())
        .map(|i| {
            let mut acc = ExactMatrix::zeros(f, d, d);
            for (k, wi) in word_images.iter().enumerate() {
                acc.add_scaled(inverse_span.get(k, i), wi);
            }
            acc
        })
        .collect();
    Bimodule::left_module(a, d, action).ok()
}

/// Isomorphism-invariant fingerprint used to avoid pointless iso searches.
fn fingerprint(m: &Bimodule) -> (usize, Vec<usize>, Vec<usize>) {
    let ranks = |acts: &[ExactMatrix]| acts.iter().map(|x| x.rank()).collect::<Vec<_>>();
    (hom_basis(m, m).len(), ranks(m.left_action()), ranks(m.right_action()))
}

fn left_modules_with(a: &Arc<FiniteDimAlgebra>, words: &WordBasis, max_dim: usize, caps: &CorpusCaps, search: &IsoSearch) -> Result<Vec<Bimodule>> {
    let k = Arc::new(FiniteDimAlgebra::scalars(a.field()));
    let mut out = vec![Bimodule::zero(a, &k)];
    let inverse_span = words.span.inverse().expect("word basis spans the algebra");
    for d in 1..=max_dim {
        let pools = generator_images(a, words, d)?;
        let count: u128 = pools.iter().map(|p| p.len() as u128).product();
        if count > u128::from(caps.candidate_limit) {
            return Err(Error::CorpusTooLarge(count));
        }
        let mut kept: BTreeMap<(usize, Vec<usize>, Vec<usize>), Vec<Bimodule>> = BTreeMap::new();
        let mut order = Vec::new();
        let mut idx = vec![0usize; pools.len()];
        if pools.iter().any(|p| p.is_empty()) {
            continue;
        }
        'outer: loop {
            let images: Vec<&ExactMatrix> = idx.iter().zip(&pools).map(|(&i, p)| &p[i]).collect();
            if let Some(m) = assemble(a, words, &inverse_span, &images, d) {
                let key = fingerprint(&m);
                let bucket = kept.entry(key.clone()).or_default();
                let mut fresh = true;
                for other in bucket.iter() {
                    if is_isomorphic_bimodule(other, &m, search)?.is_found() {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    bucket.push(m.clone());
                    order.push(m);
                }
            }
            for (i, pool) in idx.iter_mut().zip(&pools).rev() {
                *i += 1;
                if *i < pool.len() {
                    continue 'outer;
                }
                *i = 0;
            }
            break;
        }
        out.extend(order);
    }
    Ok(out)
}

/// Every left `a`-module of dimension `0..=max_dim`, one per isomorphism
/// class, as `a`-`F_p` bimodules. Ordered by dimension, then by discovery.
pub fn left_modules(a: &Arc<FiniteDimAlgebra>, max_dim: usize, caps: &CorpusCaps, search: &IsoSearch) -> Result<Vec<Bimodule>> {
    check_caps(a.dim(), max_dim, caps)?;
    let words = basis_generators(a);
    left_modules_with(a, &words, max_dim, caps, search)
}

fn check_caps(algebra_dim: usize, max_dim: usize, caps: &CorpusCaps) -> Result<()> {
    if algebra_dim > caps.max_algebra_dim || max_dim > caps.max_module_dim {
        return Err(Error::CorpusTooLarge(0));
    }
    Ok(())
}

/// Every `r`-`s` bimodule of dimension `0..=max_dim` up to isomorphism,
/// found as left modules over `r ⊗ s^op`.
pub fn bimodules(
    r: &Arc<FiniteDimAlgebra>,
    s: &Arc<FiniteDimAlgebra>,
    max_dim: usize,
    caps: &CorpusCaps,
    search: &IsoSearch,
) -> Result<Vec<Bimodule>> {
    if r.field() != s.field() {
        return Err(Error::FieldMismatch);
    }
    check_caps(r.dim().max(s.dim()), max_dim, caps)?;
    let env = Arc::new(FiniteDimAlgebra::tensor(r, &s.opposite())?);
    let (dr, ds) = (r.dim(), s.dim());
    let embed_left = |x: &[u32]| -> Vec<u32> {
        let mut v = vec![0; dr * ds];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &uj) in s.unit().iter().enumerate() {
                v[i * ds + j] = r.field().mul(xi, uj);
            }
        }
        v
    };
    let embed_right = |y: &[u32]| -> Vec<u32> {
        let mut v = vec![0; dr * ds];
        for (i, &ui) in r.unit().iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                v[i * ds + j] = r.field().mul(ui, yj);
            }
        }
        v
    };
    let mut gens: Vec<Vec<u32>> = basis_generators(r).generators.iter().map(|g| embed_left(g)).collect();
    gens.extend(basis_generators(s).generators.iter().map(|g| embed_right(g)));
    let words = word_basis(&env, &gens).expect("r ⊗ 1 and 1 ⊗ s generate the enveloping algebra");
    let env_modules = left_modules_with(&env, &words, max_dim, caps, search)?;
    env_modules
        .into_iter()
        .map(|m| {
            let left = (0..dr).map(|i| m.act_left(&embed_left(&r.basis_vector(i)))).collect();
            let right = (0..ds).map(|j| m.act_left(&embed_right(&s.basis_vector(j)))).collect();
            Bimodule::new(Arc::clone(r), Arc::clone(s), m.dim(), left, right)
        })
        .collect()
}

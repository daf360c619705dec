//! Exact, finite-scale instances of three bicategories: bimodules over
//! finite-dimensional algebras, multiplicity-matrix correspondences between
//! multimatrix algebras, and bibundles between finite groupoids.
//!
//! Every construction is computed with exact arithmetic and every law
//! (coherence, Morita invertibility) is checked by evaluation, producing
//! explicit certificates or witnesses.

pub mod algebra;
pub mod bicat;
pub mod corpus;
pub mod cstar;
pub mod error;
pub mod groupoid;
pub mod linalg;
pub mod morita;

pub use algebra::{Bimodule, BimoduleMap, FiniteDimAlgebra, IsoOutcome, IsoSearch, TensorProduct};
pub use bicat::{ArrowCalculus, CoherenceLaw, CoherenceReport, ObjectIsoVerdict};
pub use cstar::{MultimatrixAlgebra, MultiplicityBimodule};
pub use error::{Error, Result};
pub use groupoid::{Bibundle, FiniteGroupoid, GroupoidAction, MoritaVerdict};
pub use linalg::{ExactMatrix, PrimeField, Rref};

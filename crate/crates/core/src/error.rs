use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("operands live over different prime fields")]
    FieldMismatch,
    #[error("malformed table: {0}")]
    Shape(String),

    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    UnitViolation(usize),
    #[error("bimodule axiom `{law}` fails at {witness:?}")]
    ActionViolation {
        law: &'static str,
        witness: Vec<usize>,
    },
    #[error("matrix does not intertwine the actions (`{0}` side, basis element {1})")]
    NotIntertwiner(&'static str, usize),
    #[error("algebras do not match")]
    AlgebraMismatch,
    #[error("map is not a unital algebra homomorphism (witness {0:?})")]
    NotAHomomorphism(Vec<usize>),

    #[error("1-cells are not composable")]
    NotComposable,
    #[error("1-cells do not run between the same pair of objects")]
    ObjectMismatch,

    #[error("multiplicity matrix has zero row {0}")]
    Degenerate(usize),
    #[error("composite multiplicity matrix has zero row {0}")]
    DegenerateResult(usize),

    #[error("groupoid axiom `{axiom}` fails at {witness:?}")]
    GroupoidAxiom {
        axiom: &'static str,
        witness: Vec<usize>,
    },
    #[error("groupoids do not match")]
    GroupoidMismatch,
    #[error("bibundle is not regular (left action not principal)")]
    NotRegular,
    #[error("data is not a functor (`{law}` fails at {witness:?})")]
    NotAFunctor {
        law: &'static str,
        witness: Vec<usize>,
    },

    #[error("instance is not a certified equivalence: {0}")]
    NotCertified(String),
    #[error("search space too large ({0} candidates); raise the cap explicitly")]
    CorpusTooLarge(u128),
}

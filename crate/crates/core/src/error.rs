use thiserror::Error;

/// Which product check failed when validating a candidate automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomorphismWitness {
    /// The unit is not mapped to the unit.
    Unit,
    /// `σ(b_i b_j) != σ(b_i) σ(b_j)`.
    Product(usize, usize),
    /// The matrix is singular.
    Singular,
}

impl std::fmt::Display for AutomorphismWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AutomorphismWitness::Unit => write!(f, "unit not preserved"),
            AutomorphismWitness::Product(i, j) => write!(f, "product b{i}*b{j} not preserved"),
            AutomorphismWitness::Singular => write!(f, "matrix is singular"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),
    #[error("invalid scalar {0:?}")]
    InvalidScalar(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("associativity fails on basis triple ({i}, {j}, {k})")]
    AssociativityViolation { i: usize, j: usize, k: usize },
    #[error("unit axiom fails on basis element {i}")]
    UnitViolation { i: usize },
    #[error("relation {relation} is not a combination of parallel paths")]
    RelationNotParallel { relation: usize },
    #[error("relation {relation} contains a path of length < 2")]
    RelationTooShort { relation: usize },
    #[error("arrow {arrow} references a missing vertex")]
    BadArrow { arrow: usize },
    #[error("nilpotency bound {bound} is too small (need >= 2)")]
    BoundTooSmall { bound: usize },
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("subspace is not a two-sided ideal: basis vector {basis_index} times b{generator} on the {side} leaves it")]
    NotAnIdeal {
        basis_index: usize,
        generator: usize,
        side: &'static str,
    },
    #[error("trace-form radical needs characteristic 0 or p > dim (p = {p}, dim = {dim})")]
    UnsupportedCharacteristic { p: u64, dim: usize },
    #[error("radical verification failed: {0}")]
    RadicalVerification(String),

    #[error("module axiom fails: {0}")]
    ModuleAxiom(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("group element {element} is not an automorphism: {witness}")]
    NotAutomorphism { element: usize, witness: AutomorphismWitness },
    #[error("group elements are not closed under composition")]
    NotClosed,
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("idempotent is moved by group element {element}")]
    NotInvariant { element: usize },
    #[error("group order {order} is not invertible in characteristic {p}")]
    OrderNotInvertible { order: usize, p: u64 },
    #[error("linearization cocycle fails for (g, h) = ({g}, {h})")]
    CocycleViolation { g: usize, h: usize },
    #[error("linearization map for element {g} is not compatible with b{i}")]
    CompatibilityViolation { g: usize, i: usize },

    #[error("not a module map: {0}")]
    NotModuleMap(String),
    #[error("bimodule axiom fails: {0}")]
    BimoduleViolation(String),
    #[error("group element {element} does not fix the corner idempotent")]
    ActionDoesNotFixE { element: usize },
    #[error("module {module} is not annihilated by the ideal generated by the idempotent")]
    NotAnnihilated { module: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

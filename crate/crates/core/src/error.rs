use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("poset of size {size} exceeds the order-matrix limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("order predicate is not reflexive at {0}")]
    ReflexivityViolation(String),
    #[error("order predicate is not antisymmetric: {x} <= {y} <= {x}")]
    AntisymmetryViolation { x: String, y: String },
    #[error("order predicate is not transitive: {x} <= {y} <= {z} but not {x} <= {z}")]
    TransitivityViolation { x: String, y: String, z: String },
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("size {size} exceeds bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("poset is not a lattice")]
    NotALattice,
    #[error("lattice is not distributive")]
    NotDistributive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid spec: {0}")]
    Invalid(String),
    /// The first `u` rows are zero, so there are no nonzero maximal minors.
    #[error("no maximal minors: u = {u} is below a_1 = {a1}")]
    NoMaximalMinors { u: u32, a1: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("{0} is not join-irreducible")]
    NotJoinIrreducible(String),
    #[error("degree bound {d_max} too small, need at least {needed}")]
    InsufficientPrecision { d_max: usize, needed: usize },
    #[error("count exceeds 128-bit range")]
    CountOverflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised across the crate.
///
/// Mathematical check failures are not errors; they are report content.
/// Everything here is either bad input, a refused resource request, or an
/// internal consistency violation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("table is not a Latin square: {0}")]
    NotLatinSquare(String),

    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("module axioms violated: {0}")]
    InvalidModule(String),

    #[error("monoid axioms violated: {0}")]
    InvalidMonoid(String),

    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("modules live over different monoids")]
    MonoidMismatch,

    #[error("map is not a cofibration")]
    NotCofibration,

    #[error("operation requires a group monoid G_+")]
    NotGroupMonoid,

    #[error("diagram does not commute: {0}")]
    NotCommuting(String),

    #[error("order {order} of the group is not coprime to q = {q}")]
    NotCoprime { order: usize, q: u64 },

    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

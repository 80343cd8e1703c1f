//! Degree-0 and degree-1 G-theory of finite pointed monoids.
//!
//! The crate models modules over finite pointed monoids (the category
//! `FG(M)`), the Burnside ring `A(G) = G_0(G_+)` through its table of marks,
//! the Mackey structure of `H -> A(H)`, Siebeneicher's subset
//! lambda-operations with their universal-polynomial checks, and small
//! G-theory computations (generators-and-relations `G_0`, `G_1` from the
//! orbit splitting, the Cartan map at `pi_0`).

#![allow(
    clippy::needless_range_loop,
    clippy::too_many_arguments,
    clippy::wrong_self_convention
)]

pub mod burnside;
pub mod error;
pub mod f1;
pub mod group;
pub mod gtheory;
pub mod instances;
pub mod json;
pub mod lambda;
pub mod mackey;
pub mod scalar;
pub mod snf;
pub mod suite;

pub use burnside::{BurnsideElement, BurnsideRing, MarksMatrix};
pub use error::{Error, Result};
pub use group::{named_group, FiniteGroup, Subgroup, SubgroupClassification};
pub use scalar::Integer;
pub use snf::SmithForm;

/// Smith normal form over machine integers.
pub type IntSmithForm = SmithForm<i64>;

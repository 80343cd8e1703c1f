//! Modules over finite pointed monoids: the category `FG(M)` with its split
//! cofibrations, quotients, pushouts, smash products, base change and
//! restriction of scalars.

mod extension;
mod iso;
mod module;
mod monoid;
mod search;
mod smash;

pub use extension::{extension_property_check, ExtensionDiagram};
pub use iso::{are_isomorphic, find_module_isomorphism, injective_homs, invariant_signature};
pub use module::{quotient, FiniteModule, ModuleHom};
pub use monoid::{MonoidHom, MonoidRef, PointedMonoid};
pub use smash::{
    base_change, base_change_map, diagonal_smash, diagonal_smash_map, pushout, restrict_scalars,
    smash, smash_pointed, Bimodule, Pushout,
};

//! Finite permutation groups at desk scale: enumeration, conjugacy classes,
//! characteristic subgroups, class-algebra structure constants, exact
//! character tables, and exhaustive checkers for commutator-order criteria.

pub mod arith;
pub mod catalog;
pub mod chartab;
pub mod classalg;
pub mod error;
pub mod group;
pub mod perm;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use group::{FiniteGroup, DEFAULT_CAP};
pub use perm::Permutation;

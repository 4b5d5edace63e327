//! Exact word combinatorics for twisted Coxeter systems.
//!
//! A twisted Coxeter system `(W, S, *)` is a Coxeter system with a diagram
//! involution. This crate enumerates involution words, primed involution
//! words, Hecke atoms and involution Hecke words, applies the relations that
//! connect them, and builds word graphs.

pub mod any;
pub mod error;
pub mod generic;
pub mod group;
pub mod involution;
pub mod parabolic;
pub mod perm;
pub mod rewriting;
pub mod system;
pub mod table;
pub mod twisted;
pub mod type_a;
pub mod word;

pub use any::{AnyGroup, GroupElement};
pub use error::{CoxeterError, Result};
pub use generic::{GenericElement, GenericGroup};
pub use group::CoxeterGroup;
pub use involution::{Engine, EngineConfig};
pub use parabolic::{ParabolicSubset, TypeLabel};
pub use perm::{PermGroup, Window};
pub use system::{CoxeterSystem, Order};
pub use word::{Gen, Letter, PrimedWord, Word};

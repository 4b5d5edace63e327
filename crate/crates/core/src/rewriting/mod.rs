//! Relations on words, their equivalence classes and word graphs.

pub mod braided;
pub mod closure;
pub mod graph;
pub mod packed;
pub mod relations;
pub mod schema;

pub use braided::{exceptional_subsets, is_simply_braided};
pub use closure::{equivalence_class, ClosureOptions, DEFAULT_CLOSURE_LIMIT};
pub use graph::{build_word_graph, graph_stats, Edge, GraphKind, GraphStats, WordGraph};
pub use packed::{packed_class, PackedClass};
pub use relations::{
    braid_neighbors, exceptional_families, exceptional_schemas, half_braid_neighbors, initial_family,
    initial_relation_schemas, mixed_half_braid_neighbors, primed_braid_neighbors,
    primed_half_braid_neighbors, Component, RelationSet, Rule, SuffixOracle, Variant,
};
pub use schema::{PatternFamily, Position, RelationKind, RelationSchema, SuffixCondition};

use crate::word::Letter;

/// Anything that can list the words one move away from a given word.
pub trait Rewriter: Sync {
    /// Calls `emit` once per move, skipping results longer than `max_len`.
    /// The same neighbor may be reported more than once.
    fn for_each_neighbor(
        &self,
        word: &[Letter],
        max_len: usize,
        emit: &mut dyn FnMut(&[Letter], RelationKind),
    );
}

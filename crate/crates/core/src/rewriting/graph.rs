//! Word graphs: vertices are words, edges are single relation moves.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::group::CoxeterGroup;
use crate::involution::Engine;
use crate::word::{PrimedWord, Word};

use super::{RelationKind, RelationSet, Rewriter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub kind: RelationKind,
}

/// An undirected graph with labeled, possibly parallel edges.
#[derive(Clone, Debug, Serialize)]
pub struct WordGraph {
    vertices: Vec<PrimedWord>,
    edges: Vec<Edge>,
}

/// Which word set a graph is drawn on, with the matching relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// Involution words with braid and half-braid edges.
    Inv,
    /// Primed involution words with primed braid and primed half-braid edges.
    Primed,
    /// Reduced involution Hecke words with braid and mixed half-braid edges.
    Hecke,
}

impl WordGraph {
    /// Connects each pair of `words` that differ by one move of `rewriter`.
    /// Moves leading outside `words` are ignored.
    pub fn from_words<R: Rewriter + ?Sized>(words: &[PrimedWord], rewriter: &R) -> Self {
        let mut vertices = words.to_vec();
        vertices.sort();
        vertices.dedup();
        let index: HashMap<&[_], usize> =
            vertices.iter().enumerate().map(|(i, w)| (w.0.as_slice(), i)).collect();
        let max_len = vertices.iter().map(PrimedWord::len).max().unwrap_or(0);
        let mut edges = BTreeSet::new();
        for (i, v) in vertices.iter().enumerate() {
            rewriter.for_each_neighbor(&v.0, max_len, &mut |next, kind| {
                if let Some(&j) = index.get(next) {
                    if i < j {
                        edges.insert(Edge { a: i, b: j, kind });
                    } else if j < i {
                        edges.insert(Edge { a: j, b: i, kind });
                    }
                }
            });
        }
        WordGraph { vertices, edges: edges.into_iter().collect() }
    }

    pub fn vertices(&self) -> &[PrimedWord] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_of_kind(&self, kind: RelationKind) -> impl Iterator<Item = (&PrimedWord, &PrimedWord)> {
        self.edges.iter().filter(move |e| e.kind == kind).map(|e| (&self.vertices[e.a], &self.vertices[e.b]))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Vertex sets of the connected components, largest first.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                for &n in &adj[comp[k]] {
                    if !seen[n] {
                        seen[n] = true;
                        comp.push(n);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph words {\n  node [shape=plaintext];\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [color={}, label=\"{}\"];",
                self.vertices[e.a],
                self.vertices[e.b],
                e.kind.color(),
                e.kind
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub edges_by_kind: BTreeMap<String, usize>,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    /// Largest finite distance between two vertices.
    pub diameter: usize,
}

pub fn graph_stats(g: &WordGraph) -> GraphStats {
    let mut edges_by_kind = BTreeMap::new();
    for e in g.edges() {
        *edges_by_kind.entry(e.kind.to_string()).or_insert(0) += 1;
    }
    let comps = g.components();
    let adj = g.adjacency();
    let mut diameter = 0;
    let mut dist = vec![usize::MAX; g.vertices.len()];
    let mut queue = VecDeque::new();
    for start in 0..g.vertices.len() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            diameter = diameter.max(dist[v]);
            for &n in &adj[v] {
                if dist[n] == usize::MAX {
                    dist[n] = dist[v] + 1;
                    queue.push_back(n);
                }
            }
        }
    }
    GraphStats {
        vertices: g.vertices.len(),
        edges: g.edges.len(),
        edges_by_kind,
        components: comps.len(),
        component_sizes: comps.iter().map(Vec::len).collect(),
        diameter,
    }
}

/// The word graph of `z` of the given kind.
pub fn build_word_graph<G: CoxeterGroup + 'static>(
    engine: &Arc<Engine<G>>,
    z: &G::Elem,
    kind: GraphKind,
) -> Result<WordGraph> {
    engine.check_twisted(z)?;
    let system = engine.system();
    let graph = match kind {
        GraphKind::Inv => {
            let words: Vec<PrimedWord> = engine.involution_words(z).iter().map(PrimedWord::from).collect();
            WordGraph::from_words(&words, &RelationSet::half_braid(system))
        }
        GraphKind::Primed => {
            WordGraph::from_words(&engine.primed_words(z), &RelationSet::primed_half_braid(system))
        }
        GraphKind::Hecke => {
            let words: Vec<PrimedWord> =
                engine.reduced_hecke_words(z)?.iter().map(PrimedWord::from).collect();
            WordGraph::from_words(&words, &RelationSet::mixed_half_braid(system, engine.clone()))
        }
    };
    Ok(graph)
}

/// Unprimed vertex words, for graphs on unprimed word sets.
pub fn unprimed_vertices(g: &WordGraph) -> Vec<Word> {
    g.vertices().iter().map(PrimedWord::unprimed).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{PermGroup, Window};

    fn fig1() -> (Arc<Engine<PermGroup>>, Window) {
        let engine = Arc::new(Engine::new(PermGroup::symmetric(4, true).unwrap()));
        (engine, Window::from_cycles("(1,4)(2,3)", 4).unwrap())
    }

    #[test]
    fn identity_graph_is_a_point() {
        let (engine, _) = fig1();
        let g = build_word_graph(&engine, &Window::identity(4), GraphKind::Inv).unwrap();
        let s = graph_stats(&g);
        assert_eq!((s.vertices, s.edges, s.components, s.diameter), (1, 0, 1, 0));
    }

    #[test]
    fn half_braid_edges_of_the_twisted_example() {
        let (engine, z) = fig1();
        let g = build_word_graph(&engine, &z, GraphKind::Inv).unwrap();
        assert_eq!(g.vertices().len(), 8);
        let mut hb: Vec<(String, String)> =
            g.edges_of_kind(RelationKind::HalfBraid).map(|(a, b)| (a.to_string(), b.to_string())).collect();
        hb.sort();
        assert_eq!(hb, vec![("1213".into(), "3213".into()), ("1231".into(), "3231".into())]);
        let stats = graph_stats(&g);
        assert_eq!(stats.components, 2);
        let dot = g.to_dot();
        assert!(dot.contains("color=orange"));
        assert!(dot.contains("color=gray"));
    }
}

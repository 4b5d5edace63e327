//! Breadth-first closure of a single word under a rewriter.

use std::collections::{HashSet, VecDeque};

use crate::error::{CoxeterError, Result};
use crate::word::{Letter, PrimedWord};

use super::Rewriter;

pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Words longer than this are never generated.
    pub max_len: usize,
    /// Largest class allowed before giving up.
    pub limit: usize,
}

impl ClosureOptions {
    pub fn new(max_len: usize) -> Self {
        ClosureOptions { max_len, limit: DEFAULT_CLOSURE_LIMIT }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }
}

/// The class of `seed`, sorted.
///
/// When `oracle` is given, every generated word must satisfy it; the first
/// word that does not is reported as [`CoxeterError::RelationEscapedSet`].
pub fn equivalence_class<R: Rewriter + ?Sized>(
    seed: &[Letter],
    rewriter: &R,
    options: ClosureOptions,
    mut oracle: Option<&mut dyn FnMut(&[Letter]) -> bool>,
) -> Result<Vec<PrimedWord>> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
    seen.insert(seed.to_vec());
    queue.push_back(seed.to_vec());
    let mut failure: Option<CoxeterError> = None;
    while let Some(word) = queue.pop_front() {
        rewriter.for_each_neighbor(&word, options.max_len, &mut |next, kind| {
            if failure.is_some() || seen.contains(next) {
                return;
            }
            if let Some(check) = oracle.as_mut() {
                if !check(next) {
                    failure = Some(CoxeterError::RelationEscapedSet {
                        kind: kind.to_string(),
                        from: PrimedWord(word.clone()),
                        to: PrimedWord(next.to_vec()),
                    });
                    return;
                }
            }
            seen.insert(next.to_vec());
            queue.push_back(next.to_vec());
        });
        if let Some(err) = failure {
            return Err(err);
        }
        if seen.len() > options.limit {
            return Err(CoxeterError::ClosureBoundExceeded(options.limit));
        }
    }
    let mut out: Vec<PrimedWord> = seen.into_iter().map(PrimedWord).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::schema::plain;
    use crate::rewriting::{RelationKind, RelationSet};
    use crate::system::CoxeterSystem;

    #[test]
    fn empty_rewriter_gives_seed() {
        let system = CoxeterSystem::type_a(2).unwrap();
        let set = RelationSet::empty(&system, "none");
        let class = equivalence_class(&plain(&[0, 1]), &set, ClosureOptions::new(2), None).unwrap();
        assert_eq!(class, vec![PrimedWord(plain(&[0, 1]))]);
    }

    #[test]
    fn braid_class_of_longest_elements() {
        let a2 = CoxeterSystem::type_a(2).unwrap();
        let class =
            equivalence_class(&plain(&[0, 1, 0]), &RelationSet::braid(&a2), ClosureOptions::new(3), None)
                .unwrap();
        assert_eq!(class.len(), 2);
        let a3 = CoxeterSystem::type_a(3).unwrap();
        let class = equivalence_class(
            &plain(&[0, 1, 0, 2, 1, 0]),
            &RelationSet::braid(&a3),
            ClosureOptions::new(6),
            None,
        )
        .unwrap();
        assert_eq!(class.len(), 16);
    }

    #[test]
    fn bound_and_oracle_failures() {
        let a3 = CoxeterSystem::type_a(3).unwrap();
        let set = RelationSet::braid(&a3);
        let seed = plain(&[0, 1, 0, 2, 1, 0]);
        let err = equivalence_class(&seed, &set, ClosureOptions::new(6).with_limit(5), None);
        assert!(matches!(err, Err(CoxeterError::ClosureBoundExceeded(5))));
        let mut reject = |w: &[Letter]| w[0] == Letter::plain(0);
        let err = equivalence_class(&seed, &set, ClosureOptions::new(6), Some(&mut reject));
        match err {
            Err(CoxeterError::RelationEscapedSet { kind, .. }) => {
                assert_eq!(kind, RelationKind::Braid.to_string())
            }
            other => panic!("expected escape, got {other:?}"),
        }
    }
}

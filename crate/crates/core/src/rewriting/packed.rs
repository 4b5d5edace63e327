//! Closure of unprimed words stored as bitsets indexed by base-`rank` value.
//!
//! Classes of involution Hecke words reach the hundreds of millions, far too
//! many to keep as heap-allocated words. Each word of length `L` over a rank
//! `r` system is a number below `r^L`; one bit per number and length records
//! membership, and a second bitset records which members were expanded.

use std::collections::{HashSet, VecDeque};

use crate::error::{CoxeterError, Result};
use crate::word::{Gen, Letter, PrimedWord};

use super::Rewriter;

/// Dense storage is used while the bitsets stay below this many bits each.
pub const DENSE_BIT_LIMIT: u128 = 1 << 32;

enum Storage {
    Dense { visited: Vec<Vec<u64>>, expanded: Vec<Vec<u64>> },
    Sparse(HashSet<(u8, u64)>),
}

pub struct PackedClass {
    rank: usize,
    max_len: usize,
    storage: Storage,
    by_length: Vec<u64>,
}

impl PackedClass {
    pub fn len(&self) -> u64 {
        self.by_length.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of members of each length `0..=max_len`.
    pub fn counts_by_length(&self) -> &[u64] {
        &self.by_length
    }

    pub fn contains(&self, word: &[Gen]) -> bool {
        if word.len() > self.max_len || word.iter().any(|&g| g as usize >= self.rank) {
            return false;
        }
        let idx = encode(self.rank, word);
        match &self.storage {
            Storage::Dense { visited, .. } => get(&visited[word.len()], idx),
            Storage::Sparse(set) => set.contains(&(word.len() as u8, idx)),
        }
    }

    /// Members in order of length, then lexicographically.
    pub fn words(&self) -> Vec<Vec<Gen>> {
        let mut out = Vec::new();
        match &self.storage {
            Storage::Dense { visited, .. } => {
                for (len, layer) in visited.iter().enumerate() {
                    for (b, &block) in layer.iter().enumerate() {
                        let mut bits = block;
                        while bits != 0 {
                            let i = bits.trailing_zeros() as u64;
                            bits &= bits - 1;
                            out.push(decode(self.rank, len, b as u64 * 64 + i));
                        }
                    }
                }
            }
            Storage::Sparse(set) => {
                let mut keys: Vec<_> = set.iter().copied().collect();
                keys.sort_unstable();
                out.extend(keys.into_iter().map(|(len, idx)| decode(self.rank, len as usize, idx)));
            }
        }
        out
    }
}

fn encode(rank: usize, word: &[Gen]) -> u64 {
    word.iter().fold(0u64, |acc, &g| acc * rank as u64 + g as u64)
}

fn decode(rank: usize, len: usize, mut idx: u64) -> Vec<Gen> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (idx % rank as u64) as Gen;
        idx /= rank as u64;
    }
    out
}

fn get(bits: &[u64], idx: u64) -> bool {
    bits[(idx >> 6) as usize] >> (idx & 63) & 1 == 1
}

fn set(bits: &mut [u64], idx: u64) -> bool {
    let slot = &mut bits[(idx >> 6) as usize];
    let mask = 1u64 << (idx & 63);
    let fresh = *slot & mask == 0;
    *slot |= mask;
    fresh
}

/// The class of an unprimed `seed` among words of length at most `max_len`.
///
/// Every generated word is checked against `oracle`; a failure is reported
/// as [`CoxeterError::RelationEscapedSet`]. More than `limit` members gives
/// [`CoxeterError::ClosureBoundExceeded`].
pub fn packed_class<R: Rewriter + ?Sized>(
    seed: &[Gen],
    rank: usize,
    rewriter: &R,
    max_len: usize,
    limit: u64,
    oracle: &mut dyn FnMut(&[Gen]) -> bool,
) -> Result<PackedClass> {
    if seed.len() > max_len {
        return Err(CoxeterError::Unsupported(format!(
            "seed of length {} exceeds the length bound {max_len}",
            seed.len()
        )));
    }
    let rank_u = rank as u128;
    let mut sizes = Vec::with_capacity(max_len + 1);
    let mut size = 1u128;
    let mut total = 0u128;
    for _ in 0..=max_len {
        sizes.push(size);
        total += size;
        size = size.saturating_mul(rank_u);
    }
    if sizes[max_len] > u64::MAX as u128 {
        return Err(CoxeterError::Unsupported(format!(
            "words of length {max_len} over {rank} letters do not fit in 64 bits"
        )));
    }
    let dense = total <= DENSE_BIT_LIMIT;
    let mut class = PackedClass {
        rank,
        max_len,
        storage: if dense {
            let blocks = |n: u128| vec![0u64; (n as usize).div_ceil(64)];
            Storage::Dense {
                visited: sizes.iter().map(|&n| blocks(n)).collect(),
                expanded: sizes.iter().map(|&n| blocks(n)).collect(),
            }
        } else {
            Storage::Sparse(HashSet::new())
        },
        by_length: vec![0; max_len + 1],
    };
    let mut state = Search { rank, max_len, limit, class: &mut class, letters: Vec::new(), gens: Vec::new() };
    state.insert_seed(seed);
    if dense {
        state.sweep(rewriter, oracle)?;
    } else {
        state.breadth_first(seed, rewriter, oracle)?;
    }
    Ok(class)
}

struct Search<'a> {
    rank: usize,
    max_len: usize,
    limit: u64,
    class: &'a mut PackedClass,
    letters: Vec<Letter>,
    gens: Vec<Gen>,
}

impl Search<'_> {
    fn insert_seed(&mut self, seed: &[Gen]) {
        let idx = encode(self.rank, seed);
        let len = seed.len();
        match &mut self.class.storage {
            Storage::Dense { visited, .. } => {
                set(&mut visited[len], idx);
            }
            Storage::Sparse(s) => {
                s.insert((len as u8, idx));
            }
        }
        self.class.by_length[len] += 1;
    }

    /// Expands one word, recording new neighbors. Returns new keys when the
    /// storage is sparse.
    fn expand<R: Rewriter + ?Sized>(
        &mut self,
        len: usize,
        idx: u64,
        rewriter: &R,
        oracle: &mut dyn FnMut(&[Gen]) -> bool,
        fresh: &mut Vec<(u8, u64)>,
    ) -> Result<()> {
        let word = decode(self.rank, len, idx);
        self.letters.clear();
        self.letters.extend(word.iter().map(|&g| Letter::plain(g)));
        let letters = std::mem::take(&mut self.letters);
        let mut failure = None;
        let rank = self.rank;
        let class = &mut *self.class;
        let gens = &mut self.gens;
        rewriter.for_each_neighbor(&letters, self.max_len, &mut |next, kind| {
            if failure.is_some() {
                return;
            }
            let nlen = next.len();
            let nidx = next.iter().fold(0u64, |acc, l| acc * rank as u64 + l.gen() as u64);
            let is_new = match &class.storage {
                Storage::Dense { visited, .. } => !get(&visited[nlen], nidx),
                Storage::Sparse(s) => !s.contains(&(nlen as u8, nidx)),
            };
            if !is_new {
                return;
            }
            gens.clear();
            gens.extend(next.iter().map(|l| l.gen()));
            if next.iter().any(|l| l.is_primed()) || !oracle(gens) {
                failure = Some(CoxeterError::RelationEscapedSet {
                    kind: kind.to_string(),
                    from: PrimedWord(letters.clone()),
                    to: PrimedWord(next.to_vec()),
                });
                return;
            }
            match &mut class.storage {
                Storage::Dense { visited, .. } => {
                    set(&mut visited[nlen], nidx);
                }
                Storage::Sparse(s) => {
                    s.insert((nlen as u8, nidx));
                    fresh.push((nlen as u8, nidx));
                }
            }
            class.by_length[nlen] += 1;
        });
        self.letters = letters;
        if let Some(err) = failure {
            return Err(err);
        }
        if self.class.len() > self.limit {
            return Err(CoxeterError::ClosureBoundExceeded(self.limit as usize));
        }
        Ok(())
    }

    fn sweep<R: Rewriter + ?Sized>(
        &mut self,
        rewriter: &R,
        oracle: &mut dyn FnMut(&[Gen]) -> bool,
    ) -> Result<()> {
        let mut unused = Vec::new();
        loop {
            let mut progress = false;
            for len in 0..=self.max_len {
                let blocks = match &self.class.storage {
                    Storage::Dense { visited, .. } => visited[len].len(),
                    Storage::Sparse(_) => unreachable!("sweep runs on dense storage"),
                };
                for b in 0..blocks {
                    loop {
                        let pending = match &mut self.class.storage {
                            Storage::Dense { visited, expanded } => {
                                let pending = visited[len][b] & !expanded[len][b];
                                if pending == 0 {
                                    break;
                                }
                                let bit = pending.trailing_zeros();
                                expanded[len][b] |= 1 << bit;
                                b as u64 * 64 + bit as u64
                            }
                            Storage::Sparse(_) => unreachable!("sweep runs on dense storage"),
                        };
                        progress = true;
                        self.expand(len, pending, rewriter, oracle, &mut unused)?;
                    }
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }

    fn breadth_first<R: Rewriter + ?Sized>(
        &mut self,
        seed: &[Gen],
        rewriter: &R,
        oracle: &mut dyn FnMut(&[Gen]) -> bool,
    ) -> Result<()> {
        let mut queue = VecDeque::from([(seed.len() as u8, encode(self.rank, seed))]);
        let mut fresh = Vec::new();
        while let Some((len, idx)) = queue.pop_front() {
            fresh.clear();
            self.expand(len as usize, idx, rewriter, oracle, &mut fresh)?;
            queue.extend(fresh.iter().copied());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::closure::{equivalence_class, ClosureOptions};
    use crate::rewriting::schema::plain;
    use crate::rewriting::{RelationSet, Rule};
    use crate::system::CoxeterSystem;

    #[test]
    fn encoding_round_trips() {
        let w = vec![2, 0, 1, 1];
        assert_eq!(decode(3, 4, encode(3, &w)), w);
        assert_eq!(decode(3, 0, 0), Vec::<Gen>::new());
    }

    #[test]
    fn agrees_with_hash_closure() {
        let a3 = CoxeterSystem::type_a(3).unwrap();
        let set = RelationSet::braid(&a3).with_rule(Rule::Idempotent);
        let seed = [0, 1, 0, 2];
        let packed = packed_class(&seed, 3, &set, 6, u64::MAX, &mut |_| true).unwrap();
        let hashed = equivalence_class(&plain(&seed), &set, ClosureOptions::new(6), None).unwrap();
        assert_eq!(packed.len(), hashed.len() as u64);
        let mut expected: Vec<Vec<Gen>> = hashed.iter().map(|w| w.unprimed().0).collect();
        expected.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        assert_eq!(packed.words(), expected);
        assert!(packed.contains(&[0, 0, 1, 0, 2]));
        assert!(!packed.contains(&[1, 1]));
    }

    #[test]
    fn oracle_and_limit() {
        let a2 = CoxeterSystem::type_a(2).unwrap();
        let set = RelationSet::braid(&a2);
        let err = packed_class(&[0, 1, 0], 2, &set, 3, u64::MAX, &mut |w| w[0] == 0);
        assert!(matches!(err, Err(CoxeterError::RelationEscapedSet { .. })));
        let err = packed_class(&[0, 1, 0], 2, &set, 3, 1, &mut |_| true);
        assert!(matches!(err, Err(CoxeterError::ClosureBoundExceeded(1))));
    }
}

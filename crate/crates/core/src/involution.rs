//! Twisted involutions and the word sets attached to them: involution
//! words, primed involution words, Hecke atoms and involution Hecke words.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::error::{CoxeterError, Result};
use crate::group::{mask_gens, CoxeterGroup};
use crate::parabolic::{self, ParabolicSubset, DEFAULT_PARABOLIC_LIMIT};
use crate::system::CoxeterSystem;
use crate::table::ElementTable;
use crate::word::{Gen, PrimedWord, Word};

/// Environment variable overriding [`EngineConfig::cache_limit`].
pub const CACHE_LIMIT_VAR: &str = "COXWORD_CACHE_LIMIT";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Entries kept per memo table before it is flushed.
    pub cache_limit: usize,
    /// Largest equivalence class a closure may build.
    pub closure_limit: usize,
    /// Largest parabolic subgroup that may be enumerated.
    pub parabolic_limit: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cache_limit: 1 << 20,
            closure_limit: 1_000_000,
            parabolic_limit: DEFAULT_PARABOLIC_LIMIT,
        }
    }
}

impl EngineConfig {
    /// Defaults, with the cache limit taken from the environment when set.
    pub fn from_env() -> Self {
        let mut config = Self::default();
        if let Some(limit) = std::env::var(CACHE_LIMIT_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok())
        {
            config.cache_limit = limit.max(1);
        }
        config
    }
}

/// A bounded memo table.
struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
    limit: usize,
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    fn new(limit: usize) -> Self {
        Memo { map: RwLock::new(HashMap::new()), limit }
    }

    fn get(&self, k: &K) -> Option<V> {
        self.map.read().unwrap().get(k).cloned()
    }

    fn insert(&self, k: K, v: V) {
        let mut map = self.map.write().unwrap();
        if map.len() >= self.limit {
            map.clear();
        }
        map.insert(k, v);
    }
}

/// Word combinatorics over one group backend, with shared memo tables.
pub struct Engine<G: CoxeterGroup> {
    group: G,
    config: EngineConfig,
    inv_words: Memo<G::Elem, Arc<Vec<Word>>>,
    red_words: Memo<G::Elem, Arc<Vec<Word>>>,
    rho: Memo<G::Elem, usize>,
    suffixes: Memo<Vec<Gen>, Option<u64>>,
}

impl<G: CoxeterGroup> Engine<G> {
    pub fn new(group: G) -> Self {
        Self::with_config(group, EngineConfig::from_env())
    }

    pub fn with_config(group: G, config: EngineConfig) -> Self {
        Engine {
            group,
            config,
            inv_words: Memo::new(config.cache_limit),
            red_words: Memo::new(config.cache_limit),
            rho: Memo::new(config.cache_limit),
            suffixes: Memo::new(config.cache_limit),
        }
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.group.system()
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn table(&self) -> ElementTable<'_, G> {
        ElementTable::new(&self.group)
    }

    pub fn is_twisted_involution(&self, z: &G::Elem) -> bool {
        self.group.inverse(z) == self.group.star_elem(z)
    }

    pub fn check_twisted(&self, z: &G::Elem) -> Result<()> {
        if self.is_twisted_involution(z) {
            Ok(())
        } else {
            Err(CoxeterError::NotTwistedInvolution)
        }
    }

    /// `z s̲`: `zs` if `zs = s* z`, otherwise `s* z s`.
    pub fn underline_act(&self, z: &G::Elem, s: Gen) -> G::Elem {
        let g = &self.group;
        let star = self.system().star(s);
        let zs = g.multiply_gen(z, s);
        if zs == g.gen_multiply(star, z) {
            zs
        } else {
            g.gen_multiply(star, &zs)
        }
    }

    /// `s* ∘ z ∘ s`.
    pub fn demazure_twist(&self, z: &G::Elem, s: Gen) -> G::Elem {
        if self.group.is_right_descent(z, s) {
            z.clone()
        } else {
            self.underline_act(z, s)
        }
    }

    /// `s_n* ∘ ... ∘ s_1* ∘ s_1 ∘ ... ∘ s_n`.
    pub fn twisted_fold(&self, word: &[Gen]) -> G::Elem {
        word.iter().fold(self.group.identity(), |z, &s| self.demazure_twist(&z, s))
    }

    /// Whether `s_i* y = y s_i` where `y` is the fold of the first `i` letters.
    pub fn is_commutation_at(&self, y: &G::Elem, s: Gen) -> bool {
        self.group.multiply_gen(y, s) == self.group.gen_multiply(self.system().star(s), y)
    }

    /// `ρ(z)`, the common length of the involution words of `z`.
    pub fn rho(&self, z: &G::Elem) -> usize {
        if let Some(r) = self.rho.get(z) {
            return r;
        }
        let r = match mask_gens(self.group.right_descents(z)).next() {
            None => 0,
            Some(s) => 1 + self.rho(&self.underline_act(z, s)),
        };
        self.rho.insert(z.clone(), r);
        r
    }

    /// All involution words of a twisted involution `z`, sorted.
    pub fn involution_words(&self, z: &G::Elem) -> Arc<Vec<Word>> {
        if let Some(words) = self.inv_words.get(z) {
            return words;
        }
        let mut out = Vec::new();
        let desc = self.group.right_descents(z);
        if desc == 0 {
            out.push(Word::empty());
        }
        for s in mask_gens(desc) {
            let y = self.underline_act(z, s);
            for w in self.involution_words(&y).iter() {
                let mut letters = w.0.clone();
                letters.push(s);
                out.push(Word(letters));
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.inv_words.insert(z.clone(), out.clone());
        out
    }

    /// Whether `word` is an involution word for `z`.
    pub fn is_involution_word(&self, word: &[Gen], z: &G::Elem) -> bool {
        self.prefix_folds(word).is_some_and(|folds| folds.last() == Some(z))
    }

    /// Folds of all prefixes, or `None` if some letter fails to raise the length.
    fn prefix_folds(&self, word: &[Gen]) -> Option<Vec<G::Elem>> {
        let mut y = self.group.identity();
        let mut out = vec![y.clone()];
        for &s in word {
            if self.group.is_right_descent(&y, s) {
                return None;
            }
            y = self.underline_act(&y, s);
            out.push(y.clone());
        }
        Some(out)
    }

    /// The 0-based commutation indices of an involution word for `z`.
    pub fn commutations(&self, word: &[Gen], z: &G::Elem) -> Result<Vec<usize>> {
        let not_word = || CoxeterError::NotInvolutionWord(Word(word.to_vec()).to_string());
        let folds = self.prefix_folds(word).ok_or_else(not_word)?;
        if folds.last() != Some(z) {
            return Err(not_word());
        }
        Ok((0..word.len()).filter(|&i| self.is_commutation_at(&folds[i], word[i])).collect())
    }

    /// All primed involution words of `z`, sorted.
    pub fn primed_words(&self, z: &G::Elem) -> Vec<PrimedWord> {
        let mut out = Vec::new();
        for w in self.involution_words(z).iter() {
            let comms = self.commutations(&w.0, z).expect("enumerated words are involution words");
            for mask in 0u64..1 << comms.len() {
                let chosen: Vec<usize> = mask_gens(mask).map(|k| comms[k as usize]).collect();
                out.push(PrimedWord::with_primes(w, &chosen));
            }
        }
        out.sort();
        out
    }

    /// Twisted involutions with `ρ(z) ≤ rho_bound`, each with its `ρ`,
    /// ordered by `ρ` and then by reduced word.
    pub fn twisted_involutions(&self, rho_bound: usize) -> Vec<(G::Elem, usize)> {
        let g = &self.group;
        let mut seen: HashSet<G::Elem> = HashSet::new();
        let mut layer = vec![g.identity()];
        seen.insert(g.identity());
        let mut out = Vec::new();
        let mut rho = 0;
        loop {
            let mut keyed: Vec<_> = layer.iter().map(|z| (g.reduced_word(z), z.clone())).collect();
            keyed.sort();
            out.extend(keyed.into_iter().map(|(_, z)| (z, rho)));
            if rho == rho_bound {
                break;
            }
            let mut next = Vec::new();
            for z in &layer {
                for s in self.system().generators() {
                    if !g.is_right_descent(z, s) {
                        let y = self.underline_act(z, s);
                        if seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
            rho += 1;
        }
        out
    }

    /// All reduced words of `w`, sorted.
    pub fn reduced_words(&self, w: &G::Elem) -> Arc<Vec<Word>> {
        if let Some(words) = self.red_words.get(w) {
            return words;
        }
        let mut out = Vec::new();
        let desc = self.group.right_descents(w);
        if desc == 0 {
            out.push(Word::empty());
        }
        for s in mask_gens(desc) {
            let v = self.group.multiply_gen(w, s);
            for word in self.reduced_words(&v).iter() {
                let mut letters = word.0.clone();
                letters.push(s);
                out.push(Word(letters));
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.red_words.insert(w.clone(), out.clone());
        out
    }

    /// `B(z) = { w : (w⁻¹)* ∘ w = z }`, ordered by length and reduced word.
    ///
    /// The search runs over `ℓ(w) ≤ ℓ(z)`; one extra layer is searched to
    /// confirm that no atom is longer than `z`.
    pub fn hecke_atoms(&self, z: &G::Elem) -> Result<Vec<G::Elem>> {
        let g = &self.group;
        let mut table = self.table();
        let target = table.id(z);
        let lz = g.length(z);
        // (w, id of (w⁻¹)* ∘ w)
        let mut layer: Vec<(G::Elem, u32)> = vec![(g.identity(), table.identity())];
        let mut seen: HashSet<G::Elem> = HashSet::new();
        seen.insert(g.identity());
        let mut atoms = Vec::new();
        for length in 0..=lz + 1 {
            let hits: Vec<G::Elem> =
                layer.iter().filter(|(_, f)| *f == target).map(|(w, _)| w.clone()).collect();
            if length > lz {
                if !hits.is_empty() {
                    return Err(CoxeterError::AtomBoundViolated(length));
                }
                break;
            }
            atoms.extend(hits);
            let mut next = Vec::new();
            for (w, f) in &layer {
                for s in self.system().generators() {
                    if g.is_right_descent(w, s) {
                        continue;
                    }
                    let f2 = table.twist(*f, s);
                    let lf = table.length(f2);
                    if lf > lz || (lf == lz && f2 != target) {
                        continue;
                    }
                    let ws = g.multiply_gen(w, s);
                    if seen.insert(ws.clone()) {
                        next.push((ws, f2));
                    }
                }
            }
            layer = next;
        }
        let mut keyed: Vec<_> = atoms.into_iter().map(|w| (g.length(&w), g.reduced_word(&w), w)).collect();
        keyed.sort();
        Ok(keyed.into_iter().map(|(_, _, w)| w).collect())
    }

    /// `H^red(z)`: reduced words whose twisted fold is `z`, sorted.
    pub fn reduced_hecke_words(&self, z: &G::Elem) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for w in self.hecke_atoms(z)? {
            out.extend(self.reduced_words(&w).iter().cloned());
        }
        out.sort();
        Ok(out)
    }

    /// Words of length at most `max_len` whose twisted fold is `z`, sorted.
    pub fn hecke_words(&self, z: &G::Elem, max_len: usize) -> Vec<Word> {
        let mut table = self.table();
        let target = table.id(z);
        let lz = table.length(target);
        let rank = self.system().rank() as Gen;
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<Gen>, u32)> = vec![(Vec::new(), table.identity())];
        while let Some((word, y)) = stack.pop() {
            if y == target {
                out.push(Word(word.clone()));
            }
            if word.len() == max_len {
                continue;
            }
            for s in 0..rank {
                let y2 = table.twist(y, s);
                let l = table.length(y2);
                if l > lz || (l == lz && y2 != target) {
                    continue;
                }
                let mut next = word.clone();
                next.push(s);
                stack.push((next, y2));
            }
        }
        out.sort();
        out
    }

    /// `|H(z)|` restricted to words of length at most `max_len`.
    pub fn count_hecke_words(&self, z: &G::Elem, max_len: usize) -> u128 {
        let mut table = self.table();
        let target = table.id(z);
        let lz = table.length(target);
        let rank = self.system().rank() as Gen;
        let mut layer: HashMap<u32, u128> = HashMap::from([(table.identity(), 1)]);
        let mut total = 0u128;
        for length in 0..=max_len {
            total += layer.get(&target).copied().unwrap_or(0);
            if length == max_len {
                break;
            }
            let mut next: HashMap<u32, u128> = HashMap::new();
            for (&y, &count) in &layer {
                for s in 0..rank {
                    let y2 = table.twist(y, s);
                    let l = table.length(y2);
                    if l > lz || (l == lz && y2 != target) {
                        continue;
                    }
                    *next.entry(y2).or_insert(0) += count;
                }
            }
            layer = next;
        }
        total
    }

    /// `w_0^J`.
    pub fn longest_element(&self, j: ParabolicSubset) -> Result<G::Elem> {
        parabolic::longest_element(&self.group, j, self.config.parabolic_limit)
    }

    /// Left descent set of the product of `word` if the word is reduced.
    pub fn reduced_left_descents(&self, word: &[Gen]) -> Option<u64> {
        if let Some(v) = self.suffixes.get(&word.to_vec()) {
            return v;
        }
        let g = &self.group;
        let mut w = g.identity();
        let mut reduced = true;
        for &s in word {
            if g.is_right_descent(&w, s) {
                reduced = false;
                break;
            }
            w = g.multiply_gen(&w, s);
        }
        let v = reduced.then(|| g.left_descents(&w));
        self.suffixes.insert(word.to_vec(), v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::GenericGroup;
    use crate::perm::{PermGroup, Window};
    use crate::system::Order;

    fn twisted_a3() -> Engine<PermGroup> {
        Engine::new(PermGroup::symmetric(4, true).unwrap())
    }

    #[test]
    fn underline_on_identity() {
        let e = Engine::new(GenericGroup::new(CoxeterSystem::twisted_a(3).unwrap()));
        let id = e.group().identity();
        assert_eq!(e.underline_act(&id, 1), e.group().generator(1));
        // s* s for s = s_1
        assert_eq!(e.underline_act(&id, 0), e.group().element(&[2, 0]));
    }

    #[test]
    fn twisted_example_words() {
        let e = twisted_a3();
        let z = Window(vec![4, 3, 2, 1]);
        let words: Vec<String> = e.involution_words(&z).iter().map(|w| w.to_string()).collect();
        let mut expected = vec!["2123", "1213", "1231", "3213", "3231", "2321", "2312", "2132"];
        expected.sort();
        assert_eq!(words, expected);
        assert_eq!(e.rho(&z), 4);
    }

    #[test]
    fn commutation_count() {
        let e = Engine::new(PermGroup::symmetric(4, false).unwrap());
        let z = Window(vec![4, 3, 2, 1]);
        let words = e.involution_words(&z);
        for w in words.iter() {
            let c = e.commutations(&w.0, &z).unwrap();
            assert_eq!(c.len(), 2 * e.rho(&z) - 6);
        }
        assert!(e.commutations(&[0, 0], &z).is_err());
        assert_eq!(e.primed_words(&z).len(), words.len() << (2 * e.rho(&z) - 6));
    }

    #[test]
    fn dihedral_longest_element() {
        let e = Engine::new(GenericGroup::new(CoxeterSystem::dihedral(Order::Finite(4)).unwrap()));
        let w0 = e.group().element(&[0, 1, 0, 1]);
        let words: Vec<Word> = e.involution_words(&w0).to_vec();
        assert_eq!(words, vec![Word(vec![0, 1, 0]), Word(vec![1, 0, 1])]);
    }

    #[test]
    fn hecke_sets() {
        let e = Engine::new(GenericGroup::new(CoxeterSystem::type_a(1).unwrap()));
        let s = e.group().generator(0);
        assert_eq!(e.hecke_words(&s, 2), vec![Word(vec![0]), Word(vec![0, 0])]);
        assert_eq!(e.count_hecke_words(&s, 2), 2);
        let id = e.group().identity();
        assert_eq!(e.hecke_words(&id, 3), vec![Word::empty()]);
        assert_eq!(e.hecke_atoms(&id).unwrap(), vec![id.clone()]);
    }

    #[test]
    fn twisted_involution_counts() {
        let e = Engine::new(PermGroup::symmetric(4, false).unwrap());
        assert_eq!(e.twisted_involutions(usize::MAX).len(), 10);
        assert_eq!(e.twisted_involutions(0).len(), 1);
    }

    #[test]
    fn reduced_hecke_contains_involution_words() {
        let e = Engine::new(PermGroup::symmetric(4, false).unwrap());
        let z = Window(vec![4, 3, 2, 1]);
        let red = e.reduced_hecke_words(&z).unwrap();
        for w in e.involution_words(&z).iter() {
            assert!(red.binary_search(w).is_ok());
        }
        let filtered: Vec<Word> =
            e.hecke_words(&z, 6).into_iter().filter(|w| e.group().is_reduced(&w.0)).collect();
        assert_eq!(filtered, red);
    }
}

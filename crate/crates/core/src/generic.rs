//! Generic backend: an element is its lexicographically least reduced word.
//!
//! The reduced words of an element form a single braid class, so the
//! canonical form is found by a breadth-first search over braid moves.
//! Products `ws` and `sw` and the descent sets are memoized per element.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::group::CoxeterGroup;
use crate::system::CoxeterSystem;
use crate::word::{Gen, Word};

/// Default cap on the number of memoized braid classes.
pub const DEFAULT_CLASS_LIMIT: usize = 200_000;

/// The canonical (lexicographically least) reduced word of an element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenericElement(Arc<[Gen]>);

impl GenericElement {
    pub fn word(&self) -> Word {
        Word(self.0.to_vec())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for GenericElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for GenericElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GenericElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("e")
        } else {
            write!(f, "{}", self.word())
        }
    }
}

struct Node {
    right: Vec<Option<GenericElement>>,
    left: Vec<Option<GenericElement>>,
    right_desc: u64,
    left_desc: u64,
}

#[derive(Default)]
struct State {
    nodes: HashMap<GenericElement, Node>,
    classes: HashMap<GenericElement, Arc<Vec<Word>>>,
}

pub struct GenericGroup {
    system: CoxeterSystem,
    state: RwLock<State>,
    class_limit: usize,
}

impl GenericGroup {
    pub fn new(system: CoxeterSystem) -> Self {
        Self::with_class_limit(system, DEFAULT_CLASS_LIMIT)
    }

    pub fn with_class_limit(system: CoxeterSystem, class_limit: usize) -> Self {
        let group =
            GenericGroup { system, state: RwLock::new(State::default()), class_limit: class_limit.max(1) };
        group.register(vec![Word::empty()]);
        group
    }

    /// Number of elements materialized so far.
    pub fn known_elements(&self) -> usize {
        self.state.read().unwrap().nodes.len()
    }

    /// All reduced words of `w` (its braid class), sorted.
    pub fn braid_class(&self, w: &GenericElement) -> Arc<Vec<Word>> {
        if let Some(c) = self.state.read().unwrap().classes.get(w) {
            return c.clone();
        }
        let class = Arc::new(braid_closure(&self.system, w.letters()));
        self.store_class(w.clone(), class.clone());
        class
    }

    fn store_class(&self, w: GenericElement, class: Arc<Vec<Word>>) {
        let mut st = self.state.write().unwrap();
        if st.classes.len() >= self.class_limit {
            st.classes.clear();
        }
        st.classes.insert(w, class);
    }

    // `class` must be a complete braid class in sorted order.
    fn register(&self, class: Vec<Word>) -> GenericElement {
        let canonical = GenericElement(Arc::from(class[0].letters()));
        {
            let st = self.state.read().unwrap();
            if st.nodes.contains_key(&canonical) {
                return canonical;
            }
        }
        let rank = self.system.rank();
        let mut right_desc = 0u64;
        let mut left_desc = 0u64;
        for w in &class {
            if let (Some(&first), Some(&last)) = (w.0.first(), w.0.last()) {
                left_desc |= 1 << first;
                right_desc |= 1 << last;
            }
        }
        let node = Node { right: vec![None; rank], left: vec![None; rank], right_desc, left_desc };
        let mut st = self.state.write().unwrap();
        st.nodes.entry(canonical.clone()).or_insert(node);
        if st.classes.len() >= self.class_limit {
            st.classes.clear();
        }
        st.classes.insert(canonical.clone(), Arc::new(class));
        canonical
    }

    fn descents(&self, w: &GenericElement) -> (u64, u64) {
        if let Some(n) = self.state.read().unwrap().nodes.get(w) {
            return (n.right_desc, n.left_desc);
        }
        // An element built elsewhere: adopt it from its word.
        let class = braid_closure(&self.system, w.letters());
        let adopted = self.register(class);
        let st = self.state.read().unwrap();
        let n = &st.nodes[&adopted];
        (n.right_desc, n.left_desc)
    }

    fn product(&self, w: &GenericElement, s: Gen, on_right: bool) -> GenericElement {
        {
            let st = self.state.read().unwrap();
            if let Some(n) = st.nodes.get(w) {
                let cached = if on_right { &n.right[s as usize] } else { &n.left[s as usize] };
                if let Some(r) = cached {
                    return r.clone();
                }
            }
        }
        let (rd, ld) = self.descents(w);
        let is_descent = if on_right { rd >> s & 1 == 1 } else { ld >> s & 1 == 1 };
        let result = if is_descent {
            let class = self.braid_class(w);
            let shorter: Vec<Word> = class
                .iter()
                .filter(|word| if on_right { word.0.last() == Some(&s) } else { word.0.first() == Some(&s) })
                .map(|word| {
                    if on_right {
                        Word(word.0[..word.len() - 1].to_vec())
                    } else {
                        Word(word.0[1..].to_vec())
                    }
                })
                .collect();
            let mut shorter = shorter;
            if !on_right {
                shorter.sort();
            }
            self.register(shorter)
        } else {
            let mut letters = Vec::with_capacity(w.len() + 1);
            if on_right {
                letters.extend_from_slice(w.letters());
                letters.push(s);
            } else {
                letters.push(s);
                letters.extend_from_slice(w.letters());
            }
            self.register(braid_closure(&self.system, &letters))
        };
        let mut st = self.state.write().unwrap();
        for (from, to) in [(w, &result), (&result, w)] {
            if let Some(n) = st.nodes.get_mut(from) {
                let slot = if on_right { &mut n.right[s as usize] } else { &mut n.left[s as usize] };
                *slot = Some(to.clone());
            }
        }
        result
    }
}

impl CoxeterGroup for GenericGroup {
    type Elem = GenericElement;

    fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    fn identity(&self) -> GenericElement {
        GenericElement(Arc::from(Vec::new()))
    }

    fn multiply_gen(&self, w: &GenericElement, s: Gen) -> GenericElement {
        self.product(w, s, true)
    }

    fn gen_multiply(&self, s: Gen, w: &GenericElement) -> GenericElement {
        self.product(w, s, false)
    }

    fn length(&self, w: &GenericElement) -> usize {
        w.len()
    }

    fn reduced_word(&self, w: &GenericElement) -> Word {
        w.word()
    }

    fn is_right_descent(&self, w: &GenericElement, s: Gen) -> bool {
        self.descents(w).0 >> s & 1 == 1
    }

    fn is_left_descent(&self, s: Gen, w: &GenericElement) -> bool {
        self.descents(w).1 >> s & 1 == 1
    }

    fn right_descents(&self, w: &GenericElement) -> u64 {
        self.descents(w).0
    }

    fn left_descents(&self, w: &GenericElement) -> u64 {
        self.descents(w).1
    }
}

/// All words reachable from a reduced word by braid moves, sorted.
pub(crate) fn braid_closure(system: &CoxeterSystem, word: &[Gen]) -> Vec<Word> {
    let mut seen: HashSet<Vec<Gen>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let (s, t) = (w[i], w[i + 1]);
            if s == t {
                continue;
            }
            let Some(m) = system.m(s, t).finite() else {
                continue;
            };
            let m = m as usize;
            if i + m > w.len() {
                continue;
            }
            let alternates = (0..m).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
            if !alternates {
                continue;
            }
            let mut next = w.clone();
            for k in 0..m {
                next[i + k] = if k % 2 == 0 { t } else { s };
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Word> = seen.into_iter().map(Word).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Order;

    #[test]
    fn identity_times_generator() {
        let g = GenericGroup::new(CoxeterSystem::type_a(3).unwrap());
        let s = g.multiply_gen(&g.identity(), 1);
        assert_eq!(g.length(&s), 1);
        assert_eq!(s.word(), Word(vec![1]));
        assert_eq!(g.multiply_gen(&s, 1), g.identity());
    }

    #[test]
    fn canonical_form_is_lex_least() {
        let g = GenericGroup::new(CoxeterSystem::type_a(2).unwrap());
        let w = g.element(&[1, 0, 1]);
        assert_eq!(w.word(), Word(vec![0, 1, 0]));
        assert_eq!(g.braid_class(&w).len(), 2);
    }

    #[test]
    fn left_and_right_products_agree() {
        let g = GenericGroup::new(CoxeterSystem::h3());
        let w = g.element(&[0, 1, 0, 2, 1]);
        for s in 0..3 {
            let left = g.gen_multiply(s, &w);
            let via_inverse = g.inverse(&g.multiply_gen(&g.inverse(&w), s));
            assert_eq!(left, via_inverse);
        }
    }

    #[test]
    fn small_class_limit_still_correct() {
        let big = GenericGroup::new(CoxeterSystem::bc3());
        let small = GenericGroup::with_class_limit(CoxeterSystem::bc3(), 2);
        let word = [0, 1, 0, 2, 1, 0, 1, 2, 1];
        assert_eq!(big.element(&word), small.element(&word));
        assert_eq!(big.length(&big.element(&word)), 9);
    }

    #[test]
    fn infinite_dihedral_never_wraps() {
        let g = GenericGroup::new(CoxeterSystem::dihedral(Order::Infinite).unwrap());
        let w = g.element(&[0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(g.length(&w), 8);
        assert_eq!(g.braid_class(&w).len(), 1);
    }
}

//! Backend-neutral element arithmetic.
//!
//! Every algorithm in the crate is written against [`CoxeterGroup`]; the
//! generic braid-class backend and the window backend both implement it.

use std::fmt::Debug;
use std::hash::Hash;

use crate::system::CoxeterSystem;
use crate::word::{Gen, Word};

pub trait CoxeterGroup: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn system(&self) -> &CoxeterSystem;

    fn identity(&self) -> Self::Elem;

    /// `ws`.
    fn multiply_gen(&self, w: &Self::Elem, s: Gen) -> Self::Elem;

    /// `sw`.
    fn gen_multiply(&self, s: Gen, w: &Self::Elem) -> Self::Elem;

    fn length(&self, w: &Self::Elem) -> usize;

    /// A reduced word for `w`. Deterministic for a given element.
    fn reduced_word(&self, w: &Self::Elem) -> Word;

    fn rank(&self) -> usize {
        self.system().rank()
    }

    fn is_identity(&self, w: &Self::Elem) -> bool {
        self.length(w) == 0
    }

    fn is_right_descent(&self, w: &Self::Elem, s: Gen) -> bool {
        self.length(&self.multiply_gen(w, s)) < self.length(w)
    }

    fn is_left_descent(&self, s: Gen, w: &Self::Elem) -> bool {
        self.length(&self.gen_multiply(s, w)) < self.length(w)
    }

    fn right_descents(&self, w: &Self::Elem) -> u64 {
        self.system().generators().filter(|&s| self.is_right_descent(w, s)).fold(0, |acc, s| acc | 1 << s)
    }

    fn left_descents(&self, w: &Self::Elem) -> u64 {
        self.system().generators().filter(|&s| self.is_left_descent(s, w)).fold(0, |acc, s| acc | 1 << s)
    }

    fn generator(&self, s: Gen) -> Self::Elem {
        self.multiply_gen(&self.identity(), s)
    }

    /// The product `s_1 s_2 ... s_k` of an arbitrary word.
    fn element(&self, word: &[Gen]) -> Self::Elem {
        word.iter().fold(self.identity(), |w, &s| self.multiply_gen(&w, s))
    }

    fn multiply(&self, v: &Self::Elem, w: &Self::Elem) -> Self::Elem {
        self.reduced_word(w).letters().iter().fold(v.clone(), |acc, &s| self.multiply_gen(&acc, s))
    }

    fn inverse(&self, w: &Self::Elem) -> Self::Elem {
        self.element(self.reduced_word(w).reversed().letters())
    }

    /// `w*`, applying the diagram involution letterwise to a reduced word.
    fn star_elem(&self, w: &Self::Elem) -> Self::Elem {
        let sys = self.system();
        let starred: Vec<Gen> = self.reduced_word(w).letters().iter().map(|&s| sys.star(s)).collect();
        self.element(&starred)
    }

    /// Demazure product `v ∘ w`: fold multiply-or-absorb over a reduced word of `w`.
    fn demazure(&self, v: &Self::Elem, w: &Self::Elem) -> Self::Elem {
        self.reduced_word(w).letters().iter().fold(v.clone(), |acc, &s| {
            if self.is_right_descent(&acc, s) {
                acc
            } else {
                self.multiply_gen(&acc, s)
            }
        })
    }

    /// Whether the word is reduced, checked one letter at a time.
    fn is_reduced(&self, word: &[Gen]) -> bool {
        let mut w = self.identity();
        for &s in word {
            if self.is_right_descent(&w, s) {
                return false;
            }
            w = self.multiply_gen(&w, s);
        }
        true
    }
}

/// Generator indices set in a bitmask.
pub fn mask_gens(mask: u64) -> impl Iterator<Item = Gen> {
    (0..64u8).filter(move |&s| mask >> s & 1 == 1)
}

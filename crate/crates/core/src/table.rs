//! Lazily grown dense index of group elements.
//!
//! Hot loops (closures, word counting, atom search) refer to elements by
//! `u32` ids and read products and descent sets out of flat arrays. Entries
//! are computed through the backend on first use.

use std::collections::HashMap;

use crate::group::CoxeterGroup;
use crate::word::Gen;

const UNKNOWN: u32 = u32::MAX;

pub struct ElementTable<'g, G: CoxeterGroup> {
    group: &'g G,
    rank: usize,
    star: Vec<Gen>,
    elems: Vec<G::Elem>,
    ids: HashMap<G::Elem, u32>,
    lengths: Vec<u32>,
    right_desc: Vec<u64>,
    left_desc: Vec<u64>,
    right: Vec<u32>,
    twist: Vec<u32>,
}

impl<'g, G: CoxeterGroup> ElementTable<'g, G> {
    pub fn new(group: &'g G) -> Self {
        let system = group.system();
        let mut table = ElementTable {
            group,
            rank: system.rank(),
            star: system.generators().map(|s| system.star(s)).collect(),
            elems: Vec::new(),
            ids: HashMap::new(),
            lengths: Vec::new(),
            right_desc: Vec::new(),
            left_desc: Vec::new(),
            right: Vec::new(),
            twist: Vec::new(),
        };
        table.id(&group.identity());
        table
    }

    pub fn group(&self) -> &'g G {
        self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The id of the identity element.
    pub fn identity(&self) -> u32 {
        0
    }

    pub fn id(&mut self, w: &G::Elem) -> u32 {
        if let Some(&id) = self.ids.get(w) {
            return id;
        }
        let id = self.elems.len() as u32;
        self.elems.push(w.clone());
        self.ids.insert(w.clone(), id);
        self.lengths.push(self.group.length(w) as u32);
        self.right_desc.push(self.group.right_descents(w));
        self.left_desc.push(self.group.left_descents(w));
        self.right.extend(std::iter::repeat_n(UNKNOWN, self.rank));
        self.twist.extend(std::iter::repeat_n(UNKNOWN, self.rank));
        id
    }

    pub fn elem(&self, id: u32) -> &G::Elem {
        &self.elems[id as usize]
    }

    pub fn length(&self, id: u32) -> usize {
        self.lengths[id as usize] as usize
    }

    pub fn right_descents(&self, id: u32) -> u64 {
        self.right_desc[id as usize]
    }

    pub fn left_descents(&self, id: u32) -> u64 {
        self.left_desc[id as usize]
    }

    pub fn is_right_descent(&self, id: u32, s: Gen) -> bool {
        self.right_desc[id as usize] >> s & 1 == 1
    }

    /// `ws`.
    pub fn right(&mut self, id: u32, s: Gen) -> u32 {
        let slot = id as usize * self.rank + s as usize;
        let cached = self.right[slot];
        if cached != UNKNOWN {
            return cached;
        }
        let ws = self.group.multiply_gen(&self.elems[id as usize], s);
        let next = self.id(&ws);
        self.right[slot] = next;
        self.right[next as usize * self.rank + s as usize] = id;
        next
    }

    /// `s* ∘ z ∘ s` for a twisted involution `z`.
    pub fn twist(&mut self, id: u32, s: Gen) -> u32 {
        let slot = id as usize * self.rank + s as usize;
        let cached = self.twist[slot];
        if cached != UNKNOWN {
            return cached;
        }
        let next = if self.is_right_descent(id, s) {
            id
        } else {
            let z = &self.elems[id as usize];
            let zs = self.group.multiply_gen(z, s);
            let sz = self.group.gen_multiply(self.star[s as usize], z);
            let y = if zs == sz { zs } else { self.group.gen_multiply(self.star[s as usize], &zs) };
            self.id(&y)
        };
        self.twist[slot] = next;
        next
    }

    /// Fold of `s_n* ∘ ... ∘ s_1* ∘ s_1 ∘ ... ∘ s_n`.
    pub fn fold(&mut self, word: &[Gen]) -> u32 {
        word.iter().fold(self.identity(), |z, &s| self.twist(z, s))
    }

    /// The product of a word when it is reduced.
    pub fn reduced_product(&mut self, word: &[Gen]) -> Option<u32> {
        let mut w = self.identity();
        for &s in word {
            if self.is_right_descent(w, s) {
                return None;
            }
            w = self.right(w, s);
        }
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::GenericGroup;
    use crate::system::CoxeterSystem;

    #[test]
    fn fold_and_products() {
        let g = GenericGroup::new(CoxeterSystem::twisted_a(3).unwrap());
        let mut t = ElementTable::new(&g);
        let z = t.fold(&[1, 0, 1, 2]);
        assert_eq!(t.length(z), 6);
        assert_eq!(t.fold(&[1, 0, 1, 2, 2, 1]), z);
        assert!(t.reduced_product(&[0, 0]).is_none());
        let w = t.reduced_product(&[0, 1, 0]).unwrap();
        assert_eq!(t.length(w), 3);
        assert_eq!(t.right(w, 0), t.reduced_product(&[0, 1]).unwrap());
    }
}

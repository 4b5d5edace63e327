//! Parabolic subsets, longest elements, coset representatives and the
//! classification of small `*`-invariant parabolics.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};
use crate::group::{mask_gens, CoxeterGroup};
use crate::system::{CoxeterSystem, Order};
use crate::word::Gen;

/// Default bound on the size of an enumerated parabolic subgroup.
pub const DEFAULT_PARABOLIC_LIMIT: usize = 10_000;

/// A subset `J ⊆ S` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicSubset(pub u64);

impl ParabolicSubset {
    pub fn new(gens: impl IntoIterator<Item = Gen>) -> Self {
        ParabolicSubset(gens.into_iter().fold(0, |acc, s| acc | 1 << s))
    }

    pub fn full(system: &CoxeterSystem) -> Self {
        Self::new(system.generators())
    }

    pub fn contains(self, s: Gen) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn gens(self) -> impl Iterator<Item = Gen> {
        mask_gens(self.0)
    }

    pub fn is_star_invariant(self, system: &CoxeterSystem) -> bool {
        self.gens().all(|s| self.contains(system.star(s)))
    }

    /// All `*`-invariant subsets with at most `max_size` elements, in mask order.
    pub fn star_invariant_subsets(system: &CoxeterSystem, max_size: usize) -> Vec<Self> {
        let rank = system.rank();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, u64)> = vec![(0, 0)];
        while let Some((next, mask)) = stack.pop() {
            let j = ParabolicSubset(mask);
            if !j.is_empty() && j.is_star_invariant(system) {
                out.push(j);
            }
            if j.len() >= max_size {
                continue;
            }
            for s in next..rank {
                stack.push((s + 1, mask | 1 << s));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.gens().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s as usize + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J{self}")
    }
}

/// All elements of length at most `max_length`, ordered by length and then
/// by reduced word.
pub fn enumerate_group<G: CoxeterGroup>(g: &G, max_length: usize) -> Vec<G::Elem> {
    let gens: Vec<Gen> = g.system().generators().collect();
    bfs_layers(g, &gens, max_length, usize::MAX).0
}

/// All elements of `W_J`, or `InfiniteParabolic` past `limit` elements.
pub fn enumerate_parabolic<G: CoxeterGroup>(g: &G, j: ParabolicSubset, limit: usize) -> Result<Vec<G::Elem>> {
    check_finite_orders(g.system(), j)?;
    let gens: Vec<Gen> = j.gens().collect();
    let (elems, complete) = bfs_layers(g, &gens, usize::MAX, limit);
    if complete {
        Ok(elems)
    } else {
        Err(CoxeterError::InfiniteParabolic(j.to_string()))
    }
}

/// The longest element `w_0^J` of a finite parabolic subgroup.
pub fn longest_element<G: CoxeterGroup>(g: &G, j: ParabolicSubset, limit: usize) -> Result<G::Elem> {
    let elems = enumerate_parabolic(g, j, limit)?;
    Ok(elems.last().cloned().expect("W_J contains the identity"))
}

/// `ℓ(sw) > ℓ(w)` for every `s ∈ J`.
pub fn is_min_coset_rep<G: CoxeterGroup>(g: &G, w: &G::Elem, j: ParabolicSubset) -> bool {
    g.left_descents(w) & j.0 == 0
}

// Rejects `J` early when some `m(s, t)` is infinite or when the cosine
// matrix `-cos(π / m(s, t))` is not positive definite; either way `W_J` is
// infinite. The enumeration bound still applies to everything that passes.
fn check_finite_orders(system: &CoxeterSystem, j: ParabolicSubset) -> Result<()> {
    let gens: Vec<Gen> = j.gens().collect();
    let infinite = || CoxeterError::InfiniteParabolic(j.to_string());
    let k = gens.len();
    let mut a = vec![vec![0f64; k]; k];
    for (x, &s) in gens.iter().enumerate() {
        for (y, &t) in gens.iter().enumerate() {
            let m = system.m(s, t).finite().ok_or_else(infinite)?;
            a[x][y] = -(std::f64::consts::PI / m as f64).cos();
        }
    }
    // Cholesky pivots
    for x in 0..k {
        for y in 0..=x {
            let mut sum = a[x][y];
            for z in 0..y {
                sum -= a[x][z] * a[y][z];
            }
            if x == y {
                if sum <= 1e-9 {
                    return Err(infinite());
                }
                a[x][x] = sum.sqrt();
            } else {
                a[x][y] = sum / a[y][y];
            }
        }
    }
    Ok(())
}

// Returns the elements and whether the search finished within both bounds.
fn bfs_layers<G: CoxeterGroup>(g: &G, gens: &[Gen], max_length: usize, limit: usize) -> (Vec<G::Elem>, bool) {
    let mut seen: HashSet<G::Elem> = HashSet::new();
    let mut out = Vec::new();
    let mut layer = vec![g.identity()];
    seen.insert(g.identity());
    let mut length = 0;
    loop {
        let mut keyed: Vec<_> = layer.iter().map(|w| (g.reduced_word(w), w.clone())).collect();
        keyed.sort();
        out.extend(keyed.into_iter().map(|(_, w)| w));
        if out.len() > limit {
            return (out, false);
        }
        if length == max_length {
            return (out, true);
        }
        let mut next = Vec::new();
        for w in &layer {
            for &s in gens {
                if !g.is_right_descent(w, s) {
                    let ws = g.multiply_gen(w, s);
                    if seen.insert(ws.clone()) {
                        next.push(ws);
                    }
                }
            }
        }
        if next.is_empty() {
            return (out, true);
        }
        layer = next;
        length += 1;
    }
}

/// Isomorphism types of small twisted parabolics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A1,
    A3Twisted,
    BC3,
    D4,
    H3,
    I2(Order),
    I2Twisted(Order),
    Other,
}

impl TypeLabel {
    /// The four types that break the half-braid description.
    pub fn is_exceptional(self) -> bool {
        matches!(self, TypeLabel::A3Twisted | TypeLabel::BC3 | TypeLabel::D4 | TypeLabel::H3)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::A1 => f.write_str("A1"),
            TypeLabel::A3Twisted => f.write_str("2A3"),
            TypeLabel::BC3 => f.write_str("BC3"),
            TypeLabel::D4 => f.write_str("D4"),
            TypeLabel::H3 => f.write_str("H3"),
            TypeLabel::I2(m) => write!(f, "I2({m})"),
            TypeLabel::I2Twisted(m) => write!(f, "2I2({m})"),
            TypeLabel::Other => f.write_str("other"),
        }
    }
}

/// A type together with every assignment of the letters `a, b, c, (d)` to
/// generators that matches the standard diagram for that type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub label: TypeLabel,
    pub labelings: Vec<Vec<Gen>>,
}

pub fn classify_twisted_type(system: &CoxeterSystem, j: ParabolicSubset) -> Result<Classification> {
    if !j.is_star_invariant(system) {
        return Err(CoxeterError::NotStarInvariant(j.to_string()));
    }
    let gens: Vec<Gen> = j.gens().collect();
    let m = |s: Gen, t: Gen| system.m(s, t);
    let f = Order::Finite;
    let other = Classification { label: TypeLabel::Other, labelings: Vec::new() };
    let fixed = gens.iter().all(|&s| system.star(s) == s);
    let out = match gens.len() {
        1 => Classification { label: TypeLabel::A1, labelings: vec![gens.clone()] },
        2 => {
            let (s, t) = (gens[0], gens[1]);
            let label = if fixed { TypeLabel::I2(m(s, t)) } else { TypeLabel::I2Twisted(m(s, t)) };
            Classification { label, labelings: vec![vec![s, t], vec![t, s]] }
        }
        3 => {
            let mut labelings = Vec::new();
            let mut label = TypeLabel::Other;
            for perm in permutations(&gens) {
                let (a, b, c) = (perm[0], perm[1], perm[2]);
                if m(a, c) != f(2) || m(b, c) != f(3) {
                    continue;
                }
                let found = match m(a, b) {
                    Order::Finite(3) if system.star(a) == c && system.star(b) == b => {
                        Some(TypeLabel::A3Twisted)
                    }
                    Order::Finite(4) if fixed => Some(TypeLabel::BC3),
                    Order::Finite(5) if fixed => Some(TypeLabel::H3),
                    _ => None,
                };
                if let Some(found) = found {
                    label = found;
                    labelings.push(perm);
                }
            }
            if labelings.is_empty() {
                other
            } else {
                Classification { label, labelings }
            }
        }
        4 if fixed => {
            let mut labelings = Vec::new();
            for perm in permutations(&gens) {
                let (a, b, c, d) = (perm[0], perm[1], perm[2], perm[3]);
                let leaves = [a, b, d];
                let star_ok = leaves.iter().all(|&x| m(x, c) == f(3));
                let leaves_commute = m(a, b) == f(2) && m(a, d) == f(2) && m(b, d) == f(2);
                if star_ok && leaves_commute {
                    labelings.push(perm);
                }
            }
            if labelings.is_empty() {
                other
            } else {
                Classification { label: TypeLabel::D4, labelings }
            }
        }
        _ => other,
    };
    Ok(out)
}

fn permutations(items: &[Gen]) -> Vec<Vec<Gen>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::GenericGroup;
    use crate::perm::PermGroup;

    #[test]
    fn longest_elements() {
        let g = GenericGroup::new(CoxeterSystem::h3());
        let w0 = longest_element(&g, ParabolicSubset::full(g.system()), 10_000).unwrap();
        assert_eq!(g.length(&w0), 15);
        let s3 = GenericGroup::new(CoxeterSystem::type_a(2).unwrap());
        let w = longest_element(&s3, ParabolicSubset::new([0, 1]), 100).unwrap();
        assert_eq!(s3.reduced_word(&w).0, vec![0, 1, 0]);
        let single = longest_element(&s3, ParabolicSubset::new([1]), 100).unwrap();
        assert_eq!(single, s3.generator(1));
    }

    #[test]
    fn infinite_parabolic_is_rejected() {
        let g = GenericGroup::new(CoxeterSystem::affine_a(2).unwrap());
        let err = longest_element(&g, ParabolicSubset::new([0, 1, 2]), 10_000).unwrap_err();
        assert!(matches!(err, CoxeterError::InfiniteParabolic(_)));
        assert!(longest_element(&g, ParabolicSubset::new([0, 1]), 10_000).is_ok());
        let inf = GenericGroup::new(CoxeterSystem::dihedral(Order::Infinite).unwrap());
        assert!(longest_element(&inf, ParabolicSubset::new([0, 1]), 10_000).is_err());
        assert!(longest_element(&inf, ParabolicSubset::new([0]), 10_000).is_ok());
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let a4 = PermGroup::symmetric(5, false).unwrap();
        let full = ParabolicSubset::full(a4.system());
        assert!(enumerate_parabolic(&a4, full, 100).is_err());
        assert_eq!(enumerate_parabolic(&a4, full, 120).unwrap().len(), 120);
    }

    #[test]
    fn group_sizes() {
        let h3 = GenericGroup::new(CoxeterSystem::h3());
        assert_eq!(enumerate_group(&h3, 15).len(), 120);
        let a1 = GenericGroup::new(CoxeterSystem::type_a(1).unwrap());
        assert_eq!(enumerate_group(&a1, 5).len(), 2);
        let s4 = PermGroup::symmetric(4, false).unwrap();
        assert_eq!(enumerate_group(&s4, 6).len(), 24);
    }

    #[test]
    fn coset_reps() {
        let s4 = PermGroup::symmetric(4, false).unwrap();
        let full = ParabolicSubset::full(s4.system());
        let reps: Vec<_> =
            enumerate_group(&s4, 6).into_iter().filter(|w| is_min_coset_rep(&s4, w, full)).collect();
        assert_eq!(reps, vec![s4.identity()]);
        assert!(!is_min_coset_rep(&s4, &s4.generator(1), ParabolicSubset::new([1])));
    }

    #[test]
    fn classification() {
        let a3t = CoxeterSystem::twisted_a(3).unwrap();
        let c = classify_twisted_type(&a3t, ParabolicSubset::full(&a3t)).unwrap();
        assert_eq!(c.label, TypeLabel::A3Twisted);
        assert!(c.labelings.iter().all(|l| a3t.star(l[0]) == l[2]));
        assert!(classify_twisted_type(&a3t, ParabolicSubset::new([0])).is_err());
        assert_eq!(classify_twisted_type(&a3t, ParabolicSubset::new([1])).unwrap().label, TypeLabel::A1);
        let bc3 = CoxeterSystem::bc3();
        let c = classify_twisted_type(&bc3, ParabolicSubset::full(&bc3)).unwrap();
        assert_eq!((c.label, c.labelings.len()), (TypeLabel::BC3, 1));
        let d4 = CoxeterSystem::d4();
        let c = classify_twisted_type(&d4, ParabolicSubset::full(&d4)).unwrap();
        assert_eq!((c.label, c.labelings.len()), (TypeLabel::D4, 6));
        let h3 = CoxeterSystem::h3();
        assert_eq!(classify_twisted_type(&h3, ParabolicSubset::full(&h3)).unwrap().label, TypeLabel::H3);
        let a3 = CoxeterSystem::type_a(3).unwrap();
        assert_eq!(classify_twisted_type(&a3, ParabolicSubset::full(&a3)).unwrap().label, TypeLabel::Other);
        let i3 = CoxeterSystem::twisted_dihedral(Order::Finite(3)).unwrap();
        assert_eq!(
            classify_twisted_type(&i3, ParabolicSubset::full(&i3)).unwrap().label,
            TypeLabel::I2Twisted(Order::Finite(3))
        );
    }

    #[test]
    fn star_invariant_subsets_of_twisted_a3() {
        let sys = CoxeterSystem::twisted_a(3).unwrap();
        let subsets = ParabolicSubset::star_invariant_subsets(&sys, 4);
        let expected = [vec![1], vec![0, 2], vec![0, 1, 2]].map(ParabolicSubset::new);
        let mut expected = expected.to_vec();
        expected.sort();
        assert_eq!(subsets, expected);
    }
}

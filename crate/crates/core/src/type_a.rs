//! The symmetric and affine symmetric groups in window notation, with the
//! type-A forms of the relations: `∼_A`, `≈_A`, the atom moves on inverse
//! windows and the forbidden consecutive subwords of primed involution words.
//!
//! Letters are the values `1..=n` in text and generator indices `0..n` in
//! memory. The finite group `S_n` uses the letters `1..n-1` only.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{CoxeterError, Result};
use crate::rewriting::{RelationKind, Rewriter};
use crate::word::{Gen, Letter};

pub use crate::perm::Window;

/// `S_n` or `S̃_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeA {
    n: usize,
    affine: bool,
}

impl TypeA {
    pub fn finite(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(CoxeterError::Unsupported("S_n needs n >= 2".into()));
        }
        Ok(TypeA { n, affine: false })
    }

    /// `S̃_n` for `n ≥ 3`; when `n = 2` the two generators do not braid.
    pub fn affine(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(CoxeterError::Unsupported("affine type A relations need n >= 3".into()));
        }
        Ok(TypeA { n, affine: true })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn is_affine(self) -> bool {
        self.affine
    }

    /// Number of letters.
    pub fn rank(self) -> usize {
        if self.affine {
            self.n
        } else {
            self.n - 1
        }
    }

    fn diff(self, a: Gen, b: Gen) -> usize {
        (a as i64 - b as i64).rem_euclid(self.n as i64) as usize
    }

    /// `a − b ∈ {−1, 1} + nZ`.
    pub fn adjacent(self, a: Gen, b: Gen) -> bool {
        let d = self.diff(a, b);
        d == 1 || d == self.n - 1
    }

    /// `a − b ∉ {−1, 0, 1} + nZ`.
    pub fn commute(self, a: Gen, b: Gen) -> bool {
        self.diff(a, b) != 0 && !self.adjacent(a, b)
    }

    /// `a + 1` as a letter, wrapping `n` to `1`.
    pub fn succ(self, a: Gen) -> Gen {
        ((a as usize + 1) % self.n) as Gen
    }

    /// Product of a word of generator indices, if the word is reduced.
    pub fn reduced_product(self, word: &[Gen]) -> Option<Window> {
        let mut w = Window::identity(self.n);
        for &g in word {
            let i = g as usize + 1;
            if w.has_descent(i) {
                return None;
            }
            w = w.times_s(i);
        }
        Some(w)
    }

    /// The twisted fold `s_{a_l} ∘ ⋯ ∘ s_{a_1} ∘ s_{a_1} ∘ ⋯ ∘ s_{a_l}` with `* = id`.
    pub fn fold(self, word: &[Gen]) -> Window {
        word.iter().fold(Window::identity(self.n), |y, &g| self.twist(&y, g))
    }

    /// `s ∘ y ∘ s` for an involution `y`.
    pub fn twist(self, y: &Window, g: Gen) -> Window {
        let i = g as usize + 1;
        if y.has_descent(i) {
            return y.clone();
        }
        let ys = y.times_s(i);
        let sy = y.s_times(i);
        if ys == sy {
            ys
        } else {
            ys.s_times(i)
        }
    }
}

/// Independent length oracle: counts integers `j > i` with `w(i) > w(j)`
/// for `i ∈ [n]`, scanning far enough that no later inversion can occur.
pub fn inversion_count(w: &Window) -> usize {
    let n = w.n() as i64;
    let lo = *w.entries().iter().min().expect("nonempty window");
    let hi = *w.entries().iter().max().expect("nonempty window");
    // w(j) ≥ lo + n·k for j in block k ≥ 1, so blocks past this cannot invert.
    let blocks = (hi - lo) / n + 2;
    let mut count = 0;
    for i in 1..=n {
        let wi = w.at(i);
        for j in i + 1..=n * blocks {
            if wi > w.at(j) {
                count += 1;
            }
        }
    }
    count
}

/// Length by descent reduction, checked against [`inversion_count`].
pub fn window_length(w: &Window) -> Result<usize> {
    let by_descents = w.length_by_descents();
    let by_pairs = inversion_count(w);
    if by_descents != by_pairs {
        return Err(CoxeterError::InvalidWindow(format!(
            "{w}: descent length {by_descents} differs from inversion count {by_pairs}"
        )));
    }
    Ok(by_descents)
}

/// The relation `∼_A` on primed words, optionally restricted to unprimed
/// words and optionally extended by `(…,a,a,…) ∼ (…,a,…)`.
#[derive(Clone, Copy, Debug)]
pub struct SimA {
    pub ty: TypeA,
    pub primes: bool,
    pub idempotent: bool,
}

impl SimA {
    pub fn new(ty: TypeA) -> Self {
        SimA { ty, primes: true, idempotent: false }
    }

    pub fn unprimed(ty: TypeA) -> Self {
        SimA { ty, primes: false, idempotent: false }
    }

    pub fn with_idempotent(ty: TypeA) -> Self {
        SimA { ty, primes: false, idempotent: true }
    }
}

fn replace(w: &[Letter], at: usize, len: usize, with: &[Letter], buf: &mut Vec<Letter>) {
    buf.clear();
    buf.extend_from_slice(&w[..at]);
    buf.extend_from_slice(with);
    buf.extend_from_slice(&w[at + len..]);
}

impl Rewriter for SimA {
    fn for_each_neighbor(&self, w: &[Letter], max_len: usize, emit: &mut dyn FnMut(&[Letter], RelationKind)) {
        let ty = self.ty;
        let mut buf = Vec::with_capacity(w.len() + 1);
        let n = w.len();
        if self.primes && n >= 1 {
            replace(w, 0, 1, &[w[0].toggled()], &mut buf);
            emit(&buf, RelationKind::Initial);
        }
        if n >= 2 && !w[0].is_primed() && !w[1].is_primed() && w[0] != w[1] {
            replace(w, 0, 2, &[w[1], w[0]], &mut buf);
            emit(&buf, RelationKind::Initial);
        }
        for i in 0..n.saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            if ty.commute(x.gen(), y.gen()) {
                let kind = if x.is_primed() || y.is_primed() {
                    RelationKind::PrimedBraid
                } else {
                    RelationKind::Braid
                };
                replace(w, i, 2, &[y, x], &mut buf);
                emit(&buf, kind);
            }
        }
        for i in 0..n.saturating_sub(2) {
            let (x, y, z) = (w[i], w[i + 1], w[i + 2]);
            let (a, b) = (x.gen(), y.gen());
            if z.gen() != a || !ty.adjacent(a, b) || y.is_primed() {
                continue;
            }
            let p = Letter::primed;
            let q = Letter::plain;
            match (x.is_primed(), z.is_primed()) {
                (false, false) => {
                    replace(w, i, 3, &[q(b), q(a), q(b)], &mut buf);
                    emit(&buf, RelationKind::Braid);
                }
                (true, false) => {
                    replace(w, i, 3, &[q(b), q(a), p(b)], &mut buf);
                    emit(&buf, RelationKind::PrimedBraid);
                }
                (false, true) => {
                    replace(w, i, 3, &[p(b), q(a), q(b)], &mut buf);
                    emit(&buf, RelationKind::PrimedBraid);
                }
                (true, true) => {}
            }
        }
        if self.idempotent {
            for i in 0..n {
                if w[i].is_primed() || (i > 0 && w[i - 1] == w[i]) {
                    continue;
                }
                if i + 1 < n && w[i + 1] == w[i] {
                    replace(w, i, 2, &[w[i]], &mut buf);
                    emit(&buf, RelationKind::Idempotent);
                }
                if n < max_len {
                    replace(w, i, 1, &[w[i], w[i]], &mut buf);
                    emit(&buf, RelationKind::Idempotent);
                }
            }
        }
    }
}

/// The relation `≈_A` on unprimed words.
#[derive(Clone, Copy, Debug)]
pub struct ApproxA {
    pub ty: TypeA,
}

impl ApproxA {
    pub fn new(ty: TypeA) -> Self {
        ApproxA { ty }
    }

    /// The suffix is reduced for some `w` with `w⁻¹(a) < w⁻¹(a+1)` and
    /// `w⁻¹(b) < w⁻¹(b+1)`.
    fn suffix_allows(&self, a: Gen, b: Gen, suffix: &[Letter]) -> bool {
        if suffix.iter().any(|l| l.is_primed()) {
            return false;
        }
        let gens: Vec<Gen> = suffix.iter().map(|l| l.gen()).collect();
        let Some(w) = self.ty.reduced_product(&gens) else { return false };
        let inv = w.inverse();
        let ok = |x: Gen| {
            let x = x as i64 + 1;
            inv.at(x) < inv.at(x + 1)
        };
        ok(a) && ok(b)
    }
}

impl Rewriter for ApproxA {
    fn for_each_neighbor(&self, w: &[Letter], max_len: usize, emit: &mut dyn FnMut(&[Letter], RelationKind)) {
        if w.iter().any(|l| l.is_primed()) {
            return;
        }
        let ty = self.ty;
        let n = w.len();
        let mut buf = Vec::with_capacity(n + 1);
        for i in 0..n.saturating_sub(1) {
            if ty.commute(w[i].gen(), w[i + 1].gen()) {
                replace(w, i, 2, &[w[i + 1], w[i]], &mut buf);
                emit(&buf, RelationKind::Braid);
            }
        }
        for i in 0..n.saturating_sub(2) {
            let (x, y, z) = (w[i], w[i + 1], w[i + 2]);
            if x == z && ty.adjacent(x.gen(), y.gen()) {
                replace(w, i, 3, &[y, x, y], &mut buf);
                emit(&buf, RelationKind::Braid);
            }
        }
        if n >= 2 && ty.adjacent(w[0].gen(), w[1].gen()) {
            let (a, b) = (w[0].gen(), w[1].gen());
            if self.suffix_allows(a, b, &w[2..]) {
                if n < max_len {
                    replace(w, 0, 2, &[w[0], w[1], w[0]], &mut buf);
                    emit(&buf, RelationKind::MixedHalfBraid);
                }
                replace(w, 0, 2, &[w[1], w[0]], &mut buf);
                emit(&buf, RelationKind::MixedHalfBraid);
            }
            if n >= 3 && w[2] == w[0] && self.suffix_allows(a, b, &w[3..]) {
                replace(w, 0, 3, &[w[0], w[1]], &mut buf);
                emit(&buf, RelationKind::MixedHalfBraid);
            }
        }
    }
}

/// `α_min(z)`: the inverse of `[z(a_1), a_1, z(a_2), a_2, …]` with repeated
/// entries dropped after their first occurrence, where `a_1 < a_2 < ⋯` are
/// the `a ∈ [n]` with `a ≤ z(a)`.
pub fn alpha_min(z: &Window) -> Result<Window> {
    if !z.is_involution() {
        return Err(CoxeterError::NotInvolution);
    }
    let mut seq: Vec<i64> = Vec::with_capacity(z.n());
    for a in 1..=z.n() as i64 {
        let za = z.at(a);
        if a <= za {
            for v in [za, a] {
                if !seq.contains(&v) {
                    seq.push(v);
                }
            }
        }
    }
    Ok(Window::from_shifted(seq)?.inverse())
}

/// Windows related to `w` by one move `cba ↔ cab ↔ bca` (`a < b < c`) on
/// three consecutive entries of the inverse window. Affine windows are read
/// periodically; finite permutations only use triples inside the window.
pub fn atom_pattern_neighbors(w: &Window, affine: bool) -> Vec<Window> {
    let inv = w.inverse();
    let n = inv.n() as i64;
    let starts = if affine { n } else { (n - 2).max(0) };
    let mut out = Vec::new();
    for i in 1..=starts {
        let t = [inv.at(i), inv.at(i + 1), inv.at(i + 2)];
        let mut sorted = t;
        sorted.sort_unstable();
        let [a, b, c] = sorted;
        let pattern = [[c, b, a], [c, a, b], [b, c, a]];
        let Some(k) = pattern.iter().position(|p| *p == t) else { continue };
        for (j, p) in pattern.iter().enumerate() {
            if j == k {
                continue;
            }
            let mut entries = inv.entries().to_vec();
            for (off, &v) in p.iter().enumerate() {
                let pos = i + off as i64;
                let r = (pos - 1).rem_euclid(n);
                let q = (pos - 1 - r) / n;
                entries[r as usize] = v - q * n;
            }
            out.push(Window(entries).inverse());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Closure of `seed` under [`atom_pattern_neighbors`].
pub fn atom_pattern_class(seed: &Window, affine: bool, limit: usize) -> Result<BTreeSet<Window>> {
    let mut seen = BTreeSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(w) = queue.pop_front() {
        for next in atom_pattern_neighbors(&w, affine) {
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return Err(CoxeterError::ClosureBoundExceeded(limit));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pattern: &'static str,
    /// 0-based index of the first letter of the offending subword.
    pub position: usize,
}

/// Forbidden consecutive subwords of a primed involution word.
pub fn forbidden_subword_scan(ty: TypeA, w: &[Letter]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut report = |pattern, position| out.push(Violation { pattern, position });
    for i in 0..w.len().saturating_sub(1) {
        let (x, y) = (w[i], w[i + 1]);
        if x.gen() == y.gen() {
            report(repeat_name(x, y), i);
        } else if x.is_primed() && y.is_primed() {
            if y.gen() == ty.succ(x.gen()) {
                report("a'(a+1)'", i);
            } else if x.gen() == ty.succ(y.gen()) {
                report("(a+1)'a'", i);
            }
        } else if i == 0 && !x.is_primed() && y.is_primed() && y.gen() == ty.succ(x.gen()) {
            report("initial a(a+1)'", i);
        } else if i == 0 && !x.is_primed() && y.is_primed() && x.gen() == ty.succ(y.gen()) {
            report("initial (a+1)a'", i);
        }
    }
    for i in 0..w.len().saturating_sub(2) {
        let (x, y, z) = (w[i], w[i + 1], w[i + 2]);
        if x.gen() != z.gen() || x.gen() == y.gen() {
            continue;
        }
        match (x.is_primed(), y.is_primed(), z.is_primed()) {
            (false, true, false) => report("ab'a", i),
            (true, true, false) => report("a'b'a", i),
            (true, false, true) => report("a'ba'", i),
            (false, true, true) => report("ab'a'", i),
            (true, true, true) => report("a'b'a'", i),
            (px, false, pz) => {
                let name = match (px, pz) {
                    (false, false) => "aba",
                    (true, false) => "a'ba",
                    _ => "aba'",
                };
                if i == 0 {
                    report(initial_name(name), i);
                } else if !ty.adjacent(x.gen(), y.gen()) {
                    report(commuting_name(name), i);
                }
            }
        }
    }
    out.sort_by_key(|v| v.position);
    out
}

fn repeat_name(x: Letter, y: Letter) -> &'static str {
    match (x.is_primed(), y.is_primed()) {
        (false, false) => "aa",
        (true, false) => "a'a",
        (false, true) => "aa'",
        (true, true) => "a'a'",
    }
}

fn initial_name(name: &str) -> &'static str {
    match name {
        "aba" => "initial aba",
        "a'ba" => "initial a'ba",
        _ => "initial aba'",
    }
}

fn commuting_name(name: &str) -> &'static str {
    match name {
        "aba" => "aba with commuting a,b",
        "a'ba" => "a'ba with commuting a,b",
        _ => "aba' with commuting a,b",
    }
}

/// Indices `i` (0-based) at which `a_i` and `a_i + 1` are fixed points of the
/// fold `y` of the preceding letters. Also reports whether `(a_i, a_i + 1)`
/// is then a cycle of `s ∘ y ∘ s` at every such index.
pub fn fixed_point_commutations(ty: TypeA, word: &[Gen]) -> (Vec<usize>, bool) {
    let mut y = Window::identity(ty.n);
    let mut out = Vec::new();
    let mut cycles = true;
    for (i, &g) in word.iter().enumerate() {
        let a = g as i64 + 1;
        let next = ty.twist(&y, g);
        if y.at(a) == a && y.at(a + 1) == a + 1 {
            out.push(i);
            cycles &= next.at(a) == a + 1 && next.at(a + 1) == a;
        }
        y = next;
    }
    (out, cycles)
}

/// Renders generator indices in the type-A letter alphabet, e.g. `1'32`.
pub fn letters_text(w: &[Letter]) -> String {
    crate::word::letters_to_string(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::PrimedWord;

    fn pw(s: &str, rank: usize) -> Vec<Letter> {
        PrimedWord::parse(s, rank).unwrap().0
    }

    fn neighbors<R: Rewriter>(r: &R, w: &[Letter]) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        r.for_each_neighbor(w, w.len() + 1, &mut |n, _| {
            out.insert(letters_text(n));
        });
        out
    }

    #[test]
    fn window_lengths() {
        assert_eq!(window_length(&Window::identity(4)).unwrap(), 0);
        let w = Window::parse("[2,1,3,4]").unwrap();
        assert_eq!(window_length(&w).unwrap(), 1);
        assert!(w.has_descent(1));
        let aff = Window::parse("[0,2,4]").unwrap();
        assert_eq!(window_length(&aff).unwrap(), inversion_count(&aff));
        assert_eq!(Window::parse("[1,4,2,3,5]").unwrap().inverse(), Window::parse("[1,3,4,2,5]").unwrap());
    }

    #[test]
    fn sim_a_moves() {
        let ty = TypeA::finite(6).unwrap();
        let r = SimA::new(ty);
        let got = neighbors(&r, &pw("1", 5));
        assert!(got.contains("1'"));
        let got = neighbors(&r, &pw("3212", 5));
        assert!(got.contains("3121"));
        let got = neighbors(&r, &pw("51'3'", 5));
        assert!(got.contains("53'1'"));
        let got = neighbors(&r, &pw("41'21", 5));
        assert!(got.contains("4212'"));
        assert!(!neighbors(&SimA::unprimed(ty), &pw("1", 5)).contains("1'"));
    }

    #[test]
    fn approx_a_moves() {
        let ty = TypeA::finite(5).unwrap();
        let r = ApproxA::new(ty);
        let got = neighbors(&r, &pw("12", 4));
        assert!(got.contains("121") && got.contains("21"));
        let got = neighbors(&r, &pw("13", 4));
        assert!(got.contains("31"));
        // suffix 1 sends 1 before 2 in w⁻¹: not allowed
        let got = neighbors(&r, &pw("121", 4));
        assert!(!got.contains("1211"));
    }

    #[test]
    fn alpha_min_example() {
        let z = Window::from_cycles("(2,4)", 5).unwrap();
        assert_eq!(alpha_min(&z).unwrap(), Window::parse("[1,3,4,2,5]").unwrap());
        assert_eq!(alpha_min(&Window::identity(4)).unwrap(), Window::identity(4));
        assert!(alpha_min(&Window::parse("[2,3,1]").unwrap()).is_err());
    }

    #[test]
    fn atom_moves() {
        assert!(atom_pattern_neighbors(&Window::identity(4), false).is_empty());
        let w = Window::parse("[3,2,1]").unwrap();
        let got = atom_pattern_neighbors(&w.inverse(), false);
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn scan_examples() {
        let ty = TypeA::finite(5).unwrap();
        assert!(forbidden_subword_scan(ty, &[]).is_empty());
        let v = forbidden_subword_scan(ty, &pw("121", 4));
        assert_eq!(v[0].pattern, "initial aba");
        let v = forbidden_subword_scan(ty, &pw("21'2'", 4));
        assert!(v.iter().any(|v| v.pattern == "a'(a+1)'" || v.pattern == "(a+1)'a'"));
        assert!(forbidden_subword_scan(ty, &pw("1323", 4)).is_empty());
    }
}

//! Window backend for `S_n` and the affine symmetric group.
//!
//! An affine permutation is a bijection `w` of the integers with
//! `w(i + n) = w(i) + n`, stored as its window `[w(1), ..., w(n)]`.
//! Finite permutations are the windows with entries in `1..=n`. Generator
//! `s_i` (0-based index `i - 1`) swaps `i` and `i + 1`; in the affine case
//! `s_n` swaps `n` and `n + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};
use crate::group::CoxeterGroup;
use crate::system::CoxeterSystem;
use crate::word::{Gen, Word};

/// The window `[w(1), ..., w(n)]` of an (affine) permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window(pub Vec<i64>);

impl Window {
    pub fn identity(n: usize) -> Window {
        Window((1..=n as i64).collect())
    }

    /// Validates distinctness mod `n` and the window sum.
    pub fn new(entries: Vec<i64>) -> Result<Window> {
        let n = entries.len();
        if n == 0 {
            return Err(CoxeterError::InvalidWindow("empty window".into()));
        }
        let mut seen = vec![false; n];
        for &v in &entries {
            let r = v.rem_euclid(n as i64) as usize;
            if seen[r] {
                return Err(CoxeterError::InvalidWindow(format!("{entries:?} repeats a residue mod {n}")));
            }
            seen[r] = true;
        }
        let sum: i64 = entries.iter().sum();
        if sum != triangular(n) {
            return Err(CoxeterError::InvalidWindow(format!(
                "{entries:?} sums to {sum}, expected {}",
                triangular(n)
            )));
        }
        Ok(Window(entries))
    }

    /// Builds a window from `[w(1+d), ..., w(n+d)]` for an unknown shift `d`.
    pub fn from_shifted(entries: Vec<i64>) -> Result<Window> {
        let n = entries.len() as i64;
        if n == 0 {
            return Err(CoxeterError::InvalidWindow("empty window".into()));
        }
        let excess = entries.iter().sum::<i64>() - triangular(n as usize);
        if excess % n != 0 {
            return Err(CoxeterError::InvalidWindow(format!("{entries:?} is not a shifted window")));
        }
        let d = excess / n;
        let nn = n as usize;
        let mut out = vec![0i64; nn];
        for (k, &v) in entries.iter().enumerate() {
            // entries[k] = w(k + 1 + d)
            let pos = k as i64 + 1 + d;
            let r = (pos - 1).rem_euclid(n);
            let q = (pos - 1 - r) / n;
            out[r as usize] = v - q * n;
        }
        Window::new(out)
    }

    /// Parses `"[2,1,3,4]"` (brackets optional).
    pub fn parse(text: &str) -> Result<Window> {
        let inner = text.trim();
        let inner = inner.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(inner);
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| CoxeterError::Parse(format!("bad window entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Window::new(entries)
    }

    /// The finite permutation of `1..=n` given by disjoint cycles, e.g. `"(1,4)(2,3)"`.
    pub fn from_cycles(text: &str, n: usize) -> Result<Window> {
        let mut w: Vec<i64> = (1..=n as i64).collect();
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = text.as_str();
        let mut used = vec![false; n + 1];
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| CoxeterError::Parse(format!("bad cycle notation `{text}`")))?;
            let end =
                body.find(')').ok_or_else(|| CoxeterError::Parse(format!("unclosed cycle in `{text}`")))?;
            let cycle = body[..end]
                .split(',')
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .filter(|&a| (1..=n).contains(&a))
                        .ok_or_else(|| CoxeterError::Parse(format!("bad cycle entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &a in &cycle {
                if std::mem::replace(&mut used[a], true) {
                    return Err(CoxeterError::Parse(format!("{a} repeated in `{text}`")));
                }
            }
            for k in 0..cycle.len() {
                w[cycle[k] - 1] = cycle[(k + 1) % cycle.len()] as i64;
            }
            rest = &body[end + 1..];
        }
        Ok(Window(w))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `w(i)` for any integer `i`.
    pub fn at(&self, i: i64) -> i64 {
        let n = self.0.len() as i64;
        let r = (i - 1).rem_euclid(n);
        let q = (i - 1 - r) / n;
        self.0[r as usize] + q * n
    }

    pub fn inverse(&self) -> Window {
        let n = self.0.len() as i64;
        let mut out = vec![0i64; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            let r = (v - 1).rem_euclid(n);
            let q = (v - 1 - r) / n;
            out[r as usize] = k as i64 + 1 - q * n;
        }
        Window(out)
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Window) -> Window {
        Window(other.0.iter().map(|&v| self.at(v)).collect())
    }

    pub fn is_finite_perm(&self) -> bool {
        let n = self.0.len() as i64;
        self.0.iter().all(|&v| (1..=n).contains(&v))
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self) == Window::identity(self.n())
    }

    /// `w(i) > w(i+1)`, for `i` in `1..=n`.
    pub fn has_descent(&self, i: usize) -> bool {
        self.at(i as i64) > self.at(i as i64 + 1)
    }

    /// `ws_i`.
    pub fn times_s(&self, i: usize) -> Window {
        let n = self.0.len();
        let mut out = self.0.clone();
        if i < n {
            out.swap(i - 1, i);
        } else {
            out[0] = self.0[n - 1] - n as i64;
            out[n - 1] = self.0[0] + n as i64;
        }
        Window(out)
    }

    /// `s_i w`.
    pub fn s_times(&self, i: usize) -> Window {
        let n = self.0.len() as i64;
        let a = (i as i64).rem_euclid(n);
        let b = (i as i64 + 1).rem_euclid(n);
        Window(
            self.0
                .iter()
                .map(|&v| {
                    let r = v.rem_euclid(n);
                    if r == a {
                        v + 1
                    } else if r == b {
                        v - 1
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// Length by repeatedly removing right descents.
    pub fn length_by_descents(&self) -> usize {
        let n = self.0.len();
        let mut w = self.clone();
        let mut len = 0;
        'outer: loop {
            for i in 1..=n {
                if w.has_descent(i) {
                    w = w.times_s(i);
                    len += 1;
                    continue 'outer;
                }
            }
            return len;
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn triangular(n: usize) -> i64 {
    (n * (n + 1) / 2) as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermFamily {
    /// `S_n` with `* = id`.
    Finite,
    /// `S_n` with `w* = w_0 w w_0`.
    FiniteReversal,
    /// `S̃_n` with `* = id`.
    Affine,
}

/// `S_n` or `S̃_n` acting on windows of size `n`.
pub struct PermGroup {
    system: CoxeterSystem,
    n: usize,
    family: PermFamily,
}

impl PermGroup {
    /// `S_n`, the Coxeter group `A_{n-1}`.
    pub fn symmetric(n: usize, reversal: bool) -> Result<PermGroup> {
        if n < 2 {
            return Err(CoxeterError::Unsupported("S_n needs n >= 2".into()));
        }
        let (system, family) = if reversal {
            (CoxeterSystem::twisted_a(n - 1)?, PermFamily::FiniteReversal)
        } else {
            (CoxeterSystem::type_a(n - 1)?, PermFamily::Finite)
        };
        Ok(PermGroup { system, n, family })
    }

    /// `S̃_n`, the Coxeter group `Ã_{n-1}`.
    pub fn affine(n: usize) -> Result<PermGroup> {
        if n < 2 {
            return Err(CoxeterError::Unsupported("affine S_n needs n >= 2".into()));
        }
        Ok(PermGroup { system: CoxeterSystem::affine_a(n - 1)?, n, family: PermFamily::Affine })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> PermFamily {
        self.family
    }

    pub fn is_affine(&self) -> bool {
        self.family == PermFamily::Affine
    }

    /// Checks that a window belongs to this group.
    pub fn check(&self, w: &Window) -> Result<()> {
        if w.n() != self.n {
            return Err(CoxeterError::InvalidWindow(format!("{w} has size {}, expected {}", w.n(), self.n)));
        }
        Window::new(w.0.clone())?;
        if !self.is_affine() && !w.is_finite_perm() {
            return Err(CoxeterError::InvalidWindow(format!("{w} is not a permutation of 1..={}", self.n)));
        }
        Ok(())
    }
}

impl CoxeterGroup for PermGroup {
    type Elem = Window;

    fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    fn identity(&self) -> Window {
        Window::identity(self.n)
    }

    fn multiply_gen(&self, w: &Window, s: Gen) -> Window {
        w.times_s(s as usize + 1)
    }

    fn gen_multiply(&self, s: Gen, w: &Window) -> Window {
        w.s_times(s as usize + 1)
    }

    fn length(&self, w: &Window) -> usize {
        w.length_by_descents()
    }

    /// The lexicographically least reduced word.
    fn reduced_word(&self, w: &Window) -> Word {
        let mut out = Vec::new();
        let mut w = w.clone();
        loop {
            let inv = w.inverse();
            match (1..=self.system.rank()).find(|&i| inv.has_descent(i)) {
                Some(i) => {
                    out.push((i - 1) as Gen);
                    w = w.s_times(i);
                }
                None => return Word(out),
            }
        }
    }

    fn is_right_descent(&self, w: &Window, s: Gen) -> bool {
        w.has_descent(s as usize + 1)
    }

    fn is_left_descent(&self, s: Gen, w: &Window) -> bool {
        w.inverse().has_descent(s as usize + 1)
    }

    fn inverse(&self, w: &Window) -> Window {
        w.inverse()
    }

    fn multiply(&self, v: &Window, w: &Window) -> Window {
        v.compose(w)
    }

    fn star_elem(&self, w: &Window) -> Window {
        match self.family {
            PermFamily::FiniteReversal => {
                let n = self.n as i64;
                Window((1..=n).map(|i| n + 1 - w.at(n + 1 - i)).collect())
            }
            _ => w.clone(),
        }
    }
}

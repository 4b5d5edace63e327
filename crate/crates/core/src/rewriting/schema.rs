//! Relation schemas: a pair of patterns plus where they may be applied.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::parabolic::ParabolicSubset;
use crate::word::{letters_to_string, Gen, Letter, PrimedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    Braid,
    HalfBraid,
    PrimedBraid,
    PrimedHalfBraid,
    MixedHalfBraid,
    Initial,
    InitialHecke,
    ExceptionalList,
    Idempotent,
}

impl RelationKind {
    pub const ALL: [RelationKind; 9] = [
        RelationKind::Braid,
        RelationKind::HalfBraid,
        RelationKind::PrimedBraid,
        RelationKind::PrimedHalfBraid,
        RelationKind::MixedHalfBraid,
        RelationKind::Initial,
        RelationKind::InitialHecke,
        RelationKind::ExceptionalList,
        RelationKind::Idempotent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Braid => "braid",
            RelationKind::HalfBraid => "half-braid",
            RelationKind::PrimedBraid => "primed-braid",
            RelationKind::PrimedHalfBraid => "primed-half-braid",
            RelationKind::MixedHalfBraid => "mixed-half-braid",
            RelationKind::Initial => "initial",
            RelationKind::InitialHecke => "initial-hecke",
            RelationKind::ExceptionalList => "exceptional",
            RelationKind::Idempotent => "idempotent",
        }
    }

    /// DOT edge color. Braid-type moves are gray as in the usual pictures.
    pub fn color(self) -> &'static str {
        match self {
            RelationKind::Braid | RelationKind::PrimedBraid => "gray",
            RelationKind::HalfBraid => "orange",
            RelationKind::PrimedHalfBraid => "red",
            RelationKind::MixedHalfBraid => "blue",
            RelationKind::Initial => "darkgreen",
            RelationKind::InitialHecke => "purple",
            RelationKind::ExceptionalList => "magenta",
            RelationKind::Idempotent => "brown",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A condition on the word `r` following a matched prefix: `r` must be
/// reduced and none of the generators in the mask may be a left descent of
/// its product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuffixCondition {
    /// `r` is a reduced word for an element of `^J W`.
    MinCosetRep(ParabolicSubset),
    /// `r` is a reduced word for `w` with `ℓ(sw) = ℓ(tw) > ℓ(w)`.
    NeitherLeftDescent(Gen, Gen),
}

impl SuffixCondition {
    pub fn forbidden_left_descents(self) -> u64 {
        match self {
            SuffixCondition::MinCosetRep(j) => j.0,
            SuffixCondition::NeitherLeftDescent(s, t) => 1 << s | 1 << t,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Position {
    Anywhere,
    InitialOnly,
    InitialWithSuffixCondition(SuffixCondition),
}

impl Position {
    pub fn suffix_condition(self) -> Option<SuffixCondition> {
        match self {
            Position::InitialWithSuffixCondition(c) => Some(c),
            _ => None,
        }
    }
}

/// `lhs ∼ rhs` at the given position. Applied in both directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationSchema {
    pub kind: RelationKind,
    pub lhs: PrimedWord,
    pub rhs: PrimedWord,
    pub position: Position,
}

impl RelationSchema {
    pub fn new(kind: RelationKind, lhs: Vec<Letter>, rhs: Vec<Letter>, position: Position) -> Self {
        debug_assert_ne!(lhs, rhs);
        RelationSchema { kind, lhs: PrimedWord(lhs), rhs: PrimedWord(rhs), position }
    }

    /// The unordered pair, for deduplication.
    pub fn normal_form(&self) -> (RelationKind, PrimedWord, PrimedWord, Position) {
        let (a, b) = if self.lhs <= self.rhs {
            (self.lhs.clone(), self.rhs.clone())
        } else {
            (self.rhs.clone(), self.lhs.clone())
        };
        (self.kind, a, b, self.position)
    }
}

impl fmt::Display for RelationSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.position {
            Position::Anywhere => ("(-,", ",-)"),
            Position::InitialOnly => ("(", ",-)"),
            Position::InitialWithSuffixCondition(_) => ("(", ",r)"),
        };
        write!(
            f,
            "{}{}{} ~ {}{}{}",
            open,
            letters_to_string(&self.lhs.0),
            close,
            open,
            letters_to_string(&self.rhs.0),
            close
        )
    }
}

/// A set of patterns that are all related to each other at one position.
///
/// A family of two patterns is a single schema. Larger families stand for
/// every pair among their members, which keeps prefix matching to one
/// lookup per distinct member length.
#[derive(Clone, Debug)]
pub struct PatternFamily {
    pub kind: RelationKind,
    pub position: Position,
    pub label: String,
    members: Vec<Vec<Letter>>,
    lookup: HashSet<Vec<Letter>>,
    lengths: Vec<usize>,
}

impl PatternFamily {
    pub fn new(
        kind: RelationKind,
        position: Position,
        label: impl Into<String>,
        members: impl IntoIterator<Item = Vec<Letter>>,
    ) -> Self {
        let mut members: Vec<Vec<Letter>> = members.into_iter().collect();
        members.sort();
        members.dedup();
        let lookup = members.iter().cloned().collect();
        let mut lengths: Vec<usize> = members.iter().map(Vec::len).collect();
        lengths.sort_unstable();
        lengths.dedup();
        PatternFamily { kind, position, label: label.into(), members, lookup, lengths }
    }

    /// Two patterns related by a single schema.
    pub fn pair(
        kind: RelationKind,
        position: Position,
        label: impl Into<String>,
        lhs: Vec<Letter>,
        rhs: Vec<Letter>,
    ) -> Self {
        Self::new(kind, position, label, [lhs, rhs])
    }

    pub fn members(&self) -> &[Vec<Letter>] {
        &self.members
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn contains(&self, pattern: &[Letter]) -> bool {
        self.lookup.contains(pattern)
    }

    /// Every pair of members as a schema.
    pub fn to_schemas(&self) -> Vec<RelationSchema> {
        let mut out = Vec::new();
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                out.push(RelationSchema::new(self.kind, a.clone(), b.clone(), self.position));
            }
        }
        out
    }
}

/// Plain letters for a word over `S`.
pub fn plain(word: &[Gen]) -> Vec<Letter> {
    word.iter().map(|&g| Letter::plain(g)).collect()
}

/// `(s, t, s, t, ...)` with `len` letters.
pub fn alternating(s: Gen, t: Gen, len: usize) -> Vec<Gen> {
    (0..len).map(|k| if k % 2 == 0 { s } else { t }).collect()
}

/// `(..., t, s, t, s)` with `len` letters, ending in `s`.
pub fn alternating_ending(s: Gen, t: Gen, len: usize) -> Vec<Gen> {
    (0..len).map(|k| if (len - 1 - k).is_multiple_of(2) { s } else { t }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternation() {
        assert_eq!(alternating(0, 1, 3), vec![0, 1, 0]);
        assert_eq!(alternating_ending(0, 1, 4), vec![1, 0, 1, 0]);
        assert_eq!(alternating_ending(0, 1, 1), vec![0]);
    }

    #[test]
    fn family_schemas() {
        let f = PatternFamily::new(
            RelationKind::Initial,
            Position::InitialOnly,
            "x",
            [plain(&[0, 1]), plain(&[1, 0]), plain(&[0, 1])],
        );
        assert_eq!(f.members().len(), 2);
        let schemas = f.to_schemas();
        assert_eq!(schemas.len(), 1);
        assert_eq!(schemas[0].to_string(), "(12,-) ~ (21,-)");
        assert!(f.contains(&plain(&[1, 0])));
    }
}

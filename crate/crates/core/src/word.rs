//! Words over the generators and primed words over `S ⊔ S'`.
//!
//! Text form is 1-based: `"2123"` is `(s_2, s_1, s_2, s_3)`. When some
//! letter needs two digits the letters are comma separated. A trailing
//! apostrophe marks a primed letter, as in `"13'21"`.

use std::borrow::Borrow;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};

/// 0-based generator index.
pub type Gen = u8;

/// A finite sequence of generators. Not necessarily reduced.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based letters.
    pub fn from_one_based(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&a| (a - 1) as Gen).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Parses the 1-based text form. Accepts `"2123"`, `"2,1,2,3"` and `"s2s1s2s3"`.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        let letters = parse_tokens(text)?
            .into_iter()
            .map(|(a, primed)| {
                if primed {
                    return Err(CoxeterError::Parse(format!("unexpected prime in `{text}`")));
                }
                check_letter(a, rank)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word(letters))
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.iter().any(|&g| g >= 9);
        for (i, &g) in self.0.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", g as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A letter of `S ⊔ S'`.
///
/// Packed so that the derived order is `1' < 1 < 2' < 2 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(transparent)]
pub struct Letter(u8);

impl Letter {
    pub fn plain(g: Gen) -> Letter {
        Letter(g << 1 | 1)
    }

    pub fn primed(g: Gen) -> Letter {
        Letter(g << 1)
    }

    pub fn new(g: Gen, primed: bool) -> Letter {
        if primed {
            Letter::primed(g)
        } else {
            Letter::plain(g)
        }
    }

    pub fn gen(self) -> Gen {
        self.0 >> 1
    }

    pub fn is_primed(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn toggled(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn unprimed(self) -> Letter {
        Letter(self.0 | 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.gen() as usize + 1, if self.is_primed() { "'" } else { "" })
    }
}

/// A word with a prime flag per position. Equality is positional.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimedWord(pub Vec<Letter>);

impl PrimedWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        PrimedWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Drops all primes.
    pub fn unprimed(&self) -> Word {
        Word(self.0.iter().map(|l| l.gen()).collect())
    }

    pub fn is_unprimed(&self) -> bool {
        self.0.iter().all(|l| !l.is_primed())
    }

    pub fn prime_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_primed()).count()
    }

    /// Primes exactly the given positions of `word`.
    pub fn with_primes(word: &Word, positions: &[usize]) -> PrimedWord {
        let mut letters: Vec<Letter> = word.0.iter().map(|&g| Letter::plain(g)).collect();
        for &p in positions {
            letters[p] = Letter::primed(letters[p].gen());
        }
        PrimedWord(letters)
    }

    pub fn parse(text: &str, rank: usize) -> Result<PrimedWord> {
        let letters = parse_tokens(text)?
            .into_iter()
            .map(|(a, primed)| check_letter(a, rank).map(|g| Letter::new(g, primed)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PrimedWord(letters))
    }
}

impl From<&Word> for PrimedWord {
    fn from(w: &Word) -> Self {
        PrimedWord(w.0.iter().map(|&g| Letter::plain(g)).collect())
    }
}

impl From<Word> for PrimedWord {
    fn from(w: Word) -> Self {
        PrimedWord::from(&w)
    }
}

impl Borrow<[Letter]> for PrimedWord {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for PrimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl fmt::Debug for PrimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimedWord({self})")
    }
}

pub(crate) fn write_letters(f: &mut impl fmt::Write, letters: &[Letter]) -> fmt::Result {
    let wide = letters.iter().any(|l| l.gen() >= 9);
    for (i, l) in letters.iter().enumerate() {
        if wide && i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", l.gen() as usize + 1)?;
        if l.is_primed() {
            f.write_str("'")?;
        }
    }
    Ok(())
}

/// Renders a letter slice in the text form.
pub fn letters_to_string(letters: &[Letter]) -> String {
    let mut s = String::new();
    write_letters(&mut s, letters).expect("writing to a string");
    s
}

fn check_letter(a: usize, rank: usize) -> Result<Gen> {
    if a == 0 || a > rank {
        Err(CoxeterError::Parse(format!("letter {a} out of range 1..={rank}")))
    } else {
        Ok((a - 1) as Gen)
    }
}

// Returns 1-based letters with prime flags.
fn parse_tokens(text: &str) -> Result<Vec<(usize, bool)>> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let text = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&text).to_string();
    if text.is_empty() || text == "e" {
        return Ok(Vec::new());
    }
    let bad = |t: &str| CoxeterError::Parse(format!("bad letter `{t}` in `{text}`"));
    let tokens: Vec<String> = if text.contains('s') {
        text.split('s').filter(|t| !t.is_empty()).map(|t| t.trim_end_matches(',').to_string()).collect()
    } else if text.contains(',') {
        text.split(',').map(str::to_string).collect()
    } else {
        let mut out: Vec<String> = Vec::new();
        for c in text.chars() {
            if c == '\'' {
                match out.last_mut() {
                    Some(last) => last.push('\''),
                    None => return Err(bad("'")),
                }
            } else {
                out.push(c.to_string());
            }
        }
        out
    };
    tokens
        .iter()
        .map(|t| {
            let (digits, primed) = match t.strip_suffix('\'') {
                Some(d) => (d, true),
                None => (t.as_str(), false),
            };
            digits.parse::<usize>().map(|a| (a, primed)).map_err(|_| bad(t))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order_puts_primes_first() {
        let order = [Letter::primed(0), Letter::plain(0), Letter::primed(1), Letter::plain(1)];
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Letter::primed(3).toggled(), Letter::plain(3));
        assert_eq!(Letter::primed(3).gen(), 3);
    }

    #[test]
    fn word_text_round_trip() {
        let w = Word::parse("2123", 3).unwrap();
        assert_eq!(w, Word(vec![1, 0, 1, 2]));
        assert_eq!(w.to_string(), "2123");
        assert_eq!(Word::parse("s2s1s2s3", 3).unwrap(), w);
        assert_eq!(Word::parse("2,1,2,3", 3).unwrap(), w);
        assert!(Word::parse("4", 3).is_err());
        assert!(Word::parse("", 3).unwrap().is_empty());
    }

    #[test]
    fn wide_words_use_commas() {
        let w = Word(vec![0, 9, 10]);
        assert_eq!(w.to_string(), "1,10,11");
        assert_eq!(Word::parse("1,10,11", 11).unwrap(), w);
    }

    #[test]
    fn primed_text() {
        let p = PrimedWord::parse("13'21", 3).unwrap();
        assert_eq!(p.prime_count(), 1);
        assert_eq!(p.to_string(), "13'21");
        assert_eq!(p.unprimed(), Word(vec![0, 2, 1, 0]));
        assert_eq!(PrimedWord::with_primes(&p.unprimed(), &[1]), p);
        assert!(Word::parse("13'21", 3).is_err());
    }
}

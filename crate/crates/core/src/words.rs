//! Reduced words in a free group of finite rank.
//!
//! A [`Word`] is always stored in reduced normal form, so equality of words
//! is equality of group elements. Generators print as `a`, `b`, `c`, ... and
//! their inverses as `A`, `B`, `C`, ...; the identity prints as `1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator or the inverse of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    pub const fn new(generator: u32, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn positive(generator: u32) -> Self {
        Letter::new(generator, false)
    }

    pub const fn negative(generator: u32) -> Self {
        Letter::new(generator, true)
    }

    pub fn generator(self) -> u32 {
        self.generator
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn is_positive(self) -> bool {
        !self.inverse
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// Position in the fixed order `a < b < ... < A < B < ...` for the given
    /// rank. Used as the direction index of automaton transition tables.
    pub fn index(self, rank: usize) -> usize {
        self.generator as usize + if self.inverse { rank } else { 0 }
    }

    pub fn from_index(index: usize, rank: usize) -> Self {
        if index < rank {
            Letter::positive(index as u32)
        } else {
            Letter::negative((index - rank) as u32)
        }
    }

    pub fn to_char(self) -> Option<char> {
        if self.generator >= 26 {
            return None;
        }
        let base = if self.inverse { b'A' } else { b'a' };
        Some((base + self.generator as u8) as char)
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Letter::positive(c as u32 - 'a' as u32)),
            'A'..='Z' => Some(Letter::negative(c as u32 - 'A' as u32)),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None if self.inverse => write!(f, "x{}^-1", self.generator),
            None => write!(f, "x{}", self.generator),
        }
    }
}

/// A reduced word over `rank` generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// The word made of the single letter `l`.
    pub fn letter(l: Letter, rank: usize) -> Result<Self> {
        Word::reduce(vec![l], rank)
    }

    /// Freely reduces `raw`, cancelling adjacent `x x⁻¹` pairs.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>, rank: usize) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if l.generator as usize >= rank {
                return Err(Error::invalid(format!(
                    "letter {l} is outside the alphabet of rank {rank}"
                )));
            }
            if letters.last() == Some(&l.inv()) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(Word { rank, letters })
    }

    /// Builds a word from letters already known to lie in the alphabet.
    pub(crate) fn reduce_unchecked(raw: impl IntoIterator<Item = Letter>, rank: usize) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            debug_assert!((l.generator as usize) < rank);
            if letters.last() == Some(&l.inv()) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Word { rank, letters }
    }

    /// Parses the compact text form (`"abA"`, `"1"` or `""` for the identity).
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let lead = text.chars().take_while(|c| c.is_whitespace()).count();
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity(rank));
        }
        let mut raw = Vec::with_capacity(text.len());
        for (i, c) in text.chars().enumerate() {
            let pos = lead + i;
            let l = Letter::from_char(c).ok_or_else(|| Error::Parse {
                pos,
                msg: format!("unexpected character {c:?} in word"),
            })?;
            if l.generator as usize >= rank {
                return Err(Error::Parse {
                    pos,
                    msg: format!("letter {c:?} is outside the alphabet of rank {rank}"),
                });
            }
            raw.push(l);
        }
        Word::reduce(raw, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when every letter is a generator (no inverses).
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::invalid(format!(
                "rank mismatch: {} vs {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let mut left = self.letters.len();
        let mut right = 0;
        while left > 0
            && right < other.letters.len()
            && self.letters[left - 1] == other.letters[right].inv()
        {
            left -= 1;
            right += 1;
        }
        let mut letters = Vec::with_capacity(left + other.letters.len() - right);
        letters.extend_from_slice(&self.letters[..left]);
        letters.extend_from_slice(&other.letters[right..]);
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// True when `self·self` is reduced.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.letters.len() == 1 || f != l.inv(),
            _ => true,
        }
    }

    /// Returns `(core, conjugator)` with `self = conjugator⁻¹ · core · conjugator`
    /// and `core` cyclically reduced.
    pub fn cyclic_core(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while n >= 2 * k + 2 && self.letters[k] == self.letters[n - 1 - k].inv() {
            k += 1;
        }
        let core = Word {
            rank: self.rank,
            letters: self.letters[k..n - k].to_vec(),
        };
        // The peeled prefix is conjugator⁻¹.
        let prefix = Word {
            rank: self.rank,
            letters: self.letters[..k].to_vec(),
        };
        (core, prefix.invert())
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word::reduce_unchecked(letters, self.rank)
    }

    /// Exponent sum of each generator (the image in the abelianization).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank];
        for l in &self.letters {
            sums[l.generator as usize] += l.sign() as i64;
        }
        sums
    }

    /// True when the word lies in the free factor spanned by `generators`.
    pub fn uses_only(&self, generators: &[u32]) -> bool {
        self.letters
            .iter()
            .all(|l| generators.contains(&l.generator))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses rank-2 words, the common case.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s, 2)
    }
}

/// Shorthand for rank-2 words in tests and examples. Panics on bad input.
pub fn w2(text: &str) -> Word {
    Word::parse(text, 2).unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
}

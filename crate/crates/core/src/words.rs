//! Letters, words and the reductions every other module is built on.
//!
//! A [`Letter`] is a generator index with a sign packed into one `u32`:
//! `2 * generator + (inverse as u32)`. The packing makes `x < x⁻¹ < y < y⁻¹`
//! the natural integer order, which is the order shortlex uses.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn gen(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn inv(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn from_code(code: u32) -> Self {
        Letter(code)
    }

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = (b'a' + (self.generator() % 26) as u8) as char;
        if self.is_inverse() {
            write!(f, "{base}⁻¹")
        } else {
            write!(f, "{base}")
        }
    }
}

/// A finite sequence of letters. No reduction is implied by construction.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Left rotation by `k` (mod length).
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let mut letters = self.0.clone();
        letters.rotate_left(k % self.len());
        Word(letters)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&a), Some(&b)) => self.len() == 1 || a != b.inverse(),
                _ => true,
            }
    }

    /// Renders with generator names, e.g. `a b⁻¹ a`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for l in &self.0 {
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self
                .names
                .get(l.generator())
                .map(String::as_str)
                .unwrap_or("?");
            if l.is_inverse() {
                write!(f, "{name}^-1")?;
            } else {
                write!(f, "{name}")?;
            }
        }
        Ok(())
    }
}

/// Free reduction by a single stack pass.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Splits `w` as `conjugator · core · conjugator⁻¹` (after free reduction)
/// with `core` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let reduced = free_reduce(w);
    let letters = reduced.letters();
    let (mut lo, mut hi) = (0usize, letters.len());
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    (
        Word(letters[lo..hi].to_vec()),
        Word(letters[..lo].to_vec()),
    )
}

/// All distinct cyclic shifts of all relators and their inverses.
pub fn symmetrize(relators: &[Word]) -> Result<BTreeSet<Word>> {
    let mut out = BTreeSet::new();
    for (index, r) in relators.iter().enumerate() {
        if r.is_empty() {
            return Err(Error::EmptyRelator { index });
        }
        for oriented in [r.clone(), r.inverse()] {
            for k in 0..oriented.len() {
                out.insert(oriented.rotate(k));
            }
        }
    }
    Ok(out)
}

/// Canonical representative of a cyclic word up to rotation and inversion:
/// the lexicographically least rotation of `r` or `r⁻¹`.
pub fn cyclic_canonical(r: &Word) -> Word {
    let mut best: Option<Word> = None;
    for oriented in [r.clone(), r.inverse()] {
        for k in 0..oriented.len().max(1) {
            let cand = oriented.rotate(k);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// The smallest `p` such that `w` is invariant under rotation by `p`.
pub fn rotation_period(w: &Word) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| w.0[i] == w.0[(i + p) % n]))
        .unwrap_or(0)
}

//! Dehn's algorithm and the equality/normal-form oracles built on it.
//!
//! For a C'(1/6) presentation, a nontrivial freely reduced word equal to the
//! identity contains more than half of some relator. [`DehnMachine`] replaces
//! such subwords by the shorter complement until none remain.

use crate::error::{Error, Result};
use crate::presentation::{check_small_cancellation, Presentation, SymmetrizedIndex};
use crate::words::{free_reduce, Letter, Word};
use crate::Rational;

/// Default cap on the number of words in one shortlex enumeration level.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct DehnMachine {
    presentation: Presentation,
    index: SymmetrizedIndex,
    max_len: usize,
    certified: bool,
    abelian: AbelianInvariant,
}

impl DehnMachine {
    /// Builds the index and certifies the presentation at λ = 1/6. An
    /// uncertified machine refuses to answer.
    pub fn new(p: &Presentation) -> Self {
        let certified = check_small_cancellation(p, Rational::new(1, 6)).pass;
        Self::build(p, certified)
    }

    /// Skips certification. Answers are only meaningful for presentations
    /// where Dehn's algorithm is known to be complete.
    pub fn new_unchecked(p: &Presentation) -> Self {
        Self::build(p, true)
    }

    fn build(p: &Presentation, certified: bool) -> Self {
        DehnMachine {
            presentation: p.clone(),
            index: SymmetrizedIndex::new(p.relators()),
            max_len: p.max_relator_len(),
            certified,
            abelian: AbelianInvariant::new(p),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn index(&self) -> &SymmetrizedIndex {
        &self.index
    }

    pub fn abelian(&self) -> &AbelianInvariant {
        &self.abelian
    }

    fn require(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::NotSmallCancellation)
        }
    }

    /// Leftmost-longest Dehn reduction.
    pub fn dehn_reduce(&self, w: &Word) -> Result<Word> {
        self.require()?;
        Ok(Word::from_letters(self.reduce_letters(free_reduce(w).into_letters())))
    }

    pub(crate) fn reduce_letters(&self, mut w: Vec<Letter>) -> Vec<Letter> {
        let mut from = 0;
        while let Some((i, m, occ)) = (from..w.len())
            .find_map(|i| self.index.longest_majority_match(&w, i).map(|(m, occ)| (i, m, occ)))
        {
            let len = self.index.len_of(occ);
            // r = u·v with u = w[i..i+m]; u =_G v⁻¹
            let replacement = (m..len).rev().map(|t| self.index.letter(occ, t).inverse());
            let mut next: Vec<Letter> = Vec::with_capacity(w.len());
            let mut changed_at = i;
            for l in w[..i].iter().copied().chain(replacement).chain(w[i + m..].iter().copied()) {
                if next.last() == Some(&l.inverse()) {
                    next.pop();
                    changed_at = changed_at.min(next.len());
                } else {
                    next.push(l);
                }
            }
            w = next;
            from = changed_at.saturating_sub(self.max_len);
        }
        w
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.dehn_reduce(w)?.is_empty())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        self.is_trivial(&u.concat(&v.inverse()))
    }

    /// Shortlex-least word representing the same element, by level-wise
    /// enumeration of Dehn-irreducible words. Fails once a level holds more
    /// than `budget` words.
    pub fn shortlex_normal_form(&self, w: &Word, budget: usize) -> Result<Word> {
        let target = self.dehn_reduce(w)?;
        if target.is_empty() {
            return Ok(target);
        }
        let target_inv = target.inverse().into_letters();
        let letters: Vec<Letter> = (0..2 * self.presentation.rank() as u32)
            .map(Letter::from_code)
            .collect();
        let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..target.len() {
            let mut next = Vec::new();
            for word in &level {
                for &l in &letters {
                    if word.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut cand = word.clone();
                    cand.push(l);
                    // prefixes of geodesics are geodesic, hence Dehn-irreducible
                    let tail = cand.len().saturating_sub(self.max_len);
                    if (tail..cand.len()).any(|s| self.index.longest_majority_match(&cand, s).is_some()) {
                        continue;
                    }
                    let mut probe = cand.clone();
                    probe.extend_from_slice(&target_inv);
                    if self.reduce_letters(free_reduce(&Word::from_letters(probe)).into_letters()).is_empty() {
                        return Ok(Word::from_letters(cand));
                    }
                    next.push(cand);
                    if next.len() > budget {
                        return Err(Error::BudgetExceeded {
                            what: "shortlex frontier",
                            limit: budget,
                        });
                    }
                }
            }
            level = next;
        }
        // the Dehn-reduced target is itself a candidate of its own length
        unreachable!("enumeration reaches the reduced word itself")
    }
}

/// Exponent-sum vectors modulo the lattice spanned by the relators'
/// exponent sums: a cheap invariant of the group element under the
/// abelianization map. Equal elements have equal keys.
#[derive(Clone, Debug)]
pub struct AbelianInvariant {
    rank: usize,
    /// Echelon basis: `(pivot column, row)` with positive pivots in strictly
    /// increasing columns.
    rows: Vec<(usize, Vec<i64>)>,
}

impl AbelianInvariant {
    pub fn new(p: &Presentation) -> Self {
        let rank = p.rank();
        let mut pending: Vec<Vec<i64>> = p
            .relators()
            .iter()
            .map(|r| exponent_vector(r, rank))
            .collect();
        let mut rows = Vec::new();
        for col in 0..rank {
            // gcd elimination on column `col` across the pending rows
            loop {
                let nonzero: Vec<usize> = (0..pending.len()).filter(|&i| pending[i][col] != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let pivot = *nonzero.iter().min_by_key(|&&i| pending[i][col].abs()).unwrap();
                let prow = pending[pivot].clone();
                for &i in &nonzero {
                    if i != pivot {
                        let q = pending[i][col].div_euclid(prow[col]);
                        for (x, y) in pending[i].iter_mut().zip(&prow) {
                            *x -= q * y;
                        }
                    }
                }
            }
            if let Some(i) = pending.iter().position(|r| r[col] != 0) {
                let mut row = pending.swap_remove(i);
                if row[col] < 0 {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
                rows.push((col, row));
            }
        }
        AbelianInvariant { rank, rows }
    }

    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (col, row) in &self.rows {
            let q = v[*col].div_euclid(row[*col]);
            if q != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= q * y;
                }
            }
        }
        v
    }

    pub fn key(&self, w: &Word) -> Vec<i64> {
        self.reduce(exponent_vector(w, self.rank))
    }

    /// Key of `g·l` given the key of `g`.
    pub fn step(&self, key: &[i64], l: Letter) -> Vec<i64> {
        let mut v = key.to_vec();
        v[l.generator()] += if l.is_inverse() { -1 } else { 1 };
        self.reduce(v)
    }
}

fn exponent_vector(w: &Word, rank: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    for l in w.letters() {
        v[l.generator()] += if l.is_inverse() { -1 } else { 1 };
    }
    v
}

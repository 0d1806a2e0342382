//! Group presentations: data model, text format, piece analysis and the
//! example families.
//!
//! Text format (UTF-8, one directive per line, `#` starts a comment):
//!
//! ```text
//! gens: a b
//! lambda: 1/6
//! rel: (a b)^7
//! rel: (a^2 b²)^7
//! ```
//!
//! Words are juxtaposed generator names (longest registered name wins when
//! names run together), optionally followed by `^n`, `^-n`, `^{-n}`, `⁻¹` or
//! superscript digits; parenthesised groups take exponents too. `1` and `ε`
//! denote the empty word.

mod families;
mod parse;
mod pieces;

use std::collections::HashSet;
use std::fmt;

pub use families::{gen_example, Family, GeneratedExample, ParamFlag, RipsQuotient};
pub use parse::{parse_presentation, parse_word};
pub use pieces::{
    check_small_cancellation, compute_pieces, MetricReport, Occurrence, Piece, PieceIndex,
    RelatorVerdict, SymmetrizedIndex,
};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};
use crate::words::{cyclic_canonical, cyclic_reduce, Letter, Word};

/// A finite presentation `⟨S | r₁, …, r_m⟩` with cyclically reduced,
/// pairwise inequivalent relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    lambda: Rational,
}

impl Presentation {
    /// Cyclically reduces every relator and drops relators equivalent (up to
    /// rotation and inversion) to an earlier one.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(relators.len());
        for (index, r) in relators.into_iter().enumerate() {
            if let Some(bad) = r.letters().iter().find(|l| l.generator() >= generators.len()) {
                return Err(Error::BadParams(format!(
                    "relator {index} uses generator index {} outside the generator list",
                    bad.generator()
                )));
            }
            let (core, _) = cyclic_reduce(&r);
            if core.is_empty() {
                return Err(Error::EmptyRelator { index });
            }
            if seen.insert(cyclic_canonical(&core)) {
                kept.push(core);
            }
        }
        Ok(Presentation {
            generators,
            relators: kept,
            lambda: Rational::new(1, 6),
        })
    }

    /// The free group on `names`.
    pub fn free(names: &[&str]) -> Self {
        Presentation {
            generators: names.iter().map(|s| s.to_string()).collect(),
            relators: Vec::new(),
            lambda: Rational::new(1, 6),
        }
    }

    pub fn with_lambda(mut self, lambda: Rational) -> Result<Self> {
        if lambda <= Rational::from_integer(0) || lambda > Rational::new(1, 6) {
            return Err(Error::BadParams(format!(
                "lambda target {} outside (0, 1/6]",
                fmt_rational(&lambda)
            )));
        }
        self.lambda = lambda;
        Ok(self)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn lambda(&self) -> Rational {
        self.lambda
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn max_relator_len(&self) -> usize {
        self.relators.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn total_relator_len(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Renders a word with this presentation's generator names.
    pub fn render(&self, w: &Word) -> String {
        render_compact(w, &self.generators)
    }
}

/// Writes the presentation back in the text format; parses to an equal value.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        writeln!(f, "lambda: {}", fmt_rational(&self.lambda))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", render_compact(r, &self.generators))?;
        }
        Ok(())
    }
}

/// Run-length rendering: `a^2 b^-3 a`.
pub fn render_compact(w: &Word, names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let letters = w.letters();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        parts.push(render_power(l, (j - i) as i64, names));
        i = j;
    }
    parts.join(" ")
}

fn render_power(l: Letter, run: i64, names: &[String]) -> String {
    let name = names.get(l.generator()).map(String::as_str).unwrap_or("?");
    let exp = if l.is_inverse() { -run } else { run };
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

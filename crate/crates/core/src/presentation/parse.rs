use crate::error::{Error, Result};
use crate::rational::parse_rational;
use crate::words::{free_reduce, Letter, Word};

use super::Presentation;

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut generators: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    let mut lambda = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `key: value`, got `{line}`"),
        })?;
        match key.trim() {
            "gens" => {
                if generators.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "duplicate `gens:` line".into(),
                    });
                }
                let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                for name in &names {
                    if !valid_name(name) {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("invalid generator name `{name}`"),
                        });
                    }
                }
                let mut sorted = names.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != names.len() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "repeated generator name".into(),
                    });
                }
                generators = Some(names);
            }
            "rel" => {
                let gens = generators.as_ref().ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: "`rel:` before `gens:`".into(),
                })?;
                let w = parse_word_at(value, gens, line_no)?;
                relators.push(w);
            }
            "lambda" => {
                let r = parse_rational(value).map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad lambda `{}`", value.trim()),
                })?;
                lambda = Some(r);
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }

    let generators = generators.ok_or(Error::Parse {
        line: 0,
        message: "missing `gens:` line".into(),
    })?;
    let p = Presentation::new(generators, relators)?;
    match lambda {
        Some(l) => p.with_lambda(l),
        None => Ok(p),
    }
}

/// Parses a single word against a generator list; the result is freely
/// reduced.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word> {
    parse_word_at(text, generators, 1)
}

fn parse_word_at(text: &str, generators: &[String], line: usize) -> Result<Word> {
    let chars: Vec<char> = text.chars().collect();
    let mut parser = WordParser {
        chars: &chars,
        pos: 0,
        generators,
        line,
    };
    let w = parser.sequence()?;
    parser.skip_ws();
    if parser.pos != chars.len() {
        return Err(parser.error(format!("unexpected `{}`", chars[parser.pos])));
    }
    Ok(free_reduce(&w))
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '′')
}

const SUPERSCRIPT_DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

struct WordParser<'a> {
    chars: &'a [char],
    pos: usize,
    generators: &'a [String],
    line: usize,
}

impl WordParser<'_> {
    fn error(&self, message: String) -> Error {
        Error::Parse {
            line: self.line,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                Some(_) => {
                    let atom = self.atom()?;
                    let exp = self.exponent()?;
                    let base = if exp < 0 { atom.inverse() } else { atom };
                    for _ in 0..exp.unsigned_abs() {
                        letters.extend_from_slice(base.letters());
                    }
                }
            }
        }
        Ok(Word::from_letters(letters))
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sequence()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("unclosed `(`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('1') | Some('ε') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let rest: String = self.chars[self.pos..].iter().collect();
                let best = self
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(_, name)| rest.starts_with(name.as_str()))
                    .max_by_key(|(_, name)| name.chars().count());
                match best {
                    Some((index, name)) => {
                        self.pos += name.chars().count();
                        Ok(Word::from_letters(vec![Letter::gen(index)]))
                    }
                    None => {
                        let token: String = self.chars[self.pos..]
                            .iter()
                            .take_while(|c| c.is_alphanumeric() || **c == '_')
                            .collect();
                        Err(Error::UnknownGenerator {
                            line: self.line,
                            name: token,
                        })
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of word".into())),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        match self.peek() {
            Some('^') => {
                self.pos += 1;
                let braced = self.peek() == Some('{');
                if braced {
                    self.pos += 1;
                }
                let negative = self.peek() == Some('-');
                if negative {
                    self.pos += 1;
                }
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error("expected digits after `^`".into()));
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: i64 = digits
                    .parse()
                    .map_err(|_| self.error(format!("exponent `{digits}` too large")))?;
                if braced {
                    if self.peek() != Some('}') {
                        return Err(self.error("unclosed `{`".into()));
                    }
                    self.pos += 1;
                }
                Ok(if negative { -n } else { n })
            }
            Some(c) if c == '⁻' || SUPERSCRIPT_DIGITS.contains(&c) => {
                let negative = c == '⁻';
                if negative {
                    self.pos += 1;
                }
                let mut n: i64 = 0;
                let start = self.pos;
                while let Some(d) = self.peek().and_then(|c| SUPERSCRIPT_DIGITS.iter().position(|s| *s == c)) {
                    n = n * 10 + d as i64;
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error("expected superscript digits".into()));
                }
                Ok(if negative { -n } else { n })
            }
            _ => Ok(1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_single_relator() {
        let p = parse_presentation("gens: a b\nrel: (a b)^7").unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].len(), 14);
        assert_eq!(p.lambda(), crate::Rational::new(1, 6));
    }

    #[test]
    fn cancelling_relator_is_empty() {
        let err = parse_presentation("gens: a\nrel: a a⁻¹").unwrap_err();
        assert_eq!(err, Error::EmptyRelator { index: 0 });
    }

    #[test]
    fn shifted_inverse_relator_is_deduped() {
        let p = parse_presentation("gens: a b\nrel: (ab)^7\nrel: ((ba)^7)^-1\nrel: b^-1 a^-1 (b^-1 a^-1)^6")
            .unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn word_syntax_variants() {
        let g = names(&["a", "b"]);
        let w1 = parse_word("a²b⁻¹", &g).unwrap();
        let w2 = parse_word("a^2 b^-1", &g).unwrap();
        let w3 = parse_word("a a b^{-1}", &g).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(w2, w3);
        assert_eq!(parse_word("1", &g).unwrap(), Word::empty());
        assert_eq!(parse_word("ε", &g).unwrap(), Word::empty());
        assert_eq!(parse_word("(ab)^-1", &g).unwrap(), parse_word("b⁻¹a⁻¹", &g).unwrap());
    }

    #[test]
    fn longest_name_wins() {
        let g = names(&["a", "a1", "x"]);
        let w = parse_word("a1xa", &g).unwrap();
        assert_eq!(
            w.letters(),
            &[Letter::gen(1), Letter::gen(2), Letter::gen(0)]
        );
    }

    #[test]
    fn error_cases() {
        assert!(matches!(
            parse_presentation("gens: a\nrel: a c"),
            Err(Error::UnknownGenerator { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("rel: a"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("gens: a\nrel: (a"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_presentation("gens: a\nfoo: a"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_presentation("gens: a\nlambda: 1/2"),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(parse_presentation("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn comments_and_lambda() {
        let p = parse_presentation("# tv\ngens: a b # two\nlambda: 1/8\nrel: (ab)^8 # k=8\n").unwrap();
        assert_eq!(p.lambda(), crate::Rational::new(1, 8));
        assert_eq!(p.relators()[0].len(), 16);
    }
}

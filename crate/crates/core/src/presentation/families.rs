//! Truncations of the three classical infinite small cancellation families.

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

use super::Presentation;

/// Quotient data for the Rips construction: `Q = ⟨a_1..a_m | r_1, r_2, …⟩`,
/// relators written over generator indices `0..rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RipsQuotient {
    pub rank: usize,
    pub relators: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `⟨a, b | a·u_n, b·v_n (n ≤ n_max)⟩` with `u_n = (aⁿbⁿ)^10`,
    /// `v_n = (aⁿb²ⁿ)^10`.
    Pride { n_max: usize },
    /// `⟨a, b | (aⁿbⁿ)^k, n ∈ indices⟩`.
    ThomasVelickovic { indices: Vec<usize>, k: usize },
    /// Generators `a_1..a_m, x, y`; the j-th relator sets the j-th word of
    /// the sequence `a_i^{±1} x a_i^{∓1}, a_i^{±1} y a_i^{∓1}, r_1, …` equal to
    /// `Π_{t = sj+1}^{s(j+1)} (xy)^t x y²` with `s = scale` (80 in the
    /// classical construction).
    Rips {
        quotient: RipsQuotient,
        j_max: usize,
        scale: usize,
    },
}

/// Parameters accepted but outside the range where the family is known to
/// be C'(1/6).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamFlag {
    ExponentBelowSeven { k: usize },
}

#[derive(Clone, Debug)]
pub struct GeneratedExample {
    pub presentation: Presentation,
    pub flags: Vec<ParamFlag>,
}

pub fn gen_example(family: &Family) -> Result<GeneratedExample> {
    match family {
        Family::Pride { n_max } => pride(*n_max),
        Family::ThomasVelickovic { indices, k } => thomas_velickovic(indices, *k),
        Family::Rips {
            quotient,
            j_max,
            scale,
        } => rips(quotient, *j_max, *scale),
    }
}

fn power(l: Letter, n: usize) -> Word {
    Word::from_letters(vec![l; n])
}

fn two_letter() -> Vec<String> {
    vec!["a".into(), "b".into()]
}

fn pride(n_max: usize) -> Result<GeneratedExample> {
    if n_max == 0 {
        return Err(Error::BadParams("pride needs n_max >= 1".into()));
    }
    let (a, b) = (Letter::gen(0), Letter::gen(1));
    let mut relators = Vec::with_capacity(2 * n_max);
    for n in 1..=n_max {
        let u = power(a, n).concat(&power(b, n)).pow(10);
        let v = power(a, n).concat(&power(b, 2 * n)).pow(10);
        relators.push(power(a, 1).concat(&u));
        relators.push(power(b, 1).concat(&v));
    }
    Ok(GeneratedExample {
        presentation: Presentation::new(two_letter(), relators)?,
        flags: Vec::new(),
    })
}

fn thomas_velickovic(indices: &[usize], k: usize) -> Result<GeneratedExample> {
    if indices.is_empty() {
        return Err(Error::BadParams("tv needs a nonempty index set".into()));
    }
    if indices.contains(&0) {
        return Err(Error::BadParams("tv indices must be positive".into()));
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != indices.len() {
        return Err(Error::BadParams("tv indices must be distinct".into()));
    }
    if k == 0 {
        return Err(Error::BadParams("tv needs k >= 1".into()));
    }
    let (a, b) = (Letter::gen(0), Letter::gen(1));
    let relators = indices
        .iter()
        .map(|&n| power(a, n).concat(&power(b, n)).pow(k))
        .collect();
    let flags = if k < 7 {
        vec![ParamFlag::ExponentBelowSeven { k }]
    } else {
        Vec::new()
    };
    Ok(GeneratedExample {
        presentation: Presentation::new(two_letter(), relators)?,
        flags,
    })
}

/// The first `j_max` words of the sequence `A_1, A_2, …`.
fn rips_sequence(q: &RipsQuotient, j_max: usize) -> Vec<Word> {
    let x = Letter::gen(q.rank);
    let y = Letter::gen(q.rank + 1);
    let mut seq = Vec::new();
    for t in [x, y] {
        for i in 0..q.rank {
            let ai = Letter::gen(i);
            seq.push(Word::from_letters(vec![ai, t, ai.inverse()]));
            seq.push(Word::from_letters(vec![ai.inverse(), t, ai]));
        }
    }
    seq.extend(q.relators.iter().cloned());
    seq.truncate(j_max);
    seq
}

fn rips_block(j: usize, scale: usize, x: Letter, y: Letter) -> Word {
    let mut letters = Vec::new();
    for t in scale * j + 1..=scale * (j + 1) {
        for _ in 0..t {
            letters.push(x);
            letters.push(y);
        }
        letters.extend([x, y, y]);
    }
    Word::from_letters(letters)
}

fn rips(q: &RipsQuotient, j_max: usize, scale: usize) -> Result<GeneratedExample> {
    if scale == 0 {
        return Err(Error::BadParams("rips scale must be positive".into()));
    }
    if j_max == 0 {
        return Err(Error::BadParams("rips needs j_max >= 1".into()));
    }
    if let Some(bad) = q
        .relators
        .iter()
        .flat_map(|r| r.letters())
        .find(|l| l.generator() >= q.rank)
    {
        return Err(Error::BadParams(format!(
            "quotient relator uses generator {} outside rank {}",
            bad.generator(),
            q.rank
        )));
    }
    let seq = rips_sequence(q, j_max);
    if seq.len() < j_max {
        return Err(Error::BadParams(format!(
            "quotient supplies only {} sequence words, j_max = {j_max}",
            seq.len()
        )));
    }
    let x = Letter::gen(q.rank);
    let y = Letter::gen(q.rank + 1);
    let relators = seq
        .iter()
        .enumerate()
        .map(|(idx, a)| a.concat(&rips_block(idx + 1, scale, x, y).inverse()))
        .collect();
    let mut generators: Vec<String> = (1..=q.rank).map(|i| format!("a{i}")).collect();
    generators.push("x".into());
    generators.push("y".into());
    Ok(GeneratedExample {
        presentation: Presentation::new(generators, relators)?,
        flags: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{check_small_cancellation, compute_pieces, parse_presentation};
    use crate::Rational;

    fn tv(indices: &[usize], k: usize) -> GeneratedExample {
        gen_example(&Family::ThomasVelickovic {
            indices: indices.to_vec(),
            k,
        })
        .unwrap()
    }

    #[test]
    fn tv_matches_printed_form() {
        let g = tv(&[1, 2], 7);
        let expected = parse_presentation("gens: a b\nrel: (ab)^7\nrel: (a^2 b^2)^7").unwrap();
        assert_eq!(g.presentation, expected);
        assert!(g.flags.is_empty());
        assert_eq!(tv(&[1], 6).flags, vec![ParamFlag::ExponentBelowSeven { k: 6 }]);
    }

    #[test]
    fn tv_desk_sweep_is_small_cancellation() {
        let sixth = Rational::new(1, 6);
        let sets: [&[usize]; 6] = [&[1], &[6], &[1, 2], &[2, 5, 6], &[1, 3, 4, 6], &[2, 3, 4, 5, 6]];
        for set in sets {
            for k in 7..=9 {
                let r = check_small_cancellation(&tv(set, k).presentation, sixth);
                assert!(r.pass, "I = {set:?}, k = {k}");
            }
        }
    }

    #[test]
    fn pride_matches_printed_form() {
        let g = gen_example(&Family::Pride { n_max: 1 }).unwrap();
        let expected =
            parse_presentation("gens: a b\nrel: a (ab)^10\nrel: b (a b^2)^10").unwrap();
        assert_eq!(g.presentation, expected);
        assert_eq!(gen_example(&Family::Pride { n_max: 3 }).unwrap().presentation.relators().len(), 6);
    }

    #[test]
    fn printed_pride_choice_is_not_small_cancellation() {
        // a·(ab)^10 contains (ab)^9 at two shifts that are not rotations of
        // the cell onto itself, so the piece is 18 letters long out of 21.
        let p = gen_example(&Family::Pride { n_max: 1 }).unwrap().presentation;
        let idx = compute_pieces(&p);
        assert_eq!(idx.relator_lengths, vec![21, 31]);
        assert!(idx.max_piece[0] >= 18);
        assert!(!check_small_cancellation(&p, Rational::new(1, 6)).pass);
    }

    #[test]
    fn rips_single_block() {
        let q = RipsQuotient {
            rank: 1,
            relators: Vec::new(),
        };
        let g = gen_example(&Family::Rips {
            quotient: q,
            j_max: 1,
            scale: 80,
        })
        .unwrap();
        let p = &g.presentation;
        assert_eq!(p.generators(), &["a1", "x", "y"]);
        assert_eq!(p.relators().len(), 1);
        let block: usize = (81..=160).map(|t| 2 * t + 3).sum();
        assert_eq!(p.relators()[0].len(), 3 + block);
        assert!(check_small_cancellation(p, Rational::new(1, 6)).pass);
    }

    #[test]
    fn rips_small_scale_with_quotient_relator() {
        // Q = Z/3 via a1^3; scale 20 keeps the test quick.
        let a = Letter::gen(0);
        let q = RipsQuotient {
            rank: 1,
            relators: vec![Word::from_letters(vec![a, a, a])],
        };
        let g = gen_example(&Family::Rips {
            quotient: q.clone(),
            j_max: 5,
            scale: 20,
        })
        .unwrap();
        assert_eq!(g.presentation.relators().len(), 5);
        let report = check_small_cancellation(&g.presentation, Rational::new(1, 6));
        assert!(report.pass, "max ratio {}", report.max_ratio);
        assert!(matches!(
            gen_example(&Family::Rips {
                quotient: q,
                j_max: 6,
                scale: 20
            }),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn bad_params() {
        for f in [
            Family::Pride { n_max: 0 },
            Family::ThomasVelickovic {
                indices: vec![],
                k: 7,
            },
            Family::ThomasVelickovic {
                indices: vec![1, 1],
                k: 7,
            },
            Family::ThomasVelickovic {
                indices: vec![0],
                k: 7,
            },
        ] {
            assert!(matches!(gen_example(&f), Err(Error::BadParams(_))), "{f:?}");
        }
    }
}

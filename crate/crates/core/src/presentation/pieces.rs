//! Pieces of a presentation and the C'(λ) metric condition.
//!
//! Every cyclic shift of every relator and of its inverse is an *element* of
//! the symmetrized set. Two elements that spell the same word are one element:
//! this is how rotations of a proper power onto itself (the only cell
//! automorphisms commuting with the attaching map) are quotiented out.
//! A piece is then a common prefix of two distinct elements.
//!
//! Elements are sorted lexicographically, so the longest piece starting at an
//! element is its longest common prefix with a sorted neighbour, and the
//! distinct maximal pieces are read off the LCP-interval tree in one pass.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::rational::Rational;
use crate::words::{Letter, Word};

use super::Presentation;

/// A placement of a cyclic word: relator, orientation and starting offset
/// within the (possibly inverted) relator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub relator: usize,
    pub inverted: bool,
    pub offset: usize,
}

/// Sorted, deduplicated symmetrized relator set with an LCP array.
#[derive(Clone, Debug)]
pub struct SymmetrizedIndex {
    /// `oriented[2 * r]` is relator `r`, `oriented[2 * r + 1]` its inverse.
    oriented: Vec<Vec<Letter>>,
    elements: Vec<Occurrence>,
    /// `lcp[i]` is the common prefix length of elements `i - 1` and `i`.
    lcp: Vec<usize>,
    /// Sparse table over element lengths: `argmin[k][i]` is the index of the
    /// shortest element in `i .. i + 2^k` (ties to the lower index).
    argmin: Vec<Vec<u32>>,
}

impl SymmetrizedIndex {
    pub fn new(relators: &[Word]) -> Self {
        let mut oriented = Vec::with_capacity(relators.len() * 2);
        for r in relators {
            oriented.push(r.letters().to_vec());
            oriented.push(r.inverse().into_letters());
        }
        let mut elements: Vec<Occurrence> = relators
            .iter()
            .enumerate()
            .flat_map(|(relator, r)| {
                [false, true].into_iter().flat_map(move |inverted| {
                    (0..r.len()).map(move |offset| Occurrence {
                        relator,
                        inverted,
                        offset,
                    })
                })
            })
            .collect();

        let mut index = SymmetrizedIndex {
            oriented,
            elements: Vec::new(),
            lcp: Vec::new(),
            argmin: Vec::new(),
        };
        elements.par_sort_by(|x, y| index.compare(*x, *y).then_with(|| x.cmp(y)));
        elements.dedup_by(|later, earlier| index.compare(*earlier, *later) == Ordering::Equal);
        let mut lcp = vec![0; elements.len()];
        for i in 1..elements.len() {
            lcp[i] = index.common_prefix(elements[i - 1], elements[i]);
        }
        index.elements = elements;
        index.lcp = lcp;
        index.build_argmin();
        index
    }

    fn build_argmin(&mut self) {
        let n = self.elements.len();
        let mut table: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        let mut width = 1;
        while width * 2 <= n {
            let prev = table.last().unwrap();
            let row: Vec<u32> = (0..=n - width * 2)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + width]);
                    if self.len_of(self.elements[b as usize]) < self.len_of(self.elements[a as usize]) {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            table.push(row);
            width *= 2;
        }
        self.argmin = table;
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Occurrence] {
        &self.elements
    }

    pub fn lcp(&self) -> &[usize] {
        &self.lcp
    }

    pub fn len_of(&self, occ: Occurrence) -> usize {
        self.oriented[2 * occ.relator + occ.inverted as usize].len()
    }

    pub fn letter(&self, occ: Occurrence, t: usize) -> Letter {
        let w = &self.oriented[2 * occ.relator + occ.inverted as usize];
        w[(occ.offset + t) % w.len()]
    }

    /// The full cyclic word read from an occurrence.
    pub fn word(&self, occ: Occurrence) -> Word {
        self.prefix(occ, self.len_of(occ))
    }

    pub fn prefix(&self, occ: Occurrence, len: usize) -> Word {
        (0..len).map(|t| self.letter(occ, t)).collect()
    }

    fn compare(&self, x: Occurrence, y: Occurrence) -> Ordering {
        let (lx, ly) = (self.len_of(x), self.len_of(y));
        for t in 0..lx.min(ly) {
            match self.letter(x, t).cmp(&self.letter(y, t)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        lx.cmp(&ly)
    }

    fn common_prefix(&self, x: Occurrence, y: Occurrence) -> usize {
        let cap = self.len_of(x).min(self.len_of(y));
        (0..cap)
            .position(|t| self.letter(x, t) != self.letter(y, t))
            .unwrap_or(cap)
    }

    fn shortest_in(&self, lo: usize, hi: usize) -> usize {
        let k = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let a = self.argmin[k][lo] as usize;
        let b = self.argmin[k][hi - (1 << k)] as usize;
        if self.len_of(self.elements[b]) < self.len_of(self.elements[a]) {
            b
        } else {
            a
        }
    }

    /// Longest `m` such that `w[start .. start + m]` is a prefix of some
    /// element `r` with `2m > |r|`. Returns `m` and the shortest such element
    /// (lowest sorted index on ties).
    pub fn longest_majority_match(&self, w: &[Letter], start: usize) -> Option<(usize, Occurrence)> {
        let (mut lo, mut hi) = (0usize, self.elements.len());
        let mut best = None;
        let mut m = 0;
        while start + m < w.len() && lo < hi {
            let c = w[start + m];
            // elements in [lo, hi) share the first m letters; those of length m
            // sort first and cannot be extended.
            let key = |occ: &Occurrence| {
                if self.len_of(*occ) <= m {
                    None
                } else {
                    Some(self.letter(*occ, m))
                }
            };
            let slice = &self.elements[lo..hi];
            let first = slice.partition_point(|o| key(o) < Some(c));
            let last = slice.partition_point(|o| key(o) <= Some(c));
            hi = lo + last;
            lo += first;
            m += 1;
            if lo < hi {
                let idx = self.shortest_in(lo, hi);
                let occ = self.elements[idx];
                if 2 * m > self.len_of(occ) {
                    best = Some((m, occ));
                }
            }
        }
        best
    }
}

/// A maximal piece together with one pair of witnessing occurrences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub word: Word,
    pub witnesses: (Occurrence, Occurrence),
}

impl Piece {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct PieceIndex {
    /// Distinct maximal pieces, sorted by decreasing length then word.
    pub pieces: Vec<Piece>,
    /// Longest piece through each relator (0 if none).
    pub max_piece: Vec<usize>,
    /// A witness for each per-relator maximum.
    pub worst: Vec<Option<Piece>>,
    pub relator_lengths: Vec<usize>,
}

impl PieceIndex {
    /// `max_piece / |r|` for relator `i`.
    pub fn ratio(&self, i: usize) -> Rational {
        Rational::new(self.max_piece[i] as i64, self.relator_lengths[i] as i64)
    }

    pub fn max_ratio(&self) -> Rational {
        (0..self.max_piece.len())
            .map(|i| self.ratio(i))
            .max()
            .unwrap_or_else(|| Rational::from_integer(0))
    }
}

pub fn compute_pieces(p: &Presentation) -> PieceIndex {
    let index = SymmetrizedIndex::new(p.relators());
    pieces_from_index(&index, p.relators())
}

pub(crate) fn pieces_from_index(index: &SymmetrizedIndex, relators: &[Word]) -> PieceIndex {
    let n = index.len();
    let elems = index.elements();
    let lcp = index.lcp();

    let mut max_piece = vec![0usize; relators.len()];
    let mut worst: Vec<Option<(usize, usize, usize)>> = vec![None; relators.len()];
    for i in 0..n {
        let rel = elems[i].relator;
        for (j, h) in [(i.wrapping_sub(1), lcp[i]), (i + 1, lcp.get(i + 1).copied().unwrap_or(0))] {
            if j < n && h > max_piece[rel] {
                max_piece[rel] = h;
                worst[rel] = Some((i, j, h));
            }
        }
    }
    let worst = worst
        .into_iter()
        .map(|w| {
            w.map(|(i, j, h)| Piece {
                word: index.prefix(elems[i], h),
                witnesses: (elems[i], elems[j]),
            })
        })
        .collect();

    let mut pieces = maximal_pieces(index);
    pieces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.word.cmp(&b.word)));

    PieceIndex {
        pieces,
        max_piece,
        worst,
        relator_lengths: relators.iter().map(Word::len).collect(),
    }
}

/// Up to two members of an LCP interval with distinct preceding letters.
#[derive(Clone, Default)]
struct Reps(Vec<usize>);

struct Frame {
    depth: usize,
    reps: Reps,
    witness: Option<(usize, usize)>,
}

fn maximal_pieces(index: &SymmetrizedIndex) -> Vec<Piece> {
    let elems = index.elements();
    let n = elems.len();
    let lcp = index.lcp();
    // Letter just before an element's start, i.e. its last letter.
    let before = |i: usize| index.letter(elems[i], index.len_of(elems[i]) - 1);

    let merge = |frame: &mut Frame, child: Reps| {
        if frame.witness.is_none() {
            'search: for &c in &child.0 {
                for &a in &frame.reps.0 {
                    // An element exactly as long as the interval depth cannot be
                    // extended to the left inside its own relator.
                    let capped = index.len_of(elems[c]) == frame.depth
                        || index.len_of(elems[a]) == frame.depth;
                    if capped || before(a) != before(c) {
                        frame.witness = Some((a.min(c), a.max(c)));
                        break 'search;
                    }
                }
            }
        }
        for c in child.0 {
            let len_c = index.len_of(elems[c]);
            let fresh = frame.reps.0.iter().all(|&a| before(a) != before(c));
            if frame.reps.0.is_empty() || (fresh && frame.reps.0.len() < 2) {
                frame.reps.0.push(c);
            } else if len_c == frame.depth && !frame.reps.0.contains(&c) {
                // keep capped leaves reachable for later siblings
                frame.reps.0.push(c);
            }
        }
    };

    let mut out = Vec::new();
    let emit = |frame: &Frame, out: &mut Vec<Piece>| {
        if let (Some((a, b)), true) = (frame.witness, frame.depth > 0) {
            out.push(Piece {
                word: index.prefix(elems[a], frame.depth),
                witnesses: (elems[a], elems[b]),
            });
        }
    };

    let mut stack = vec![Frame {
        depth: 0,
        reps: Reps::default(),
        witness: None,
    }];
    for i in 0..n {
        let mut child = Reps(vec![i]);
        let h = if i + 1 < n { lcp[i + 1] } else { 0 };
        loop {
            let top = stack.last_mut().unwrap();
            if top.depth > h {
                merge(top, child);
                let done = stack.pop().unwrap();
                emit(&done, &mut out);
                child = done.reps;
            } else if top.depth == h {
                merge(top, child);
                break;
            } else {
                let mut frame = Frame {
                    depth: h,
                    reps: Reps::default(),
                    witness: None,
                };
                merge(&mut frame, child);
                stack.push(frame);
                break;
            }
        }
    }
    out
}

/// Per-relator outcome of the C'(λ) check.
#[derive(Clone, Debug)]
pub struct RelatorVerdict {
    pub relator: usize,
    pub length: usize,
    pub max_piece: usize,
    pub worst: Option<Piece>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct MetricReport {
    pub lambda: Rational,
    pub relators: Vec<RelatorVerdict>,
    pub max_ratio: Rational,
    pub pass: bool,
}

/// Passes iff every piece through every relator `r` has `|p| < λ|r|`.
pub fn check_small_cancellation(p: &Presentation, lambda: Rational) -> MetricReport {
    let pieces = compute_pieces(p);
    report_from_pieces(&pieces, lambda)
}

pub(crate) fn report_from_pieces(pieces: &PieceIndex, lambda: Rational) -> MetricReport {
    let relators: Vec<RelatorVerdict> = (0..pieces.max_piece.len())
        .map(|i| {
            let length = pieces.relator_lengths[i];
            let max_piece = pieces.max_piece[i];
            RelatorVerdict {
                relator: i,
                length,
                max_piece,
                worst: pieces.worst[i].clone(),
                pass: Rational::from_integer(max_piece as i64) < lambda * length as i64,
            }
        })
        .collect();
    MetricReport {
        lambda,
        pass: relators.iter().all(|r| r.pass),
        max_ratio: pieces.max_ratio(),
        relators,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;
    use crate::presentation::parse_presentation;
    use proptest::prelude::*;

    /// Brute force over every pair of placements. Two placements are the
    /// same cell position iff they read the same full cyclic word.
    struct Oracle {
        max_piece: Vec<usize>,
        maximal: BTreeSet<Word>,
    }

    fn oracle(relators: &[Word]) -> Oracle {
        let mut placements = Vec::new();
        for (i, r) in relators.iter().enumerate() {
            for o in [r.clone(), r.inverse()] {
                for s in 0..o.len() {
                    placements.push((i, o.rotate(s)));
                }
            }
        }
        let mut max_piece = vec![0; relators.len()];
        let mut maximal = BTreeSet::new();
        for (i, u) in &placements {
            for (_, v) in &placements {
                if u == v {
                    continue;
                }
                let (lu, lv) = (u.letters(), v.letters());
                let cap = lu.len().min(lv.len());
                let h = (0..cap).take_while(|&t| lu[t] == lv[t]).count();
                max_piece[*i] = max_piece[*i].max(h);
                let left_maximal = h == lu.len()
                    || h == lv.len()
                    || lu.last() != lv.last();
                if h > 0 && left_maximal {
                    maximal.insert(Word::from_letters(lu[..h].to_vec()));
                }
            }
        }
        Oracle { max_piece, maximal }
    }

    fn check_against_oracle(p: &Presentation) {
        let idx = compute_pieces(p);
        let o = oracle(p.relators());
        assert_eq!(idx.max_piece, o.max_piece, "per-relator maxima");
        let got: BTreeSet<Word> = idx.pieces.iter().map(|x| x.word.clone()).collect();
        assert_eq!(got, o.maximal, "maximal piece words");
        let sym = SymmetrizedIndex::new(p.relators());
        for piece in &idx.pieces {
            let (x, y) = piece.witnesses;
            assert_ne!(sym.word(x), sym.word(y));
            assert_eq!(sym.prefix(x, piece.len()), piece.word);
            assert_eq!(sym.prefix(y, piece.len()), piece.word);
        }
    }

    fn tv(indices: &[usize], k: usize) -> Presentation {
        let rels: Vec<String> = indices
            .iter()
            .map(|n| format!("rel: (a^{n} b^{n})^{k}"))
            .collect();
        parse_presentation(&format!("gens: a b\n{}", rels.join("\n"))).unwrap()
    }

    #[test]
    fn single_power_relator_has_no_pieces() {
        let p = tv(&[1], 7);
        let idx = compute_pieces(&p);
        assert_eq!(idx.max_piece, vec![0]);
        assert!(idx.pieces.is_empty());
        check_against_oracle(&p);
    }

    #[test]
    fn two_relator_tv_max_piece_two() {
        let p = tv(&[1, 2], 7);
        let idx = compute_pieces(&p);
        assert_eq!(idx.max_piece, vec![2, 2]);
        check_against_oracle(&p);
    }

    #[test]
    fn tv_family_maxima_match_closed_form() {
        let ns = [1, 2, 3, 4, 5];
        let p = tv(&ns, 7);
        let idx = compute_pieces(&p);
        for (i, &n) in ns.iter().enumerate() {
            let across = ns.iter().filter(|&&m| m != n).map(|&m| 2 * n.min(m)).max().unwrap();
            assert_eq!(idx.max_piece[i], across.max(n - 1), "n = {n}");
        }
        check_against_oracle(&p);
    }

    #[test]
    fn strict_inequality_boundary() {
        let pass = check_small_cancellation(&tv(&[1, 2], 7), Rational::new(1, 6));
        assert!(pass.pass);
        let fail = check_small_cancellation(&tv(&[1, 2], 6), Rational::new(1, 6));
        assert!(!fail.pass);
        assert!(!fail.relators[0].pass, "2 < 12/6 is false");
        assert!(fail.relators[1].pass);
        let free = check_small_cancellation(&tv(&[1], 7), Rational::new(1, 100));
        assert!(free.pass);
    }

    #[test]
    fn majority_match_finds_longest() {
        let p = tv(&[1], 7);
        let sym = SymmetrizedIndex::new(p.relators());
        let a = Letter::gen(0);
        let b = Letter::gen(1);
        let w: Vec<Letter> = [a, b].repeat(4);
        let (m, occ) = sym.longest_majority_match(&w, 0).unwrap();
        assert_eq!(m, 8);
        assert_eq!(sym.len_of(occ), 14);
        assert!(sym.longest_majority_match(&w[..7], 0).is_none());
        assert_eq!(sym.longest_majority_match(&w, 1).map(|x| x.0), None);
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        proptest::collection::vec(proptest::collection::vec(0u32..4, 1..14), 1..4).prop_filter_map(
            "degenerate",
            |rels| {
                let words: Vec<Word> = rels
                    .into_iter()
                    .map(|r| r.into_iter().map(Letter::from_code).collect())
                    .collect();
                Presentation::new(vec!["a".into(), "b".into()], words).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn agrees_with_brute_force(p in arb_presentation()) {
            check_against_oracle(&p);
        }

        #[test]
        fn pieces_are_symmetric_in_witnesses(p in arb_presentation()) {
            let idx = compute_pieces(&p);
            let sym = SymmetrizedIndex::new(p.relators());
            let mut by_rel: BTreeMap<usize, usize> = BTreeMap::new();
            for piece in &idx.pieces {
                let (x, y) = piece.witnesses;
                for occ in [x, y] {
                    let e = by_rel.entry(occ.relator).or_default();
                    *e = (*e).max(piece.len());
                }
                // querying from the second witness finds the same word
                prop_assert_eq!(sym.prefix(y, piece.len()), piece.word.clone());
            }
            for (rel, best) in by_rel {
                prop_assert!(idx.max_piece[rel] >= best);
            }
        }
    }
}

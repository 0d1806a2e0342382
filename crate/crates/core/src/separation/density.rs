//! Interval covers and the local-to-global density count.

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};

/// Edge positions `start..end` on a common path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        assert!(start < end, "empty interval {start}..{end}");
        Interval { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    /// Shares at least one edge with `other`.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// A minimal subcover of `⋃ intervals`, split into two families of pairwise
/// edge-disjoint intervals.
///
/// The greedy sweep always extends the covered prefix as far as possible, so
/// the k-th and (k+2)-th chosen intervals never overlap and alternating
/// assignment works.
pub fn cover_split(intervals: &[Interval]) -> (Vec<Interval>, Vec<Interval>) {
    let mut sorted = intervals.to_vec();
    sorted.sort_by_key(|u| (u.start, std::cmp::Reverse(u.end)));
    sorted.dedup();
    let mut chosen: Vec<Interval> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        match chosen.last().map(|u| u.end) {
            Some(cur) if sorted[i].start <= cur => {
                let mut best: Option<Interval> = None;
                while i < sorted.len() && sorted[i].start <= cur {
                    if sorted[i].end > cur.max(best.map_or(0, |b| b.end)) {
                        best = Some(sorted[i]);
                    }
                    i += 1;
                }
                chosen.extend(best);
            }
            _ => {
                // a fresh component; the longest interval at this start sorts first
                chosen.push(sorted[i]);
                i += 1;
            }
        }
    }
    let (mut u1, mut u2) = (Vec::new(), Vec::new());
    let mut parity = false;
    for (k, u) in chosen.iter().enumerate() {
        if k == 0 || !chosen[k - 1].overlaps(u) {
            parity = false;
        } else {
            parity = !parity;
        }
        if parity {
            u2.push(*u);
        } else {
            u1.push(*u);
        }
    }
    (u1, u2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalToGlobal {
    /// `|A|` counted inside `⋃U`.
    pub a_count: usize,
    pub union_len: usize,
    /// `(C/2)|⋃U|`
    pub bound: Rational,
    /// `C · |⋃U₁|` where `U₁` is the heavier half of the split.
    pub via_split: Rational,
    pub pass: bool,
}

/// Checks `|A| ≥ (C/2)|⋃U|` given `|A ∩ u| ≥ C|u|` for every `u`. `in_a`
/// marks the edge positions of `A`.
pub fn local_to_global_bound(in_a: &[bool], intervals: &[Interval], c: Rational) -> Result<LocalToGlobal> {
    let hits = |u: &Interval| (u.start..u.end).filter(|&i| in_a[i]).count();
    for (index, u) in intervals.iter().enumerate() {
        let h = hits(u);
        if Rational::new(h as i64, u.len() as i64) < c {
            return Err(Error::HypothesisViolated {
                index,
                hits: h,
                len: u.len(),
                bound: fmt_rational(&c),
            });
        }
    }
    let mut covered = vec![false; in_a.len()];
    for u in intervals {
        covered[u.start..u.end].iter_mut().for_each(|x| *x = true);
    }
    let union_len = covered.iter().filter(|&&x| x).count();
    let a_count = covered.iter().zip(in_a).filter(|(c, a)| **c && **a).count();
    let bound = c * union_len as i64 / 2;

    let (u1, u2) = cover_split(intervals);
    let total = |f: &[Interval]| f.iter().map(Interval::len).sum::<usize>();
    let heavy = total(&u1).max(total(&u2));
    let via_split = c * heavy as i64;
    let a_direct = Rational::from_integer(a_count as i64);
    Ok(LocalToGlobal {
        a_count,
        union_len,
        bound,
        via_split,
        pass: a_direct >= bound && a_direct >= via_split && via_split >= bound,
    })
}

//! Pieces between 2-cells of a complex and the B(6) and C'(λ) conditions.
//!
//! A common boundary subpath of two cells is a piece unless the two
//! occurrences are related by an isomorphism of cells, which on a complex
//! means the whole boundary cycles coincide once aligned.

use std::collections::HashMap;

use crate::Rational;

use super::{Complex, Step};

/// A boundary path of `cell` read from `offset`, backwards if `reversed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellOccurrence {
    pub cell: usize,
    pub offset: usize,
    pub reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPiece {
    pub path: Vec<Step>,
    pub first: CellOccurrence,
    pub second: CellOccurrence,
}

impl CellPiece {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

fn read(c: &Complex, occ: CellOccurrence, t: isize) -> Step {
    let b = &c.cells()[occ.cell].boundary;
    let n = b.len() as isize;
    if occ.reversed {
        b[(occ.offset as isize - t).rem_euclid(n) as usize].reversed()
    } else {
        b[(occ.offset as isize + t).rem_euclid(n) as usize]
    }
}

/// Maximal common runs starting at every pair of occurrences of one edge,
/// kept only at their left end. Every maximal run is reported once per
/// unordered occurrence pair.
fn raw_pieces(c: &Complex) -> Vec<CellPiece> {
    let mut out = Vec::new();
    for e in 0..c.edge_count() {
        let occs = c.cells_of_edge(e);
        for (i, &(ca, pa)) in occs.iter().enumerate() {
            for &(cb, pb) in &occs[i + 1..] {
                let sa = c.cells()[ca].boundary[pa];
                let sb = c.cells()[cb].boundary[pb];
                let a = CellOccurrence {
                    cell: ca,
                    offset: pa,
                    reversed: false,
                };
                let b = CellOccurrence {
                    cell: cb,
                    offset: pb,
                    reversed: sa.forward != sb.forward,
                };
                let cap = c.cells()[ca].len().min(c.cells()[cb].len());
                let h = (0..cap as isize)
                    .take_while(|&t| read(c, a, t) == read(c, b, t))
                    .count();
                if h == cap {
                    // the cycles coincide: an isomorphism, not a piece
                    continue;
                }
                if read(c, a, -1) == read(c, b, -1) {
                    continue;
                }
                out.push(CellPiece {
                    path: (0..h as isize).map(|t| read(c, a, t)).collect(),
                    first: a,
                    second: b,
                });
            }
        }
    }
    out
}

fn canonical(path: &[Step]) -> Vec<Step> {
    let rev: Vec<Step> = path.iter().rev().map(|s| s.reversed()).collect();
    if rev.as_slice() < path {
        rev
    } else {
        path.to_vec()
    }
}

/// Distinct maximal pieces (a path and its reverse count once), each with
/// its first witnessing occurrence pair.
pub fn compute_cell_pieces(c: &Complex) -> Vec<CellPiece> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for p in raw_pieces(c) {
        if seen.insert(canonical(&p.path), ()).is_none() {
            out.push(p);
        }
    }
    out
}

/// Per-cell piece arcs and maxima.
#[derive(Clone, Debug)]
pub struct CellPieceReport {
    pub pieces: Vec<CellPiece>,
    /// `(start, length)` arcs of each cell's boundary that are pieces.
    pub arcs: Vec<Vec<(usize, usize)>>,
    pub max_piece: Vec<usize>,
}

impl CellPieceReport {
    pub fn new(c: &Complex) -> Self {
        let raw = raw_pieces(c);
        let mut arcs = vec![Vec::new(); c.cell_count()];
        for p in &raw {
            for occ in [p.first, p.second] {
                let n = c.cells()[occ.cell].len();
                let start = if occ.reversed {
                    (occ.offset + n - (p.len() - 1) % n) % n
                } else {
                    occ.offset
                };
                arcs[occ.cell].push((start, p.len()));
            }
        }
        for a in &mut arcs {
            a.sort_unstable();
            a.dedup();
        }
        let max_piece = arcs.iter().map(|a| a.iter().map(|x| x.1).max().unwrap_or(0)).collect();
        CellPieceReport {
            pieces: compute_cell_pieces(c),
            arcs,
            max_piece,
        }
    }

    /// `|p| < λ|r|` for every piece `p` on every cell `r`.
    pub fn satisfies(&self, c: &Complex, lambda: Rational) -> bool {
        self.max_piece
            .iter()
            .zip(c.cells())
            .all(|(&m, cell)| Rational::from_integer(m as i64) < lambda * cell.len() as i64)
    }

    pub fn max_ratio(&self, c: &Complex) -> Rational {
        self.max_piece
            .iter()
            .zip(c.cells())
            .map(|(&m, cell)| Rational::new(m as i64, cell.len() as i64))
            .max()
            .unwrap_or_else(|| Rational::from_integer(0))
    }

    /// Longest boundary path of `cell` that is a concatenation of at most
    /// `k` pieces, with its starting position.
    pub fn longest_cover(&self, c: &Complex, cell: usize, k: usize) -> (usize, usize) {
        let n = c.cells()[cell].len();
        let mut reach = vec![0usize; n];
        for &(start, len) in &self.arcs[cell] {
            for t in 0..len.min(n) {
                let pos = (start + t) % n;
                reach[pos] = reach[pos].max(len - t);
            }
        }
        let mut best = (0, 0);
        for s in 0..n {
            let mut total = 0;
            for _ in 0..k {
                let step = reach[(s + total) % n];
                if step == 0 || total >= n {
                    break;
                }
                total += step;
            }
            let total = total.min(n);
            if total > best.0 {
                best = (total, s);
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
pub struct B6Witness {
    pub cell: usize,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
pub struct B6Report {
    pub pass: bool,
    /// A boundary path made of at most three pieces longer than `|r|/2`.
    pub witness: Option<B6Witness>,
    pub small_cancellation: bool,
    pub max_piece_ratio: Rational,
    /// C'(1/6) must imply B(6).
    pub implication_holds: bool,
}

pub fn check_b6(c: &Complex) -> B6Report {
    let report = CellPieceReport::new(c);
    let mut witness = None;
    for cell in 0..c.cell_count() {
        let (len, start) = report.longest_cover(c, cell, 3);
        if 2 * len > c.cells()[cell].len() {
            witness = Some(B6Witness { cell, start, len });
            break;
        }
    }
    let pass = witness.is_none();
    let small_cancellation = report.satisfies(c, Rational::new(1, 6));
    B6Report {
        pass,
        witness,
        small_cancellation,
        max_piece_ratio: report.max_ratio(c),
        implication_holds: !small_cancellation || pass,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::complex::{build_example1, build_example2, Cell, Edge, Meta, Origin, Vertex};

    /// Every pair of directed boundary subpaths, compared edge by edge.
    fn oracle(c: &Complex) -> BTreeSet<Vec<Step>> {
        let mut out = BTreeSet::new();
        let occs: Vec<CellOccurrence> = (0..c.cell_count())
            .flat_map(|cell| {
                (0..c.cells()[cell].len()).flat_map(move |offset| {
                    [false, true].map(|reversed| CellOccurrence {
                        cell,
                        offset,
                        reversed,
                    })
                })
            })
            .collect();
        for &a in &occs {
            for &b in &occs {
                if a == b {
                    continue;
                }
                let cap = c.cells()[a.cell].len().min(c.cells()[b.cell].len());
                let h = (0..cap as isize).take_while(|&t| read(c, a, t) == read(c, b, t)).count();
                if h == 0 || h == cap || read(c, a, -1) == read(c, b, -1) {
                    continue;
                }
                let path: Vec<Step> = (0..h as isize).map(|t| read(c, a, t)).collect();
                out.insert(canonical(&path));
            }
        }
        out
    }

    fn two_cells_sharing(len: usize, shared: usize) -> Complex {
        // cells u→(shared)→v→(len-shared)→u on both sides
        let mut vertices = vec![Vertex::default(), Vertex::default()];
        let mut edges = Vec::new();
        let chain = |vs: &mut Vec<Vertex>, edges: &mut Vec<Edge>, from: usize, to: usize, n: usize| {
            let mut steps = Vec::new();
            let mut cur = from;
            for i in 0..n {
                let nxt = if i + 1 == n {
                    to
                } else {
                    vs.push(Vertex::default());
                    vs.len() - 1
                };
                edges.push(Edge {
                    ends: (cur, nxt),
                    label: None,
                });
                steps.push(Step::new(edges.len() - 1, true));
                cur = nxt;
            }
            steps
        };
        let s = chain(&mut vertices, &mut edges, 0, 1, shared);
        let x = chain(&mut vertices, &mut edges, 1, 0, len - shared);
        let y = chain(&mut vertices, &mut edges, 1, 0, len - shared);
        let cells = vec![
            Cell {
                boundary: [s.clone(), x].concat(),
            },
            Cell {
                boundary: [s, y].concat(),
            },
        ];
        Complex::new(vertices, edges, cells, Meta::new(Origin::File)).unwrap()
    }

    fn canon_set(c: &Complex) -> BTreeSet<Vec<Step>> {
        compute_cell_pieces(c).iter().map(|p| canonical(&p.path)).collect()
    }

    #[test]
    fn example2_has_one_piece() {
        let c = build_example2(2, 14).unwrap();
        let pieces = compute_cell_pieces(&c);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].len(), 2);
        let a = c.find_label("a").unwrap();
        let q = c.find_label("q'").unwrap();
        let ends = [c.step_tail(pieces[0].path[0]), c.step_head(pieces[0].path[1])];
        assert!(ends == [a, q] || ends == [q, a]);
        let r = check_b6(&c);
        assert!(r.small_cancellation && r.pass && r.implication_holds);
        assert_eq!(r.max_piece_ratio, Rational::new(1, 14));
        assert_eq!(canon_set(&c), oracle(&c));
    }

    #[test]
    fn example1_pieces_are_the_middle_segments() {
        let c = build_example1(&[1, 2, 3]).unwrap();
        let pieces = compute_cell_pieces(&c);
        assert_eq!(pieces.iter().map(|p| p.len()).collect::<Vec<_>>(), vec![2, 4, 6]);
        for (i, p) in pieces.iter().enumerate() {
            assert_eq!((p.first.cell, p.second.cell), (2 * i, 2 * i + 1));
        }
        assert_eq!(canon_set(&c), oracle(&c));
        let r = check_b6(&c);
        assert!(r.pass);
        assert!(!r.small_cancellation);
    }

    #[test]
    fn b6_fixture_with_a_long_piece() {
        let c = two_cells_sharing(12, 5);
        let r = check_b6(&c);
        assert!(r.pass, "a single piece of 5 <= 6");
        assert!(!r.small_cancellation, "5 >= 12/6");
        assert_eq!(canon_set(&c), oracle(&c));
        let fat = two_cells_sharing(12, 7);
        assert!(!check_b6(&fat).pass);
    }

    #[test]
    fn a_lone_cell_has_no_pieces() {
        let c = two_cells_sharing(10, 1);
        let lone = Complex::new(
            c.vertices().to_vec(),
            c.edges().to_vec(),
            vec![c.cells()[0].clone()],
            Meta::new(Origin::File),
        )
        .unwrap();
        assert!(compute_cell_pieces(&lone).is_empty());
        assert!(check_b6(&lone).pass);
    }

    #[test]
    fn cayley_ball_pieces_match_oracle() {
        use crate::complex::{build_cayley_ball, DEFAULT_VERTEX_BUDGET};
        use crate::dehn::DehnMachine;
        use crate::presentation::{gen_example, Family};
        let p = gen_example(&Family::ThomasVelickovic {
            indices: vec![1],
            k: 7,
        })
        .unwrap()
        .presentation;
        let c = build_cayley_ball(&p, &DehnMachine::new(&p), 8, DEFAULT_VERTEX_BUDGET).unwrap();
        let expected = oracle(&c);
        assert_eq!(canon_set(&c), expected);
        let r = check_b6(&c);
        assert!(r.small_cancellation && r.pass);
    }
}

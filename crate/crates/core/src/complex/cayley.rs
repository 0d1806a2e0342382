//! Balls in the Cayley complex of a C'(1/6) presentation.
//!
//! Vertices are discovered level by level in shortlex order, so the first
//! word reaching a group element is its shortlex normal form. A candidate
//! `g·s` is identified with an existing vertex `h` iff Dehn's algorithm
//! reduces `(g·s)·h⁻¹` to the empty word; candidates are only compared
//! within the same abelianized class and adjacent levels.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::dehn::DehnMachine;
use crate::error::{Error, Result};
use crate::presentation::{render_compact, Presentation};
use crate::words::{free_reduce, Letter, Word};

use super::{Cell, Complex, Edge, Meta, Origin, Step, Vertex};

pub const DEFAULT_VERTEX_BUDGET: usize = 2_000_000;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct BallOptions {
    pub radius: usize,
    pub vertex_budget: usize,
    /// Relators longer than this are ignored when flagging edges whose cells
    /// leave the ball. Defaults to `2 * radius`.
    pub open_horizon: Option<usize>,
}

impl BallOptions {
    pub fn new(radius: usize) -> Self {
        BallOptions {
            radius,
            vertex_budget: DEFAULT_VERTEX_BUDGET,
            open_horizon: None,
        }
    }
}

pub fn build_cayley_ball(p: &Presentation, m: &DehnMachine, radius: usize, budget: usize) -> Result<Complex> {
    build_cayley_ball_with(
        p,
        m,
        &BallOptions {
            vertex_budget: budget,
            ..BallOptions::new(radius)
        },
    )
}

struct Ball<'a> {
    m: &'a DehnMachine,
    letters: usize,
    words: Vec<Vec<Letter>>,
    depth: Vec<usize>,
    keys: Vec<Vec<i64>>,
    /// `next[v * letters + code]`
    next: Vec<usize>,
    /// `out_edge[v * rank + g]`: the edge `v → v·g`
    out_edge: Vec<usize>,
    edges: Vec<Edge>,
    buckets: HashMap<(Vec<i64>, usize), Vec<usize>>,
}

impl Ball<'_> {
    fn rank(&self) -> usize {
        self.letters / 2
    }

    fn same_element(&self, cand: &[Letter], h: usize) -> bool {
        let mut w = cand.to_vec();
        w.extend(self.words[h].iter().rev().map(|l| l.inverse()));
        let w = free_reduce(&Word::from_letters(w)).into_letters();
        self.m.reduce_letters(w).is_empty()
    }

    fn find(&self, cand: &[Letter], key: &[i64], level: usize) -> Option<usize> {
        self.buckets
            .get(&(key.to_vec(), level))?
            .iter()
            .copied()
            .find(|&h| self.same_element(cand, h))
    }

    fn add_vertex(&mut self, word: Vec<Letter>, key: Vec<i64>, level: usize) -> usize {
        let id = self.words.len();
        self.words.push(word);
        self.depth.push(level);
        self.buckets.entry((key.clone(), level)).or_default().push(id);
        self.keys.push(key);
        self.next.extend(std::iter::repeat_n(NONE, self.letters));
        self.out_edge.extend(std::iter::repeat_n(NONE, self.rank()));
        id
    }

    fn connect(&mut self, v: usize, l: Letter, u: usize) {
        let e = self.edges.len();
        let (from, to) = if l.is_inverse() { (u, v) } else { (v, u) };
        self.edges.push(Edge {
            ends: (from, to),
            label: Some(l.generator()),
        });
        let rank = self.rank();
        self.out_edge[from * rank + l.generator()] = e;
        self.next[v * self.letters + l.code() as usize] = u;
        self.next[u * self.letters + l.inverse().code() as usize] = v;
    }

    /// Follows a cyclic word from `v`; `None` once it leaves the ball.
    fn trace(&self, v: usize, word: impl Iterator<Item = Letter>) -> Option<(Vec<Step>, usize)> {
        let mut cur = v;
        let mut steps = Vec::new();
        for l in word {
            let nxt = self.next[cur * self.letters + l.code() as usize];
            if nxt == NONE {
                return None;
            }
            let step = if l.is_inverse() {
                Step::new(self.out_edge[nxt * self.rank() + l.generator()], false)
            } else {
                Step::new(self.out_edge[cur * self.rank() + l.generator()], true)
            };
            steps.push(step);
            cur = nxt;
        }
        Some((steps, cur))
    }
}

pub fn build_cayley_ball_with(p: &Presentation, m: &DehnMachine, opts: &BallOptions) -> Result<Complex> {
    if !m.is_certified() {
        return Err(Error::NotSmallCancellation);
    }
    if opts.radius == 0 {
        return Err(Error::BadParams("ball radius must be at least 1".into()));
    }
    let letters = 2 * p.rank();
    let inv = m.abelian();
    let mut ball = Ball {
        m,
        letters,
        words: Vec::new(),
        depth: Vec::new(),
        keys: Vec::new(),
        next: Vec::new(),
        out_edge: Vec::new(),
        edges: Vec::new(),
        buckets: HashMap::new(),
    };
    ball.add_vertex(Vec::new(), inv.key(&Word::empty()), 0);
    let mut levels: Vec<Vec<usize>> = vec![vec![0]];

    for k in 0..=opts.radius {
        let level = levels[k].clone();
        let pending: Vec<(usize, Letter)> = level
            .iter()
            .flat_map(|&v| (0..letters as u32).map(move |c| (v, Letter::from_code(c))))
            .filter(|&(v, l)| ball.next[v * letters + l.code() as usize] == NONE)
            .collect();
        // Same-level matches are independent of vertex creation.
        let same_level: Vec<Option<usize>> = pending
            .par_iter()
            .map(|&(v, l)| {
                let mut cand = ball.words[v].clone();
                cand.push(l);
                ball.find(&cand, &inv.step(&ball.keys[v], l), k)
            })
            .collect();

        let mut fresh: Vec<usize> = Vec::new();
        for (&(v, l), found) in pending.iter().zip(same_level) {
            if ball.next[v * letters + l.code() as usize] != NONE {
                continue;
            }
            if let Some(u) = found {
                ball.connect(v, l, u);
                continue;
            }
            if k == opts.radius {
                continue;
            }
            let mut cand = ball.words[v].clone();
            cand.push(l);
            let key = inv.step(&ball.keys[v], l);
            let u = match ball.find(&cand, &key, k + 1) {
                Some(u) => u,
                None => {
                    if ball.words.len() >= opts.vertex_budget {
                        return Err(Error::BudgetExceeded {
                            what: "ball vertices",
                            limit: opts.vertex_budget,
                        });
                    }
                    let u = ball.add_vertex(cand, key, k + 1);
                    fresh.push(u);
                    u
                }
            };
            ball.connect(v, l, u);
        }
        if k < opts.radius {
            levels.push(fresh);
        }
    }

    let index = m.index();
    let horizon = opts.open_horizon.unwrap_or(2 * opts.radius);
    let nv = ball.words.len();

    // cells: every symmetrized element traced from every vertex
    let traced: Vec<Vec<Vec<Step>>> = (0..nv)
        .into_par_iter()
        .map(|v| {
            index
                .elements()
                .iter()
                .filter_map(|&occ| {
                    let len = index.len_of(occ);
                    let (steps, end) = ball.trace(v, (0..len).map(|t| index.letter(occ, t)))?;
                    debug_assert_eq!(end, v);
                    Some(steps)
                })
                .collect()
        })
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut cells = Vec::new();
    for steps in traced.into_iter().flatten() {
        let mut set: Vec<usize> = steps.iter().map(|s| s.edge).collect();
        set.sort_unstable();
        if seen.insert(set) {
            cells.push(Cell { boundary: steps });
        }
    }

    // an edge is open when a relator cycle through it leaves the ball
    let open: Vec<bool> = ball
        .edges
        .par_iter()
        .map(|e| {
            let g = Letter::gen(e.label.expect("ball edges are labelled"));
            let elems = index.elements();
            let lo = elems.partition_point(|&o| index.letter(o, 0) < g);
            let hi = elems.partition_point(|&o| index.letter(o, 0) <= g);
            elems[lo..hi].iter().any(|&occ| {
                let len = index.len_of(occ);
                len <= horizon && ball.trace(e.ends.0, (0..len).map(|t| index.letter(occ, t))).is_none()
            })
        })
        .collect();

    let names = p.generators();
    let vertices = (0..nv)
        .map(|v| Vertex {
            label: Some(render_compact(&Word::from_letters(ball.words[v].clone()), names).replace(' ', "")),
            depth: Some(ball.depth[v]),
        })
        .collect();
    let meta = Meta {
        origin: Origin::CayleyBall,
        radius: Some(opts.radius),
        base: 0,
        generators: names.to_vec(),
    };
    Complex::with_open(vertices, ball.edges, cells, meta, open)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::presentation::{gen_example, parse_word, Family};
    use crate::words::cyclic_canonical;

    fn tv(indices: &[usize]) -> Presentation {
        gen_example(&Family::ThomasVelickovic {
            indices: indices.to_vec(),
            k: 7,
        })
        .unwrap()
        .presentation
    }

    fn ball(p: &Presentation, r: usize) -> Complex {
        build_cayley_ball(p, &DehnMachine::new(p), r, DEFAULT_VERTEX_BUDGET).unwrap()
    }

    /// Normal form in Z * Z/7 = ⟨a⟩ * ⟨c⟩ with c = ab, so b = a⁻¹c.
    fn free_product_form(w: &[Letter]) -> Vec<(u8, i64)> {
        let mut syl: Vec<(u8, i64)> = Vec::new();
        let mut push = |kind: u8, n: i64| {
            let modulus = |k: u8, x: i64| if k == 1 { x.rem_euclid(7) } else { x };
            match syl.last_mut() {
                Some(last) if last.0 == kind => {
                    last.1 = modulus(kind, last.1 + n);
                    if last.1 == 0 {
                        syl.pop();
                    }
                }
                _ => syl.push((kind, modulus(kind, n))),
            }
        };
        for l in w {
            match (l.generator(), l.is_inverse()) {
                (0, false) => push(0, 1),
                (0, true) => push(0, -1),
                (1, false) => {
                    push(0, -1);
                    push(1, 1)
                }
                _ => {
                    push(1, -1);
                    push(0, 1)
                }
            }
        }
        syl
    }

    #[test]
    fn free_group_ball_is_a_tree() {
        let p = Presentation::free(&["a", "b"]);
        let c = ball(&p, 2);
        assert_eq!((c.vertex_count(), c.edge_count(), c.cell_count()), (17, 16, 0));
        assert!(c.open_flags().iter().all(|o| !o));
    }

    #[test]
    fn vertex_count_matches_free_product_enumeration() {
        let p = tv(&[1]);
        for r in [3, 7] {
            let c = ball(&p, r);
            let mut level = vec![Vec::<Letter>::new()];
            let mut forms: HashSet<Vec<(u8, i64)>> = HashSet::from([Vec::new()]);
            for _ in 0..r {
                let mut next = Vec::new();
                for w in &level {
                    for code in 0..4 {
                        let l = Letter::from_code(code);
                        if w.last() != Some(&l.inverse()) {
                            let mut x = w.clone();
                            x.push(l);
                            forms.insert(free_product_form(&x));
                            next.push(x);
                        }
                    }
                }
                level = next;
            }
            assert_eq!(c.vertex_count(), forms.len(), "R = {r}");
        }
    }

    #[test]
    fn cells_appear_once_they_fit() {
        let p = tv(&[1]);
        assert_eq!(ball(&p, 3).cell_count(), 0);
        let c = ball(&p, 7);
        assert!(c.cell_count() >= 1);
        let through_base = c.cells_of_edge(c.neighbors(0)[0].0);
        assert!(!through_base.is_empty());
    }

    #[test]
    fn ball_soundness() {
        let p = tv(&[1, 2]);
        let c = ball(&p, 8);
        let rels: HashSet<Word> = p.relators().iter().map(cyclic_canonical).collect();
        for i in 0..c.cell_count() {
            let w = c.boundary_word(i).unwrap();
            assert!(rels.contains(&cyclic_canonical(&w)), "cell {i}");
        }
        let d = c.distances_from(0);
        for (v, vert) in c.vertices().iter().enumerate() {
            assert_eq!(vert.depth, Some(d[v]));
            let w = parse_word(vert.label.as_deref().unwrap(), p.generators()).unwrap();
            assert_eq!(w.len(), d[v]);
        }
        // the long relator never fits at this radius
        assert!(c.cells().iter().all(|cell| cell.len() == 14));
    }

    #[test]
    fn subdivided_ball_doubles_distances() {
        let c = ball(&tv(&[1]), 7);
        let s = c.subdivide();
        let (d, ds) = (c.distances_from(0), s.distances_from(0));
        for v in 0..c.vertex_count() {
            assert_eq!(ds[v], 2 * d[v]);
        }
        assert_eq!(s.radius(), Some(14));
    }

    #[test]
    fn budget_and_certification() {
        let p = tv(&[1]);
        let m = DehnMachine::new(&p);
        assert!(matches!(
            build_cayley_ball(&p, &m, 5, 10),
            Err(Error::BudgetExceeded { .. })
        ));
        let bad = gen_example(&Family::ThomasVelickovic {
            indices: vec![1, 2],
            k: 6,
        })
        .unwrap()
        .presentation;
        assert_eq!(
            build_cayley_ball(&bad, &DehnMachine::new(&bad), 2, 100).unwrap_err(),
            Error::NotSmallCancellation
        );
    }

    #[test]
    fn open_edges() {
        // in ⟨a,b | (ab)^7⟩ every edge lies on exactly one relator cycle
        let c = ball(&tv(&[1]), 7);
        for &(e, _) in c.neighbors(0) {
            assert!(!c.is_open(e));
            assert_eq!(c.cells_of_edge(e).len(), 1);
        }
        for i in 0..c.edge_count() {
            assert_eq!(c.is_open(i), c.cells_of_edge(i).is_empty(), "edge {i}");
        }
        let short_sighted = build_cayley_ball_with(
            &tv(&[1]),
            &DehnMachine::new(&tv(&[1])),
            &BallOptions {
                open_horizon: Some(13),
                ..BallOptions::new(7)
            },
        )
        .unwrap();
        assert!(short_sighted.open_flags().iter().all(|o| !o));
    }
}

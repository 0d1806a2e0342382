//! Hand-built complexes: a chain of theta graphs whose two cells share a long
//! segment (B(6) without linear separation), and two cells glued along a
//! short segment whose walls cross a geodesic twice.

use crate::error::{Error, Result};

use super::{Cell, Complex, Edge, Meta, Origin, Step, Vertex};

#[derive(Default)]
struct Builder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl Builder {
    fn vertex(&mut self, label: Option<String>) -> usize {
        self.vertices.push(Vertex { label, depth: None });
        self.vertices.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) -> usize {
        self.edges.push(Edge {
            ends: (u, v),
            label: None,
        });
        self.edges.len() - 1
    }

    /// A chain of `len` unit edges from `u` to `v` through fresh vertices,
    /// returned as forward steps.
    fn segment(&mut self, u: usize, v: usize, len: usize) -> Vec<Step> {
        let mut steps = Vec::with_capacity(len);
        let mut cur = u;
        for i in 0..len {
            let nxt = if i + 1 == len { v } else { self.vertex(None) };
            steps.push(Step::new(self.edge(cur, nxt), true));
            cur = nxt;
        }
        steps
    }

    fn finish(self, cells: Vec<Vec<Step>>, origin: Origin) -> Result<Complex> {
        let cells = cells.into_iter().map(|boundary| Cell { boundary }).collect();
        Complex::new(self.vertices, self.edges, cells, Meta::new(origin))
    }
}

fn backwards(path: &[Step]) -> Vec<Step> {
    path.iter().rev().map(|s| s.reversed()).collect()
}

/// For each `n`: anchors `a_n … f_n` with segments `a–b` and `d–e` of
/// length `n`, `b–c` and `c–d` of length 3, `a–f` and `f–e` of length `n+3`
/// and `c–f` of length `2n`; cells `a→b→c→f→a` and `c→d→e→f→c`, both of
/// length `4n + 6`. Consecutive blocks are joined by an edge `e_n – a_next`.
pub fn build_example1(n_list: &[usize]) -> Result<Complex> {
    if n_list.is_empty() {
        return Err(Error::BadParams("example1 needs at least one n".into()));
    }
    if n_list.contains(&0) {
        return Err(Error::BadParams("example1 needs every n >= 1".into()));
    }
    let mut labels: Vec<&usize> = n_list.iter().collect();
    labels.sort();
    labels.dedup();
    if labels.len() != n_list.len() {
        return Err(Error::BadParams("example1 needs distinct n".into()));
    }
    let mut b = Builder::default();
    let mut cells = Vec::new();
    let mut prev_e: Option<usize> = None;
    for &n in n_list {
        let [a, bb, c, d, e, f] =
            ["a", "b", "c", "d", "e", "f"].map(|name| b.vertex(Some(format!("{name}{n}"))));
        if let Some(pe) = prev_e {
            b.edge(pe, a);
        }
        let ab = b.segment(a, bb, n);
        let bc = b.segment(bb, c, 3);
        let cd = b.segment(c, d, 3);
        let de = b.segment(d, e, n);
        let af = b.segment(a, f, n + 3);
        let fe = b.segment(f, e, n + 3);
        let cf = b.segment(c, f, 2 * n);
        cells.push([ab, bc, cf.clone(), backwards(&af)].concat());
        cells.push([cd, de, backwards(&fe), backwards(&cf)].concat());
        prev_e = Some(e);
    }
    b.finish(cells, Origin::Example1)
}

/// Two cells of length `2h` sharing the segment `a–q'` of length `x`:
/// `r = a→q'→a'→p'→a` and `r' = a→q'→a''→p''→a`, with `d(q',a') = h − x`,
/// `d(a',p') = x/2` and `d(p',a) = h − x/2` (likewise for `r'`).
pub fn build_example2(x: usize, half_r: usize) -> Result<Complex> {
    if x < 2 || x % 2 == 1 {
        return Err(Error::BadParams(format!("example2 needs x even and >= 2, got {x}")));
    }
    if half_r <= x {
        return Err(Error::BadParams(format!(
            "example2 needs |r|/2 > x, got |r|/2 = {half_r}, x = {x}"
        )));
    }
    let mut b = Builder::default();
    let [a, q, a1, a2, p1, p2] =
        ["a", "q'", "a'", "a''", "p'", "p''"].map(|name| b.vertex(Some(name.to_string())));
    let shared = b.segment(a, q, x);
    let mut cells = Vec::new();
    for (top, p) in [(a1, p1), (a2, p2)] {
        let up = b.segment(q, top, half_r - x);
        let over = b.segment(top, p, x / 2);
        let down = b.segment(p, a, half_r - x / 2);
        cells.push([shared.clone(), up, over, down].concat());
    }
    b.finish(cells, Origin::Example2)
}

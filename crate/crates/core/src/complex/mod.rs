//! Combinatorial 2-complexes: vertices, undirected edges and 2-cells given by
//! closed boundary edge paths.
//!
//! Text format, one record per line:
//!
//! ```text
//! complex 1
//! origin cayley-ball
//! radius 2
//! base 0
//! gens a b
//! counts 5 4 0
//! v 0 1 d=0
//! v 1 a d=1
//! e 0 0 1 a
//! c 0 +0 +1 -2
//! open 3
//! ```
//!
//! `v` lines carry an optional label and depth, `e` lines an optional
//! generator name (read from the first endpoint to the second), `c` lines
//! the boundary cycle as signed edge ids (`-` traverses an edge backwards).

mod builders;
mod cayley;
mod graph;
mod pieces;

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

pub use builders::{build_example1, build_example2};
pub use cayley::{build_cayley_ball, build_cayley_ball_with, BallOptions, DEFAULT_VERTEX_BUDGET};
pub use graph::UNREACHABLE;
pub use pieces::{check_b6, compute_cell_pieces, B6Report, B6Witness, CellOccurrence, CellPiece, CellPieceReport};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    CayleyBall,
    Example1,
    Example2,
    File,
}

impl Origin {
    fn as_str(self) -> &'static str {
        match self {
            Origin::CayleyBall => "cayley-ball",
            Origin::Example1 => "example1",
            Origin::Example2 => "example2",
            Origin::File => "file",
        }
    }
}

impl FromStr for Origin {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cayley-ball" => Ok(Origin::CayleyBall),
            "example1" => Ok(Origin::Example1),
            "example2" => Ok(Origin::Example2),
            "file" => Ok(Origin::File),
            other => Err(format!("unknown origin `{other}`")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vertex {
    pub label: Option<String>,
    /// Distance from the base vertex recorded at build time.
    pub depth: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: (usize, usize),
    /// Generator read when walking from `ends.0` to `ends.1`.
    pub label: Option<usize>,
}

/// One step of a boundary path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

impl Step {
    pub fn new(edge: usize, forward: bool) -> Self {
        Step { edge, forward }
    }

    pub fn reversed(self) -> Self {
        Step {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub boundary: Vec<Step>,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub origin: Origin,
    pub radius: Option<usize>,
    pub base: usize,
    pub generators: Vec<String>,
}

impl Meta {
    pub fn new(origin: Origin) -> Self {
        Meta {
            origin,
            radius: None,
            base: 0,
            generators: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Complex {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    cells: Vec<Cell>,
    meta: Meta,
    /// Edges lying on a cell of the ambient complex that leaves the ball.
    open: Vec<bool>,
    /// `(edge, neighbour)` per vertex, sorted by edge id.
    adj: Vec<Vec<(usize, usize)>>,
    /// `(cell, position)` per edge.
    edge_cells: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.cells == other.cells
            && self.meta == other.meta
            && self.open == other.open
    }
}

impl Complex {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, cells: Vec<Cell>, meta: Meta) -> Result<Self> {
        let open = vec![false; edges.len()];
        Self::with_open(vertices, edges, cells, meta, open)
    }

    pub fn with_open(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        cells: Vec<Cell>,
        meta: Meta,
        open: Vec<bool>,
    ) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidComplex(m));
        let nv = vertices.len();
        if open.len() != edges.len() {
            return invalid("open flags do not match edge count".into());
        }
        if nv == 0 {
            return invalid("no vertices".into());
        }
        if meta.base >= nv {
            return invalid(format!("base vertex {} out of range", meta.base));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.ends.0 >= nv || e.ends.1 >= nv {
                return invalid(format!("edge {i} has an endpoint out of range"));
            }
            if e.label.is_some_and(|g| g >= meta.generators.len()) {
                return invalid(format!("edge {i} has an unknown generator label"));
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            if let Some(l) = &v.label {
                if l.is_empty() || l.chars().any(char::is_whitespace) || l.starts_with("d=") {
                    return invalid(format!("vertex {i} has an unusable label `{l}`"));
                }
            }
        }
        let mut adj = vec![Vec::new(); nv];
        for (i, e) in edges.iter().enumerate() {
            adj[e.ends.0].push((i, e.ends.1));
            if e.ends.0 != e.ends.1 {
                adj[e.ends.1].push((i, e.ends.0));
            }
        }
        let mut edge_cells = vec![Vec::new(); edges.len()];
        let mut seen_sets = HashSet::new();
        for (ci, c) in cells.iter().enumerate() {
            if c.boundary.is_empty() {
                return invalid(format!("cell {ci} has an empty boundary"));
            }
            for (pos, s) in c.boundary.iter().enumerate() {
                if s.edge >= edges.len() {
                    return invalid(format!("cell {ci} uses unknown edge {}", s.edge));
                }
                let next = c.boundary[(pos + 1) % c.len()];
                if next.edge >= edges.len() {
                    return invalid(format!("cell {ci} uses unknown edge {}", next.edge));
                }
                if head(&edges, *s) != tail(&edges, next) {
                    return invalid(format!("cell {ci} boundary is not closed at position {pos}"));
                }
                edge_cells[s.edge].push((ci, pos));
            }
            let mut set: Vec<usize> = c.boundary.iter().map(|s| s.edge).collect();
            set.sort_unstable();
            if !seen_sets.insert(set) {
                return invalid(format!("cell {ci} repeats the boundary of an earlier cell"));
            }
        }
        let complex = Complex {
            vertices,
            edges,
            cells,
            meta,
            open,
            adj,
            edge_cells,
        };
        if complex.distances_from(complex.meta.base).contains(&UNREACHABLE) {
            return invalid("1-skeleton is disconnected".into());
        }
        Ok(complex)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    pub fn origin(&self) -> Origin {
        self.meta.origin
    }

    pub fn radius(&self) -> Option<usize> {
        self.meta.radius
    }

    pub fn base(&self) -> usize {
        self.meta.base
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn is_open(&self, edge: usize) -> bool {
        self.open[edge]
    }

    pub fn open_flags(&self) -> &[bool] {
        &self.open
    }

    /// `(edge, neighbour)` pairs sorted by edge id.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Cells through an edge, with the edge's position in each boundary.
    pub fn cells_of_edge(&self, edge: usize) -> &[(usize, usize)] {
        &self.edge_cells[edge]
    }

    pub fn max_cell_len(&self) -> usize {
        self.cells.iter().map(Cell::len).max().unwrap_or(0)
    }

    pub fn has_odd_cell(&self) -> bool {
        self.cells.iter().any(|c| c.len() % 2 == 1)
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label.as_deref() == Some(label))
    }

    /// Label if present, else the numeric id.
    pub fn vertex_name(&self, v: usize) -> String {
        self.vertices[v].label.clone().unwrap_or_else(|| v.to_string())
    }

    pub fn other_end(&self, edge: usize, v: usize) -> usize {
        let (a, b) = self.edges[edge].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn step_tail(&self, s: Step) -> usize {
        tail(&self.edges, s)
    }

    pub fn step_head(&self, s: Step) -> usize {
        head(&self.edges, s)
    }

    /// Vertices visited along a cell boundary, starting at the tail of the
    /// first step.
    pub fn cell_vertices(&self, cell: usize) -> Vec<usize> {
        self.cells[cell].boundary.iter().map(|&s| self.step_tail(s)).collect()
    }

    /// The word read around a cell, when every boundary edge is labelled.
    pub fn boundary_word(&self, cell: usize) -> Option<crate::words::Word> {
        self.cells[cell]
            .boundary
            .iter()
            .map(|s| {
                self.edges[s.edge]
                    .label
                    .map(|g| crate::words::Letter::new(g, !s.forward))
            })
            .collect::<Option<Vec<_>>>()
            .map(crate::words::Word::from_letters)
    }

    /// Replaces every edge by a path of two edges through a new midpoint.
    /// Vertex `v` keeps its id; edge `e` becomes edges `2e` and `2e + 1`.
    pub fn subdivide(&self) -> Complex {
        let nv = self.vertices.len();
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|v| Vertex {
                label: v.label.clone(),
                depth: v.depth.map(|d| 2 * d),
            })
            .collect();
        let mut edges = Vec::with_capacity(2 * self.edges.len());
        let mut open = Vec::with_capacity(2 * self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let mid = nv + i;
            let (d0, d1) = (self.vertices[e.ends.0].depth, self.vertices[e.ends.1].depth);
            vertices.push(Vertex {
                label: None,
                depth: d0.zip(d1).map(|(a, b)| 2 * a.min(b) + 1),
            });
            edges.push(Edge {
                ends: (e.ends.0, mid),
                label: None,
            });
            edges.push(Edge {
                ends: (mid, e.ends.1),
                label: None,
            });
            open.extend([self.open[i], self.open[i]]);
        }
        let cells = self
            .cells
            .iter()
            .map(|c| Cell {
                boundary: c
                    .boundary
                    .iter()
                    .flat_map(|s| {
                        if s.forward {
                            [Step::new(2 * s.edge, true), Step::new(2 * s.edge + 1, true)]
                        } else {
                            [Step::new(2 * s.edge + 1, false), Step::new(2 * s.edge, false)]
                        }
                    })
                    .collect(),
            })
            .collect();
        let meta = Meta {
            radius: self.meta.radius.map(|r| 2 * r),
            ..self.meta.clone()
        };
        Complex::with_open(vertices, edges, cells, meta, open).expect("subdivision preserves validity")
    }

    /// Subdivides iff some cell has odd length (or `force` is set).
    pub fn even(self, force: bool) -> Complex {
        if force || self.has_odd_cell() {
            self.subdivide()
        } else {
            self
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Complex> {
        parse_complex(text)
    }
}

fn tail(edges: &[Edge], s: Step) -> usize {
    let (a, b) = edges[s.edge].ends;
    if s.forward {
        a
    } else {
        b
    }
}

fn head(edges: &[Edge], s: Step) -> usize {
    let (a, b) = edges[s.edge].ends;
    if s.forward {
        b
    } else {
        a
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "complex 1")?;
        writeln!(f, "origin {}", self.meta.origin.as_str())?;
        if let Some(r) = self.meta.radius {
            writeln!(f, "radius {r}")?;
        }
        writeln!(f, "base {}", self.meta.base)?;
        if !self.meta.generators.is_empty() {
            writeln!(f, "gens {}", self.meta.generators.join(" "))?;
        }
        writeln!(
            f,
            "counts {} {} {}",
            self.vertices.len(),
            self.edges.len(),
            self.cells.len()
        )?;
        for (i, v) in self.vertices.iter().enumerate() {
            let mut line = format!("v {i}");
            if let Some(l) = &v.label {
                let _ = write!(line, " {l}");
            }
            if let Some(d) = v.depth {
                let _ = write!(line, " d={d}");
            }
            writeln!(f, "{line}")?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            match e.label {
                Some(g) => writeln!(f, "e {i} {} {} {}", e.ends.0, e.ends.1, self.meta.generators[g])?,
                None => writeln!(f, "e {i} {} {}", e.ends.0, e.ends.1)?,
            }
        }
        for (i, c) in self.cells.iter().enumerate() {
            let steps: Vec<String> = c
                .boundary
                .iter()
                .map(|s| format!("{}{}", if s.forward { '+' } else { '-' }, s.edge))
                .collect();
            writeln!(f, "c {i} {}", steps.join(" "))?;
        }
        let open: Vec<String> = (0..self.open.len())
            .filter(|&i| self.open[i])
            .map(|i| i.to_string())
            .collect();
        if !open.is_empty() {
            writeln!(f, "open {}", open.join(" "))?;
        }
        Ok(())
    }
}

fn parse_complex(text: &str) -> Result<Complex> {
    let mut meta = Meta::new(Origin::File);
    let mut counts: Option<(usize, usize, usize)> = None;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut cells = Vec::new();
    let mut open_ids = Vec::new();
    let mut saw_header = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap();
        let rest: Vec<&str> = tok.collect();
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| err(format!("expected a non-negative integer, got `{s}`")))
        };
        if !saw_header {
            if kind != "complex" || rest != ["1"] {
                return Err(err("expected `complex 1` header".into()));
            }
            saw_header = true;
            continue;
        }
        match kind {
            "origin" => {
                meta.origin = rest
                    .first()
                    .ok_or_else(|| err("missing origin".into()))?
                    .parse()
                    .map_err(err)?;
            }
            "radius" => meta.radius = Some(num(rest.first().copied().unwrap_or(""))?),
            "base" => meta.base = num(rest.first().copied().unwrap_or(""))?,
            "gens" => meta.generators = rest.iter().map(|s| s.to_string()).collect(),
            "counts" => {
                if rest.len() != 3 {
                    return Err(err("`counts` needs three numbers".into()));
                }
                counts = Some((num(rest[0])?, num(rest[1])?, num(rest[2])?));
            }
            "v" => {
                let id = num(rest.first().copied().unwrap_or(""))?;
                if id != vertices.len() {
                    return Err(err(format!("vertex ids must be consecutive, got {id}")));
                }
                let mut v = Vertex::default();
                for t in &rest[1..] {
                    if let Some(d) = t.strip_prefix("d=") {
                        v.depth = Some(num(d)?);
                    } else if v.label.is_none() {
                        v.label = Some(t.to_string());
                    } else {
                        return Err(err(format!("unexpected `{t}`")));
                    }
                }
                vertices.push(v);
            }
            "e" => {
                if rest.len() < 3 || rest.len() > 4 {
                    return Err(err("expected `e <id> <u> <v> [gen]`".into()));
                }
                let id = num(rest[0])?;
                if id != edges.len() {
                    return Err(err(format!("edge ids must be consecutive, got {id}")));
                }
                let label = match rest.get(3) {
                    Some(name) => Some(
                        meta.generators
                            .iter()
                            .position(|g| g == name)
                            .ok_or_else(|| err(format!("unknown generator `{name}`")))?,
                    ),
                    None => None,
                };
                edges.push(Edge {
                    ends: (num(rest[1])?, num(rest[2])?),
                    label,
                });
            }
            "c" => {
                let id = num(rest.first().copied().unwrap_or(""))?;
                if id != cells.len() {
                    return Err(err(format!("cell ids must be consecutive, got {id}")));
                }
                let boundary = rest[1..]
                    .iter()
                    .map(|t| {
                        let (forward, digits) = match t.as_bytes().first() {
                            Some(b'+') => (true, &t[1..]),
                            Some(b'-') => (false, &t[1..]),
                            _ => return Err(err(format!("boundary step `{t}` needs a sign"))),
                        };
                        Ok(Step::new(num(digits)?, forward))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cells.push(Cell { boundary });
            }
            "open" => {
                for t in &rest {
                    open_ids.push(num(t)?);
                }
            }
            other => return Err(err(format!("unknown record `{other}`"))),
        }
    }
    if !saw_header {
        return Err(Error::Parse {
            line: 0,
            message: "empty complex file".into(),
        });
    }
    if let Some((nv, ne, nc)) = counts {
        if (nv, ne, nc) != (vertices.len(), edges.len(), cells.len()) {
            return Err(Error::InvalidComplex(format!(
                "counts {nv} {ne} {nc} disagree with {} {} {} records",
                vertices.len(),
                edges.len(),
                cells.len()
            )));
        }
    }
    let mut open = vec![false; edges.len()];
    for id in open_ids {
        *open
            .get_mut(id)
            .ok_or_else(|| Error::InvalidComplex(format!("open edge {id} out of range")))? = true;
    }
    Complex::with_open(vertices, edges, cells, meta, open)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A square with one cell and a pendant edge.
    fn square() -> Complex {
        let vertices = (0..5).map(|_| Vertex::default()).collect();
        let edges = [(0, 1), (1, 2), (3, 2), (3, 0), (2, 4)]
            .into_iter()
            .map(|ends| Edge { ends, label: None })
            .collect();
        let cells = vec![Cell {
            boundary: vec![Step::new(0, true), Step::new(1, true), Step::new(2, false), Step::new(3, true)],
        }];
        Complex::new(vertices, edges, cells, Meta::new(Origin::File)).unwrap()
    }

    #[test]
    fn validation_rejects_broken_input() {
        let v = || vec![Vertex::default(), Vertex::default()];
        let e = vec![Edge { ends: (0, 1), label: None }];
        let open_cycle = vec![Cell {
            boundary: vec![Step::new(0, true)],
        }];
        assert!(matches!(
            Complex::new(v(), e.clone(), open_cycle, Meta::new(Origin::File)),
            Err(Error::InvalidComplex(_))
        ));
        let disconnected = vec![Vertex::default(); 3];
        assert!(Complex::new(disconnected, e.clone(), vec![], Meta::new(Origin::File)).is_err());
        let back_and_forth = Cell {
            boundary: vec![Step::new(0, true), Step::new(0, false)],
        };
        assert!(Complex::new(v(), e.clone(), vec![back_and_forth.clone()], Meta::new(Origin::File)).is_ok());
        assert!(Complex::new(v(), e, vec![back_and_forth.clone(), back_and_forth], Meta::new(Origin::File)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut c = square();
        c.vertices[0].label = Some("p".into());
        c.vertices[4].depth = Some(2);
        c.open[4] = true;
        let text = c.to_text();
        let back = Complex::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
        assert!(back.is_open(4));
        assert_eq!(back.find_label("p"), Some(0));
    }

    #[test]
    fn parse_errors() {
        assert!(Complex::from_text("").is_err());
        assert!(Complex::from_text("complex 2\n").is_err());
        assert!(Complex::from_text("complex 1\nv 0\nv 2\n").is_err());
        assert!(Complex::from_text("complex 1\ncounts 2 0 0\nv 0\n").is_err());
        assert!(Complex::from_text("complex 1\nv 0\nv 1\ne 0 0 1\nc 0 0\n").is_err());
    }

    #[test]
    fn subdivision_doubles_lengths_and_distances() {
        let c = square();
        let s = c.subdivide();
        assert_eq!(s.vertex_count(), 5 + 5);
        assert_eq!(s.edge_count(), 10);
        assert_eq!(s.cells()[0].len(), 8);
        let before = c.distances_from(0);
        let after = s.distances_from(0);
        for v in 0..c.vertex_count() {
            assert_eq!(after[v], 2 * before[v]);
        }
        // single edge becomes a path of two
        let single = Complex::new(
            vec![Vertex::default(), Vertex::default()],
            vec![Edge { ends: (0, 1), label: None }],
            vec![],
            Meta::new(Origin::File),
        )
        .unwrap()
        .subdivide();
        assert_eq!(single.distances_from(0)[1], 2);
    }

    #[test]
    fn odd_cells_are_subdivided_on_request() {
        let vertices = vec![Vertex::default(); 3];
        let edges = [(0, 1), (1, 2), (2, 0)]
            .into_iter()
            .map(|ends| Edge { ends, label: None })
            .collect();
        let tri = Complex::new(
            vertices,
            edges,
            vec![Cell {
                boundary: (0..3).map(|e| Step::new(e, true)).collect(),
            }],
            Meta::new(Origin::File),
        )
        .unwrap();
        assert!(tri.has_odd_cell());
        let hex = tri.even(false);
        assert_eq!(hex.cells()[0].len(), 6);
        assert_eq!(square().even(false).cells()[0].len(), 4);
    }
}

//! Walls: classes of edges under the transitive closure of "opposite in some
//! 2-cell", with their hypergraphs, hypercarriers and the wall pseudo-metric.
//!
//! On a finite ball a wall may be missing relations that live in cells the
//! ball cuts off. [`SettledPolicy`] decides which walls are trusted.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use petgraph::unionfind::UnionFind;

use crate::complex::{Complex, UNREACHABLE};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SettledPolicy {
    /// Settled iff no edge of the wall lies on a cell that leaves the ball.
    #[default]
    Closure,
    /// Settled iff every vertex of the hypercarrier has depth at most
    /// `max_depth`.
    Margin { max_depth: usize },
    /// Every wall is settled (finite complexes that are not truncations).
    All,
}

/// A cell realizing an opposite pair of wall edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HyperEdge {
    pub cell: usize,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug)]
pub struct Wall {
    /// Least edge id in the class.
    pub id: usize,
    /// Sorted edge ids.
    pub edges: Vec<usize>,
    pub hyperedges: Vec<HyperEdge>,
    pub settled: bool,
}

/// Component label per vertex and the component count.
type Labels = (Vec<usize>, usize);

#[derive(Debug)]
pub struct WallSystem {
    policy: SettledPolicy,
    /// Wall index of each edge; walls are ordered by id.
    wall_of: Vec<usize>,
    walls: Vec<Wall>,
    sides: Vec<OnceLock<Arc<Labels>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sides {
    TwoSided { side_a: Vec<usize>, side_b: Vec<usize> },
    NotTwoSided { components: usize },
}

#[derive(Clone, Debug)]
pub struct Hypergraph {
    /// Wall edges, the hypergraph's vertices.
    pub vertices: Vec<usize>,
    pub edges: Vec<HyperEdge>,
    pub is_tree: bool,
}

#[derive(Clone, Debug)]
pub struct Hypercarrier {
    pub cells: Vec<usize>,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexityWitness {
    /// A geodesic between two carrier vertices uses an edge outside.
    EdgeOutside { p: usize, q: usize, edge: usize },
    /// No geodesic between the two vertices stays inside.
    Detour { p: usize, q: usize, inside: usize, ambient: usize },
}

#[derive(Clone, Debug)]
pub struct ConvexityReport {
    pub pass: bool,
    pub witness: Option<ConvexityWitness>,
    pub pairs_checked: usize,
    /// Pairs whose geodesics might leave a truncated ball.
    pub pairs_skipped: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    /// Count settled walls whose removal puts `p` and `q` in different
    /// components.
    Components,
    /// Count settled walls crossed an odd number of times by a geodesic.
    Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WallDistance {
    pub separating: usize,
    /// Unsettled walls met by the geodesic; their contribution is unknown.
    pub unsettled: usize,
}

pub fn build_walls(c: &Complex) -> Result<WallSystem> {
    build_walls_with(c, SettledPolicy::default())
}

pub fn build_walls_with(c: &Complex, policy: SettledPolicy) -> Result<WallSystem> {
    for (i, cell) in c.cells().iter().enumerate() {
        if cell.len() % 2 == 1 {
            return Err(Error::OddCell {
                cell: i,
                length: cell.len(),
            });
        }
    }
    let ne = c.edge_count();
    let mut uf: UnionFind<usize> = UnionFind::new(ne);
    let mut pairs = Vec::new();
    for (ci, cell) in c.cells().iter().enumerate() {
        let half = cell.len() / 2;
        for i in 0..half {
            let (a, b) = (cell.boundary[i].edge, cell.boundary[i + half].edge);
            uf.union(a, b);
            pairs.push(HyperEdge { cell: ci, a, b });
        }
    }
    // classes ordered by least edge
    let mut index_of_root: HashMap<usize, usize> = HashMap::new();
    let mut walls: Vec<Wall> = Vec::new();
    let mut wall_of = vec![0; ne];
    for (e, slot) in wall_of.iter_mut().enumerate() {
        let root = uf.find(e);
        let w = *index_of_root.entry(root).or_insert_with(|| {
            walls.push(Wall {
                id: e,
                edges: Vec::new(),
                hyperedges: Vec::new(),
                settled: false,
            });
            walls.len() - 1
        });
        walls[w].edges.push(e);
        *slot = w;
    }
    for h in pairs {
        walls[wall_of[h.a]].hyperedges.push(h);
    }
    let mut ws = WallSystem {
        policy,
        sides: (0..walls.len()).map(|_| OnceLock::new()).collect(),
        wall_of,
        walls,
    };
    for w in 0..ws.walls.len() {
        let settled = match policy {
            SettledPolicy::All => true,
            SettledPolicy::Closure => ws.walls[w].edges.iter().all(|&e| !c.is_open(e)),
            SettledPolicy::Margin { max_depth } => ws
                .hypercarrier(c, w)
                .vertices
                .iter()
                .all(|&v| c.vertices()[v].depth.unwrap_or(0) <= max_depth),
        };
        ws.walls[w].settled = settled;
    }
    Ok(ws)
}

impl WallSystem {
    pub fn policy(&self) -> SettledPolicy {
        self.policy
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall(&self, w: usize) -> &Wall {
        &self.walls[w]
    }

    /// Index (into [`WallSystem::walls`]) of the wall containing `edge`.
    pub fn wall_of(&self, edge: usize) -> usize {
        self.wall_of[edge]
    }

    pub fn is_settled(&self, w: usize) -> bool {
        self.walls[w].settled
    }

    pub fn settled_count(&self) -> usize {
        self.walls.iter().filter(|w| w.settled).count()
    }

    /// Component labels of the 1-skeleton with the wall's edges removed.
    fn component_labels(&self, c: &Complex, w: usize) -> Arc<Labels> {
        self.sides[w]
            .get_or_init(|| {
                let mut removed = vec![false; c.edge_count()];
                for &e in &self.walls[w].edges {
                    removed[e] = true;
                }
                Arc::new(c.components_avoiding(&removed))
            })
            .clone()
    }

    pub fn wall_components(&self, c: &Complex, w: usize) -> Sides {
        let labels = self.component_labels(c, w);
        let (label, count) = (&labels.0, labels.1);
        if count != 2 {
            return Sides::NotTwoSided { components: count };
        }
        let (mut side_a, mut side_b) = (Vec::new(), Vec::new());
        for (v, &l) in label.iter().enumerate() {
            if l == 0 {
                side_a.push(v);
            } else {
                side_b.push(v);
            }
        }
        Sides::TwoSided { side_a, side_b }
    }

    /// Does removing wall `w` disconnect `p` from `q`?
    pub fn separates(&self, c: &Complex, w: usize, p: usize, q: usize) -> bool {
        let labels = self.component_labels(c, w);
        labels.0[p] != labels.0[q]
    }

    pub fn hypergraph_of(&self, w: usize) -> Hypergraph {
        let wall = &self.walls[w];
        let pos: HashMap<usize, usize> = wall.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf: UnionFind<usize> = UnionFind::new(wall.edges.len());
        let mut acyclic = true;
        for h in &wall.hyperedges {
            if !uf.union(pos[&h.a], pos[&h.b]) {
                acyclic = false;
            }
        }
        // the class is connected by construction
        Hypergraph {
            vertices: wall.edges.clone(),
            edges: wall.hyperedges.clone(),
            is_tree: acyclic,
        }
    }

    /// Closed cells containing wall edges, or the lone edge of a wall that
    /// meets no cell.
    pub fn hypercarrier(&self, c: &Complex, w: usize) -> Hypercarrier {
        let wall = &self.walls[w];
        let mut cells: Vec<usize> = wall
            .edges
            .iter()
            .flat_map(|&e| c.cells_of_edge(e).iter().map(|&(cell, _)| cell))
            .collect();
        cells.sort_unstable();
        cells.dedup();
        let mut edges: Vec<usize> = cells
            .iter()
            .flat_map(|&cell| c.cells()[cell].boundary.iter().map(|s| s.edge))
            .chain(wall.edges.iter().copied())
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut vertices: Vec<usize> = edges
            .iter()
            .flat_map(|&e| {
                let (a, b) = c.edges()[e].ends;
                [a, b]
            })
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        Hypercarrier {
            cells,
            vertices,
            edges,
        }
    }

    /// Geodesic convexity of the hypercarrier. Strict mode requires every
    /// geodesic between carrier vertices to stay inside, otherwise one
    /// geodesic suffices. On balls only pairs whose geodesics provably stay
    /// within the ball are checked.
    pub fn hypercarrier_check(&self, c: &Complex, w: usize, strict: bool) -> ConvexityReport {
        let hc = self.hypercarrier(c, w);
        let mut inside = vec![false; c.edge_count()];
        for &e in &hc.edges {
            inside[e] = true;
        }
        let outside: Vec<bool> = inside.iter().map(|x| !x).collect();
        let in_h: HashSet<usize> = hc.vertices.iter().copied().collect();
        let radius = c.radius();
        let depth = |v: usize| c.vertices()[v].depth.unwrap_or(0);

        let dist: Vec<Vec<usize>> = hc.vertices.iter().map(|&u| c.distances_from(u)).collect();
        let mut report = ConvexityReport {
            pass: true,
            witness: None,
            pairs_checked: 0,
            pairs_skipped: 0,
        };
        for (i, &p) in hc.vertices.iter().enumerate() {
            let d_inside = c.distances_avoiding(p, Some(&outside));
            for (j, &q) in hc.vertices.iter().enumerate().skip(i + 1) {
                let d = dist[i][q];
                if let Some(r) = radius {
                    if depth(p) + depth(q) + d > 2 * r {
                        report.pairs_skipped += 1;
                        continue;
                    }
                }
                report.pairs_checked += 1;
                if d_inside[q] != d {
                    report.pass = false;
                    report.witness = Some(ConvexityWitness::Detour {
                        p,
                        q,
                        inside: d_inside[q],
                        ambient: d,
                    });
                    return report;
                }
                if !strict {
                    continue;
                }
                // an edge (x, y) lies on a p–q geodesic iff
                // d(p, x) + 1 + d(y, q) = d(p, q)
                for (e, edge) in c.edges().iter().enumerate() {
                    if inside[e] {
                        continue;
                    }
                    let (x, y) = edge.ends;
                    let on = |a: usize, b: usize| {
                        dist[i][a] != UNREACHABLE
                            && dist[j][b] != UNREACHABLE
                            && dist[i][a] + 1 + dist[j][b] == d
                    };
                    if on(x, y) || on(y, x) {
                        report.pass = false;
                        report.witness = Some(ConvexityWitness::EdgeOutside { p, q, edge: e });
                        return report;
                    }
                }
            }
        }
        debug_assert!(hc.vertices.iter().all(|v| in_h.contains(v)));
        report
    }

    /// Crossing count per wall for an edge path.
    pub fn crossings(&self, path: &[usize]) -> HashMap<usize, usize> {
        let mut out = HashMap::new();
        for &e in path {
            *out.entry(self.wall_of[e]).or_insert(0) += 1;
        }
        out
    }

    /// Settled walls separating `p` from `q`. Only walls met by the lex-least
    /// geodesic can separate, so only those are examined.
    pub fn wall_distance(&self, c: &Complex, p: usize, q: usize, mode: DistanceMode) -> WallDistance {
        let path = c.lex_geodesic(p, q);
        self.wall_distance_along(c, p, q, &path, mode)
    }

    /// As [`WallSystem::wall_distance`] with a caller-supplied `p`–`q` path.
    pub fn wall_distance_along(
        &self,
        c: &Complex,
        p: usize,
        q: usize,
        path: &[usize],
        mode: DistanceMode,
    ) -> WallDistance {
        let crossings = self.crossings(path);
        let mut out = WallDistance {
            separating: 0,
            unsettled: 0,
        };
        for (&w, &count) in &crossings {
            if !self.walls[w].settled {
                out.unsettled += 1;
                continue;
            }
            let separates = match mode {
                DistanceMode::Parity => count % 2 == 1,
                DistanceMode::Components => self.separates(c, w, p, q),
            };
            if separates {
                out.separating += 1;
            }
        }
        out
    }

    /// Text dump: one `w` line per wall with its settled flag, edges and
    /// hyperedges (`cell:edge:edge`).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "walls {}", self.walls.len());
        for w in &self.walls {
            let edges: Vec<String> = w.edges.iter().map(|e| e.to_string()).collect();
            let hyper: Vec<String> = w
                .hyperedges
                .iter()
                .map(|h| format!("{}:{}:{}", h.cell, h.a, h.b))
                .collect();
            let _ = writeln!(
                out,
                "w {} settled={} edges={} hyper={}",
                w.id,
                u8::from(w.settled),
                edges.join(","),
                if hyper.is_empty() { "-".to_string() } else { hyper.join(",") }
            );
        }
        out
    }

    /// DOT graph of one wall's hypergraph.
    pub fn hypergraph_dot(&self, w: usize) -> String {
        let g = self.hypergraph_of(w);
        let mut out = format!("graph wall_{} {{\n", self.walls[w].id);
        for e in &g.vertices {
            let _ = writeln!(out, "  e{e} [label=\"{e}\"];");
        }
        for h in &g.edges {
            let _ = writeln!(out, "  e{} -- e{} [label=\"c{}\"];", h.a, h.b, h.cell);
        }
        out.push_str("}\n");
        out
    }

    /// DOT graph of the 1-skeleton with the edges of wall `w` highlighted.
    pub fn trace_dot(&self, c: &Complex, w: usize) -> String {
        let mut out = format!("graph trace_{} {{\n  node [shape=point];\n", self.walls[w].id);
        for (v, vert) in c.vertices().iter().enumerate() {
            if let Some(l) = &vert.label {
                let _ = writeln!(out, "  v{v} [shape=plaintext, label=\"{}\"];", l.replace('"', "'"));
            }
        }
        for (e, edge) in c.edges().iter().enumerate() {
            let style = if self.wall_of[e] == w { " [color=red, penwidth=3]" } else { "" };
            let _ = writeln!(out, "  v{} -- v{}{style};", edge.ends.0, edge.ends.1);
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first search over a hypergraph from edge `from`, returning the
/// hyperedges on the path to `to` (least cell id first among ties).
pub fn hypergraph_path(g: &Hypergraph, from: usize, to: usize) -> Option<Vec<HyperEdge>> {
    let mut adj: HashMap<usize, Vec<HyperEdge>> = HashMap::new();
    for h in &g.edges {
        adj.entry(h.a).or_default().push(*h);
        if h.a != h.b {
            adj.entry(h.b).or_default().push(*h);
        }
    }
    for list in adj.values_mut() {
        list.sort();
    }
    let mut prev: HashMap<usize, HyperEdge> = HashMap::new();
    let mut seen = HashSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for h in adj.get(&x).into_iter().flatten() {
            let y = if h.a == x { h.b } else { h.a };
            if seen.insert(y) {
                prev.insert(y, *h);
                queue.push_back(y);
            }
        }
    }
    if !seen.contains(&to) {
        return None;
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let h = prev[&cur];
        path.push(h);
        cur = if h.a == cur { h.b } else { h.a };
    }
    path.reverse();
    Some(path)
}

//! Geodesics, the single-crossing set `A(γ)`, relator neighborhoods and the
//! linear separation harness.

mod density;
mod harness;

pub use density::{cover_split, local_to_global_bound, Interval, LocalToGlobal};
pub use harness::{
    default_region, probe_region, verify_linear_separation, PairRow, ProbeSummary, SeparationMode,
    SeparationOptions, SeparationReport,
};

use std::collections::HashSet;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::rational::{local_density_bound, Rational};
use crate::walls::{hypergraph_path, WallSystem};

/// The lex-least shortest edge path from `p` to `q`.
pub fn geodesic(c: &Complex, p: usize, q: usize) -> Vec<usize> {
    c.lex_geodesic(p, q)
}

#[derive(Clone, Debug)]
pub struct GeodesicContext {
    pub p: usize,
    pub q: usize,
    /// Edge ids of γ in order from `p`.
    pub path: Vec<usize>,
    /// Vertices of γ, `path.len() + 1` of them.
    pub vertices: Vec<usize>,
    /// Wall index of each edge of γ.
    pub wall: Vec<usize>,
    /// How many edges of γ lie in the wall of each edge.
    pub crossings: Vec<usize>,
    pub in_a: Vec<bool>,
}

impl GeodesicContext {
    pub fn new(c: &Complex, ws: &WallSystem, p: usize, q: usize) -> Self {
        let path = geodesic(c, p, q);
        Self::from_path(c, ws, p, path).expect("lex geodesic is shortest")
    }

    /// Wraps a caller-supplied path, which must be a shortest `p`–`q` path.
    pub fn from_path(c: &Complex, ws: &WallSystem, p: usize, path: Vec<usize>) -> Result<Self> {
        let vertices = c.path_vertices(p, &path);
        let q = *vertices.last().unwrap();
        if c.distance(p, q) != path.len() {
            return Err(Error::BadParams(format!(
                "path of length {} is not a geodesic (distance {})",
                path.len(),
                c.distance(p, q)
            )));
        }
        let wall: Vec<usize> = path.iter().map(|&e| ws.wall_of(e)).collect();
        let counts = ws.crossings(&path);
        let crossings: Vec<usize> = wall.iter().map(|w| counts[w]).collect();
        let in_a = crossings.iter().map(|&n| n == 1).collect();
        Ok(GeodesicContext {
            p,
            q,
            path,
            vertices,
            wall,
            crossings,
            in_a,
        })
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

/// Positions on γ of the edges whose wall meets γ exactly once.
pub fn compute_a(ctx: &GeodesicContext) -> Vec<usize> {
    (0..ctx.len()).filter(|&i| ctx.in_a[i]).collect()
}

/// `N_e` for the edge at position `edge` of γ, together with the auxiliary
/// choices of its construction. Positions index γ's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorNeighborhood {
    pub edge: usize,
    /// `N_e` as the half-open position range `start..end`.
    pub start: usize,
    pub end: usize,
    /// Endpoints of `N_e`, `p′` nearer `p`.
    pub p_prime: usize,
    pub q_prime: usize,
    /// The relator cell `r`, absent when `e ∈ A(γ)`.
    pub cell: Option<usize>,
    /// Position of `e′`, the nearest other edge of the wall on γ.
    pub partner: Option<usize>,
    /// Edge `e″` opposite `e` in `r`.
    pub opposite: Option<usize>,
    /// The next cell `r′` along the hypergraph path.
    pub next_cell: Option<usize>,
}

impl RelatorNeighborhood {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

pub fn relator_neighborhood(
    c: &Complex,
    ws: &WallSystem,
    ctx: &GeodesicContext,
    edge: usize,
) -> Result<RelatorNeighborhood> {
    let single = |cell| RelatorNeighborhood {
        edge,
        start: edge,
        end: edge + 1,
        p_prime: ctx.vertices[edge],
        q_prime: ctx.vertices[edge + 1],
        cell,
        partner: None,
        opposite: None,
        next_cell: None,
    };
    if ctx.in_a[edge] {
        return Ok(single(None));
    }
    let w = ctx.wall[edge];
    if !ws.is_settled(w) {
        return Err(Error::UnsettledWall { wall: ws.wall(w).id });
    }
    let partner = (0..ctx.len())
        .filter(|&j| j != edge && ctx.wall[j] == w)
        .min_by_key(|&j| (j.abs_diff(edge), ctx.path[j]))
        .expect("edge outside A(γ) has a partner");
    let g = ws.hypergraph_of(w);
    let route = hypergraph_path(&g, ctx.path[edge], ctx.path[partner])
        .expect("wall hypergraph is connected");
    let first = route[0];
    let r = first.cell;
    let opposite = if first.a == ctx.path[edge] { first.b } else { first.a };
    let next_cell = route.get(1).map(|h| h.cell);

    let in_r: HashSet<usize> = c.cells()[r].boundary.iter().map(|s| s.edge).collect();
    let mut start = edge;
    while start > 0 && in_r.contains(&ctx.path[start - 1]) {
        start -= 1;
    }
    let mut end = edge + 1;
    while end < ctx.len() && in_r.contains(&ctx.path[end]) {
        end += 1;
    }
    Ok(RelatorNeighborhood {
        edge,
        start,
        end,
        p_prime: ctx.vertices[start],
        q_prime: ctx.vertices[end],
        cell: Some(r),
        partner: Some(partner),
        opposite: Some(opposite),
        next_cell,
    })
}

/// Numbers behind the two inequalities bounding `N_e` when the endpoint of
/// `N_e` nearer `e′` lies between `e` and `e′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaProbe {
    pub relator_len: usize,
    pub n_len: usize,
    /// Distance from `e` to the endpoint of `N_e` facing `e′`.
    pub d_near: usize,
    /// Distance from `e` to the other endpoint.
    pub d_far: usize,
    /// `|N_e| > d_near > (1/2 − λ)|r|`
    pub near_holds: bool,
    /// `d_far < 2λ|N_e| − 1`
    pub far_holds: bool,
}

pub fn lemma_probe(c: &Complex, ne: &RelatorNeighborhood, lambda: Rational) -> Option<LemmaProbe> {
    let (r, partner) = (ne.cell?, ne.partner?);
    let before_end = ne.end - (ne.edge + 1);
    let after_start = ne.edge - ne.start;
    let (d_near, d_far) = if partner > ne.edge {
        if partner < ne.end {
            return None;
        }
        (before_end, after_start)
    } else {
        if partner >= ne.start {
            return None;
        }
        (after_start, before_end)
    };
    let rl = c.cells()[r].len();
    let n = ne.len();
    let half = Rational::new(1, 2);
    let near_holds = n > d_near && Rational::from_integer(d_near as i64) > (half - lambda) * rl as i64;
    let far_holds = Rational::from_integer(d_far as i64) < lambda * 2 * n as i64 - 1;
    Some(LemmaProbe {
        relator_len: rl,
        n_len: n,
        d_near,
        d_far,
        near_holds,
        far_holds,
    })
}

/// `|E(N_e) ∩ A(γ)| / |E(N_e)|` against `(1 − 6λ + 4λ²)/(1 − 2λ)`.
pub fn local_density_check(ne: &RelatorNeighborhood, ctx: &GeodesicContext, lambda: Rational) -> (Rational, bool) {
    let hits = (ne.start..ne.end).filter(|&i| ctx.in_a[i]).count();
    let ratio = Rational::new(hits as i64, ne.len() as i64);
    (ratio, ratio >= local_density_bound(lambda))
}

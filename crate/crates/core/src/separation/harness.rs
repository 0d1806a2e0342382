//! Pair sweeps comparing the wall pseudo-metric with the path metric.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::Complex;
use crate::error::Error;
use crate::rational::{fmt_rational, local_density_bound, separation_constant, Rational};
use crate::walls::{DistanceMode, WallSystem};

use super::{lemma_probe, local_density_check, relator_neighborhood, GeodesicContext, LemmaProbe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparationMode {
    /// Pass iff every settled pair meets the constant.
    Verify,
    /// Record the table without a verdict.
    Observe,
}

#[derive(Clone, Debug)]
pub struct SeparationOptions {
    pub lambda: Rational,
    /// Vertices to sweep; `None` uses [`default_region`].
    pub region: Option<Vec<usize>>,
    pub mode: SeparationMode,
}

impl SeparationOptions {
    pub fn new(lambda: Rational) -> Self {
        SeparationOptions {
            lambda,
            region: None,
            mode: SeparationMode::Verify,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRow {
    pub p: usize,
    pub q: usize,
    pub d: usize,
    pub dw: usize,
    /// Exact on the full complex: no unsettled wall meets the geodesic and
    /// every geodesic stays inside the ball.
    pub settled: bool,
    pub in_a: usize,
    pub unsettled_walls: usize,
    /// Components and parity counts disagreed.
    pub mode_mismatch: bool,
}

impl PairRow {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.dw as i64, self.d as i64)
    }
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub lambda: Rational,
    pub constant: Rational,
    pub mode: SeparationMode,
    pub region_size: usize,
    pub rows: Vec<PairRow>,
    pub settled_pairs: usize,
    pub min_ratio: Option<Rational>,
    pub mean_ratio: Option<f64>,
    /// Settled pairs breaking `d_W ≤ d`, `d_W/d ≥ constant` or `|A| ≤ d_W`.
    pub violations: Vec<(usize, usize)>,
    /// Unsettled pairs below the constant; not evidence either way.
    pub inconclusive: Vec<(usize, usize)>,
    pub mode_mismatches: usize,
    pub pass: bool,
}

#[derive(Serialize)]
struct Summary<'a> {
    mode: SeparationMode,
    lambda: String,
    constant: String,
    region_size: usize,
    pairs: usize,
    settled_pairs: usize,
    min_ratio: Option<String>,
    mean_ratio_approx: Option<f64>,
    violations: Vec<[&'a str; 2]>,
    inconclusive: usize,
    mode_mismatches: usize,
    pass: bool,
}

impl SeparationReport {
    pub fn to_csv(&self, c: &Complex) -> String {
        let mut out = String::from("p,q,d,dw,ratio_num,ratio_den,settled,in_A_count\n");
        for r in &self.rows {
            let ratio = r.ratio();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                c.vertex_name(r.p),
                c.vertex_name(r.q),
                r.d,
                r.dw,
                ratio.numer(),
                ratio.denom(),
                u8::from(r.settled),
                r.in_a
            );
        }
        out
    }

    pub fn to_json(&self, c: &Complex) -> String {
        let names: Vec<(String, String)> = self
            .violations
            .iter()
            .map(|&(p, q)| (c.vertex_name(p), c.vertex_name(q)))
            .collect();
        let summary = Summary {
            mode: self.mode,
            lambda: fmt_rational(&self.lambda),
            constant: fmt_rational(&self.constant),
            region_size: self.region_size,
            pairs: self.rows.len(),
            settled_pairs: self.settled_pairs,
            min_ratio: self.min_ratio.as_ref().map(fmt_rational),
            mean_ratio_approx: self.mean_ratio,
            violations: names.iter().map(|(p, q)| [p.as_str(), q.as_str()]).collect(),
            inconclusive: self.inconclusive.len(),
            mode_mismatches: self.mode_mismatches,
            pass: self.pass,
        };
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    }

    pub fn row(&self, p: usize, q: usize) -> Option<&PairRow> {
        let (p, q) = (p.min(q), p.max(q));
        self.rows
            .binary_search_by_key(&(p, q), |r| (r.p, r.q))
            .ok()
            .map(|i| &self.rows[i])
    }
}

/// Vertices incident to an edge of a settled wall; every vertex when the
/// complex is not a truncated ball.
pub fn default_region(c: &Complex, ws: &WallSystem) -> Vec<usize> {
    if c.radius().is_none() {
        return (0..c.vertex_count()).collect();
    }
    let mut mark = vec![false; c.vertex_count()];
    for w in ws.walls().iter().filter(|w| w.settled) {
        for &e in &w.edges {
            let (a, b) = c.edges()[e].ends;
            mark[a] = true;
            mark[b] = true;
        }
    }
    (0..c.vertex_count()).filter(|&v| mark[v]).collect()
}

/// Geodesics between `q` and every later region vertex, sharing one BFS.
fn contexts_to(c: &Complex, ws: &WallSystem, region: &[usize], k: usize) -> Vec<(GeodesicContext, bool)> {
    let q = region[k];
    let dist_q = c.distances_from(q);
    let radius = c.radius();
    let depth = |v: usize| c.vertices()[v].depth.unwrap_or(0);
    region[..k]
        .iter()
        .map(|&p| {
            let path = c.lex_geodesic_with(p, &dist_q);
            let inside = radius.is_none_or(|r| depth(p) + depth(q) + path.len() <= 2 * r);
            (GeodesicContext::from_path(c, ws, p, path).expect("geodesic"), inside)
        })
        .collect()
}

/// Sweeps every unordered pair of the region, computing `d`, `d_W` (by
/// parity along the lex-least geodesic, cross-checked against component
/// separation) and `|A(γ)|`.
pub fn verify_linear_separation(c: &Complex, ws: &WallSystem, opts: &SeparationOptions) -> SeparationReport {
    let mut region = opts.region.clone().unwrap_or_else(|| default_region(c, ws));
    region.sort_unstable();
    region.dedup();
    let constant = separation_constant(opts.lambda);

    let mut rows: Vec<PairRow> = (0..region.len())
        .into_par_iter()
        .flat_map_iter(|k| {
            contexts_to(c, ws, &region, k).into_iter().map(|(ctx, inside)| {
                let parity = ws.wall_distance_along(c, ctx.p, ctx.q, &ctx.path, DistanceMode::Parity);
                let comps = ws.wall_distance_along(c, ctx.p, ctx.q, &ctx.path, DistanceMode::Components);
                let (p, q) = (ctx.p.min(ctx.q), ctx.p.max(ctx.q));
                PairRow {
                    p,
                    q,
                    d: ctx.len(),
                    dw: parity.separating,
                    settled: inside && parity.unsettled == 0,
                    in_a: ctx.in_a.iter().filter(|&&x| x).count(),
                    unsettled_walls: parity.unsettled,
                    mode_mismatch: parity != comps,
                }
            })
        })
        .collect();
    rows.sort_by_key(|r| (r.p, r.q));

    let mut report = SeparationReport {
        lambda: opts.lambda,
        constant,
        mode: opts.mode,
        region_size: region.len(),
        settled_pairs: 0,
        min_ratio: None,
        mean_ratio: None,
        violations: Vec::new(),
        inconclusive: Vec::new(),
        mode_mismatches: rows.iter().filter(|r| r.mode_mismatch && r.settled).count(),
        pass: false,
        rows: Vec::new(),
    };
    let mut sum = 0.0;
    for r in &rows {
        let ratio = r.ratio();
        let bad = r.dw > r.d || ratio < constant;
        if !r.settled {
            if bad {
                report.inconclusive.push((r.p, r.q));
            }
            continue;
        }
        report.settled_pairs += 1;
        sum += *ratio.numer() as f64 / *ratio.denom() as f64;
        report.min_ratio = Some(report.min_ratio.map_or(ratio, |m| m.min(ratio)));
        if bad || r.in_a > r.dw {
            report.violations.push((r.p, r.q));
        }
    }
    if report.settled_pairs > 0 {
        report.mean_ratio = Some(sum / report.settled_pairs as f64);
    }
    report.pass = report.violations.is_empty() && report.mode_mismatches == 0;
    report.rows = rows;
    report
}

#[derive(Clone, Debug, Default)]
pub struct ProbeSummary {
    /// Edges outside `A(γ)` on geodesics between settled pairs.
    pub non_a_edges: usize,
    /// Of those, edges whose wall is unsettled (no neighborhood built).
    pub refused: usize,
    /// Neighborhoods built and checked for density.
    pub probed: usize,
    /// Of those, neighborhoods in the configuration the inequalities assume.
    pub lemma_cases: usize,
    pub density_failures: Vec<(usize, usize, usize)>,
    pub lemma_failures: Vec<(usize, usize, usize, LemmaProbe)>,
}

impl ProbeSummary {
    pub fn pass(&self) -> bool {
        self.density_failures.is_empty() && self.lemma_failures.is_empty()
    }
}

/// Builds `N_e` for every non-`A` edge on geodesics between settled region
/// pairs and checks the local inequalities, stopping after `limit` probes.
pub fn probe_region(
    c: &Complex,
    ws: &WallSystem,
    region: &[usize],
    lambda: Rational,
    limit: usize,
) -> ProbeSummary {
    let mut region = region.to_vec();
    region.sort_unstable();
    region.dedup();
    let bound = local_density_bound(lambda);
    let mut out = ProbeSummary::default();
    'outer: for k in 0..region.len() {
        for (ctx, inside) in contexts_to(c, ws, &region, k) {
            if !inside {
                continue;
            }
            for i in (0..ctx.len()).filter(|&i| !ctx.in_a[i]) {
                out.non_a_edges += 1;
                let ne = match relator_neighborhood(c, ws, &ctx, i) {
                    Ok(ne) => ne,
                    Err(Error::UnsettledWall { .. }) => {
                        out.refused += 1;
                        continue;
                    }
                    Err(e) => panic!("{e}"),
                };
                out.probed += 1;
                let (ratio, ok) = local_density_check(&ne, &ctx, lambda);
                debug_assert_eq!(ok, ratio >= bound);
                if !ok {
                    out.density_failures.push((ctx.p, ctx.q, i));
                }
                if let Some(probe) = lemma_probe(c, &ne, lambda) {
                    out.lemma_cases += 1;
                    if !(probe.near_holds && probe.far_holds) {
                        out.lemma_failures.push((ctx.p, ctx.q, i, probe));
                    }
                }
                if out.probed >= limit {
                    break 'outer;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_cayley_ball, build_example1, build_example2};
    use crate::dehn::DehnMachine;
    use crate::presentation::Presentation;
    use crate::walls::build_walls;

    #[test]
    fn free_group_ratio_is_one() {
        let p = Presentation::free(&["a", "b"]);
        let c = build_cayley_ball(&p, &DehnMachine::new(&p), 3, 1000).unwrap();
        let ws = build_walls(&c).unwrap();
        let rep = verify_linear_separation(&c, &ws, &SeparationOptions::new(Rational::new(1, 6)));
        assert!(rep.pass);
        assert_eq!(rep.min_ratio, Some(Rational::from_integer(1)));
        assert_eq!(rep.region_size, c.vertex_count());
        // pairs whose geodesic might leave the ball are not settled
        assert!(rep.settled_pairs < rep.rows.len());
        assert!(rep.settled_pairs > 0);
    }

    #[test]
    fn example1_observe_table() {
        let c = build_example1(&[1, 2, 3]).unwrap();
        let ws = build_walls(&c).unwrap();
        let mut opts = SeparationOptions::new(Rational::new(1, 6));
        opts.mode = SeparationMode::Observe;
        let rep = verify_linear_separation(&c, &ws, &opts);
        assert_eq!(rep.rows.len(), c.vertex_count() * (c.vertex_count() - 1) / 2);
        for n in 1..=3usize {
            let a = c.find_label(&format!("a{n}")).unwrap();
            let e = c.find_label(&format!("e{n}")).unwrap();
            let row = rep.row(a, e).unwrap();
            assert_eq!((row.d, row.dw, row.in_a), (2 * n + 6, 6, 6));
            assert_eq!(row.ratio(), Rational::new(6, 2 * n as i64 + 6));
        }
        assert_eq!(rep.mode_mismatches, 0);
        let csv = rep.to_csv(&c);
        assert!(csv.starts_with("p,q,d,dw,ratio_num,ratio_den,settled,in_A_count\n"));
        assert!(csv.contains("\na1,e1,8,6,3,4,1,6\n"));
        let json: serde_json::Value = serde_json::from_str(&rep.to_json(&c)).unwrap();
        assert_eq!(json["constant"], "1/12");
        assert_eq!(json["mode"], "observe");
    }

    #[test]
    fn example2_sweep_and_probe() {
        let c = build_example2(2, 14).unwrap();
        let ws = build_walls(&c).unwrap();
        let lambda = Rational::new(1, 6);
        let rep = verify_linear_separation(&c, &ws, &SeparationOptions::new(lambda));
        assert!(rep.pass, "{:?}", rep.violations);
        let region: Vec<usize> = (0..c.vertex_count()).collect();
        let probes = probe_region(&c, &ws, &region, lambda, usize::MAX);
        assert!(probes.probed > 0 && probes.refused == 0);
        assert!(probes.pass(), "{probes:?}");
    }
}

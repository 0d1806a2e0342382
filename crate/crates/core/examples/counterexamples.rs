//! The two hand-built complexes: d_W stays at 6 while d grows, and walls
//! that cross a geodesic twice.

use wallkit::complex::{build_example1, build_example2, check_b6};
use wallkit::rational::{fmt_rational, separation_constant};
use wallkit::separation::GeodesicContext;
use wallkit::walls::{build_walls, DistanceMode};
use wallkit::Rational;

fn main() -> wallkit::Result<()> {
    let ns: Vec<usize> = (1..=8).chain([33, 34]).collect();
    let c = build_example1(&ns)?;
    let ws = build_walls(&c)?;
    println!("B(6) {}", if check_b6(&c).pass { "holds" } else { "fails" });
    let constant = separation_constant(Rational::new(1, 6));
    println!("{:>3} {:>4} {:>4} {:>8}", "n", "d", "d_W", "ratio");
    for &n in &ns {
        let a = c.find_label(&format!("a{n}")).unwrap();
        let e = c.find_label(&format!("e{n}")).unwrap();
        let d = c.distance(a, e);
        let dw = ws.wall_distance(&c, a, e, DistanceMode::Components).separating;
        let ratio = Rational::new(dw as i64, d as i64);
        let mark = if ratio < constant { "  below 1/12" } else { "" };
        println!("{n:>3} {d:>4} {dw:>4} {:>8}{mark}", fmt_rational(&ratio));
    }

    let c = build_example2(2, 14)?;
    let ws = build_walls(&c)?;
    let (p1, p2) = (c.find_label("p'").unwrap(), c.find_label("p''").unwrap());
    let ctx = GeodesicContext::new(&c, &ws, p1, p2);
    println!("γ(p', p'') has {} edges, {} in A(γ)", ctx.len(), ctx.in_a.iter().filter(|&&x| x).count());
    for i in 0..ctx.len() {
        if !ctx.in_a[i] {
            println!("  edge {} meets its wall {} times", ctx.path[i], ctx.crossings[i]);
        }
    }
    Ok(())
}

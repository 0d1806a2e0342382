//! Walls of the theta-graph complex: hypergraphs, sides and the pseudo-metric.

use wallkit::complex::build_example1;
use wallkit::walls::{build_walls, DistanceMode, Sides};

fn main() -> wallkit::Result<()> {
    let c = build_example1(&[1, 2])?;
    let ws = build_walls(&c)?;
    println!("{} walls over {} edges", ws.len(), c.edge_count());
    for w in 0..ws.len() {
        let g = ws.hypergraph_of(w);
        let sides = match ws.wall_components(&c, w) {
            Sides::TwoSided { side_a, side_b } => format!("{} | {}", side_a.len(), side_b.len()),
            Sides::NotTwoSided { components } => format!("{components} components"),
        };
        println!("wall {:>3}: {} edges, tree {}, sides {sides}", ws.wall(w).id, g.vertices.len(), g.is_tree);
    }
    for n in [1, 2] {
        let a = c.find_label(&format!("a{n}")).unwrap();
        let e = c.find_label(&format!("e{n}")).unwrap();
        let dw = ws.wall_distance(&c, a, e, DistanceMode::Components);
        println!("d(a{n}, e{n}) = {}, d_W = {}", c.distance(a, e), dw.separating);
    }
    print!("{}", ws.hypergraph_dot(ws.wall_of(0)));
    Ok(())
}

//! A Cayley ball with its cells and open edges, written in the text format.

use wallkit::complex::{build_cayley_ball, check_b6, DEFAULT_VERTEX_BUDGET};
use wallkit::dehn::DehnMachine;
use wallkit::presentation::{gen_example, Family};

fn main() -> wallkit::Result<()> {
    let radius: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let p = gen_example(&Family::ThomasVelickovic { indices: vec![1, 2], k: 7 })?.presentation;
    let c = build_cayley_ball(&p, &DehnMachine::new(&p), radius, DEFAULT_VERTEX_BUDGET)?;
    let open = c.open_flags().iter().filter(|&&o| o).count();
    println!("R = {radius}: {} vertices, {} edges, {} cells, {open} open edges", c.vertex_count(), c.edge_count(), c.cell_count());
    let lengths: Vec<usize> = c.cells().iter().map(|cell| cell.len()).collect();
    println!("cell lengths {lengths:?}");
    println!("B(6) {}", if check_b6(&c).pass { "holds" } else { "fails" });
    let path = std::env::temp_dir().join(format!("tv12_r{radius}.complex"));
    std::fs::write(&path, c.to_text())?;
    println!("wrote {}", path.display());
    Ok(())
}

//! Pieces and the C'(λ) verdict for a few families.

use wallkit::presentation::{check_small_cancellation, compute_pieces, gen_example, Family};
use wallkit::rational::fmt_rational;
use wallkit::Rational;

fn main() -> wallkit::Result<()> {
    let families = [
        Family::ThomasVelickovic { indices: vec![1, 2, 3], k: 7 },
        Family::ThomasVelickovic { indices: vec![1, 2, 3], k: 6 },
        Family::Pride { n_max: 3 },
    ];
    for family in &families {
        let g = gen_example(family)?;
        let p = &g.presentation;
        let pieces = compute_pieces(p);
        let report = check_small_cancellation(p, Rational::new(1, 6));
        println!("{family:?}");
        println!("  {} maximal pieces, max ratio {}", pieces.pieces.len(), fmt_rational(&report.max_ratio));
        for v in &report.relators {
            println!("  |r| = {:>3}  max piece {:>2}  {}", v.length, v.max_piece, if v.pass { "ok" } else { "too long" });
        }
        for flag in &g.flags {
            println!("  flag: {flag:?}");
        }
    }
    Ok(())
}

//! The d_W / d sweep on a settled region of a Cayley ball.

use wallkit::complex::{build_cayley_ball, DEFAULT_VERTEX_BUDGET};
use wallkit::dehn::DehnMachine;
use wallkit::presentation::{gen_example, Family};
use wallkit::separation::{verify_linear_separation, SeparationOptions};
use wallkit::walls::build_walls;
use wallkit::Rational;

fn main() -> wallkit::Result<()> {
    let p = gen_example(&Family::ThomasVelickovic { indices: vec![1, 2], k: 7 })?.presentation;
    let c = build_cayley_ball(&p, &DehnMachine::new(&p), 8, DEFAULT_VERTEX_BUDGET)?;
    let ws = build_walls(&c)?;
    println!("{} of {} walls settled", ws.settled_count(), ws.len());
    let report = verify_linear_separation(&c, &ws, &SeparationOptions::new(Rational::new(1, 6)));
    println!("{}", report.to_json(&c));
    Ok(())
}

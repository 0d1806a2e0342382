//! Dehn's algorithm and shortlex forms in ⟨a, b | (ab)^7⟩.

use wallkit::dehn::{DehnMachine, DEFAULT_NODE_BUDGET};
use wallkit::presentation::{gen_example, parse_word, render_compact, Family};

fn main() -> wallkit::Result<()> {
    let p = gen_example(&Family::ThomasVelickovic { indices: vec![1], k: 7 })?.presentation;
    let m = DehnMachine::new(&p);
    assert!(m.is_certified());
    for text in ["(a b)^7", "(a b)^4", "a b a^-1 b^-1", "b (a b)^7 b^-1", "a"] {
        let w = parse_word(text, p.generators())?;
        let reduced = m.dehn_reduce(&w)?;
        let form = m.shortlex_normal_form(&w, DEFAULT_NODE_BUDGET)?;
        println!(
            "{text:<16} dehn {:<28} shortlex {:<28} {}",
            render_compact(&reduced, p.generators()),
            render_compact(&form, p.generators()),
            if reduced.is_empty() { "trivial" } else { "non-trivial" }
        );
    }
    Ok(())
}

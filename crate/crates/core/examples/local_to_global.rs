//! Splitting an interval cover into two disjoint families and the density
//! count that follows.

use wallkit::separation::{cover_split, local_to_global_bound, Interval};
use wallkit::rational::fmt_rational;
use wallkit::Rational;

fn main() -> wallkit::Result<()> {
    let family: Vec<Interval> = [(0, 6), (4, 9), (5, 7), (8, 14), (13, 20), (22, 25)]
        .into_iter()
        .map(|(s, e)| Interval::new(s, e))
        .collect();
    let (u1, u2) = cover_split(&family);
    println!("U1 = {u1:?}");
    println!("U2 = {u2:?}");

    let mut a = vec![false; 25];
    for u in &family {
        a[u.start] = true;
        a[u.end - 1] = true;
    }
    let c = Rational::new(1, 6);
    let r = local_to_global_bound(&a, &family, c)?;
    println!(
        "|A| = {}, |∪U| = {}, (C/2)|∪U| = {}, via split {}",
        r.a_count,
        r.union_len,
        fmt_rational(&r.bound),
        fmt_rational(&r.via_split)
    );
    Ok(())
}

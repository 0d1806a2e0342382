//! Exact rationals used for every verdict in the crate.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Parses `p/q` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::BadParams(format!("not a rational: `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| bad())?,
            d.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (text.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders as `num/den`, always with an explicit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// The linear separation constant `(1 - 6λ + 4λ²) / (2 - 4λ)`.
pub fn separation_constant(lambda: Rational) -> Rational {
    local_density_bound(lambda) / 2
}

/// The local density bound `(1 - 6λ + 4λ²) / (1 - 2λ)`.
pub fn local_density_bound(lambda: Rational) -> Rational {
    let one = Rational::from_integer(1);
    (one - lambda * 6 + lambda * lambda * 4) / (one - lambda * 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_at_one_sixth_and_one_eighth() {
        assert_eq!(local_density_bound(Rational::new(1, 6)), Rational::new(1, 6));
        assert_eq!(local_density_bound(Rational::new(1, 8)), Rational::new(5, 12));
        assert_eq!(separation_constant(Rational::new(1, 6)), Rational::new(1, 12));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/6").unwrap(), Rational::new(1, 6));
        assert_eq!(parse_rational(" 2 / 12 ").unwrap(), Rational::new(1, 6));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&Rational::from_integer(1)), "1/1");
    }
}

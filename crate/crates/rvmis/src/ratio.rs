//! Exact rational arithmetic used for all guarantee bookkeeping.

use num_rational::Ratio;

/// The rational type used throughout the crate. `i128` components keep all
/// desk-scale computations (graphs of a few dozen vertices, denominators
/// bounded by small lcm values) exact without big-integer overhead.
pub type Rational = Ratio<i128>;

/// Shorthand constructor for `p/q`.
pub fn rat(p: i128, q: i128) -> Rational {
    Ratio::new(p, q)
}

/// Parses a rational written either as `p/q` or as a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i128 = num
        .parse()
        .map_err(|_| ParseRationalError(s.to_string()))?;
    let q: i128 = den
        .parse()
        .map_err(|_| ParseRationalError(s.to_string()))?;
    if q == 0 {
        return Err(ParseRationalError(s.to_string()));
    }
    Ok(Ratio::new(p, q))
}

/// Renders a rational as `p/q` (or `p` when the denominator is 1).
pub fn format_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}` (expected `p` or `p/q` with q != 0)")]
pub struct ParseRationalError(pub String);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_rational("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_rational(" -2 / 4 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(format_rational(rat(14, 9)), "14/9");
        assert_eq!(format_rational(rat(6, 3)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}

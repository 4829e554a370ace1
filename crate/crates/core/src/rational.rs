use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used everywhere.
pub type Rational = BigRational;

/// `p/q` or `p` when the denominator is one.
pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
pub(crate) fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["0", "-3", "7/2", "-1/8"] {
            assert_eq!(rational_string(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4/8").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert_eq!(int(3), parse_rational("3").unwrap());
    }
}

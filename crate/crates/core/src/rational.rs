//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number.
pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn half() -> Q {
    q(1, 2)
}

/// Exact square root, if `x` is the square of a rational.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Canonical "p/q" (or "p") rendering in lowest terms.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Greatest common divisor of a list of integers; zero for an all-zero list.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Parses an exact rational literal: an integer or `p/q`.
///
/// Decimal and exponent notation is rejected; the message suggests the exact fraction.
pub fn parse_rational(text: &str) -> Result<Q, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("expected a rational literal, found nothing".into());
    }
    if s.contains('.') || s.contains(['e', 'E']) {
        let hint =
            decimal_to_fraction(s).map(|x| format!("; write it as the exact fraction \"{x}\"")).unwrap_or_default();
        return Err(format!("floating-point literal \"{s}\" is not allowed, rationals must be integers or p/q{hint}"));
    }
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.trim().parse::<BigInt>().map_err(|_| format!("\"{}\" is not an integer", t.trim()))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in \"{s}\""));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(parse_int(s)?)),
    }
}

fn decimal_to_fraction(s: &str) -> Option<Q> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
    let numer: BigInt = if digits.is_empty() { return None } else { digits.parse().ok()? };
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Q::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Q::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("-2/1").unwrap(), qi(-2));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), q(3, 2));
        assert_eq!(parse_rational("7").unwrap(), qi(7));
    }

    #[test]
    fn rejects_decimals_with_fraction_hint() {
        let err = parse_rational("0.5").unwrap_err();
        assert!(err.contains("\"1/2\""), "{err}");
        assert!(parse_rational("1e3").unwrap_err().contains("\"1000\""));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_exact(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(sqrt_exact(&q(2, 1)), None);
        assert_eq!(sqrt_exact(&q(-1, 1)), None);
    }

    #[test]
    fn renders_lowest_terms() {
        assert_eq!(fmt_q(&q(10, -4)), "-5/2");
        assert_eq!(fmt_q(&q(4, 2)), "2");
    }
}

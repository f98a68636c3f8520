//! Small helpers around [`BigRational`]: construction, parsing and
//! reproducible decimal printing.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use super::GeometryError;

/// Exact rational scalar used throughout the crate.
pub type RationalScalar = BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> RationalScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> RationalScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact value of a finite float.
pub fn from_f64(x: f64) -> RationalScalar {
    BigRational::from_float(x).expect("finite float")
}

pub fn to_f64(x: &RationalScalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `7`, `-3/4` or a plain decimal such as `0.149071` (read exactly,
/// not through a float).
pub fn parse(text: &str) -> Result<RationalScalar, GeometryError> {
    let s = text.trim();
    let bad = || GeometryError::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(GeometryError::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// `p/q` form, or just `p` for integers.
pub fn format_exact(x: &RationalScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal with exactly `places` digits after the point, rounded half away
/// from zero. Computed exactly so output never depends on float formatting.
pub fn format_decimal(x: &RationalScalar, places: usize) -> String {
    let scale = num::pow(BigInt::from(10), places);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let rounded = if r * 2 >= *scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !(int_part.is_zero() && frac_part.is_zero()) {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a RationalScalar>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn floor_i64(x: &RationalScalar) -> i64 {
    x.floor().to_integer().to_i64().expect("coordinate fits in i64")
}

pub fn ceil_i64(x: &RationalScalar) -> i64 {
    x.ceil().to_integer().to_i64().expect("coordinate fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(parse("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse("6/8").unwrap(), ratio(3, 4));
        assert_eq!(parse("0.149071").unwrap(), ratio(149071, 1_000_000));
        assert_eq!(parse("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse("1e-2").unwrap(), ratio(1, 100));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(format_decimal(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(format_decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(format_decimal(&ratio(-1, 2), 3), "-0.500");
        assert_eq!(format_decimal(&ratio(-1, 10_000), 2), "0.00");
        assert_eq!(format_decimal(&int(5), 0), "5");
        assert_eq!(format_exact(&ratio(4, 2)), "2");
        assert_eq!(format_exact(&ratio(-1, 2)), "-1/2");
    }
}

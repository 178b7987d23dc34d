//! Exact rational numbers and their text forms.
//!
//! Every probability and mass in the crate is a [`Rational`]. Text input may
//! be an integer (`"3"`), a fraction (`"3/40"`) or a decimal (`"0.075"`,
//! `"1e-3"`); all three parse exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num / den` as a [`Rational`]. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sum over a common denominator, reducing once at the end.
pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(items: I) -> Rational {
    let items: Vec<&Rational> = items.into_iter().filter(|r| !r.is_zero()).collect();
    let mut dens: Vec<&BigInt> = items.iter().map(|r| r.denom()).collect();
    dens.sort_unstable();
    dens.dedup();
    let lcm = dens.into_iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    let numer: BigInt = items.iter().map(|r| r.numer() * (&lcm / r.denom())).sum();
    Rational::new(numer, lcm)
}

/// Parses `"p/q"`, `"p"` or a decimal literal exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::ParseNumber(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(err)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{whole}{frac}");
    let mut value = Rational::from_integer(joined.parse::<BigInt>().ok()?);
    let scale = exponent - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Converts a float through its shortest round-trip decimal form, so `0.1`
/// becomes exactly `1/10` rather than the nearest binary fraction.
pub fn from_f64(x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::ParseNumber(x.to_string()));
    }
    parse_rational(&format!("{x}"))
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Fixed-point rendering rounded half away from zero, e.g. `81/82` at six
/// places is `"0.987805"`.
pub fn to_decimal_string(r: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{whole}");
    }
    let frac = frac.to_string();
    format!("{sign}{whole}.{}{frac}", "0".repeat(places - frac.len()))
}

/// `"p/q"`, or `"p"` for integers.
pub fn to_fraction_string(r: &Rational) -> String {
    r.to_string()
}

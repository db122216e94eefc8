//! Exact rational tokens: parsing of `p/q` and decimal strings, and the two
//! canonical renderings used across the crate (shortest terminating decimal
//! for tables, strict `p/q` for JSON).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number used for every audience, share and parameter.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRatError {
    #[error("empty rational token")]
    Empty,
    #[error("malformed rational token {0:?}")]
    Malformed(String),
    #[error("zero denominator in token {0:?}")]
    ZeroDenominator(String),
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a token of the form `p/q` (integers) or a signed decimal string,
/// exactly. `"0.5"`, `".5"`, `"1/2"` and `"2/4"` all yield one half.
pub fn parse_rat(token: &str) -> Result<Rat, ParseRatError> {
    let s = token.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let p: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseRatError::Malformed(token.to_string()))?;
        let q: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseRatError::Malformed(token.to_string()))?;
        if q.is_zero() {
            return Err(ParseRatError::ZeroDenominator(token.to_string()));
        }
        return Ok(Rat::new(p, q));
    }
    parse_decimal(s).ok_or_else(|| ParseRatError::Malformed(token.to_string()))
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (sign, digits) = match s.as_bytes().first()? {
        b'-' => (-1, &s[1..]),
        b'+' => (1, &s[1..]),
        _ => (1, s),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut numer = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse::<BigInt>().ok()?
    };
    let mut denom = BigInt::one();
    for b in frac_part.bytes() {
        numer = numer * 10 + (b - b'0');
        denom *= 10;
    }
    Some(Rat::new(BigInt::from(sign) * numer, denom))
}

/// Renders the shortest exact decimal when the reduced denominator is of the
/// form `2^a 5^b`, and falls back to `p/q` otherwise. `5065/2` renders as
/// `2532.5`, `1/3` stays `1/3`.
pub fn to_decimal_string(r: &Rat) -> String {
    let denom = r.denom();
    if denom.is_one() {
        return r.numer().to_string();
    }
    let (twos, rest) = strip_factor(denom.clone(), 2);
    let (fives, rest) = strip_factor(rest, 5);
    if !rest.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scale = BigInt::from(2).pow(places - twos) * BigInt::from(5).pow(places - fives);
    let scaled = r.numer() * scale;
    let negative = scaled.is_negative();
    let mut digits = scaled.abs().to_string();
    let places = places as usize;
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let point = digits.len() - places;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&digits[..point]);
    out.push('.');
    out.push_str(&digits[point..]);
    while out.ends_with('0') {
        out.pop();
    }
    if out.ends_with('.') {
        out.pop();
    }
    out
}

fn strip_factor(mut n: BigInt, f: u32) -> (u32, BigInt) {
    let factor = BigInt::from(f);
    let mut count = 0;
    while (&n % &factor).is_zero() && !n.is_one() {
        n /= &factor;
        count += 1;
    }
    (count, n)
}

/// Strict token form: plain integer when the denominator is one, `p/q`
/// otherwise. This is the lossless form carried in JSON output.
pub fn to_token(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point rendering for display only: rounds half away from zero to
/// `places` decimals. Exact values are never affected by this.
pub fn to_fixed_string(r: &Rat, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = r * Rat::from_integer(scale.clone());
    let half = ratio(1, 2);
    let rounded = if scaled.is_negative() {
        -(-&scaled + &half).floor()
    } else {
        (&scaled + &half).floor()
    };
    let int = rounded.to_integer();
    if places == 0 {
        return int.to_string();
    }
    let negative = int.is_negative();
    let mut digits = int.abs().to_string();
    let places = places as usize;
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let point = digits.len() - places;
    format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        &digits[..point],
        &digits[point..]
    )
}

/// Serde adapter serializing a [`Rat`] as its strict token.
pub mod serde_rat {
    use super::{parse_rat, to_token, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&to_token(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for sequences of rationals.
pub mod serde_rat_vec {
    use super::{parse_rat, to_token, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(to_token))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
        let tokens = Vec::<String>::deserialize(de)?;
        tokens
            .iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

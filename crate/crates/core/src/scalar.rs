//! Exact rational scalars and their text forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

/// Three-way sign of a scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Scalar) -> Sign {
        match x.numer().sign() {
            num_bigint::Sign::Minus => Sign::Neg,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Pos,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_pos(x: &Scalar) -> bool {
    x.is_positive()
}

pub fn is_neg(x: &Scalar) -> bool {
    x.is_negative()
}

/// Parses `p`, `p/q`, or an exact decimal such as `-1.25` or `3e-2`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::MalformedRational(text.to_string()));
    }
    if let Some((p, q)) = t.split_once('/') {
        let num = parse_int(p, t)?;
        let den = parse_int(q, t)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator(t.to_string()));
        }
        return Ok(Scalar::new(num, den));
    }
    parse_decimal(t)
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedRational(whole.to_string()));
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s))
        .map_err(|_| Error::MalformedRational(whole.to_string()))
}

fn parse_decimal(t: &str) -> Result<Scalar> {
    let bad = || Error::MalformedRational(t.to_string());
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], exp)
        }
        None => (t, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, fraction) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(fraction.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if exponent.unsigned_abs() > 4096 {
        return Err(bad());
    }
    let digits = format!("{whole}{fraction}");
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - fraction.len() as i64;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Scalar::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Scalar::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_vector(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

pub fn to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn cmp_zero(x: &Scalar) -> Ordering {
    x.cmp(&Scalar::zero())
}

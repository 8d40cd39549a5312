//! Arbitrary-precision rationals, rational intervals, and the exact ring of
//! rational combinations of powers of `e`.

mod enumber;
mod ival;

pub use enumber::{enclose_enum, enclose_exp, enum_arith, ENum, ENumOp};
pub use ival::{ival_arith, Ival, IvalOp};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Int = BigInt;
/// Always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn from_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rat, b: &Rat, op: RatOp) -> Result<Rat> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

/// `p/q` with the sign on the numerator; integers keep the `/1`.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, plain integers, decimals (`0.125`) and scientific notation
/// (`1e-8`, `2.5E3`) into an exact rational.
pub fn parse_rat(input: &str) -> Result<Rat> {
    let s = input.trim();
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|_| err("bad numerator"))?;
        let q: Int = q.trim().parse().map_err(|_| err("bad denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rat::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err("no digits"));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("unexpected character"));
    }
    let all: Int = format!("{whole}{frac}").parse().map_err(|_| err("bad digits"))?;
    let scale = exponent - frac.len() as i64;
    let ten = Int::from(10);
    let magnitude = if scale >= 0 {
        Rat::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(if negative { -magnitude } else { magnitude })
}

pub(crate) fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k))
}

//! Exact rational arithmetic, factorials, binomials and a rigorous rational
//! enclosure of π.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! canonical form (reduced, positive denominator) after each operation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds the canonical rational `n/d`.
pub fn rat(n: i64, d: i64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// `n/d` for arguments known to be valid (non-zero denominator).
pub(crate) fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn from_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> Result<BigInt> {
    if k > n {
        return Err(Error::Domain(format!("binomial({n}, {k}) requires k <= n")));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point.
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

pub fn pow_rat(base: &Rational, e: u32) -> Rational {
    num_traits::pow(base.clone(), e as usize)
}

/// 10^-digits as a rational.
pub fn ten_pow_neg(digits: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}

/// Largest multiple of 2^-bits that is <= v.
pub fn round_down(v: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    let scaled = v * Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

/// Smallest multiple of 2^-bits that is >= v.
pub fn round_up(v: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    let scaled = v * Rational::from_integer(scale.clone());
    Rational::new(scaled.ceil().to_integer(), scale)
}

/// Decimal scientific rendering with `digits` significant digits,
/// rounded to nearest. Zero renders as `0`.
pub fn to_sci(v: &Rational, digits: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let neg = v.is_negative();
    let a = v.abs();
    // Estimate the decimal exponent from bit lengths, then correct.
    let nb = a.numer().bits() as i64;
    let db = a.denom().bits() as i64;
    let mut e = (((nb - db) as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            num_traits::pow(ten.clone(), k as usize)
        } else {
            num_traits::pow(ten.clone(), (-k) as usize).recip()
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let scaled = &a * pow10(digits as i64 - 1 - e);
    let mut m = scaled.round().to_integer();
    if m == num_traits::pow(BigInt::from(10), digits) {
        m /= 10;
        e += 1;
    }
    let s = m.to_str_radix(10);
    let (head, tail) = s.split_at(1);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    out.push('e');
    out.push_str(&e.to_string());
    out
}

/// Exact `p/q` rendering (integers without the `/1`).
pub fn to_exact(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p/q`, an integer, a decimal (`0.015625`) or scientific (`1e-30`)
/// literal, or a power of two written `2^-6`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    if let Some((base, exp)) = s.split_once('^') {
        let b: Rational = parse_rational(base)?;
        let e: i32 = exp.trim().parse().map_err(|_| bad())?;
        let p = pow_rat(&b, e.unsigned_abs());
        return if e < 0 {
            if p.is_zero() {
                Err(bad())
            } else {
                Ok(p.recip())
            }
        } else {
            Ok(p)
        };
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (sign, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let m: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exponent - fp.len() as i32;
    let ten = BigInt::from(10);
    let v = if shift >= 0 {
        Rational::from_integer(m * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(m, num_traits::pow(ten, (-shift) as usize))
    };
    Ok(if sign < 0 { -v } else { v })
}


/// A rigorous enclosure `lo < π < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiEnclosure {
    #[serde(with = "crate::report::rational_str")]
    pub lo: Rational,
    #[serde(with = "crate::report::rational_str")]
    pub hi: Rational,
    #[serde(with = "crate::report::rational_str")]
    pub precision: Rational,
}

/// Rigorous enclosure of arctan(1/m): partial sum plus the alternating tail,
/// which lies between 0 and the first omitted term.
fn arctan_recip(m: u32, terms: usize) -> (Rational, Rational) {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut power = BigInt::from(m); // m^(2k+1)
    let mut sum = Rational::zero();
    for k in 0..terms {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &m2;
    }
    let next = Rational::new(BigInt::one(), power * BigInt::from(2 * terms + 1));
    if terms.is_multiple_of(2) {
        // next omitted term is positive
        (sum.clone(), sum + next)
    } else {
        (sum.clone() - next, sum)
    }
}

/// Machin: π = 16·arctan(1/5) − 4·arctan(1/239), each evaluated in exact
/// rationals with an explicit alternating-tail bound.
///
/// The raw partial sums carry huge denominators, so the endpoints are then
/// rounded outward to a dyadic grid finer than precision/8. Dyadic grids keep
/// successive refinements nested.
pub fn pi_enclosure(precision: &Rational) -> Result<PiEnclosure> {
    if !precision.is_positive() {
        return Err(Error::Domain("pi precision must be positive".into()));
    }
    let target = precision / int(2);
    let bits = (int(8) / precision).ceil().to_integer().bits() as u32;
    // Each arctan(1/5) term gains log10(25) ≈ 1.4 digits.
    let mut terms = 2usize;
    loop {
        let (a_lo, a_hi) = arctan_recip(5, terms);
        let (b_lo, b_hi) = arctan_recip(239, terms);
        let lo = int(16) * a_lo - int(4) * b_hi;
        let hi = int(16) * a_hi - int(4) * b_lo;
        if &hi - &lo <= target {
            let (lo, hi) = (round_down(&lo, bits), round_up(&hi, bits));
            let width = &hi - &lo;
            return Ok(PiEnclosure { lo, hi, precision: width });
        }
        terms += (terms / 2).max(1);
    }
}

/// Cached enclosure at the default 10⁻³⁰ precision.
pub fn default_pi() -> &'static PiEnclosure {
    static PI: std::sync::OnceLock<PiEnclosure> = std::sync::OnceLock::new();
    PI.get_or_init(|| pi_enclosure(&ten_pow_neg(30)).expect("positive precision"))
}

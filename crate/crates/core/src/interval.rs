//! Closed intervals with exact rational endpoints.
//!
//! Results of arithmetic are rounded outward onto the dyadic grid 2^-BITS, so
//! endpoint sizes stay bounded while every operation remains conservative:
//! the exact result set is always contained in the returned interval.
//!
//! The upper endpoint may be +∞ (used for tan x / x at π/2). A lower endpoint
//! of −∞ only arises from subtracting an unbounded interval; such an interval
//! can never certify a positive margin.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{round_down, round_up, to_sci, Rational};

/// Dyadic rounding grid for interval endpoints (2^-256 ≈ 1e-77).
pub const BITS: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Ext {
    NegInf,
    Fin(Rational),
    PosInf,
}

impl Ext {
    fn neg(&self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Fin(v) => Ext::Fin(-v),
        }
    }

    fn add(&self, o: &Ext) -> Ext {
        match (self, o) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            _ => Ext::NegInf,
        }
    }

    // 0·∞ = 0: interval members are finite reals, so a zero factor annihilates.
    fn mul(&self, o: &Ext) -> Ext {
        match (self, o) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
            (Ext::Fin(a), inf) | (inf, Ext::Fin(a)) => match a.cmp(&Rational::zero()) {
                Ordering::Equal => Ext::Fin(Rational::zero()),
                Ordering::Greater => inf.clone(),
                Ordering::Less => inf.neg(),
            },
            (a, b) => {
                if (*a == Ext::PosInf) == (*b == Ext::PosInf) {
                    Ext::PosInf
                } else {
                    Ext::NegInf
                }
            }
        }
    }

    fn fin(&self) -> Option<&Rational> {
        match self {
            Ext::Fin(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Ext,
    hi: Ext,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: &Ext| match e {
            Ext::NegInf => "-inf".to_string(),
            Ext::PosInf => "+inf".to_string(),
            Ext::Fin(v) => to_sci(v, 12),
        };
        write!(f, "[{}, {}]", show(&self.lo), show(&self.hi))
    }
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain("interval lower endpoint exceeds upper".into()));
        }
        Ok(Interval { lo: Ext::Fin(lo), hi: Ext::Fin(hi) })
    }

    /// [lo, hi] for endpoints already known to be ordered.
    pub(crate) fn of(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo: Ext::Fin(lo), hi: Ext::Fin(hi) }
    }

    pub fn point(v: Rational) -> Self {
        Interval { lo: Ext::Fin(v.clone()), hi: Ext::Fin(v) }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    /// [lo, +∞).
    pub fn unbounded_above(lo: Rational) -> Self {
        Interval { lo: Ext::Fin(lo), hi: Ext::PosInf }
    }

    pub fn lo(&self) -> Option<&Rational> {
        self.lo.fin()
    }

    /// `None` means +∞.
    pub fn hi(&self) -> Option<&Rational> {
        self.hi.fin()
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.fin().is_some() && self.hi.fin().is_some()
    }

    pub fn width(&self) -> Option<Rational> {
        Some(self.hi.fin()? - self.lo.fin()?)
    }

    pub fn midpoint(&self) -> Option<Rational> {
        Some((self.hi.fin()? + self.lo.fin()?) / Rational::from_integer(2.into()))
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let v = Ext::Fin(v.clone());
        self.lo <= v && v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Strictly positive lower endpoint.
    pub fn is_positive(&self) -> bool {
        matches!(&self.lo, Ext::Fin(v) if v.is_positive())
    }

    /// Strictly negative upper endpoint.
    pub fn is_negative(&self) -> bool {
        matches!(&self.hi, Ext::Fin(v) if v.is_negative()) || self.hi == Ext::NegInf
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    /// Intersection of two enclosures of the same quantity.
    pub fn intersect(&self, o: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(o.lo.clone());
        let hi = self.hi.clone().min(o.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    fn rounded(lo: Ext, hi: Ext) -> Interval {
        let lo = match lo {
            Ext::Fin(v) => Ext::Fin(round_down(&v, BITS)),
            e => e,
        };
        let hi = match hi {
            Ext::Fin(v) => Ext::Fin(round_up(&v, BITS)),
            e => e,
        };
        Interval { lo, hi }
    }

    /// Outward rounding onto the 2^-BITS grid.
    pub fn round(&self) -> Interval {
        Self::rounded(self.lo.clone(), self.hi.clone())
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Self::rounded(self.lo.add(&o.lo), self.hi.add(&o.hi))
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn add_rat(&self, v: &Rational) -> Interval {
        self.add(&Interval::point(v.clone()))
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = c.iter().min().cloned().expect("four candidates");
        let hi = c.iter().max().cloned().expect("four candidates");
        Self::rounded(lo, hi)
    }

    pub fn scale(&self, s: &Rational) -> Interval {
        self.mul(&Interval::point(s.clone()))
    }

    /// 1/X for X not containing zero.
    pub fn recip(&self) -> Result<Interval> {
        let inv = |e: &Ext| match e {
            Ext::Fin(v) if v.is_zero() => None,
            Ext::Fin(v) => Some(Ext::Fin(v.recip())),
            _ => Some(Ext::Fin(Rational::zero())),
        };
        if self.contains_zero() || self.lo == Ext::NegInf && self.hi == Ext::PosInf {
            return Err(Error::DivisionByZero);
        }
        let (a, b) = (inv(&self.hi).ok_or(Error::DivisionByZero)?, inv(&self.lo).ok_or(Error::DivisionByZero)?);
        Ok(Self::rounded(a, b))
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        Ok(self.mul(&o.recip()?))
    }

    /// X^n with the dependency-aware rule for even powers.
    pub fn powi(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::point(Rational::from_integer(1.into()));
        }
        let p = |e: &Ext| -> Ext {
            let mut acc = Ext::Fin(Rational::from_integer(1.into()));
            for _ in 0..n {
                acc = acc.mul(e);
            }
            acc
        };
        let (a, b) = (p(&self.lo), p(&self.hi));
        if n % 2 == 1 || self.lo >= Ext::Fin(Rational::zero()) {
            Self::rounded(a.clone().min(b.clone()), a.max(b))
        } else if self.hi <= Ext::Fin(Rational::zero()) {
            Self::rounded(b.clone().min(a.clone()), a.max(b))
        } else {
            Self::rounded(Ext::Fin(Rational::zero()), a.max(b))
        }
    }
}

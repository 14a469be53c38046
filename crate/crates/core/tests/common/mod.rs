//! Independent high-precision oracle. Atoms are evaluated from their
//! definitions with astro-float at 512 bits (about 154 digits), never from
//! the engine's series.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::Zero;
use trighyp::exact::Rational;
use trighyp::expr::{Atom, AtomPoly, Expr};
use trighyp::interval::Interval;

/// Working precision of the oracle in bits.
pub const PREC: usize = 512;
const RM: RoundingMode = RoundingMode::ToEven;

/// Absolute slack allowed when comparing oracle values with exact interval
/// endpoints. The oracle carries ~154 digits and every expression here is a
/// handful of operations on values below 1e6, so its error is far below
/// 1e-120; enclosures themselves are never tighter than 2^-256 ≈ 1e-77 in a
/// way that could hide a real miss behind this slack.
pub const ORACLE_SLACK: &str = "1e-120";

pub struct Oracle {
    cc: Consts,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        Oracle { cc: Consts::new().expect("constants cache") }
    }

    pub fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, PREC, RM, &mut self.cc)
    }

    pub fn big(&mut self, r: &Rational) -> BigFloat {
        let n = self.parse(&r.numer().to_string());
        let d = self.parse(&r.denom().to_string());
        n.div(&d, PREC, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(PREC, RM)
    }

    pub fn atom(&mut self, a: Atom, x: &Rational) -> BigFloat {
        let one = BigFloat::from_word(1, PREC);
        if x.is_zero() {
            return match a {
                Atom::X => BigFloat::from_word(0, PREC),
                _ => one,
            };
        }
        let xb = self.big(x);
        let cc = &mut self.cc;
        match a {
            Atom::X => xb,
            Atom::Sinc => xb.sin(PREC, RM, cc).div(&xb, PREC, RM),
            Atom::InvSinc => xb.div(&xb.sin(PREC, RM, cc), PREC, RM),
            Atom::Sinhc => xb.sinh(PREC, RM, cc).div(&xb, PREC, RM),
            Atom::InvSinhc => xb.div(&xb.sinh(PREC, RM, cc), PREC, RM),
            Atom::Tancx => xb.tan(PREC, RM, cc).div(&xb, PREC, RM),
            Atom::Cotc => xb.div(&xb.tan(PREC, RM, cc), PREC, RM),
            Atom::Tanhc => xb.tanh(PREC, RM, cc).div(&xb, PREC, RM),
            Atom::Cothc => xb.div(&xb.tanh(PREC, RM, cc), PREC, RM),
            Atom::Cos => xb.cos(PREC, RM, cc),
            Atom::Cosh => xb.cosh(PREC, RM, cc),
        }
    }

    pub fn poly(&mut self, p: &AtomPoly, x: &Rational) -> BigFloat {
        let mut sum = BigFloat::from_word(0, PREC);
        for (m, c) in p.terms() {
            let mut t = self.big(c);
            for (a, e) in m.factors() {
                let v = self.atom(a, x);
                for _ in 0..e {
                    t = t.mul(&v, PREC, RM);
                }
            }
            sum = sum.add(&t, PREC, RM);
        }
        sum
    }

    pub fn expr(&mut self, e: &Expr, x: &Rational) -> BigFloat {
        self.poly(&e.normalize(), x)
    }

    /// True when `v` lies in `iv` up to [`ORACLE_SLACK`].
    pub fn within(&mut self, iv: &Interval, v: &BigFloat) -> bool {
        let slack = self.parse(ORACLE_SLACK);
        let lo_ok = iv.lo().is_none_or(|lo| self.big(lo).sub(&slack, PREC, RM) <= *v);
        let hi_ok = iv.hi().is_none_or(|hi| *v <= self.big(hi).add(&slack, PREC, RM));
        lo_ok && hi_ok
    }

    /// Sign of `v` when |v| exceeds [`ORACLE_SLACK`].
    pub fn sign(&mut self, v: &BigFloat) -> Option<bool> {
        let slack = self.parse(ORACLE_SLACK);
        if *v > slack {
            Some(true)
        } else if *v < slack.neg() {
            Some(false)
        } else {
            None
        }
    }

}

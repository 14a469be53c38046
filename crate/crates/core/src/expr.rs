//! Expressions over the trigonometric and hyperbolic ratio atoms.
//!
//! An [`Expr`] is normalized into an [`AtomPoly`], a polynomial in the atoms
//! with exact rational coefficients. Normalization cancels shared terms, so
//! `(sinc + 2·tancx) − (2·sinc + tancx)` becomes `tancx − sinc` before any
//! numerical evaluation happens.

use std::collections::BTreeMap;
use std::fmt;
use std::ops;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{to_exact, Rational};
use crate::series::{closed_form_series, SeriesAtom, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Atom {
    X,
    Sinc,
    InvSinc,
    Sinhc,
    InvSinhc,
    /// tan x / x
    Tancx,
    /// x / tan x
    Cotc,
    /// tanh x / x
    Tanhc,
    /// x / tanh x
    Cothc,
    Cos,
    Cosh,
}

pub const ATOM_COUNT: usize = 11;

impl Atom {
    pub const ALL: [Atom; ATOM_COUNT] = [
        Atom::X,
        Atom::Sinc,
        Atom::InvSinc,
        Atom::Sinhc,
        Atom::InvSinhc,
        Atom::Tancx,
        Atom::Cotc,
        Atom::Tanhc,
        Atom::Cothc,
        Atom::Cos,
        Atom::Cosh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::X => "x",
            Atom::Sinc => "sinc",
            Atom::InvSinc => "inv_sinc",
            Atom::Sinhc => "sinhc",
            Atom::InvSinhc => "inv_sinhc",
            Atom::Tancx => "tancx",
            Atom::Cotc => "cotc",
            Atom::Tanhc => "tanhc",
            Atom::Cothc => "cothc",
            Atom::Cos => "cos",
            Atom::Cosh => "cosh",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Atoms that involve only x and hyperbolic functions, defined on all of
    /// [0, ∞).
    pub fn is_hyperbolic(self) -> bool {
        matches!(self, Atom::X | Atom::Sinhc | Atom::InvSinhc | Atom::Tanhc | Atom::Cothc | Atom::Cosh)
    }

    /// Direction of monotonicity on (0, π/2) (on (0, ∞) for hyperbolic atoms).
    pub fn is_increasing(self) -> bool {
        matches!(self, Atom::X | Atom::InvSinc | Atom::Sinhc | Atom::Tancx | Atom::Cothc | Atom::Cosh)
    }

    /// Maclaurin series to the given order.
    pub fn series(self, order: usize) -> TruncatedSeries {
        let s = match self {
            Atom::X => TruncatedSeries::x(order),
            Atom::Sinc => closed_form_series(SeriesAtom::Sinc, order),
            Atom::InvSinc => closed_form_series(SeriesAtom::InvSinc, order),
            Atom::Sinhc => closed_form_series(SeriesAtom::Sinhc, order),
            Atom::InvSinhc => closed_form_series(SeriesAtom::InvSinhc, order),
            Atom::Tancx => closed_form_series(SeriesAtom::Tan, order + 1).shift_down(1).expect("tan x vanishes at 0"),
            Atom::Cotc => closed_form_series(SeriesAtom::Cotc, order),
            Atom::Tanhc => closed_form_series(SeriesAtom::Tanh, order + 1).shift_down(1).expect("tanh x vanishes at 0"),
            Atom::Cothc => closed_form_series(SeriesAtom::Cothc, order),
            Atom::Cos => closed_form_series(SeriesAtom::Cos, order),
            Atom::Cosh => closed_form_series(SeriesAtom::Cosh, order),
        };
        s.with_label(self.name())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Atom::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::UnknownAtom {
            name: s.to_string(),
            valid: Atom::ALL.map(|a| a.name()).join(", "),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Const(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Scale(Rational, Box<Expr>),
}

impl Expr {
    pub fn atom(a: Atom) -> Expr {
        Expr::Atom(a)
    }

    pub fn x() -> Expr {
        Expr::Atom(Atom::X)
    }

    pub fn constant(c: Rational) -> Expr {
        Expr::Const(c)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(Rational::from_integer(n.into()))
    }

    pub fn pow(self, e: u32) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn scale(self, c: Rational) -> Expr {
        Expr::Scale(c, Box::new(self))
    }

    pub fn normalize(&self) -> AtomPoly {
        match self {
            Expr::Atom(a) => AtomPoly::atom(*a),
            Expr::Const(c) => AtomPoly::constant(c.clone()),
            Expr::Add(a, b) => a.normalize().add(&b.normalize()),
            Expr::Sub(a, b) => a.normalize().sub(&b.normalize()),
            Expr::Mul(a, b) => a.normalize().mul(&b.normalize()),
            Expr::Pow(a, e) => a.normalize().powi(*e),
            Expr::Scale(c, a) => a.normalize().scale(c),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Scale(..) => 2,
            Expr::Const(c) if !c.denom().is_one() || c.is_negative() => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Const(c) => write!(f, "{}", to_exact(c)),
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 4)?;
                write!(f, "^{e}")
            }
            Expr::Scale(c, a) => {
                if c.denom().is_one() && !c.is_negative() {
                    write!(f, "{}*", to_exact(c))?;
                } else {
                    write!(f, "({})*", to_exact(c))?;
                }
                wrap(f, a, 3)
            }
        }
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(o))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(o))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(o))
    }
}

/// Exponent vector over [`Atom::ALL`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u8; ATOM_COUNT]);

impl Monomial {
    pub fn exponent(&self, a: Atom) -> u32 {
        self.0[a.index()] as u32
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    fn times(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("atom exponent overflow");
        }
        m
    }

    pub fn factors(&self) -> impl Iterator<Item = (Atom, u32)> + '_ {
        Atom::ALL.into_iter().filter_map(|a| {
            let e = self.exponent(a);
            (e > 0).then_some((a, e))
        })
    }
}

/// Commutative algebra used to evaluate an [`AtomPoly`] over series, Taylor
/// models or intervals.
pub trait Algebra: Clone {
    fn lift(&self, c: &Rational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
}

impl Algebra for TruncatedSeries {
    fn lift(&self, c: &Rational) -> Self {
        TruncatedSeries::constant(c.clone(), self.order())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AtomPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl AtomPoly {
    pub fn constant(c: Rational) -> Self {
        let mut p = AtomPoly::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::default(), c);
        }
        p
    }

    pub fn atom(a: Atom) -> Self {
        let mut m = Monomial::default();
        m.0[a.index()] = 1;
        let mut p = AtomPoly::default();
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.insert(*m, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return AtomPoly::default();
        }
        AtomPoly { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = AtomPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.insert(m1.times(m2), c1 * c2);
            }
        }
        p
    }

    pub fn powi(&self, e: u32) -> Self {
        (0..e).fold(AtomPoly::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn atoms(&self) -> Vec<Atom> {
        Atom::ALL.into_iter().filter(|a| self.terms.keys().any(|m| m.exponent(*a) > 0)).collect()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.atoms().iter().all(|a| a.is_hyperbolic())
    }

    /// True if some monomial containing tan x / x has a positive coefficient,
    /// i.e. the expression diverges to +∞ at π/2.
    pub fn diverges_at_quarter_period(&self) -> bool {
        self.terms.iter().any(|(m, c)| m.exponent(Atom::Tancx) > 0 && c.is_positive())
    }

    pub fn max_exponent(&self, a: Atom) -> u32 {
        self.terms.keys().map(|m| m.exponent(a)).max().unwrap_or(0)
    }

    /// Evaluates the polynomial given a value for each atom.
    pub fn eval<T: Algebra>(&self, template: &T, value: impl Fn(Atom) -> Result<T>) -> Result<T> {
        let mut powers: BTreeMap<Atom, Vec<T>> = BTreeMap::new();
        for a in self.atoms() {
            let v = value(a)?;
            let mut ps = vec![v.clone()];
            for _ in 1..self.max_exponent(a) {
                let next = ps.last().expect("nonempty").times(&v);
                ps.push(next);
            }
            powers.insert(a, ps);
        }
        let mut acc = template.lift(&Rational::zero());
        for (m, c) in &self.terms {
            let mut term: Option<T> = None;
            for (a, e) in m.factors() {
                let p = &powers[&a][e as usize - 1];
                term = Some(match term {
                    None => p.clone(),
                    Some(t) => t.times(p),
                });
            }
            let term = match term {
                None => template.lift(c),
                Some(t) => t.scaled(c),
            };
            acc = acc.plus(&term);
        }
        Ok(acc)
    }

    /// Maclaurin series of the polynomial.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        self.eval(&TruncatedSeries::zero(order), |a| Ok(a.series(order))).expect("series evaluation is total")
    }
}

impl fmt::Display for AtomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", to_exact(c))?;
            for (a, e) in m.factors() {
                if e == 1 {
                    write!(f, "*{a}")?;
                } else {
                    write!(f, "*{a}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn a(at: Atom) -> Expr {
        Expr::atom(at)
    }

    #[test]
    fn normalization_cancels() {
        let lhs = a(Atom::Sinc).scale(q(2, 1)) + a(Atom::Tancx);
        let rhs = a(Atom::Sinc) + a(Atom::Tancx).scale(q(2, 1));
        let m = (rhs - lhs).normalize();
        assert_eq!(m, AtomPoly::atom(Atom::Tancx).sub(&AtomPoly::atom(Atom::Sinc)));
        assert!(m.diverges_at_quarter_period());
        assert!((a(Atom::Cos) - a(Atom::Cos)).normalize().is_zero());
    }

    #[test]
    fn series_of_expression() {
        // sinc² + cothc = 2 + x⁴/45 + ...
        let e = a(Atom::Sinc).pow(2) + a(Atom::Cothc);
        let s = e.normalize().series(6);
        assert_eq!(s.coeff(0), q(2, 1));
        assert_eq!(s.coeff(2), q(0, 1));
        assert_eq!(s.coeff(4), q(1, 45));
    }

    #[test]
    fn display() {
        let e = Expr::int(2) - Expr::x().pow(2).scale(q(1, 2));
        assert_eq!(e.to_string(), "2 - (1/2)*x^2");
        let e = a(Atom::InvSinc) + a(Atom::Tanhc).pow(2);
        assert_eq!(e.to_string(), "inv_sinc + tanhc^2");
        assert_eq!("tancx".parse::<Atom>().unwrap(), Atom::Tancx);
        assert!("tan".parse::<Atom>().is_err());
    }

    #[test]
    fn tancx_series() {
        let s = Atom::Tancx.series(4);
        assert_eq!(s.coeffs(), &[q(1, 1), q(0, 1), q(1, 3), q(0, 1), q(2, 15)]);
    }
}

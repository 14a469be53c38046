//! Rigorous enclosures of the ratio atoms on subintervals of [0, π/2]
//! (of [0, HYPERBOLIC_MAX] for the purely hyperbolic atoms).
//!
//! Point values come from the Maclaurin series of sin x / x, cos x,
//! sinh x / x and cosh x summed in interval arithmetic, with the tail bounded
//! either by its first term (alternating, decreasing) or by a geometric series
//! (positive terms). The remaining atoms are quotients of these four. On a
//! nondegenerate interval each atom is enclosed by its endpoint values, using
//! the monotonicity recorded in [`Atom::is_increasing`] and checked in
//! [`crate::monotone`].

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{default_pi, int, Rational};
use crate::expr::{Algebra, Atom, AtomPoly, Expr};
use crate::interval::Interval;

pub const DEFAULT_ORDER: usize = 24;
/// Upper end of the range on which hyperbolic atoms are enclosed.
pub const HYPERBOLIC_MAX: i64 = 16;

impl Algebra for Interval {
    fn lift(&self, c: &Rational) -> Self {
        Interval::point(c.clone())
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

/// Enclosures of the four base functions at one point.
#[derive(Clone, Debug)]
pub struct PointValues {
    pub x: Rational,
    pub sinc: Interval,
    pub cos: Interval,
    pub sinhc: Interval,
    pub cosh: Interval,
}

/// Σ_{k≥0} (±1)^k x^{2k}/(2k+shift)!, with at least `terms` terms summed and a
/// rigorous tail.
fn factorial_series(x2: &Interval, shift: i64, alternating: bool, terms: usize) -> Interval {
    let mut term = Interval::point(Rational::one());
    let mut sum = Interval::zero();
    let mut k: i64 = 0;
    loop {
        let next_ratio = |k: i64| x2.scale(&Rational::new(1.into(), ((2 * k + 1 + shift) * (2 * k + 2 + shift)).into()));
        if k as usize >= terms {
            // ratio of every later term to its predecessor is at most q
            let q = next_ratio(k);
            let q_hi = q.hi().cloned().unwrap_or_else(Rational::one);
            if q_hi < Rational::new(1.into(), 2.into()) {
                let t = term.hi().cloned().expect("finite term");
                let tail = if alternating {
                    if k % 2 == 0 {
                        Interval::of(Rational::zero(), t)
                    } else {
                        Interval::of(-t, Rational::zero())
                    }
                } else {
                    Interval::of(Rational::zero(), &t / (Rational::one() - q_hi))
                };
                return sum.add(&tail);
            }
        }
        sum = if alternating && k % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        term = term.mul(&next_ratio(k));
        k += 1;
    }
}

pub fn point_values(x: &Rational, terms: usize) -> PointValues {
    let x2 = Interval::point(x * x);
    PointValues {
        x: x.clone(),
        sinc: factorial_series(&x2, 1, true, terms),
        cos: factorial_series(&x2, 0, true, terms),
        sinhc: factorial_series(&x2, 1, false, terms),
        cosh: factorial_series(&x2, 0, false, terms),
    }
}

/// Atom value at a point. tan x / x gets an infinite upper end once cos x is
/// not provably positive.
pub fn atom_at_point(atom: Atom, pv: &PointValues) -> Result<Interval> {
    Ok(match atom {
        Atom::X => Interval::point(pv.x.clone()),
        Atom::Sinc => pv.sinc.clone(),
        Atom::InvSinc => pv.sinc.recip()?,
        Atom::Sinhc => pv.sinhc.clone(),
        Atom::InvSinhc => pv.sinhc.recip()?,
        Atom::Tancx => {
            if pv.cos.is_positive() {
                pv.sinc.div(&pv.cos)?
            } else {
                Interval::unbounded_above(Rational::one())
            }
        }
        Atom::Cotc => pv.cos.div(&pv.sinc)?,
        Atom::Tanhc => pv.sinhc.div(&pv.cosh)?,
        Atom::Cothc => pv.cosh.div(&pv.sinhc)?,
        Atom::Cos => pv.cos.clone(),
        Atom::Cosh => pv.cosh.clone(),
    })
}

fn check_domain(atom: Atom, lo: &Rational, hi: &Rational) -> Result<()> {
    if lo.is_negative() || lo > hi {
        return Err(Error::Domain(format!("{atom}: interval must satisfy 0 <= lo <= hi")));
    }
    let limit = if atom.is_hyperbolic() { int(HYPERBOLIC_MAX) } else { &default_pi().hi / int(2) };
    if *hi > limit {
        return Err(Error::Domain(format!("{atom}: upper end exceeds the supported domain")));
    }
    Ok(())
}

/// Memoizes point evaluations; bisection revisits every midpoint twice.
#[derive(Default)]
pub struct PointCache {
    terms: usize,
    map: HashMap<Rational, PointValues>,
}

impl PointCache {
    pub fn new(terms: usize) -> Self {
        PointCache { terms, map: HashMap::new() }
    }

    pub fn get(&mut self, x: &Rational) -> &PointValues {
        let terms = self.terms;
        self.map.entry(x.clone()).or_insert_with(|| point_values(x, terms))
    }
}

fn bounds(iv: &Interval) -> Result<(Rational, Rational)> {
    match (iv.lo(), iv.hi()) {
        (Some(a), Some(b)) => Ok((a.clone(), b.clone())),
        _ => Err(Error::Domain("argument interval must be bounded".into())),
    }
}

fn enclose_with(atom: Atom, a: &Rational, b: &Rational, cache: &mut PointCache) -> Result<Interval> {
    check_domain(atom, a, b)?;
    let fa = atom_at_point(atom, cache.get(a))?;
    if a == b {
        return Ok(fa);
    }
    let fb = atom_at_point(atom, cache.get(b))?;
    let (low_end, high_end) = if atom.is_increasing() { (fa, fb) } else { (fb, fa) };
    let lo = low_end.lo().cloned().expect("atom lower bounds are finite");
    Ok(match high_end.hi() {
        Some(hi) => Interval::of(lo, hi.clone()),
        None => Interval::unbounded_above(lo),
    })
}

/// Enclosure of {atom(x) : x ∈ X}.
pub fn ienclose_atom(atom: Atom, x: &Interval, order: usize) -> Result<Interval> {
    let (a, b) = bounds(x)?;
    enclose_with(atom, &a, &b, &mut PointCache::new(order))
}

/// Interval evaluation of a normalized polynomial, reusing cached points.
pub fn ieval_poly(poly: &AtomPoly, a: &Rational, b: &Rational, cache: &mut PointCache) -> Result<Interval> {
    let cache = std::cell::RefCell::new(cache);
    poly.eval(&Interval::zero(), |atom| {
        if atom == Atom::X {
            check_domain(atom, a, b)?;
            return Ok(Interval::of(a.clone(), b.clone()));
        }
        enclose_with(atom, a, b, &mut cache.borrow_mut())
    })
}

/// Conservative enclosure of an expression over X.
pub fn ieval(expr: &Expr, x: &Interval, order: usize) -> Result<Interval> {
    let (a, b) = bounds(x)?;
    ieval_poly(&expr.normalize(), &a, &b, &mut PointCache::new(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, q};

    fn pt(v: Rational) -> Interval {
        Interval::point(v)
    }

    #[test]
    fn continuous_extension_at_zero() {
        for atom in Atom::ALL {
            let v = ienclose_atom(atom, &pt(int(0)), DEFAULT_ORDER).unwrap();
            let expected = if atom == Atom::X { int(0) } else { int(1) };
            assert_eq!(v, pt(expected), "{atom}");
        }
    }

    #[test]
    fn sinc_at_one() {
        let v = ienclose_atom(Atom::Sinc, &pt(int(1)), DEFAULT_ORDER).unwrap();
        let r = parse_rational("0.84147098480789650665250232163029899962256306079837").unwrap();
        // reference truncated at 50 digits; the enclosure is far tighter
        let tol = crate::exact::ten_pow_neg(49);
        assert!((v.lo().unwrap() - &r).abs() < tol && (v.hi().unwrap() - &r).abs() < tol);
        assert!(v.width().unwrap() <= crate::exact::ten_pow_neg(20));
    }

    #[test]
    fn cotc_near_quarter_period() {
        let pi = default_pi();
        let x = Interval::new(&pi.lo / int(2), &pi.hi / int(2)).unwrap();
        let v = ienclose_atom(Atom::Cotc, &x, DEFAULT_ORDER).unwrap();
        assert!(v.contains_zero());
        let t = ienclose_atom(Atom::Tancx, &x, DEFAULT_ORDER).unwrap();
        assert!(t.hi().is_none());
    }

    #[test]
    fn expression_values() {
        let e = Expr::atom(Atom::Sinc).pow(2) + Expr::atom(Atom::Cothc);
        let v = ieval(&e, &pt(int(1)), DEFAULT_ORDER).unwrap();
        // (sin 1)² + 1/tanh 1
        let r = parse_rational("2.021108703772902497134945361681228927795").unwrap();
        let tol = crate::exact::ten_pow_neg(38);
        assert!((v.lo().unwrap() - &r).abs() < tol && (v.hi().unwrap() - &r).abs() < tol, "{v}");
        assert_eq!(ieval(&Expr::int(2), &Interval::new(q(1, 3), int(1)).unwrap(), 24).unwrap(), pt(int(2)));

        let e = Expr::atom(Atom::Sinhc).scale(int(2)) + Expr::atom(Atom::Cotc);
        let v = ieval(&e, &pt(q(1, 2)), DEFAULT_ORDER).unwrap();
        assert!(v.hi().unwrap() < &int(3));
        assert!(v.lo().unwrap() > &parse_rational("2.9996").unwrap());
    }

    #[test]
    fn domain_errors() {
        assert!(ienclose_atom(Atom::Sinc, &Interval::new(int(-1), int(1)).unwrap(), 24).is_err());
        assert!(ienclose_atom(Atom::Sinc, &pt(int(2)), 24).is_err());
        assert!(ienclose_atom(Atom::Sinhc, &pt(int(2)), 24).is_ok());
        assert!(ienclose_atom(Atom::Cosh, &Interval::unbounded_above(int(1)), 24).is_err());
    }

    #[test]
    fn tan_lower_bound_at_three_halves() {
        let t = ienclose_atom(Atom::Tancx, &pt(q(3, 2)), DEFAULT_ORDER).unwrap();
        // tan(3/2) ≈ 14.1014
        let tan = t.scale(&q(3, 2));
        assert!(tan.lo().unwrap() > &int(14));
    }
}

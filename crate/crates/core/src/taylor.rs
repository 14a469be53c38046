//! Taylor models about 0: a polynomial of degree N together with an interval
//! `R` such that, for every x in (0, r],
//!
//! ```text
//! f(x) − poly(x) ∈ x^{N+1} · R
//! ```
//!
//! Keeping the remainder as a multiple of x^{N+1} (rather than a constant
//! interval) means the model stays informative arbitrarily close to 0, which
//! is what lets a margin that vanishes like x⁶ be certified on (0, δ].
//!
//! Atom tails are bounded from closed-form coefficient bounds: ratio tests
//! for the factorial series and, for the Bernoulli-type series, the classical
//! bound |B_{2k}| < 2(2k)!/(2π)^{2k} · 2^{2k−1}/(2^{2k−1}−1), which makes each
//! tail dominated by a geometric series in (r/π)² or (2r/π)².

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{default_pi, factorial, from_big, int, pow2, pow_rat, Rational};
use crate::expr::{Algebra, Atom, AtomPoly, Expr};
use crate::interval::Interval;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorModel {
    poly: TruncatedSeries,
    radius: Rational,
    /// Bound on (f(x) − poly(x)) / x^{N+1} over (0, radius].
    scaled_rem: Interval,
}

/// Range of Σ c_j x^j over [a, b] with 0 <= a <= b.
pub fn poly_range(coeffs: &[Rational], a: &Rational, b: &Rational) -> Interval {
    let split = split_range(coeffs, a, b);
    if a == b || coeffs.len() <= 1 {
        return split;
    }
    // mean-value form: P(a) + [0, b − a]·P'([a, b])
    let deriv: Vec<Rational> = coeffs.iter().enumerate().skip(1).map(|(j, c)| c * int(j as i64)).collect();
    let slope = split_range(&deriv, a, b);
    let at_a = split_range(coeffs, a, a);
    let mv = at_a.add(&slope.mul(&Interval::of(Rational::zero(), b - a)));
    split.intersect(&mv).unwrap_or(split)
}

fn split_range(coeffs: &[Rational], a: &Rational, b: &Rational) -> Interval {
    let mut lo = Interval::zero();
    let mut hi = Interval::zero();
    let mut pa = Interval::point(Rational::one());
    let mut pb = Interval::point(Rational::one());
    let (ia, ib) = (Interval::point(a.clone()), Interval::point(b.clone()));
    for (j, c) in coeffs.iter().enumerate() {
        if j > 0 {
            pa = pa.mul(&ia);
            pb = pb.mul(&ib);
        }
        if c.is_zero() {
            continue;
        }
        if c.is_positive() {
            lo = lo.add(&pa.scale(c));
            hi = hi.add(&pb.scale(c));
        } else {
            lo = lo.add(&pb.scale(c));
            hi = hi.add(&pa.scale(c));
        }
    }
    Interval::of(lo.lo().cloned().expect("finite"), hi.hi().cloned().expect("finite"))
}

/// Atom series are reused across the many radii a verification visits.
fn cached_series(atom: Atom, order: usize) -> TruncatedSeries {
    type Cache = RwLock<HashMap<(Atom, usize), TruncatedSeries>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.read().expect("series cache").get(&(atom, order)) {
        return s.clone();
    }
    let s = atom.series(order);
    cache.write().expect("series cache").insert((atom, order), s.clone());
    s
}

fn rho(k: u32) -> Rational {
    let p = from_big(pow2(2 * k - 1));
    &p / (&p - int(1))
}

/// Sign structure of an atom's tail.
enum TailSign {
    Positive,
    Negative,
    Alternating,
}

impl TaylorModel {
    pub fn poly(&self) -> &TruncatedSeries {
        &self.poly
    }

    pub fn order(&self) -> usize {
        self.poly.order()
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn scaled_remainder(&self) -> &Interval {
        &self.scaled_rem
    }

    /// Bound on f(x) − poly(x) valid for all 0 <= x <= radius.
    pub fn remainder(&self) -> Interval {
        let t = pow_rat(&self.radius, self.order() as u32 + 1);
        let lo = self.scaled_rem.lo().cloned().expect("finite remainder");
        let hi = self.scaled_rem.hi().cloned().expect("finite remainder");
        Interval::of((&t * lo).min(Rational::zero()), (&t * hi).max(Rational::zero())).round()
    }

    pub fn constant(c: Rational, order: usize, radius: Rational) -> Self {
        TaylorModel { poly: TruncatedSeries::constant(c, order), radius, scaled_rem: Interval::zero() }
    }

    pub fn of_atom(atom: Atom, order: usize, radius: &Rational) -> Result<Self> {
        if radius.is_negative() {
            return Err(Error::Domain("taylor model radius must be nonnegative".into()));
        }
        let n = order;
        let r = radius.clone();
        let poly = cached_series(atom, n);
        let first_even_above = |n: usize| if n.is_multiple_of(2) { n + 2 } else { n + 1 };
        let scaled_rem = match atom {
            Atom::X => {
                if n == 0 {
                    Interval::point(Rational::one())
                } else {
                    Interval::zero()
                }
            }
            Atom::Sinc | Atom::Cos | Atom::Sinhc | Atom::Cosh => {
                let shift = if matches!(atom, Atom::Sinc | Atom::Sinhc) { 1 } else { 0 };
                let j0 = first_even_above(n) as u32;
                let c0 = Rational::new(1.into(), factorial(j0 + shift));
                let q = &r * &r / int(((j0 + shift + 1) * (j0 + shift + 2)) as i64);
                if q >= Rational::one() {
                    return Err(Error::Domain(format!("radius too large for a {atom} model of order {n}")));
                }
                let lead = &c0 * pow_rat(&r, j0 - n as u32 - 1);
                let alternating = matches!(atom, Atom::Sinc | Atom::Cos);
                if alternating {
                    // the first omitted term has sign (−1)^{j0/2}
                    if (j0 / 2).is_multiple_of(2) {
                        Interval::of(Rational::zero(), lead)
                    } else {
                        Interval::of(-lead, Rational::zero())
                    }
                } else {
                    Interval::of(Rational::zero(), lead / (Rational::one() - q))
                }
            }
            _ => {
                let pi_lo = default_pi().lo.clone();
                let (j0, k_bound, beta, sign) = match atom {
                    Atom::InvSinc | Atom::InvSinhc => {
                        let j0 = first_even_above(n) as u32;
                        let sign = if atom == Atom::InvSinc { TailSign::Positive } else { TailSign::Alternating };
                        (j0, int(2), pi_lo.recip(), sign)
                    }
                    Atom::Cotc | Atom::Cothc => {
                        let j0 = first_even_above(n) as u32;
                        let sign = if atom == Atom::Cotc { TailSign::Negative } else { TailSign::Alternating };
                        (j0, int(2) * rho(j0 / 2), pi_lo.recip(), sign)
                    }
                    Atom::Tancx | Atom::Tanhc => {
                        // coefficient of x^m belongs to B_{m+2}
                        let j0 = first_even_above(n) as u32;
                        let k0 = (j0 + 2) / 2;
                        let sign = if atom == Atom::Tancx { TailSign::Positive } else { TailSign::Alternating };
                        (j0, int(8) * rho(k0) / (&pi_lo * &pi_lo), int(2) / &pi_lo, sign)
                    }
                    _ => unreachable!("factorial atoms handled above"),
                };
                let ratio = &beta * &beta * &r * &r;
                if ratio >= Rational::one() {
                    return Err(Error::Domain(format!("radius outside the convergence domain of {atom}")));
                }
                let u = k_bound * pow_rat(&beta, j0) * pow_rat(&r, j0 - n as u32 - 1) / (Rational::one() - ratio);
                match sign {
                    TailSign::Positive => Interval::of(Rational::zero(), u),
                    TailSign::Negative => Interval::of(-u, Rational::zero()),
                    TailSign::Alternating => Interval::of(-u.clone(), u),
                }
            }
        };
        Ok(TaylorModel { poly, radius: r, scaled_rem: scaled_rem.round() })
    }

    pub fn of_poly(poly: &AtomPoly, order: usize, radius: &Rational) -> Result<Self> {
        let template = TaylorModel::constant(Rational::zero(), order, radius.clone());
        poly.eval(&template, |a| TaylorModel::of_atom(a, order, radius))
    }

    fn range_on_ball(&self, coeffs: &[Rational]) -> Interval {
        poly_range(coeffs, &Rational::zero(), &self.radius)
    }

    pub fn add(&self, o: &Self) -> Self {
        TaylorModel { poly: self.poly.add(&o.poly), radius: self.radius.clone(), scaled_rem: self.scaled_rem.add(&o.scaled_rem) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TaylorModel { poly: self.poly.scale(c), radius: self.radius.clone(), scaled_rem: self.scaled_rem.scale(c) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let (f, g) = (self.poly.truncate(n), o.poly.truncate(n));
        let mut full = vec![Rational::zero(); 2 * n + 1];
        for (i, a) in f.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs().iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let high = self.range_on_ball(&full[n + 1..]);
        let low = TruncatedSeries::new(full[..=n].to_vec(), format!("{}*{}", f.label(), g.label()));
        let fr = self.range_on_ball(f.coeffs());
        let gr = self.range_on_ball(g.coeffs());
        let xn = Interval::of(Rational::zero(), pow_rat(&self.radius, n as u32 + 1));
        let rem = high
            .add(&fr.mul(&o.scaled_rem))
            .add(&gr.mul(&self.scaled_rem))
            .add(&xn.mul(&self.scaled_rem).mul(&o.scaled_rem));
        TaylorModel { poly: low, radius: self.radius.clone(), scaled_rem: rem }
    }

    /// Divides by x^k when the first k coefficients vanish; the remainder
    /// exponent drops along with the degree.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        Ok(TaylorModel { poly: self.poly.shift_down(k)?, radius: self.radius.clone(), scaled_rem: self.scaled_rem.clone() })
    }

    /// Enclosure of f over [a, b] ⊆ [0, radius].
    pub fn enclose(&self, a: &Rational, b: &Rational) -> Result<Interval> {
        if a.is_negative() || a > b || *b > self.radius {
            return Err(Error::Domain("enclosure interval outside the model radius".into()));
        }
        let m = self.order() as u32 + 1;
        let xm = Interval::of(pow_rat(a, m), pow_rat(b, m));
        Ok(poly_range(self.poly.coeffs(), a, b).add(&xm.mul(&self.scaled_rem)))
    }
}

impl Algebra for TaylorModel {
    fn lift(&self, c: &Rational) -> Self {
        TaylorModel::constant(c.clone(), self.order(), self.radius.clone())
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

pub fn taylor_model(expr: &Expr, order: usize, radius: &Rational) -> Result<TaylorModel> {
    TaylorModel::of_poly(&expr.normalize(), order, radius)
}

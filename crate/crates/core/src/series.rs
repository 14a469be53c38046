//! Truncated power series with exact rational coefficients.
//!
//! Every expansion is available through two independent constructions:
//! the Bernoulli closed forms ([`closed_form_series`]) and elementary factorial
//! series combined by reciprocal, quotient, integration or differentiation
//! ([`alternate_series`]). The two are compared coefficient by coefficient.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bernoulli::{abs_b2k, bernoulli};
use crate::error::{Error, Result};
use crate::exact::{factorial, from_big, int, pow2, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    label: String,
    truncated: bool,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>, label: impl Into<String>) -> Self {
        assert!(!coeffs.is_empty(), "a series holds at least the constant term");
        TruncatedSeries { coeffs, label: label.into(), truncated: false }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order + 1], "0")
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.label = crate::exact::to_exact(&c);
        s.coeffs[0] = c;
        s
    }

    /// The series `x` truncated at `order`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        } else {
            s.truncated = true;
        }
        s.label = "x".into();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^j (zero above the order).
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// True when nonzero terms above the order were dropped by some operation.
    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        if order < self.order() {
            s.truncated |= self.coeffs[order + 1..].iter().any(|c| !c.is_zero());
            s.coeffs.truncate(order + 1);
        } else {
            s.coeffs.resize(order + 1, Rational::zero());
        }
        s
    }

    fn common(&self, o: &Self) -> usize {
        self.order().min(o.order())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.common(o);
        let coeffs = (0..=n).map(|j| &self.coeffs[j] + &o.coeffs[j]).collect();
        TruncatedSeries { coeffs, label: format!("({} + {})", self.label, o.label), truncated: self.truncated || o.truncated }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one())).with_label(format!("({} - {})", self.label, o.label))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            label: format!("{}*{}", crate::exact::to_exact(s), self.label),
            truncated: self.truncated,
        }
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.common(o);
        let mut coeffs = vec![Rational::zero(); n + 1];
        let mut dropped = false;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if i + j <= n {
                    coeffs[i + j] += a * b;
                } else {
                    dropped = true;
                }
            }
        }
        TruncatedSeries {
            coeffs,
            label: format!("{}*{}", self.label, o.label),
            truncated: self.truncated || o.truncated || dropped,
        }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc.with_label(format!("{}^{e}", self.label))
    }

    /// b with a·b = 1 up to the order.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut b = vec![Rational::zero(); n + 1];
        b[0] = inv0.clone();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &b[m - j];
                }
            }
            b[m] = -acc * &inv0;
        }
        Ok(TruncatedSeries { coeffs: b, label: format!("1/{}", self.label), truncated: self.truncated })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?).with_label(format!("{}/{}", self.label, o.label)))
    }

    /// Term-wise derivative, order N−1.
    pub fn differentiate(&self) -> Self {
        let n = self.order();
        let coeffs = if n == 0 {
            vec![Rational::zero()]
        } else {
            (1..=n).map(|j| &self.coeffs[j] * int(j as i64)).collect()
        };
        TruncatedSeries { coeffs, label: format!("d/dx {}", self.label), truncated: self.truncated }
    }

    /// Antiderivative vanishing at 0, order N+1.
    pub fn integrate(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(j, c)| c / int(j as i64 + 1)));
        TruncatedSeries { coeffs, label: format!("int {}", self.label), truncated: self.truncated }
    }

    /// Multiplies by x^k (order grows by k).
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs, label: format!("x^{k}*{}", self.label), truncated: self.truncated }
    }

    /// Divides by x^k; the first k coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain(format!("{} is not divisible by x^{k}", self.label)));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
            label: format!("{}/x^{k}", self.label),
            truncated: self.truncated,
        })
    }

    /// f(s·x).
    pub fn scale_arg(&self, s: &Rational) -> Self {
        let mut p = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &p;
                p *= s;
                v
            })
            .collect();
        TruncatedSeries { coeffs, label: format!("{}({}x)", self.label, crate::exact::to_exact(s)), truncated: self.truncated }
    }

    /// Exact value of the polynomial part at x.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", crate::exact::to_exact(c))?,
                1 => write!(f, "({})x", crate::exact::to_exact(c))?,
                _ => write!(f, "({})x^{j}", crate::exact::to_exact(c))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// The expansions with closed forms in terms of factorials and Bernoulli
/// numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesAtom {
    Cos,
    Cosh,
    /// sin x / x
    Sinc,
    /// sinh x / x
    Sinhc,
    /// x / sin x
    InvSinc,
    /// x / sinh x
    InvSinhc,
    /// x cot x
    Cotc,
    /// x coth x
    Cothc,
    Tan,
    Tanh,
    /// (tanh x / x)^2
    TanhcSq,
}

impl SeriesAtom {
    pub const ALL: [SeriesAtom; 11] = [
        SeriesAtom::Cos,
        SeriesAtom::Cosh,
        SeriesAtom::Sinc,
        SeriesAtom::Sinhc,
        SeriesAtom::InvSinc,
        SeriesAtom::InvSinhc,
        SeriesAtom::Cotc,
        SeriesAtom::Cothc,
        SeriesAtom::Tan,
        SeriesAtom::Tanh,
        SeriesAtom::TanhcSq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesAtom::Cos => "cos",
            SeriesAtom::Cosh => "cosh",
            SeriesAtom::Sinc => "sinc",
            SeriesAtom::Sinhc => "sinhc",
            SeriesAtom::InvSinc => "inv_sinc",
            SeriesAtom::InvSinhc => "inv_sinhc",
            SeriesAtom::Cotc => "cotc",
            SeriesAtom::Cothc => "cothc",
            SeriesAtom::Tan => "tan",
            SeriesAtom::Tanh => "tanh",
            SeriesAtom::TanhcSq => "tanhc_sq",
        }
    }
}

impl fmt::Display for SeriesAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesAtom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesAtom::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::UnknownAtom {
            name: s.to_string(),
            valid: SeriesAtom::ALL.map(|a| a.name()).join(", "),
        })
    }
}

fn inv_fact(n: u32) -> Rational {
    Rational::new(1.into(), factorial(n))
}

fn sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn two_pow(e: u32) -> Rational {
    from_big(pow2(e))
}

fn even_series(order: usize, label: &str, c: impl Fn(u32) -> Rational) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    for j in (0..=order).step_by(2) {
        s.coeffs[j] = c(j as u32 / 2);
    }
    s.with_label(label)
}

/// Route A: the closed-form coefficients.
pub fn closed_form_series(atom: SeriesAtom, order: usize) -> TruncatedSeries {
    let label = atom.name();
    match atom {
        SeriesAtom::Cos => even_series(order, label, |k| sign(k) * inv_fact(2 * k)),
        SeriesAtom::Cosh => even_series(order, label, |k| inv_fact(2 * k)),
        SeriesAtom::Sinc => even_series(order, label, |k| sign(k) * inv_fact(2 * k + 1)),
        SeriesAtom::Sinhc => even_series(order, label, |k| inv_fact(2 * k + 1)),
        SeriesAtom::InvSinc => even_series(order, label, |k| {
            if k == 0 {
                int(1)
            } else {
                int(2) * (two_pow(2 * k - 1) - int(1)) * inv_fact(2 * k) * abs_b2k(k)
            }
        }),
        SeriesAtom::InvSinhc => even_series(order, label, |k| {
            if k == 0 {
                int(1)
            } else {
                -(int(2) * (two_pow(2 * k - 1) - int(1)) * inv_fact(2 * k) * bernoulli(2 * k as usize))
            }
        }),
        SeriesAtom::Cotc => even_series(order, label, |k| {
            if k == 0 {
                int(1)
            } else {
                -(two_pow(2 * k) * abs_b2k(k) * inv_fact(2 * k))
            }
        }),
        SeriesAtom::Cothc => even_series(order, label, |k| {
            if k == 0 {
                int(1)
            } else {
                two_pow(2 * k) * bernoulli(2 * k as usize) * inv_fact(2 * k)
            }
        }),
        SeriesAtom::Tan | SeriesAtom::Tanh => {
            let mut s = TruncatedSeries::zero(order);
            for k in 1.. {
                let j = 2 * k as usize - 1;
                if j > order {
                    break;
                }
                let p = two_pow(2 * k);
                let b = if atom == SeriesAtom::Tan { abs_b2k(k) } else { bernoulli(2 * k as usize) };
                s.coeffs[j] = &p * (&p - int(1)) * inv_fact(2 * k) * b;
            }
            s.with_label(label)
        }
        SeriesAtom::TanhcSq => {
            // −Σ_{k≥2} 2^{2k}(2k−1)(2^{2k}−1)/(2k)! B_{2k} x^{2k−4}
            let mut s = TruncatedSeries::zero(order);
            for k in 2.. {
                let j = 2 * k as usize - 4;
                if j > order {
                    break;
                }
                let p = two_pow(2 * k);
                s.coeffs[j] = -(&p * int(2 * k as i64 - 1) * (&p - int(1)) * inv_fact(2 * k) * bernoulli(2 * k as usize));
            }
            s.with_label(label)
        }
    }
}

/// Route B: factorial series combined by integration, differentiation,
/// reciprocal and quotient. Shares no Bernoulli numbers with route A.
pub fn alternate_series(atom: SeriesAtom, order: usize) -> TruncatedSeries {
    let f = |a| closed_form_series(a, order);
    let label = format!("{}[alt]", atom.name());
    let s = match atom {
        SeriesAtom::Cos => f(SeriesAtom::Sinc).shift_up(1).truncate(order + 1).differentiate(),
        SeriesAtom::Cosh => f(SeriesAtom::Sinhc).shift_up(1).truncate(order + 1).differentiate(),
        SeriesAtom::Sinc => f(SeriesAtom::Cos).integrate().shift_down(1).expect("sin x vanishes at 0"),
        SeriesAtom::Sinhc => f(SeriesAtom::Cosh).integrate().shift_down(1).expect("sinh x vanishes at 0"),
        SeriesAtom::InvSinc => f(SeriesAtom::Sinc).recip().expect("sinc(0) = 1"),
        SeriesAtom::InvSinhc => f(SeriesAtom::Sinhc).recip().expect("sinhc(0) = 1"),
        SeriesAtom::Cotc => f(SeriesAtom::Cos).div(&f(SeriesAtom::Sinc)).expect("sinc(0) = 1"),
        SeriesAtom::Cothc => f(SeriesAtom::Cosh).div(&f(SeriesAtom::Sinhc)).expect("sinhc(0) = 1"),
        SeriesAtom::Tan => f(SeriesAtom::Sinc).shift_up(1).truncate(order).div(&f(SeriesAtom::Cos)).expect("cos(0) = 1"),
        SeriesAtom::Tanh => f(SeriesAtom::Sinhc).shift_up(1).truncate(order).div(&f(SeriesAtom::Cosh)).expect("cosh(0) = 1"),
        SeriesAtom::TanhcSq => {
            let tanhc = alternate_series(SeriesAtom::Tanh, order + 1).shift_down(1).expect("tanh x vanishes at 0");
            tanhc.mul(&tanhc)
        }
    };
    s.truncate(order).with_label(label)
}

/// (tanh x / x)² through 1 − d/dx tanh x = tanh² x, divided by x².
pub fn tanhc_sq_by_derivative(order: usize) -> TruncatedSeries {
    let tanh = closed_form_series(SeriesAtom::Tanh, order + 3);
    let sech2 = tanh.differentiate();
    TruncatedSeries::one(sech2.order())
        .sub(&sech2)
        .shift_down(2)
        .expect("tanh^2 vanishes to second order")
        .truncate(order)
        .with_label("tanhc_sq[deriv]")
}

/// Both routes for one atom.
#[derive(Clone, Debug)]
pub struct SeriesComparison {
    pub atom: SeriesAtom,
    pub closed_form: TruncatedSeries,
    pub alternate: TruncatedSeries,
}

impl SeriesComparison {
    pub fn agree(&self) -> bool {
        self.closed_form.coeffs() == self.alternate.coeffs()
    }
}

pub fn compare_routes(atom: SeriesAtom, order: usize) -> SeriesComparison {
    SeriesComparison { atom, closed_form: closed_form_series(atom, order), alternate: alternate_series(atom, order) }
}

/// f(x) = tan x·sinh² x − 2x² tan x + x³, expanded through the cosh 2x form
/// x³ − 2x² tan x + (tan x / 2)·cosh 2x − tan x / 2.
pub fn theorem2_f_series(order: usize) -> Result<TruncatedSeries> {
    if order < 7 {
        return Err(Error::Domain("the f(x) expansion needs order >= 7".into()));
    }
    let tan = closed_form_series(SeriesAtom::Tan, order);
    let x3 = TruncatedSeries::x(order).powi(3);
    let x2 = TruncatedSeries::x(order).powi(2);
    let cosh2x = closed_form_series(SeriesAtom::Cosh, order).scale_arg(&int(2));
    let half = Rational::new(1.into(), 2.into());
    let f = x3
        .sub(&x2.mul(&tan).scale(&int(2)))
        .add(&tan.mul(&cosh2x).scale(&half))
        .sub(&tan.scale(&half));
    Ok(f.with_label("f"))
}

/// The same f(x) through the direct product tan x·(x·sinhc)².
pub fn theorem2_f_series_direct(order: usize) -> Result<TruncatedSeries> {
    if order < 7 {
        return Err(Error::Domain("the f(x) expansion needs order >= 7".into()));
    }
    let tan = alternate_series(SeriesAtom::Tan, order);
    let sinh = alternate_series(SeriesAtom::Sinhc, order).shift_up(1).truncate(order);
    let x = TruncatedSeries::x(order);
    let f = tan.mul(&sinh.mul(&sinh)).sub(&x.powi(2).mul(&tan).scale(&int(2))).add(&x.powi(3));
    Ok(f.with_label("f[direct]"))
}

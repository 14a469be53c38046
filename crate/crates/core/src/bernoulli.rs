//! Exact Bernoulli numbers and machine checks of the Bernoulli-number bounds
//! used by the coefficient-sign arguments.
//!
//! Convention: B_1 = −1/2. Only even indices enter the expansions, so the
//! choice of B_1 does not affect any downstream value.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, from_big, int, pi_enclosure, pow2, pow_rat, ten_pow_neg, PiEnclosure, Rational};

/// π digits used first for every π-dependent comparison.
pub const DEFAULT_PI_DIGITS: u32 = 30;
/// Refinement stops (with an error) beyond this many digits.
pub const PI_DIGITS_FLOOR: u32 = 480;

pub const DEFAULT_K_MAX: u32 = 100;

/// B_0 ..= B_max_index, exact.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new(max_index: usize) -> Self {
        let mut t = BernoulliTable { values: vec![Rational::one()] };
        t.extend_to(max_index);
        t
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    /// Σ_{j=0}^{m} C(m+1, j)·B_j = 0, solved for B_m.
    fn extend_to(&mut self, max_index: usize) {
        while self.values.len() <= max_index {
            let m = self.values.len();
            if m >= 3 && m % 2 == 1 {
                self.values.push(Rational::zero());
                continue;
            }
            let mut acc = Rational::zero();
            let mut binom = BigInt::one(); // C(m+1, j)
            for (j, b) in self.values.iter().enumerate() {
                if !b.is_zero() {
                    acc += from_big(binom.clone()) * b;
                }
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            self.values.push(-acc / int(m as i64 + 1));
        }
    }
}

static TABLE: RwLock<Option<BernoulliTable>> = RwLock::new(None);

/// Exact B_n from the shared memoized table.
pub fn bernoulli(n: usize) -> Rational {
    {
        let guard = TABLE.read().expect("bernoulli table lock");
        if let Some(v) = guard.as_ref().and_then(|t| t.get(n)) {
            return v.clone();
        }
    }
    let mut guard = TABLE.write().expect("bernoulli table lock");
    let table = guard.get_or_insert_with(|| BernoulliTable::new(2));
    // grow in chunks so that neighbouring requests hit the cache
    table.extend_to(n.max(table.max_index() + 16));
    table.values[n].clone()
}

/// |B_{2k}|.
pub fn abs_b2k(k: u32) -> Rational {
    bernoulli(2 * k as usize).abs()
}

fn pi_at(digits: u32) -> PiEnclosure {
    static CACHE: RwLock<Vec<(u32, PiEnclosure)>> = RwLock::new(Vec::new());
    if let Some((_, p)) = CACHE.read().expect("pi cache").iter().find(|(d, _)| *d == digits) {
        return p.clone();
    }
    let p = pi_enclosure(&ten_pow_neg(digits)).expect("positive precision");
    CACHE.write().expect("pi cache").push((digits, p.clone()));
    p
}

/// Runs a π-dependent comparison, doubling the π precision while the
/// comparison is undecided. Returns the verdict and the digits used.
pub(crate) fn decide_with_pi(start_digits: u32, test: impl Fn(&PiEnclosure) -> Option<bool>) -> Result<(bool, u32)> {
    let mut digits = start_digits.max(1);
    loop {
        if let Some(v) = test(&pi_at(digits)) {
            return Ok((v, digits));
        }
        if digits >= PI_DIGITS_FLOOR {
            return Err(Error::Indeterminate(PI_DIGITS_FLOOR));
        }
        digits = (digits * 2).min(PI_DIGITS_FLOOR);
    }
}

/// Decides `value < f(π)` for f decreasing in π.
fn lt_decreasing<'a, F: Fn(&Rational) -> Rational + 'a>(value: &'a Rational, f: F) -> impl Fn(&PiEnclosure) -> Option<bool> + 'a {
    move |pi| {
        if *value < f(&pi.hi) {
            Some(true)
        } else if *value >= f(&pi.lo) {
            Some(false)
        } else {
            None
        }
    }
}

/// Decides `value > f(π)` for f decreasing in π.
fn gt_decreasing<'a, F: Fn(&Rational) -> Rational + 'a>(value: &'a Rational, f: F) -> impl Fn(&PiEnclosure) -> Option<bool> + 'a {
    move |pi| {
        if *value > f(&pi.lo) {
            Some(true)
        } else if *value <= f(&pi.hi) {
            Some(false)
        } else {
            None
        }
    }
}

/// Decides `value > f(π)` for f increasing in π.
pub(crate) fn gt_increasing<'a, F: Fn(&Rational) -> Rational + 'a>(value: &'a Rational, f: F) -> impl Fn(&PiEnclosure) -> Option<bool> + 'a {
    move |pi| {
        if *value > f(&pi.hi) {
            Some(true)
        } else if *value <= f(&pi.lo) {
            Some(false)
        } else {
            None
        }
    }
}

/// One lemma instance: the main inequality plus, where the argument relies on
/// one, the auxiliary π-power comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: u8,
    pub k: u32,
    pub main: bool,
    pub auxiliary: Option<bool>,
    pub pi_digits: u32,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.main && self.auxiliary.unwrap_or(true)
    }
}

fn require(k_max: u32, min: u32, lemma: u8) -> Result<()> {
    if k_max < min {
        return Err(Error::Domain(format!("lemma {lemma} sweep needs k_max >= {min}")));
    }
    Ok(())
}

/// 2(2k)!/(2π)^{2k} < |B_{2k}| < 2(2k)!/(2π)^{2k} · 2^{2k−1}/(2^{2k−1}−1).
pub fn check_lemma4_at(k: u32, start_digits: u32) -> Result<LemmaCheck> {
    let b = abs_b2k(k);
    let scale = from_big(factorial(2 * k) * 2);
    let base = move |pi: &Rational| -> Rational { &scale / pow_rat(&(pi * int(2)), 2 * k) };
    let p = from_big(pow2(2 * k - 1));
    let ratio = &p / (&p - int(1));
    let (lower, d1) = decide_with_pi(start_digits, gt_decreasing(&b, &base))?;
    let (upper, d2) = decide_with_pi(start_digits, lt_decreasing(&b, |pi| base(pi) * &ratio))?;
    Ok(LemmaCheck { lemma: 4, k, main: lower && upper, auxiliary: None, pi_digits: d1.max(d2) })
}

/// |B_{2k}| > 2^{1−2k}/(2k+1), with auxiliary (2k+1)! > π^{2k}.
pub fn check_lemma5_at(k: u32, start_digits: u32) -> Result<LemmaCheck> {
    let b = abs_b2k(k);
    let bound = Rational::new(BigInt::from(2), pow2(2 * k) * BigInt::from(2 * k + 1));
    let fact = from_big(factorial(2 * k + 1));
    let (aux, d) = decide_with_pi(start_digits, gt_increasing(&fact, |pi| pow_rat(pi, 2 * k)))?;
    Ok(LemmaCheck { lemma: 5, k, main: b > bound, auxiliary: Some(aux), pi_digits: d })
}

/// |B_{2k}| > 2^{−2k}/(2k+1), with auxiliary 2(2k+1)! > π^{2k}.
pub fn check_lemma6_at(k: u32, start_digits: u32) -> Result<LemmaCheck> {
    let b = abs_b2k(k);
    let bound = Rational::new(BigInt::one(), pow2(2 * k) * BigInt::from(2 * k + 1));
    let fact = from_big(factorial(2 * k + 1) * 2);
    let (aux, d) = decide_with_pi(start_digits, gt_increasing(&fact, |pi| pow_rat(pi, 2 * k)))?;
    Ok(LemmaCheck { lemma: 6, k, main: b > bound, auxiliary: Some(aux), pi_digits: d })
}

/// The right-hand side of the consecutive-ratio bound,
/// (k+1)(2k+1)(2^{2k−1}−1) / (2^{2k−1}(2^{2k+2}−1)).
pub fn lemma7_bound(k: u32) -> Rational {
    let p = pow2(2 * k - 1);
    let num = BigInt::from((k + 1) * (2 * k + 1)) * (&p - 1);
    let den = p * (pow2(2 * k + 2) - 1);
    Rational::new(num, den)
}

/// |B_{2k+2}|/|B_{2k}| > lemma7_bound(k), with auxiliary 2π² + 1 < 2^{2k+2}.
pub fn check_lemma7_at(k: u32, start_digits: u32) -> Result<LemmaCheck> {
    let ratio = abs_b2k(k + 1) / abs_b2k(k);
    let target = from_big(pow2(2 * k + 2));
    let (aux, d) = decide_with_pi(start_digits, |pi: &PiEnclosure| {
        let f = |p: &Rational| int(2) * p * p + int(1);
        if f(&pi.hi) < target {
            Some(true)
        } else if f(&pi.lo) >= target {
            Some(false)
        } else {
            None
        }
    })?;
    Ok(LemmaCheck { lemma: 7, k, main: ratio > lemma7_bound(k), auxiliary: Some(aux), pi_digits: d })
}

pub fn check_lemma4(k_max: u32) -> Result<Vec<LemmaCheck>> {
    require(k_max, 1, 4)?;
    (1..=k_max).map(|k| check_lemma4_at(k, DEFAULT_PI_DIGITS)).collect()
}

pub fn check_lemma5(k_max: u32) -> Result<Vec<LemmaCheck>> {
    require(k_max, 2, 5)?;
    (2..=k_max).map(|k| check_lemma5_at(k, DEFAULT_PI_DIGITS)).collect()
}

pub fn check_lemma6(k_max: u32) -> Result<Vec<LemmaCheck>> {
    require(k_max, 1, 6)?;
    (1..=k_max).map(|k| check_lemma6_at(k, DEFAULT_PI_DIGITS)).collect()
}

pub fn check_lemma7(k_max: u32) -> Result<Vec<LemmaCheck>> {
    require(k_max, 2, 7)?;
    (2..=k_max).map(|k| check_lemma7_at(k, DEFAULT_PI_DIGITS)).collect()
}

//! The coefficient sequences a_k .. e_k behind the Wilker- and Huygens-type
//! bounds, their sign certificates, and the alternating-series envelopes.
//!
//! | seq | start | constant + Σ coeff·x^{2k} equals      | sign pattern            |
//! |-----|-------|---------------------------------------|-------------------------|
//! | A   | 1     | x/sin x + (tanh x / x)²               | alternating, first −    |
//! | B   | 1     | sinh x / x + x / tan x                | all −                   |
//! | C   | 2     | 2x/sinh x + tan x / x                 | all +                   |
//! | D   | 2     | 2 sin x / x + x / tanh x              | alternating, first −    |
//! | E   | 2     | 2x/sin x + tanh x / x                 | alternating, first +    |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bernoulli::{abs_b2k, bernoulli, check_lemma4_at, check_lemma5_at, check_lemma6_at, check_lemma7_at, decide_with_pi, gt_increasing, DEFAULT_PI_DIGITS};
use crate::error::{Error, Result};
use crate::exact::{factorial, from_big, int, pow2, pow_rat, Rational};
use crate::expr::{Atom, Expr};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SeqId {
    A,
    B,
    C,
    D,
    E,
}

impl SeqId {
    pub const ALL: [SeqId; 5] = [SeqId::A, SeqId::B, SeqId::C, SeqId::D, SeqId::E];

    pub fn letter(self) -> char {
        match self {
            SeqId::A => 'A',
            SeqId::B => 'B',
            SeqId::C => 'C',
            SeqId::D => 'D',
            SeqId::E => 'E',
        }
    }

    pub fn start_index(self) -> u32 {
        match self {
            SeqId::A | SeqId::B => 1,
            _ => 2,
        }
    }

    /// The constant the series is added to.
    pub fn base(self) -> i64 {
        match self {
            SeqId::A | SeqId::B => 2,
            _ => 3,
        }
    }

    /// Expected sign of the k-th coefficient.
    pub fn expected_positive(self, k: u32) -> bool {
        match self {
            SeqId::A => k.is_multiple_of(2),
            SeqId::B => false,
            SeqId::C => true,
            SeqId::D => k % 2 == 1,
            SeqId::E => k.is_multiple_of(2),
        }
    }

    /// The function whose Maclaurin series is base + Σ coeff·x^{2k}.
    pub fn function(self) -> Expr {
        let a = Expr::atom;
        match self {
            SeqId::A => a(Atom::InvSinc) + a(Atom::Tanhc).pow(2),
            SeqId::B => a(Atom::Sinhc) + a(Atom::Cotc),
            SeqId::C => a(Atom::InvSinhc).scale(int(2)) + a(Atom::Tancx),
            SeqId::D => a(Atom::Sinc).scale(int(2)) + a(Atom::Cothc),
            SeqId::E => a(Atom::InvSinc).scale(int(2)) + a(Atom::Tanhc),
        }
    }
}

impl fmt::Display for SeqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for SeqId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(SeqId::A),
            "B" => Ok(SeqId::B),
            "C" => Ok(SeqId::C),
            "D" => Ok(SeqId::D),
            "E" => Ok(SeqId::E),
            _ => Err(Error::Parse(format!("unknown sequence {s:?}; expected one of A, B, C, D, E"))),
        }
    }
}

fn fact(n: u32) -> Rational {
    from_big(factorial(n))
}

fn p2(e: u32) -> Rational {
    from_big(pow2(e))
}

/// 2^{2k−1}(2^{2k+2}−1) / ((k+1)(2k+1)) · |B_{2k+2}|, shared by C and E.
fn ce_lead(k: u32) -> Rational {
    p2(2 * k - 1) * (p2(2 * k + 2) - int(1)) / int(((k + 1) * (2 * k + 1)) as i64) * abs_b2k(k + 1)
}

fn sign_pm(positive: bool) -> Rational {
    if positive {
        int(1)
    } else {
        int(-1)
    }
}

/// Exact k-th coefficient.
pub fn coeff(id: SeqId, k: u32) -> Result<Rational> {
    if k < id.start_index() {
        return Err(Error::BelowStart { seq: id.letter(), index: k, start: id.start_index() });
    }
    let kk = k as i64;
    Ok(match id {
        SeqId::A => {
            let first = int(2) * (p2(2 * k - 1) - int(1)) / fact(2 * k) * abs_b2k(k);
            let second = p2(2 * k + 4) * int(2 * kk + 3) * (p2(2 * k + 4) - int(1)) / fact(2 * k + 4) * bernoulli(2 * k as usize + 4);
            first - second
        }
        SeqId::B => (Rational::new(1.into(), BigInt::from(2 * k + 1)) - p2(2 * k) * abs_b2k(k)) / fact(2 * k),
        SeqId::C => {
            let tail = sign_pm(k.is_multiple_of(2)) * (p2(2 * k - 1) - int(1)) * abs_b2k(k);
            int(4) / fact(2 * k) * (ce_lead(k) + tail)
        }
        SeqId::D => {
            let bracket = Rational::new(1.into(), BigInt::from(2 * k + 1)) - p2(2 * k - 1) * abs_b2k(k);
            sign_pm(k.is_multiple_of(2)) * int(2) / fact(2 * k) * bracket
        }
        SeqId::E => {
            let lead = sign_pm(k.is_multiple_of(2)) * ce_lead(k);
            int(4) / fact(2 * k) * ((p2(2 * k - 1) - int(1)) * abs_b2k(k) + lead)
        }
    })
}

/// Sign check of one coefficient, by exact evaluation and by the
/// Bernoulli-bound argument.
#[derive(Clone, Debug, Serialize)]
pub struct SignCheck {
    pub k: u32,
    #[serde(with = "crate::report::rational_str")]
    pub value: Rational,
    pub expected_positive: bool,
    /// The exact value has the expected sign.
    pub exact: bool,
    /// The bound-based argument establishes the expected sign.
    pub lemma: bool,
    pub route: &'static str,
    pub pi_digits: u32,
}

impl SignCheck {
    pub fn agree(&self) -> bool {
        self.exact == self.lemma
    }

    pub fn confirmed(&self) -> bool {
        self.exact && self.lemma
    }
}

/// Both summands have the expected sign by the sign pattern of the B_{2k}.
fn same_sign_route(parts: &[Rational], positive: bool) -> bool {
    parts.iter().all(|p| !p.is_zero() && p.is_positive() == positive)
}

fn lemma_route(id: SeqId, k: u32) -> Result<(bool, &'static str, u32)> {
    let d = DEFAULT_PI_DIGITS;
    Ok(match id {
        SeqId::A if k % 2 == 1 => {
            // |B_2k|/|B_2k+4| < M(k) < L(k) from the two-sided Bernoulli bound
            // and π⁴ < (2k+3)(2^{2k+4}−1)
            let l1 = check_lemma4_at(k, d)?;
            let l2 = check_lemma4_at(k + 2, d)?;
            let rhs = int(2 * k as i64 + 3) * (p2(2 * k + 4) - int(1));
            let (aux, da) = decide_with_pi(d, gt_increasing(&rhs, |pi| pow_rat(pi, 4)))?;
            (l1.passed() && l2.passed() && aux, "two-sided Bernoulli bound with pi^4 < (2k+3)(2^(2k+4)-1)", l1.pi_digits.max(l2.pi_digits).max(da))
        }
        SeqId::A => {
            let first = abs_b2k(k);
            let second = -bernoulli(2 * k as usize + 4);
            (same_sign_route(&[first, second], true), "Bernoulli sign pattern", 0)
        }
        SeqId::B => {
            let l = check_lemma6_at(k, d)?;
            (l.passed(), "|B_2k| > 2^(-2k)/(2k+1)", l.pi_digits)
        }
        SeqId::C | SeqId::E if k.is_multiple_of(2) => {
            let parts = [ce_lead(k), (p2(2 * k - 1) - int(1)) * abs_b2k(k)];
            (same_sign_route(&parts, true), "Bernoulli sign pattern", 0)
        }
        SeqId::C | SeqId::E => {
            let l = check_lemma7_at(k, d)?;
            (l.passed(), "|B_2k+2|/|B_2k| ratio bound", l.pi_digits)
        }
        SeqId::D => {
            let l = check_lemma5_at(k, d)?;
            (l.passed(), "|B_2k| > 2^(1-2k)/(2k+1)", l.pi_digits)
        }
    })
}

pub fn sign_check(id: SeqId, k: u32) -> Result<SignCheck> {
    let value = coeff(id, k)?;
    let expected_positive = id.expected_positive(k);
    let exact = !value.is_zero() && value.is_positive() == expected_positive;
    let (lemma, route, pi_digits) = lemma_route(id, k)?;
    Ok(SignCheck { k, value, expected_positive, exact, lemma, route, pi_digits })
}

/// Sign checks for every k from the start index through k_max.
pub fn sign_certificate(id: SeqId, k_max: u32) -> Result<Vec<SignCheck>> {
    if k_max < id.start_index() {
        return Err(Error::BelowStart { seq: id.letter(), index: k_max, start: id.start_index() });
    }
    (id.start_index()..=k_max).map(|k| sign_check(id, k)).collect()
}

/// base + Σ_{k=start}^{n} coeff(k)·x^{2k}, as a series of order 2n.
pub fn partial_sum(id: SeqId, n: u32) -> Result<TruncatedSeries> {
    let order = 2 * n.max(id.start_index()) as usize + 1;
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = int(id.base());
    for k in id.start_index()..=n {
        c[2 * k as usize] = coeff(id, k)?;
    }
    Ok(TruncatedSeries::new(c, format!("{}+S{}[{}..{}]", id.base(), id.letter(), id.start_index(), n)))
}

/// (lower, upper) polynomial envelopes from consecutive partial sums.
/// Which partial sum is the lower bound follows from the exact sign of the
/// last term added, not from an assumed pattern.
pub fn envelope(id: SeqId, n: u32) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let parity_ok = match id {
        SeqId::A => n % 2 == 1,
        SeqId::D | SeqId::E => n.is_multiple_of(2),
        SeqId::B | SeqId::C => {
            return Err(Error::Parity(format!("sequence {id} has constant sign; no alternating envelope")));
        }
    };
    if !parity_ok {
        let want = if id == SeqId::A { "odd" } else { "even" };
        return Err(Error::Parity(format!("envelope for {id} needs {want} n, got {n}")));
    }
    if n < id.start_index() {
        return Err(Error::BelowStart { seq: id.letter(), index: n, start: id.start_index() });
    }
    let short = partial_sum(id, n)?;
    let long = partial_sum(id, n + 1)?;
    let next = sign_check(id, n + 1)?;
    if !next.confirmed() {
        return Err(Error::Domain(format!("sign of {id}_{} not certified", n + 1)));
    }
    let short = short.truncate(long.order());
    Ok(if next.value.is_positive() { (short, long) } else { (long, short) })
}

/// True when |c_{k+1}| x² < |c_k| for every start <= k < n at the given x,
/// the decay condition behind the alternating-series bracket.
pub fn terms_decrease_at(id: SeqId, x: &Rational, n: u32) -> Result<bool> {
    let x2 = x * x;
    for k in id.start_index()..n {
        if coeff(id, k + 1)?.abs() * &x2 >= coeff(id, k)?.abs() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn documented_values() {
        assert_eq!(coeff(SeqId::A, 1).unwrap(), q(-1, 2));
        assert_eq!(coeff(SeqId::A, 2).unwrap(), q(143, 360));
        assert_eq!(coeff(SeqId::B, 1).unwrap(), q(-1, 6));
        assert_eq!(coeff(SeqId::C, 2).unwrap(), q(31, 180));
        assert_eq!(coeff(SeqId::D, 2).unwrap(), q(-1, 180));
        assert_eq!(coeff(SeqId::E, 2).unwrap(), q(31, 180));
    }

    #[test]
    fn below_start_is_error() {
        assert!(matches!(coeff(SeqId::C, 1), Err(Error::BelowStart { .. })));
        assert!(coeff(SeqId::A, 0).is_err());
        assert!(sign_certificate(SeqId::D, 1).is_err());
    }

    #[test]
    fn series_sum_identities() {
        // each partial sum coefficient-equals the Maclaurin series of its function
        for id in SeqId::ALL {
            let n = 12;
            let s = partial_sum(id, n).unwrap();
            let f = id.function().normalize().series(s.order());
            assert_eq!(s.coeffs(), f.coeffs(), "sequence {id}");
        }
    }

    #[test]
    fn certificates() {
        for (id, k_max) in [(SeqId::A, 10), (SeqId::B, 20), (SeqId::C, 20), (SeqId::D, 20), (SeqId::E, 20)] {
            let cert = sign_certificate(id, k_max).unwrap();
            assert_eq!(cert.len() as u32, k_max - id.start_index() + 1);
            for c in cert {
                assert!(c.confirmed() && c.agree(), "{id} {c:?}");
            }
        }
        let a = sign_certificate(SeqId::A, 4).unwrap();
        let signs: Vec<bool> = a.iter().map(|c| c.value.is_positive()).collect();
        assert_eq!(signs, vec![false, true, false, true]);
    }

    #[test]
    fn auxiliary_for_a_at_one() {
        // π⁴ ≈ 97.41 < 5·63
        let pi = crate::exact::default_pi();
        assert!(pow_rat(&pi.hi, 4) < int(98));
        assert!(sign_check(SeqId::A, 1).unwrap().lemma);
    }

    #[test]
    fn envelopes() {
        let (lo, hi) = envelope(SeqId::A, 1).unwrap();
        assert_eq!(&lo.coeffs()[..3], &[int(2), int(0), q(-1, 2)]);
        assert_eq!(&hi.coeffs()[..5], &[int(2), int(0), q(-1, 2), int(0), q(143, 360)]);

        let (lo, hi) = envelope(SeqId::D, 2).unwrap();
        let d2 = coeff(SeqId::D, 2).unwrap();
        let d3 = coeff(SeqId::D, 3).unwrap();
        assert_eq!(lo.coeff(4), d2);
        assert!(lo.coeff(6).is_zero());
        assert_eq!(hi.coeff(6), d3);

        let (lo, hi) = envelope(SeqId::E, 2).unwrap();
        assert_eq!(lo.coeff(6), coeff(SeqId::E, 3).unwrap());
        assert!(hi.coeff(6).is_zero());
        assert_eq!(hi.coeff(4), q(31, 180));
    }

    #[test]
    fn envelope_parity() {
        assert!(matches!(envelope(SeqId::A, 2), Err(Error::Parity(_))));
        assert!(matches!(envelope(SeqId::D, 3), Err(Error::Parity(_))));
        assert!(matches!(envelope(SeqId::B, 1), Err(Error::Parity(_))));
    }

    #[test]
    fn decay_depends_on_x() {
        for id in [SeqId::A, SeqId::D, SeqId::E] {
            assert!(terms_decrease_at(id, &int(1), 30).unwrap(), "{id}");
        }
        // |a_k| grows like k (2/π)^{2k}, so near π/2 the early terms of A
        // are not yet decreasing
        assert!(!terms_decrease_at(SeqId::A, &q(3, 2), 30).unwrap());
    }
}

//! Coefficient-level checks of the monotonicity directions the atom
//! enclosures rely on.
//!
//! Each atom's derivative has the sign of a power series whose coefficients
//! are checked exactly up to a given order:
//!
//! * series with all non-constant coefficients of one sign (inv_sinc, sinhc,
//!   tancx, cosh, cotc) are monotone wherever they converge;
//! * inv_sinhc, tanhc and cothc reduce to `sinh x − x cosh x` and
//!   `x − sinh(2x)/2`, whose coefficients all share one sign;
//! * sinc and cos reduce to `x cos x − sin x` and `sin x`, alternating series
//!   with decreasing terms on [0, 2] ⊃ [0, π/2].

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exact::{int, Rational};
use crate::expr::Atom;
use crate::series::{closed_form_series, SeriesAtom, TruncatedSeries};

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityCheck {
    pub atom: Atom,
    pub increasing: bool,
    pub argument: &'static str,
    pub order: usize,
    pub verified: bool,
}

fn all_signs(s: &TruncatedSeries, from: usize, positive: bool) -> bool {
    let mut any = false;
    for c in &s.coeffs()[from.min(s.coeffs().len())..] {
        if c.is_zero() {
            continue;
        }
        any = true;
        if c.is_positive() != positive {
            return false;
        }
    }
    any
}

/// Nonzero coefficients alternate starting with `first_positive`, and
/// |c_{j+2}|·R² < |c_j| for consecutive nonzero terms.
fn alternating_decreasing(s: &TruncatedSeries, first_positive: bool, radius: &Rational) -> bool {
    let nz: Vec<&Rational> = s.coeffs().iter().filter(|c| !c.is_zero()).collect();
    if nz.is_empty() {
        return false;
    }
    let r2 = radius * radius;
    nz.iter().enumerate().all(|(i, c)| c.is_positive() == (first_positive == (i % 2 == 0)))
        && nz.windows(2).all(|w| w[1].abs() * &r2 < w[0].abs())
}

pub fn check_atom(atom: Atom, order: usize) -> MonotonicityCheck {
    let n = order.max(4);
    let two = int(2);
    let (argument, verified) = match atom {
        Atom::X => ("identity", true),
        Atom::InvSinc | Atom::Sinhc | Atom::Tancx | Atom::Cosh => {
            ("all non-constant coefficients positive", all_signs(&atom.series(n), 1, true))
        }
        Atom::Cotc => ("all non-constant coefficients negative", all_signs(&atom.series(n), 1, false)),
        Atom::InvSinhc => {
            // (x / sinh x)' has the sign of sinh x − x cosh x
            let sinh = closed_form_series(SeriesAtom::Sinhc, n).shift_up(1).truncate(n);
            let xcosh = closed_form_series(SeriesAtom::Cosh, n).shift_up(1).truncate(n);
            ("sinh x - x cosh x has negative coefficients", all_signs(&sinh.sub(&xcosh), 0, false))
        }
        Atom::Tanhc | Atom::Cothc => {
            // (tanh x / x)' has the sign of x − sinh(2x)/2; (x / tanh x)' the opposite
            let sinh2x = closed_form_series(SeriesAtom::Sinhc, n).shift_up(1).truncate(n).scale_arg(&two);
            let s = TruncatedSeries::x(n).sub(&sinh2x.scale(&Rational::new(1.into(), 2.into())));
            ("x - sinh(2x)/2 has negative coefficients", all_signs(&s, 0, false))
        }
        Atom::Sinc => {
            // (sin x / x)' has the sign of x cos x − sin x
            let xcos = closed_form_series(SeriesAtom::Cos, n).shift_up(1).truncate(n);
            let sin = closed_form_series(SeriesAtom::Sinc, n).shift_up(1).truncate(n);
            ("x cos x - sin x alternates from a negative term, decreasing on [0, 2]", alternating_decreasing(&xcos.sub(&sin), false, &two))
        }
        Atom::Cos => {
            // cos' = −sin x = −x·sinc, and sinc > 0 on [0, 2]
            ("sinc alternates from 1, decreasing on [0, 2]", alternating_decreasing(&closed_form_series(SeriesAtom::Sinc, n), true, &two))
        }
    };
    MonotonicityCheck { atom, increasing: atom.is_increasing(), argument, order: n, verified }
}

pub fn check_all(order: usize) -> Vec<MonotonicityCheck> {
    Atom::ALL.into_iter().map(|a| check_atom(a, order)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_atoms_verified() {
        for order in [8usize, 24, 40] {
            for c in check_all(order) {
                assert!(c.verified, "{:?}", c);
            }
        }
    }

    #[test]
    fn wrong_direction_is_rejected() {
        // sinc is not increasing: its non-constant coefficients are not all positive
        assert!(!all_signs(&Atom::Sinc.series(8), 1, true));
        // tanhc's series alternates, so the direct coefficient test would not apply
        assert!(!all_signs(&Atom::Tanhc.series(8), 1, false));
    }
}

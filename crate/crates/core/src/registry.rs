//! Every inequality the engine certifies, as increasing chains
//! `chain[0] < chain[1] < …` of expressions.
//!
//! IDs are stable strings and part of the command-line interface. The
//! hyperbolic Huygens inequality and the hyperbolic Neuman–Sándor chain get
//! the descriptive IDs `huygens-hyp` and `chain-hyp`.

use serde::Serialize;

use crate::coeffs::{envelope, SeqId};
use crate::error::{Error, Result};
use crate::exact::{q, Rational};
use crate::expr::{Atom, Expr};
use crate::series::TruncatedSeries;

/// Where the inequality is claimed to hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// 0 < x < π/2
    QuarterPeriod,
    /// x > 0 (only for chains built from hyperbolic atoms)
    Positive,
}

#[derive(Clone, Debug)]
pub struct InequalitySpec {
    pub id: &'static str,
    /// Increasing: each element is strictly below the next.
    pub chain: Vec<Expr>,
    pub strict: bool,
    pub domain: Domain,
    pub source: &'static str,
}

impl InequalitySpec {
    /// Adjacent pairs (smaller, larger).
    pub fn pairs(&self) -> Vec<(Expr, Expr)> {
        self.chain.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    }
}

fn a(atom: Atom) -> Expr {
    Expr::atom(atom)
}

fn n(v: i64) -> Expr {
    Expr::int(v)
}

fn x_pow(e: u32, c: Rational) -> Expr {
    Expr::x().pow(e).scale(c)
}

fn twice(e: Expr) -> Expr {
    e.scale(q(2, 1))
}

/// Polynomial in x with the series' coefficients.
pub fn poly_expr(s: &TruncatedSeries) -> Expr {
    let mut out: Option<Expr> = None;
    for (j, c) in s.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let term = if j == 0 { Expr::constant(c.clone()) } else { x_pow(j as u32, c.clone()) };
        out = Some(match out {
            None => term,
            Some(acc) => acc + term,
        });
    }
    out.unwrap_or_else(|| n(0))
}

fn spec(id: &'static str, chain: Vec<Expr>, domain: Domain, source: &'static str) -> InequalitySpec {
    InequalitySpec { id, chain, strict: true, domain, source }
}

/// The full registry, in a fixed order.
pub fn registry() -> Vec<InequalitySpec> {
    use Atom::*;
    use Domain::*;
    let sinc2 = || a(Sinc).pow(2);
    let sinhc2 = || a(Sinhc).pow(2);
    let inv_sinc2 = || a(InvSinc).pow(2);
    let inv_sinhc2 = || a(InvSinhc).pow(2);
    let cotc_x5 = || n(2) + (a(Cotc) * Expr::x().pow(4)).scale(q(1, 45));

    let (d_lo, d_hi) = envelope(SeqId::D, 2).expect("D envelope at n = 2");
    let (e_lo, e_hi) = envelope(SeqId::E, 2).expect("E envelope at n = 2");

    vec![
        spec("wilker-1.1", vec![n(2), sinc2() + a(Tancx)], QuarterPeriod, "Wilker's inequality"),
        spec("wu-srivastava-1.2", vec![n(2), inv_sinc2() + a(Cotc)], QuarterPeriod, "Wu and Srivastava, reciprocal Wilker inequality"),
        spec("zhu-1.3", vec![n(2), sinhc2() + a(Tanhc)], Positive, "Zhu, hyperbolic Wilker inequality"),
        spec("wu-debnath-1.4", vec![n(2), inv_sinhc2() + a(Cothc)], Positive, "Wu and Debnath, hyperbolic reciprocal Wilker inequality"),
        spec("huygens-1.5", vec![n(3), twice(a(Sinc)) + a(Tancx)], QuarterPeriod, "Huygens' inequality"),
        spec("neuman-sandor-1.6", vec![n(3), twice(a(InvSinc)) + a(Cotc), twice(a(Sinc)) + a(Tancx)], QuarterPeriod, "Neuman and Sandor, trigonometric Huygens chain"),
        spec("huygens-hyp", vec![n(3), twice(a(Sinhc)) + a(Tanhc)], Positive, "Neuman and Sandor, hyperbolic Huygens inequality"),
        spec("chain-hyp", vec![n(3), twice(a(InvSinhc)) + a(Cothc), twice(a(Sinhc)) + a(Tanhc)], QuarterPeriod, "Neuman and Sandor, hyperbolic Huygens chain"),
        spec("cos-1.8", vec![twice(a(Sinc)) + a(Tancx), a(Sinc) + twice(a(Tancx))], QuarterPeriod, "consequence of cos x < 1"),
        spec("sandor-1.9", vec![n(2), sinhc2() + a(Sinc)], QuarterPeriod, "Sandor, trigonometric-hyperbolic Wilker inequality"),
        spec("sandor-1.10", vec![n(2), inv_sinc2() + a(InvSinhc)], QuarterPeriod, "Sandor, trigonometric-hyperbolic Wilker inequality (reciprocal)"),
        spec("sandor-1.11", vec![n(3), twice(a(Sinhc)) + a(Sinc)], QuarterPeriod, "Sandor, trigonometric-hyperbolic Huygens inequality"),
        spec("sandor-1.12", vec![n(3), twice(a(InvSinc)) + a(InvSinhc)], QuarterPeriod, "Sandor, trigonometric-hyperbolic Huygens inequality (reciprocal)"),
        spec("lemma1", vec![n(1) - x_pow(2, q(1, 6)), a(Sinc), a(InvSinhc)], QuarterPeriod, "Klen et al., sin x/x between 1 - x^2/6 and x/sinh x"),
        // 1 + 5x²/(x²+15) < x/tanh x with the denominator cleared
        spec("lemma2", vec![x_pow(2, q(6, 1)) + n(15), (Expr::x().pow(2) + n(15)) * a(Cothc)], Positive, "Bercu, rational lower bound for x/tanh x"),
        spec("lemma3", vec![a(Cothc), a(Tancx)], QuarterPeriod, "x/tanh x below tan x/x"),
        spec("lemma3-am", vec![inv_sinc2(), a(Tancx)], QuarterPeriod, "Adamovic-Mitrinovic inequality, reciprocal form"),
        spec("lemma3-am-cos", vec![a(Cos), a(Sinc).pow(3)], QuarterPeriod, "Adamovic-Mitrinovic inequality, cos x < (sin x/x)^3"),
        spec("lemma3-cothc-inv-sinc", vec![a(Cothc), inv_sinc2()], QuarterPeriod, "x/tanh x below (x/sin x)^2"),
        spec("thm1-left", vec![n(2) - x_pow(2, q(1, 2)), a(InvSinc) + a(Tanhc).pow(2), n(2)], QuarterPeriod, "first Wilker-type theorem, lower chain"),
        spec("thm1-right", vec![n(2), n(2) + x_pow(4, q(1, 180)), sinc2() + a(Cothc)], QuarterPeriod, "first Wilker-type theorem, upper chain"),
        spec("thm2-left", vec![a(Sinhc) + a(Cotc).pow(2), n(2) - x_pow(2, q(1, 6)), n(2)], QuarterPeriod, "second Wilker-type theorem, lower chain"),
        spec("thm2-right", vec![n(2), cotc_x5(), sinhc2() + a(Cotc)], QuarterPeriod, "second Wilker-type theorem, upper chain"),
        spec("thm3-left", vec![twice(a(Sinhc)) + a(Cotc), n(3) - x_pow(4, q(1, 180)), n(3)], QuarterPeriod, "first Huygens-type theorem, lower chain"),
        spec("thm3-right", vec![n(3), n(3) + x_pow(4, q(31, 180)), twice(a(InvSinhc)) + a(Tancx)], QuarterPeriod, "first Huygens-type theorem, upper chain"),
        spec(
            "thm3-3.10",
            vec![a(Sinhc) + twice(a(Cotc)), n(3) - x_pow(2, q(1, 2)), n(3), n(3) + x_pow(2, q(1, 2)), a(InvSinhc) + twice(a(Tancx))],
            QuarterPeriod,
            "first Huygens-type theorem, second chain",
        ),
        spec(
            "thm4-3.11",
            vec![n(3) - x_pow(4, q(1, 180)), twice(a(Sinc)) + a(Cothc), n(3), twice(a(InvSinc)) + a(Tanhc), n(3) + x_pow(4, q(31, 180))],
            QuarterPeriod,
            "second Huygens-type theorem, first chain",
        ),
        spec(
            "thm4-3.12",
            vec![n(3) - x_pow(2, q(1, 2)), a(InvSinc) + twice(a(Tanhc)), n(3), a(Sinc) + twice(a(Cothc)), n(3) + x_pow(2, q(1, 2))],
            QuarterPeriod,
            "second Huygens-type theorem, second chain",
        ),
        spec(
            "remark1",
            vec![n(2) - x_pow(2, q(1, 2)), a(InvSinc) + a(Tanhc).pow(2), n(2) - x_pow(2, q(1, 2)) + x_pow(4, q(143, 360))],
            QuarterPeriod,
            "alternating-series sandwich for x/sin x + (tanh x/x)^2",
        ),
        spec(
            "remark2",
            vec![n(2), sinhc2() + a(Cotc) * (n(1) - x_pow(4, q(1, 45)))],
            QuarterPeriod,
            "second Wilker-type theorem, rearranged upper bound",
        ),
        spec(
            "remark3-d",
            vec![poly_expr(&d_lo), twice(a(Sinc)) + a(Cothc), poly_expr(&d_hi)],
            QuarterPeriod,
            "alternating-series sandwich for 2 sin x/x + x/tanh x, n = 2",
        ),
        spec(
            "remark3-e",
            vec![poly_expr(&e_lo), twice(a(InvSinc)) + a(Tanhc), poly_expr(&e_hi)],
            QuarterPeriod,
            "alternating-series sandwich for 2x/sin x + tanh x/x, n = 2",
        ),
        spec(
            "cor1-3.5",
            vec![n(2), cotc_x5(), sinhc2() + a(Cotc), sinhc2() + a(Tanhc), inv_sinc2() + a(Tanhc)],
            QuarterPeriod,
            "first corollary, chain through (sinh x/x)^2 + x/tan x",
        ),
        spec(
            "cor1-3.6",
            vec![n(2), sinc2() + a(Cothc), sinc2() + a(Tancx), inv_sinhc2() + a(Tancx)],
            QuarterPeriod,
            "first corollary, chain through (sin x/x)^2 + x/tanh x",
        ),
        spec(
            "cor2-3.7",
            vec![n(2), cotc_x5(), sinhc2() + a(Cotc), inv_sinc2() + a(Cotc)],
            QuarterPeriod,
            "second corollary, refinement of the reciprocal Wilker inequality",
        ),
        spec(
            "cor2-3.8",
            vec![n(2), sinc2() + a(Cothc), inv_sinhc2() + a(Cothc)],
            QuarterPeriod,
            "second corollary, refinement of the hyperbolic reciprocal Wilker inequality",
        ),
        spec("3.15", vec![a(Sinc), (n(3) - a(Cothc)).scale(q(1, 2))], QuarterPeriod, "sharp hyperbolic upper bound for sin x/x"),
        spec("3.16", vec![a(Sinhc), (n(3) - a(Cotc)).scale(q(1, 2))], QuarterPeriod, "sharp trigonometric upper bound for sinh x/x"),
    ]
}

pub fn lookup(id: &str) -> Result<InequalitySpec> {
    registry().into_iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

pub fn ids() -> Vec<&'static str> {
    registry().iter().map(|s| s.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_and_unique_ids() {
        let r = registry();
        assert!(r.len() >= 28);
        let mut ids: Vec<_> = r.iter().map(|s| s.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), r.len());
        for s in &r {
            assert!(s.chain.len() >= 2 && s.strict, "{}", s.id);
        }
    }

    #[test]
    fn documented_entries() {
        let t = lookup("thm1-left").unwrap();
        assert_eq!(t.chain[0].to_string(), "2 - (1/2)*x^2");
        assert_eq!(t.chain[1].normalize(), (a(Atom::InvSinc) + a(Atom::Tanhc).pow(2)).normalize());
        assert_eq!(t.chain[2], n(2));
        assert_eq!(lookup("wilker-1.1").unwrap().chain, vec![n(2), a(Atom::Sinc).pow(2) + a(Atom::Tancx)]);
        assert_eq!(lookup("sandor-1.9").unwrap().chain, vec![n(2), a(Atom::Sinhc).pow(2) + a(Atom::Sinc)]);
        assert!(matches!(lookup("nonsense"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn hyperbolic_domain_only_for_hyperbolic_chains() {
        for s in registry() {
            if s.domain == Domain::Positive {
                assert!(s.chain.iter().all(|e| e.normalize().is_hyperbolic()), "{}", s.id);
            }
        }
    }

    #[test]
    fn sandwich_chains_match_envelopes() {
        let d = lookup("remark3-d").unwrap();
        let lo = d.chain[0].normalize().series(8);
        assert_eq!(lo.coeff(0), q(3, 1));
        assert_eq!(lo.coeff(4), q(-1, 180));
        assert!(num_traits::Zero::is_zero(&lo.coeff(6)));
        let e = lookup("remark3-e").unwrap();
        assert_eq!(e.chain[2].normalize().series(8).coeff(4), q(31, 180));
    }
}

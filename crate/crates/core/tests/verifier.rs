//! End-to-end behaviour of the verifier on registry entries.

mod common;

use common::Oracle;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use trighyp::coeffs::{coeff, SeqId};
use trighyp::exact::{parse_rational, Rational};
use trighyp::registry::{lookup, registry, Domain};
use trighyp::verify::{scan, scan_spec, verify, verify_expr_pair, verify_spec, RegimeKind, RunConfig, Verdict};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

const SPOT_POINTS: [(i64, i64); 4] = [(1, 10), (1, 2), (1, 1), (3, 2)];

#[test]
fn reversed_chains_are_never_certified() {
    let cfg = RunConfig::default();
    for spec in registry().iter().filter(|s| s.domain == Domain::QuarterPeriod) {
        for (small, large) in spec.pairs() {
            let v = verify_expr_pair(&large, &small, &cfg).unwrap();
            assert_ne!(v, Verdict::Certified, "{}: reversed pair certified", spec.id);
        }
    }
}

#[test]
fn delta_does_not_change_verdicts() {
    for id in ["wilker-1.1", "huygens-1.5", "thm1-right", "thm3-left", "3.16"] {
        let verdicts: Vec<Verdict> = [r(1, 64), r(1, 256)]
            .into_iter()
            .map(|delta| verify(id, &RunConfig { delta, ..RunConfig::default() }).unwrap().verdict)
            .collect();
        assert_eq!(verdicts, [Verdict::Certified, Verdict::Certified], "{id}");
    }
}

#[test]
fn rearranged_form_has_the_same_margin() {
    let rearranged = lookup("remark2").unwrap().pairs().remove(0);
    let original = lookup("thm2-right").unwrap().pairs().remove(1);
    let m1 = rearranged.1.normalize().sub(&rearranged.0.normalize());
    let m2 = original.1.normalize().sub(&original.0.normalize());
    assert_eq!(m1, m2);
}

/// (lower, upper) bounds of an alternating sum at x, from independently
/// derived coefficients:
///   A: x/sin x + (tanh x/x)² = 2 − x²/2 + 143x⁴/360 − …
///   D: 2 sin x/x + x/tanh x  = 3 − x⁴/180 + 13x⁶/7560 − …
///      (x⁶: 2·(−1/5040) + 2⁶·B₆/6! = −1/2520 + 2/945)
///   E: 2x/sin x + tanh x/x   = 3 + 31x⁴/180 − 377x⁶/7560 + …
///      (x⁶: 2·62·B₆/6! − 17/315 = 31/7560 − 408/7560)
fn sandwich(id: SeqId, x: &Rational) -> (Rational, Rational) {
    let x2 = x * x;
    let x4 = &x2 * &x2;
    let x6 = &x4 * &x2;
    match id {
        SeqId::A => (r(2, 1) - &x2 * r(1, 2), r(2, 1) - &x2 * r(1, 2) + &x4 * r(143, 360)),
        SeqId::D => (r(3, 1) - &x4 * r(1, 180), r(3, 1) - &x4 * r(1, 180) + &x6 * r(13, 7560)),
        SeqId::E => (r(3, 1) + &x4 * r(31, 180) - &x6 * r(377, 7560), r(3, 1) + &x4 * r(31, 180)),
        _ => unreachable!(),
    }
}

#[test]
fn sandwich_coefficients_match_the_engine() {
    assert_eq!(coeff(SeqId::D, 3).unwrap(), r(13, 7560));
    assert_eq!(coeff(SeqId::E, 3).unwrap(), r(-377, 7560));
}

#[test]
fn sandwich_spot_checks() {
    let mut o = Oracle::new();
    for id in [SeqId::A, SeqId::D, SeqId::E] {
        let f = id.function();
        for (n, d) in SPOT_POINTS {
            let x = r(n, d);
            let (lo, hi) = sandwich(id, &x);
            let v = o.expr(&f, &x);
            let below = o.big(&hi).sub(&v, common::PREC, astro_float::RoundingMode::ToEven);
            let above = v.sub(&o.big(&lo), common::PREC, astro_float::RoundingMode::ToEven);
            assert_eq!(o.sign(&above), Some(true), "{id} at {x}: not above the lower envelope");
            assert_eq!(o.sign(&below), Some(true), "{id} at {x}: not below the upper envelope");
        }
    }
}

#[test]
fn certified_margins_are_positive_at_sample_points() {
    let mut o = Oracle::new();
    let cfg = RunConfig::default();
    for id in ["wilker-1.1", "sandor-1.9", "lemma3", "thm4-3.11", "cor2-3.8"] {
        let spec = lookup(id).unwrap();
        let cert = verify_spec(&spec, &cfg).unwrap();
        assert!(cert.certified, "{id}");
        for (small, large) in spec.pairs() {
            let m = large.normalize().sub(&small.normalize());
            for k in 1..=15 {
                let x = r(k, 10);
                let v = o.poly(&m, &x);
                assert_eq!(o.sign(&v), Some(true), "{id}: margin not positive at {x}");
            }
        }
    }
}

#[test]
fn regimes_cover_the_domain_in_order() {
    let cert = verify("lemma2", &RunConfig::default()).unwrap();
    let kinds: Vec<RegimeKind> = cert.regimes.iter().map(|r| r.kind).collect();
    assert_eq!(kinds, [RegimeKind::NearZero, RegimeKind::Compact, RegimeKind::Tail, RegimeKind::Extended]);
    // no gaps: each regime starts at or before the end of the previous one
    // (the tail ends at the upper end of the π/2 enclosure, the extended
    // regime starts at its lower end)
    let end = |b: &trighyp::verify::Bound| parse_rational(&b.exact).unwrap();
    assert!(end(&cert.regimes[0].interval[0]).is_zero());
    for w in cert.regimes.windows(2) {
        assert!(end(&w[1].interval[0]) <= end(&w[0].interval[1]));
    }
    assert!(cert.coverage.contains("not covered"));
}

#[test]
fn certificates_are_deterministic() {
    let cfg = RunConfig::default();
    let one = |jobs| {
        let mut c = verify("thm3-3.10", &RunConfig { jobs, ..cfg.clone() }).unwrap();
        c.wall_time_ms = None;
        trighyp::report::certificates_json(&[c])
    };
    let a = one(None);
    assert_eq!(a, one(None));
    assert_eq!(a, one(Some(1)));
}

#[test]
fn scan_tightness_tables() {
    let rows = scan("3.16", 100, None).unwrap();
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|row| row.margin.is_positive()));

    // the middle element against 2 behaves like x²/2 − (143/360)x⁴
    let rows = scan("thm1-left", 10, Some(1)).unwrap();
    for row in &rows {
        let quad = &row.x * &row.x * r(1, 2);
        assert!(row.margin < quad);
        assert!(row.margin.is_positive());
    }
    let ratio = |i: usize| &rows[i].margin / (&rows[i].x * &rows[i].x);
    assert!((ratio(0) - r(1, 2)).abs() < r(1, 100));
    assert!(ratio(0) > ratio(9));

    assert!(scan("thm1-left", 1, None).is_err());
    assert!(scan("nonsense", 10, None).is_err());
    assert!(scan("thm1-left", 10, Some(2)).is_err());
}

#[test]
fn scan_margins_vanish_toward_zero() {
    // 3.15 has margin O(x⁴): positive, and smallest near 0
    let rows = scan("3.15", 5, None).unwrap();
    assert!(rows.iter().all(|row| row.margin.is_positive()));
    assert!(rows.windows(2).all(|w| w[0].margin < w[1].margin));
    let x4 = |i: usize| num_traits::pow(rows[i].x.clone(), 4);
    assert!(&rows[0].margin / x4(0) < r(1, 1));

    assert!(scan("thm3-3.10", 3, None).unwrap().iter().all(|row| row.margin.is_positive()));
}

#[test]
fn reversed_scan_has_negative_margins() {
    let mut spec = lookup("wilker-1.1").unwrap();
    spec.chain.reverse();
    let rows = scan_spec(&spec, 10, None).unwrap();
    assert!(rows.iter().all(|row| row.margin.is_negative()));
}

#[test]
fn unknown_id_is_an_error() {
    assert!(verify("nonsense", &RunConfig::default()).is_err());
    assert!(RunConfig { delta: Rational::zero(), ..RunConfig::default() }.validate().is_err());
}

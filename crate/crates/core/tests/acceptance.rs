//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every threshold is pinned below.

mod common;

use std::time::{Duration, Instant};

use common::Oracle;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use trighyp::bernoulli::{check_lemma4, check_lemma5, check_lemma6, check_lemma7, LemmaCheck, DEFAULT_PI_DIGITS};
use trighyp::coeffs::{coeff, SeqId};
use trighyp::enclose::{ieval, ienclose_atom, DEFAULT_ORDER};
use trighyp::exact::{ten_pow_neg, Rational};
use trighyp::expr::{Atom, Expr};
use trighyp::interval::Interval;
use trighyp::registry::{registry, Domain};
use trighyp::series::{compare_routes, theorem2_f_series, SeriesAtom};
use trighyp::verify::{verify_all, verify_expr_pair, RunConfig, Verdict};

// ─────────────────────────────────────────────────────────────
// Pinned limits
// ─────────────────────────────────────────────────────────────

/// Criteria 1 and 2: exact coefficient work on a handful of Bernoulli numbers.
const LIMIT_COEFFS: Duration = Duration::from_secs(1);
/// Criterion 3: 11 atoms to order 24, two routes each.
const LIMIT_ROUTES: Duration = Duration::from_secs(10);
/// Criterion 4: four lemma families for k <= 100.
const LIMIT_LEMMAS: Duration = Duration::from_secs(30);
/// Criterion 5: the whole registry.
const LIMIT_REGISTRY: Duration = Duration::from_secs(600);
/// Largest k for the Bernoulli bound checks.
const K_MAX: u32 = 100;
/// Smallest number of registry chains.
const MIN_REGISTRY: usize = 28;
/// Order of the two-route comparison.
const ROUTE_ORDER: usize = 24;
/// Number of false inequalities in the falsity fuzz.
const FUZZ_CASES: usize = 50;
/// Additive perturbations of the small side; each turns a tight inequality
/// into a false one near x = 0.
const FUZZ_EPSILONS: [i64; 4] = [3, 6, 9, 12];
/// Point where each fuzz case is confirmed false by the oracle.
const FUZZ_WITNESS: (i64, i64) = (1, 1000);
/// Maximum width of the engine's point enclosures in the sandwich checks.
const SANDWICH_EVAL_ERROR: u32 = 40;
/// Sandwich evaluation points.
const SANDWICH_POINTS: [(i64, i64); 4] = [(1, 10), (1, 2), (1, 1), (3, 2)];
/// Interval soundness sample sizes and seed.
const SOUNDNESS_POINTS: usize = 1000;
const MONOTONE_PAIRS: usize = 100;
const SEED: u64 = 0x7219_2021;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.pass = false;
    }
    o.detail = format!("{}; {:.2}s (limit {}s)", o.detail, took.as_secs_f64(), limit.as_secs());
    o
}

// ─────────────────────────────────────────────────────────────
// Criteria
// ─────────────────────────────────────────────────────────────

/// Documented coefficient values, zero tolerance.
fn coefficients() -> Outcome {
    let expected = [
        (SeqId::A, 1, r(-1, 2)),
        (SeqId::A, 2, r(143, 360)),
        (SeqId::B, 1, r(-1, 6)),
        (SeqId::C, 2, r(31, 180)),
        (SeqId::D, 2, r(-1, 180)),
        (SeqId::E, 2, r(31, 180)),
    ];
    let bad: Vec<String> = expected
        .iter()
        .filter_map(|(id, k, want)| {
            let got = coeff(*id, *k).ok()?;
            (got != *want).then(|| format!("{id}_{k} = {got}, want {want}"))
        })
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { "a1 a2 b1 c2 d2 e2 exact".to_string() } else { bad.join(", ") })
}

/// tan x·sinh² x − 2x² tan x + x³ = x⁷/45 + 8x⁹/945 + 46x¹¹/14175 + …
fn f_series() -> Outcome {
    let Ok(f) = theorem2_f_series(11) else { return outcome(false, "series construction failed") };
    let low_zero = (0..=6).all(|j| f.coeff(j).is_zero());
    let odd = [(7, r(1, 45)), (9, r(8, 945)), (11, r(46, 14175))];
    let odd_ok = odd.iter().all(|(j, c)| f.coeff(*j) == *c);
    let even_zero = [8, 10].iter().all(|&j| f.coeff(j).is_zero());
    outcome(low_zero && odd_ok && even_zero, format!("x^0..x^6 zero: {low_zero}; x^7, x^9, x^11: {odd_ok}"))
}

fn two_routes() -> Outcome {
    let differ: Vec<&str> = SeriesAtom::ALL.iter().filter(|a| !compare_routes(**a, ROUTE_ORDER).agree()).map(|a| a.name()).collect();
    outcome(differ.is_empty(), format!("{}/{} atoms agree to order {ROUTE_ORDER}", SeriesAtom::ALL.len() - differ.len(), SeriesAtom::ALL.len()))
}

/// All four lemma families with their auxiliary π-power inequalities. Each
/// comparison starts from the 1e-30 π enclosure; the count of comparisons
/// that needed a finer enclosure is reported.
fn lemmas() -> Outcome {
    type Family = fn(u32) -> trighyp::error::Result<Vec<LemmaCheck>>;
    let families: [(u8, Family); 4] = [(4, check_lemma4), (5, check_lemma5), (6, check_lemma6), (7, check_lemma7)];
    let mut total = 0;
    let mut failed = Vec::new();
    let mut refined = Vec::new();
    for (lemma, f) in families {
        match f(K_MAX) {
            Ok(checks) => {
                for c in checks {
                    total += 1;
                    if !c.passed() {
                        failed.push(format!("L{lemma} k={}", c.k));
                    }
                    if c.pi_digits > DEFAULT_PI_DIGITS {
                        match refined.last_mut() {
                            Some((l, _, hi, d)) if *l == lemma && *hi + 1 == c.k && *d == c.pi_digits => *hi = c.k,
                            _ => refined.push((lemma, c.k, c.k, c.pi_digits)),
                        }
                    }
                }
            }
            Err(e) => failed.push(format!("L{lemma}: {e}")),
        }
    }
    let note = if refined.is_empty() {
        "all decided at 30 digits".to_string()
    } else {
        let runs: Vec<String> = refined.iter().map(|(l, a, b, d)| format!("L{l} k={a}..={b} ({d} digits)")).collect();
        let count: u32 = refined.iter().map(|(_, a, b, _)| b - a + 1).sum();
        format!("{count} decided only with a finer pi enclosure: {}", runs.join(", "))
    };
    outcome(failed.is_empty(), format!("{}/{total} checks pass for k <= {K_MAX}; {note}{}", total - failed.len(), if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }))
}

fn registry_certified() -> Outcome {
    let certs = match verify_all(&RunConfig::default()) {
        Ok(c) => c,
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    let not_ok: Vec<&str> = certs.iter().filter(|c| !c.certified).map(|c| c.id.as_str()).collect();
    let partial: Vec<String> = certs.iter().filter(|c| !c.full_domain).map(|c| format!("{} {}", c.id, c.coverage)).collect();
    // a partial certificate must say so
    let honest = certs.iter().all(|c| c.full_domain || c.coverage.contains("not covered"));
    let pass = not_ok.is_empty() && certs.len() >= MIN_REGISTRY && honest;
    outcome(
        pass,
        format!(
            "{}/{} certified{}; {} on part of the claimed domain only (x > 0 chains, checked on (0, 10])",
            certs.len() - not_ok.len(),
            certs.len(),
            if not_ok.is_empty() { String::new() } else { format!(", not certified: {}", not_ok.join(" ")) },
            partial.len()
        ),
    )
}

/// Perturbs tight registry inequalities into false ones, confirms each is
/// false at a witness point with the oracle, and requires zero
/// certifications.
fn falsity_fuzz() -> Outcome {
    let mut o = Oracle::new();
    let cfg = RunConfig::default();
    let witness = r(FUZZ_WITNESS.0, FUZZ_WITNESS.1);
    let mut cases = Vec::new();
    'outer: for e in FUZZ_EPSILONS {
        for spec in registry().iter().filter(|s| s.domain == Domain::QuarterPeriod) {
            for (small, large) in spec.pairs() {
                let small = small + Expr::constant(ten_pow_neg(e as u32));
                let m = large.normalize().sub(&small.normalize());
                if m.is_zero() {
                    continue;
                }
                let at_witness = o.poly(&m, &witness);
                if o.sign(&at_witness) != Some(false) {
                    continue;
                }
                cases.push((format!("{} + 1e-{e}", spec.id), small, large));
                if cases.len() == FUZZ_CASES {
                    break 'outer;
                }
            }
        }
    }
    let certified: Vec<&str> = cases
        .iter()
        .filter(|(_, s, l)| verify_expr_pair(s, l, &cfg).is_ok_and(|v| v == Verdict::Certified))
        .map(|(n, _, _)| n.as_str())
        .collect();
    outcome(cases.len() == FUZZ_CASES && certified.is_empty(), format!("{} false cases, {} certified{}", cases.len(), certified.len(), if certified.is_empty() { String::new() } else { format!(": {}", certified.join(", ")) }))
}

/// Lower and upper envelopes, derived by hand from the atom series:
///   A: 2 − x²/2 < x/sin x + (tanh x/x)² < 2 − x²/2 + 143x⁴/360
///   D: 3 − x⁴/180 < 2 sin x/x + x/tanh x < 3 − x⁴/180 + 13x⁶/7560
///   E: 3 + 31x⁴/180 − 377x⁶/7560 < 2x/sin x + tanh x/x < 3 + 31x⁴/180
fn sandwich(id: SeqId, x: &Rational) -> (Rational, Rational) {
    let x2 = x * x;
    let x4 = &x2 * &x2;
    let x6 = &x4 * &x2;
    match id {
        SeqId::A => (r(2, 1) - &x2 * r(1, 2), r(2, 1) - &x2 * r(1, 2) + &x4 * r(143, 360)),
        SeqId::D => (r(3, 1) - &x4 * r(1, 180), r(3, 1) - &x4 * r(1, 180) + &x6 * r(13, 7560)),
        SeqId::E => (r(3, 1) + &x4 * r(31, 180) - &x6 * r(377, 7560), r(3, 1) + &x4 * r(31, 180)),
        _ => unreachable!("only alternating sequences have sandwiches"),
    }
}

fn sandwiches() -> Outcome {
    let mut o = Oracle::new();
    let max_width = ten_pow_neg(SANDWICH_EVAL_ERROR);
    let mut bad = Vec::new();
    let mut checked = 0;
    for id in [SeqId::A, SeqId::D, SeqId::E] {
        let f = id.function();
        for (n, d) in SANDWICH_POINTS {
            let x = r(n, d);
            let (lo, hi) = sandwich(id, &x);
            checked += 1;
            let Ok(enc) = ieval(&f, &Interval::point(x.clone()), DEFAULT_ORDER) else {
                bad.push(format!("{id} at {x}: no enclosure"));
                continue;
            };
            let (Some(elo), Some(ehi)) = (enc.lo(), enc.hi()) else { unreachable!("finite at these points") };
            let strict = *elo > lo && *ehi < hi;
            let tight = ehi - elo < max_width;
            let v = o.expr(&f, &x);
            let oracle_agrees = o.within(&enc, &v);
            if !(strict && tight && oracle_agrees) {
                bad.push(format!("{id} at {x}: strict {strict}, width ok {tight}, oracle {oracle_agrees}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{}/{checked} strict, enclosure width < 1e-{SANDWICH_EVAL_ERROR}{}", checked - bad.len(), if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }))
}

fn random_point(rng: &mut StdRng, limit: &Rational) -> Rational {
    let d: i64 = rng.gen_range(1..1_000_000);
    let top = (limit * r(d, 1)).floor().to_integer();
    let top: i64 = top.try_into().expect("small");
    r(rng.gen_range(0..=top), d)
}

fn interval_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut o = Oracle::new();
    let trig_limit = r(3, 2);
    let hyp_limit = r(10, 1);
    let mut misses = Vec::new();
    for _ in 0..SOUNDNESS_POINTS {
        let atom = Atom::ALL[rng.gen_range(0..Atom::ALL.len())];
        let limit = if atom.is_hyperbolic() { &hyp_limit } else { &trig_limit };
        let x = random_point(&mut rng, limit);
        let ok = ienclose_atom(atom, &Interval::point(x.clone()), DEFAULT_ORDER).map(|e| {
            let v = o.atom(atom, &x);
            o.within(&e, &v)
        });
        if ok != Ok(true) {
            misses.push(format!("{atom} at {x}"));
        }
    }
    let mut not_monotone = Vec::new();
    for _ in 0..MONOTONE_PAIRS {
        let atom = Atom::ALL[rng.gen_range(0..Atom::ALL.len())];
        let limit = if atom.is_hyperbolic() { &hyp_limit } else { &trig_limit };
        let (a, b) = {
            let (p, q) = (random_point(&mut rng, limit), random_point(&mut rng, limit));
            if p <= q { (p, q) } else { (q, p) }
        };
        let w = &b - &a;
        let inner = Interval::new(&a + &w * r(rng.gen_range(1..50), 100), &b - &w * r(rng.gen_range(1..50), 100)).expect("ordered");
        let outer = Interval::new(a, b).expect("ordered");
        let nested = match (ienclose_atom(atom, &inner, DEFAULT_ORDER), ienclose_atom(atom, &outer, DEFAULT_ORDER)) {
            (Ok(i), Ok(o)) => i.subset_of(&o),
            _ => false,
        };
        if !nested {
            not_monotone.push(format!("{atom} on {outer:?}"));
        }
    }
    outcome(
        misses.is_empty() && not_monotone.is_empty(),
        format!(
            "{}/{SOUNDNESS_POINTS} point enclosures contain the oracle value, {}/{MONOTONE_PAIRS} nested pairs monotone{}",
            SOUNDNESS_POINTS - misses.len(),
            MONOTONE_PAIRS - not_monotone.len(),
            misses.iter().chain(&not_monotone).next().map(|s| format!("; first failure: {s}")).unwrap_or_default()
        ),
    )
}

fn main() {
    let criteria: [(&str, &dyn Fn() -> Outcome); 8] = [
        ("1 coefficient reproduction", &|| timed(LIMIT_COEFFS, coefficients)),
        ("2 auxiliary f-series", &|| timed(LIMIT_COEFFS, f_series)),
        ("3 two-route series equality", &|| timed(LIMIT_ROUTES, two_routes)),
        ("4 Bernoulli bound lemmas", &|| timed(LIMIT_LEMMAS, lemmas)),
        ("5 registry certification", &|| timed(LIMIT_REGISTRY, registry_certified)),
        ("6 falsity fuzz", &|| falsity_fuzz()),
        ("7 alternating sandwiches", &|| sandwiches()),
        ("8 interval soundness", &|| interval_soundness()),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let o = run();
        if !o.pass {
            failures += 1;
        }
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}

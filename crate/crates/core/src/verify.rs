//! The certification engine.
//!
//! Each adjacent pair `small < large` of a chain is reduced to the claim
//! `M(x) = large − small > 0`, with M normalized so shared terms cancel.
//! The domain is covered by three regimes:
//!
//! * near zero, (0, δ]: a Taylor model of M with its valuation v factored
//!   out, so positivity of M/x^v is proved on [0, δ] including x = 0;
//! * compact, [δ, x*]: adaptive bisection, each piece enclosed by the
//!   monotone-hull interval evaluation intersected with a Taylor model;
//! * tail, [x*, π/2): the same bisection up to the upper end of the π/2
//!   enclosure; when tan x / x appears on the large side, the guard first
//!   tries the one-step bound from the monotone lower bound of tan x / x at x*;
//!   a margin made only of positive terms is positive there by sign alone,
//!   which covers margins that vanish at π/2.
//!
//! Chains stated for x > 0 get a fourth, extended regime up to
//! `extended_max`. A verdict is `Certified` only if every regime is; a
//! piece whose enclosure lies strictly below zero yields `Refuted`.

use std::collections::HashMap;
use std::time::Instant;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::enclose::{ieval_poly, PointCache, DEFAULT_ORDER, HYPERBOLIC_MAX};
use crate::error::{Error, Result};
use crate::exact::{int, pi_enclosure, q, round_up, ten_pow_neg, to_exact, to_sci, PiEnclosure, Rational};
use crate::expr::{Atom, AtomPoly, Expr};
use crate::interval::Interval;
use crate::par::{map_ordered, with_jobs};
use crate::registry::{lookup, registry, Domain, InequalitySpec};
use crate::taylor::TaylorModel;

/// Number of independent segments the compact regime is split into up front.
const COMPACT_SEGMENTS: usize = 8;
/// Taylor models are built on radii from this grid (1/32 steps).
const TM_GRID: i64 = 32;
/// Order increments tried before a regime is declared undecided.
const ORDER_STEP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub series_order: usize,
    pub max_order: usize,
    #[serde(with = "crate::report::rational_str")]
    pub delta: Rational,
    #[serde(with = "crate::report::rational_str")]
    pub x_star: Rational,
    pub bisection_depth: u32,
    #[serde(with = "crate::report::rational_str")]
    pub pi_precision: Rational,
    pub k_max: u32,
    #[serde(with = "crate::report::rational_str")]
    pub extended_max: Rational,
    pub piece_budget: usize,
    /// Worker threads; results do not depend on it, so it is not serialized.
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            series_order: DEFAULT_ORDER,
            max_order: 40,
            delta: q(1, 64),
            x_star: q(3, 2),
            bisection_depth: 40,
            pi_precision: ten_pow_neg(30),
            k_max: 100,
            extended_max: int(10),
            piece_budget: 200_000,
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Domain(m.to_string()));
        if self.series_order < 4 || self.max_order < self.series_order {
            return bad("series order must be at least 4 and at most max_order");
        }
        if !self.delta.is_positive() || self.delta > q(1, 8) {
            return bad("delta must lie in (0, 1/8]");
        }
        if self.bisection_depth == 0 || self.k_max == 0 || self.piece_budget == 0 {
            return bad("depth, k_max and piece budget must be positive");
        }
        if !self.pi_precision.is_positive() || self.pi_precision > ten_pow_neg(30) {
            return bad("pi precision must lie in (0, 1e-30]");
        }
        let pi = crate::exact::default_pi();
        if self.x_star <= self.delta || self.x_star >= &pi.lo / int(2) {
            return bad("x* must lie in (delta, pi/2)");
        }
        if self.extended_max <= &pi.hi / int(2) || self.extended_max > int(HYPERBOLIC_MAX) {
            return bad("extended_max must lie in (pi/2, 16]");
        }
        if self.jobs == Some(0) {
            return bad("jobs must be positive");
        }
        Ok(())
    }

    fn orders(&self) -> Vec<usize> {
        let mut v = Vec::new();
        let mut o = self.series_order;
        while o < self.max_order {
            v.push(o);
            o += ORDER_STEP;
        }
        v.push(self.max_order);
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Undecided,
    Refuted,
}

impl Verdict {
    /// Refuted dominates Undecided, which dominates Certified.
    fn combine(self, o: Verdict) -> Verdict {
        use Verdict::*;
        match (self, o) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Undecided, _) | (_, Undecided) => Undecided,
            _ => Certified,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeKind {
    NearZero,
    Compact,
    Tail,
    Extended,
}

/// A rational shown both as a 30-digit decimal and exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub decimal: String,
    pub exact: String,
}

impl Bound {
    pub fn of(v: &Rational) -> Bound {
        Bound { decimal: to_sci(v, 30), exact: to_exact(v) }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum RegimeDetail {
    /// M/x^v enclosed by a Taylor model on [0, δ].
    TaylorModel {
        order: usize,
        valuation: usize,
        leading_coefficient: String,
        scaled_remainder: [Bound; 2],
    },
    /// Lower bound of the divergent tan x / x terms at x* plus a lower bound
    /// of everything else on the whole tail.
    DivergentGuard { x_star: Bound, dominating_term: String, guard_holds: bool },
    Bisection { order: usize },
    /// Every term of M has a positive coefficient, and every atom is positive
    /// for 0 < x < π/2, so M > 0 there even where M vanishes at π/2.
    PositiveTerms { terms: usize },
    /// The two sides are the same expression.
    IdenticalSides,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegimeRecord {
    pub pair: usize,
    pub kind: RegimeKind,
    pub interval: [Bound; 2],
    pub verdict: Verdict,
    /// Smallest certified lower bound seen (of M/x^v in the near-zero regime).
    pub margin_lo: Option<Bound>,
    pub pieces: usize,
    pub max_depth: u32,
    pub offending: Option<[Bound; 2]>,
    pub detail: RegimeDetail,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCertificate {
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
    pub margin: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub id: String,
    pub source: String,
    pub domain: Domain,
    pub certified: bool,
    pub verdict: Verdict,
    pub chain: Vec<String>,
    pub pairs: Vec<PairCertificate>,
    pub regimes: Vec<RegimeRecord>,
    /// Human-readable statement of what `certified` covers.
    pub coverage: String,
    /// False when the claimed domain is only partly covered; `certified`
    /// then refers to the covered part.
    pub full_domain: bool,
    pub pieces: usize,
    pub config: RunConfig,
    /// Elapsed time; left out of serialized output when None so that
    /// identical configurations give byte-identical certificates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Certificate {
    /// First undecided or refuted regime, if any.
    pub fn offending(&self) -> Option<&RegimeRecord> {
        self.regimes.iter().find(|r| r.verdict != Verdict::Certified)
    }
}

/// Outcome of an adaptive bisection.
#[derive(Clone, Debug)]
struct Bisection {
    verdict: Verdict,
    margin_lo: Option<Rational>,
    pieces: usize,
    max_depth: u32,
    offending: Option<(Rational, Rational)>,
}

impl Bisection {
    fn merge(mut self, o: Bisection) -> Bisection {
        let worse = self.verdict.combine(o.verdict);
        if self.offending.is_none() && o.verdict == worse && worse != Verdict::Certified {
            self.offending = o.offending;
        }
        self.verdict = worse;
        self.margin_lo = match (self.margin_lo, o.margin_lo) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.pieces += o.pieces;
        self.max_depth = self.max_depth.max(o.max_depth);
        self
    }
}

/// Proves `eval(a, b).lo > 0` on [a, b] by bisection, left to right.
fn bisect(a: &Rational, b: &Rational, depth_limit: u32, budget: usize, mut eval: impl FnMut(&Rational, &Rational) -> Option<Interval>) -> Bisection {
    let mut out = Bisection { verdict: Verdict::Certified, margin_lo: None, pieces: 0, max_depth: 0, offending: None };
    let mut stack = vec![(a.clone(), b.clone(), 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        out.pieces += 1;
        out.max_depth = out.max_depth.max(depth);
        let e = eval(&lo, &hi);
        if let Some(e) = &e {
            if e.is_positive() {
                let m = e.lo().expect("positive interval has a finite lower end").clone();
                out.margin_lo = Some(out.margin_lo.map_or(m.clone(), |x: Rational| x.min(m)));
                continue;
            }
            if e.is_negative() {
                out.verdict = Verdict::Refuted;
                out.offending = Some((lo, hi));
                return out;
            }
        }
        if depth >= depth_limit || out.pieces >= budget {
            out.verdict = Verdict::Undecided;
            out.offending = Some((lo, hi));
            return out;
        }
        let mid = (&lo + &hi) / int(2);
        stack.push((mid.clone(), hi, depth + 1));
        stack.push((lo, mid, depth + 1));
    }
    out
}

/// Encloses the margin on pieces, combining interval evaluation with
/// Taylor models on a grid of radii.
struct MarginEvaluator<'a> {
    margin: &'a AtomPoly,
    order: usize,
    cache: PointCache,
    models: HashMap<Rational, Option<TaylorModel>>,
    tm_limit: Rational,
}

impl<'a> MarginEvaluator<'a> {
    fn new(margin: &'a AtomPoly, order: usize, tm_limit: Rational) -> Self {
        MarginEvaluator { margin, order, cache: PointCache::new(order), models: HashMap::new(), tm_limit }
    }

    fn model_for(&mut self, b: &Rational) -> Option<&TaylorModel> {
        let grid = int(TM_GRID);
        let radius = Rational::from_integer((b * &grid).ceil().to_integer()) / grid;
        let (margin, order) = (self.margin, self.order);
        self.models.entry(radius.clone()).or_insert_with(|| TaylorModel::of_poly(margin, order, &radius).ok()).as_ref()
    }

    fn eval(&mut self, a: &Rational, b: &Rational) -> Option<Interval> {
        let naive = ieval_poly(self.margin, a, b, &mut self.cache).ok();
        if naive.as_ref().is_some_and(|e| e.is_positive() || e.is_negative()) {
            return naive;
        }
        if *b > self.tm_limit {
            return naive;
        }
        let tm = self.model_for(b).and_then(|m| m.enclose(a, b).ok());
        match (naive, tm) {
            (Some(n), Some(t)) => n.intersect(&t).or(Some(t)),
            (n, t) => t.or(n),
        }
    }
}

fn range_bounds(a: &Rational, b: &Rational) -> [Bound; 2] {
    [Bound::of(a), Bound::of(b)]
}

fn record(pair: usize, kind: RegimeKind, a: &Rational, b: &Rational, res: &Bisection, detail: RegimeDetail) -> RegimeRecord {
    RegimeRecord {
        pair,
        kind,
        interval: range_bounds(a, b),
        verdict: res.verdict,
        margin_lo: res.margin_lo.as_ref().map(Bound::of),
        pieces: res.pieces,
        max_depth: res.max_depth,
        offending: res.offending.as_ref().map(|(l, h)| range_bounds(l, h)),
        detail,
    }
}

/// Certifies M > 0 on (0, δ] from a Taylor model of M/x^v.
pub fn certify_near_zero(margin: &AtomPoly, delta: &Rational, cfg: &RunConfig, pair: usize) -> RegimeRecord {
    let zero = Rational::zero();
    let mut last: Option<RegimeRecord> = None;
    for order in cfg.orders() {
        let Ok(tm) = TaylorModel::of_poly(margin, order, delta) else { continue };
        let Some(v) = tm.poly().valuation() else { continue };
        let Ok(scaled) = tm.shift_down(v) else { continue };
        let res = bisect(&zero, delta, cfg.bisection_depth, cfg.piece_budget, |a, b| scaled.enclose(a, b).ok());
        let sr = scaled.scaled_remainder();
        let detail = RegimeDetail::TaylorModel {
            order,
            valuation: v,
            leading_coefficient: to_exact(&scaled.poly().coeff(0)),
            scaled_remainder: [
                Bound::of(sr.lo().expect("finite remainder")),
                Bound::of(sr.hi().expect("finite remainder")),
            ],
        };
        let rec = record(pair, RegimeKind::NearZero, &zero, delta, &res, detail);
        if res.verdict != Verdict::Undecided {
            return rec;
        }
        last = Some(rec);
    }
    last.unwrap_or_else(|| {
        let res = Bisection { verdict: Verdict::Undecided, margin_lo: None, pieces: 0, max_depth: 0, offending: Some((zero.clone(), delta.clone())) };
        record(pair, RegimeKind::NearZero, &zero, delta, &res, RegimeDetail::Bisection { order: cfg.max_order })
    })
}

/// Bisection over [a, b], split into `segments` independent parts.
fn bisect_segments(margin: &AtomPoly, a: &Rational, b: &Rational, order: usize, segments: usize, tm_limit: &Rational, cfg: &RunConfig) -> Bisection {
    let width = (b - a) / int(segments as i64);
    let parts: Vec<(Rational, Rational)> = (0..segments)
        .map(|i| {
            let lo = a + &width * int(i as i64);
            let hi = if i + 1 == segments { b.clone() } else { a + &width * int(i as i64 + 1) };
            (lo, hi)
        })
        .collect();
    let budget = (cfg.piece_budget / segments).max(1);
    let results = map_ordered(&parts, |(lo, hi)| {
        let mut ev = MarginEvaluator::new(margin, order, tm_limit.clone());
        bisect(lo, hi, cfg.bisection_depth, budget, |x, y| ev.eval(x, y))
    });
    results.into_iter().reduce(Bisection::merge).expect("at least one segment")
}

fn escalate(margin: &AtomPoly, a: &Rational, b: &Rational, segments: usize, tm_limit: &Rational, cfg: &RunConfig) -> (Bisection, usize) {
    let mut last = None;
    for order in cfg.orders() {
        let res = bisect_segments(margin, a, b, order, segments, tm_limit, cfg);
        if res.verdict != Verdict::Undecided {
            return (res, order);
        }
        last = Some((res, order));
    }
    last.expect("at least one order")
}

/// Certifies M > 0 on [a, b] ⊂ (0, π/2].
pub fn certify_compact(margin: &AtomPoly, a: &Rational, b: &Rational, cfg: &RunConfig, pair: usize) -> RegimeRecord {
    let (res, order) = escalate(margin, a, b, COMPACT_SEGMENTS, &q(3, 2), cfg);
    record(pair, RegimeKind::Compact, a, b, &res, RegimeDetail::Bisection { order })
}

/// Splits M into its tan x / x terms with positive coefficient and the rest.
fn split_divergent(margin: &AtomPoly) -> (AtomPoly, AtomPoly) {
    let mut div = AtomPoly::default();
    let mut rest = AtomPoly::default();
    for (m, c) in margin.terms() {
        let mut t = AtomPoly::constant(c.clone());
        for (a, e) in m.factors() {
            t = t.mul(&AtomPoly::atom(a).powi(e));
        }
        if m.exponent(Atom::Tancx) > 0 && c.is_positive() {
            div = div.add(&t);
        } else {
            rest = rest.add(&t);
        }
    }
    (div, rest)
}

/// True when M is a nonzero sum of atom monomials with positive
/// coefficients. sin, cos, tan, sinh, cosh and tanh are all positive on
/// (0, π/2), hence so is every atom, every monomial and M itself.
fn positive_terms(margin: &AtomPoly) -> bool {
    !margin.is_zero() && margin.terms().all(|(_, c)| c.is_positive())
}

/// Certifies M > 0 on [x*, end], where end >= π/2. Positivity is claimed
/// only for x < π/2; `end` is the upper end of the π/2 enclosure.
pub fn certify_tail(margin: &AtomPoly, x_star: &Rational, end: &Rational, cfg: &RunConfig, pair: usize) -> RegimeRecord {
    if positive_terms(margin) {
        let res = Bisection { verdict: Verdict::Certified, margin_lo: None, pieces: 1, max_depth: 0, offending: None };
        return record(pair, RegimeKind::Tail, x_star, end, &res, RegimeDetail::PositiveTerms { terms: margin.terms().count() });
    }
    if margin.diverges_at_quarter_period() {
        let (div, rest) = split_divergent(margin);
        let mut cache = PointCache::new(cfg.series_order);
        let d = ieval_poly(&div, x_star, end, &mut cache).ok();
        let r = ieval_poly(&rest, x_star, end, &mut cache).ok();
        let guard = match (d, r) {
            (Some(d), Some(r)) => d.add(&r).lo().cloned().filter(|v| v.is_positive()),
            _ => None,
        };
        let detail = RegimeDetail::DivergentGuard { x_star: Bound::of(x_star), dominating_term: div.to_string(), guard_holds: guard.is_some() };
        if let Some(m) = guard {
            let res = Bisection { verdict: Verdict::Certified, margin_lo: Some(m), pieces: 1, max_depth: 0, offending: None };
            return record(pair, RegimeKind::Tail, x_star, end, &res, detail);
        }
        let (res, _) = escalate(margin, x_star, end, 1, &q(3, 2), cfg);
        return record(pair, RegimeKind::Tail, x_star, end, &res, detail);
    }
    let (res, order) = escalate(margin, x_star, end, 1, &q(3, 2), cfg);
    record(pair, RegimeKind::Tail, x_star, end, &res, RegimeDetail::Bisection { order })
}

/// Certifies M > 0 on [a, b] for purely hyperbolic margins beyond π/2.
pub fn certify_extended(margin: &AtomPoly, a: &Rational, b: &Rational, cfg: &RunConfig, pair: usize) -> RegimeRecord {
    let (res, order) = escalate(margin, a, b, COMPACT_SEGMENTS, &Rational::zero(), cfg);
    record(pair, RegimeKind::Extended, a, b, &res, RegimeDetail::Bisection { order })
}

fn pi_for(cfg: &RunConfig) -> Result<PiEnclosure> {
    if cfg.pi_precision == ten_pow_neg(30) {
        return Ok(crate::exact::default_pi().clone());
    }
    pi_enclosure(&cfg.pi_precision)
}

/// Runs every regime for one pair `small < large`.
pub fn verify_pair(small: &Expr, large: &Expr, domain: Domain, cfg: &RunConfig, pair: usize) -> Result<(PairCertificate, Vec<RegimeRecord>)> {
    cfg.validate()?;
    let pi = pi_for(cfg)?;
    let margin = large.normalize().sub(&small.normalize());
    let mut regimes = Vec::new();
    let end = &pi.hi / int(2);
    if margin.is_zero() {
        let res = Bisection { verdict: Verdict::Refuted, margin_lo: None, pieces: 0, max_depth: 0, offending: Some((Rational::zero(), end.clone())) };
        regimes.push(record(pair, RegimeKind::NearZero, &Rational::zero(), &end, &res, RegimeDetail::IdenticalSides));
    } else {
        let steps: [&dyn Fn() -> RegimeRecord; 3] = [
            &|| certify_near_zero(&margin, &cfg.delta, cfg, pair),
            &|| certify_compact(&margin, &cfg.delta, &cfg.x_star, cfg, pair),
            &|| certify_tail(&margin, &cfg.x_star, &end, cfg, pair),
        ];
        for step in steps {
            let r = step();
            let refuted = r.verdict == Verdict::Refuted;
            regimes.push(r);
            if refuted {
                break;
            }
        }
        let refuted = regimes.iter().any(|r| r.verdict == Verdict::Refuted);
        if domain == Domain::Positive && !refuted {
            if !margin.is_hyperbolic() {
                return Err(Error::Domain("x > 0 chains must be built from hyperbolic atoms".into()));
            }
            regimes.push(certify_extended(&margin, &(&pi.lo / int(2)), &cfg.extended_max, cfg, pair));
        }
    }
    let verdict = regimes.iter().fold(Verdict::Certified, |v, r| v.combine(r.verdict));
    let pc = PairCertificate { index: pair, lhs: small.to_string(), rhs: large.to_string(), margin: margin.to_string(), verdict };
    Ok((pc, regimes))
}

fn coverage(spec: &InequalitySpec, cfg: &RunConfig) -> String {
    match spec.domain {
        Domain::QuarterPeriod => "(0, pi/2): all of the claimed domain".to_string(),
        Domain::Positive => format!("(0, {}]: the claim for x > {} is not covered", to_exact(&cfg.extended_max), to_exact(&cfg.extended_max)),
    }
}

pub fn verify_spec(spec: &InequalitySpec, cfg: &RunConfig) -> Result<Certificate> {
    cfg.validate()?;
    let start = Instant::now();
    let pairs = spec.pairs();
    let indexed: Vec<(usize, (Expr, Expr))> = pairs.into_iter().enumerate().collect();
    let results = map_ordered(&indexed, |(i, (s, l))| verify_pair(s, l, spec.domain, cfg, *i));
    let mut pair_certs = Vec::new();
    let mut regimes = Vec::new();
    for r in results {
        let (pc, rs) = r?;
        pair_certs.push(pc);
        regimes.extend(rs);
    }
    let verdict = pair_certs.iter().fold(Verdict::Certified, |v, p| v.combine(p.verdict));
    Ok(Certificate {
        id: spec.id.to_string(),
        source: spec.source.to_string(),
        domain: spec.domain,
        certified: verdict == Verdict::Certified,
        verdict,
        chain: spec.chain.iter().map(|e| e.to_string()).collect(),
        pairs: pair_certs,
        pieces: regimes.iter().map(|r| r.pieces).sum(),
        regimes,
        coverage: coverage(spec, cfg),
        full_domain: spec.domain == Domain::QuarterPeriod,
        config: cfg.clone(),
        wall_time_ms: Some(start.elapsed().as_millis() as u64),
    })
}

pub fn verify(id: &str, cfg: &RunConfig) -> Result<Certificate> {
    let spec = lookup(id)?;
    with_jobs(cfg.jobs, || verify_spec(&spec, cfg))?
}

/// Certificates for the whole registry, in registry order.
pub fn verify_all(cfg: &RunConfig) -> Result<Vec<Certificate>> {
    cfg.validate()?;
    let specs = registry();
    with_jobs(cfg.jobs, || map_ordered(&specs, |s| verify_spec(s, cfg)).into_iter().collect())?
}

/// Non-rigorous tightness data at one grid point (midpoints of enclosures).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub x: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    pub margin: Rational,
}

const SCAN_TERMS: usize = 48;

fn point_mid(poly: &AtomPoly, x: &Rational, cache: &mut PointCache) -> Result<Rational> {
    ieval_poly(poly, x, x, cache)?.midpoint().ok_or_else(|| Error::Domain(format!("unbounded value at x = {}", to_sci(x, 12))))
}

/// Evaluates a chain comparison on the grid x_i = i·(π/2)/(n+1), i = 1..n.
/// By default compares the first and last chain elements; `pair` selects an
/// adjacent pair instead.
pub fn scan(id: &str, n: usize, pair: Option<usize>) -> Result<Vec<ScanRow>> {
    let spec = lookup(id)?;
    scan_spec(&spec, n, pair)
}

pub fn scan_spec(spec: &InequalitySpec, n: usize, pair: Option<usize>) -> Result<Vec<ScanRow>> {
    if n < 2 {
        return Err(Error::Domain("scan needs at least 2 grid points".into()));
    }
    let (small, large) = match pair {
        None => (spec.chain[0].clone(), spec.chain[spec.chain.len() - 1].clone()),
        Some(i) => spec.pairs().get(i).cloned().ok_or_else(|| Error::Domain(format!("{} has {} pairs", spec.id, spec.chain.len() - 1)))?,
    };
    let (s, l) = (small.normalize(), large.normalize());
    let margin = l.sub(&s);
    let pi = crate::exact::default_pi();
    let half_pi = (&pi.lo + &pi.hi) / int(4);
    let mut cache = PointCache::new(SCAN_TERMS);
    (1..=n)
        .map(|i| {
            let x = round_up(&(&half_pi * int(i as i64) / int(n as i64 + 1)), 128);
            Ok(ScanRow {
                lhs: point_mid(&s, &x, &mut cache)?,
                rhs: point_mid(&l, &x, &mut cache)?,
                margin: point_mid(&margin, &x, &mut cache)?,
                x,
            })
        })
        .collect()
}

/// CSV with header `x,lhs,rhs,margin`, 30 significant digits, LF endings.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("x,lhs,rhs,margin\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", to_sci(&r.x, 30), to_sci(&r.lhs, 30), to_sci(&r.rhs, 30), to_sci(&r.margin, 30)));
    }
    out
}

/// Convenience for tests and callers with ad-hoc pairs.
pub fn verify_expr_pair(small: &Expr, large: &Expr, cfg: &RunConfig) -> Result<Verdict> {
    Ok(verify_pair(small, large, Domain::QuarterPeriod, cfg, 0)?.0.verdict)
}

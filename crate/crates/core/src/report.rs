//! Serialization helpers, JSON certificates and plain-text tables.

use serde::Serialize;

use crate::bernoulli::{bernoulli, check_lemma4_at, check_lemma5_at, check_lemma6_at, check_lemma7_at};
use crate::coeffs::{coeff, SeqId};
use crate::error::{Error, Result};
use crate::exact::{q, to_exact, Rational};
use crate::par::map_ordered;
use crate::series::{compare_routes, theorem2_f_series, SeriesAtom};
use crate::verify::{Certificate, Verdict};

/// Serializes a rational as its exact "p/q" string.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact::{parse_rational, to_exact, Rational};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_exact(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}; expected json, csv or text"))),
        }
    }
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

pub fn certificates_json(certs: &[Certificate]) -> String {
    to_json(certs)
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Certified => "certified",
        Verdict::Undecided => "undecided",
        Verdict::Refuted => "refuted",
    }
}

/// One CSV row per regime.
pub fn certificates_csv(certs: &[Certificate]) -> String {
    let mut out = String::from("id,pair,kind,lo,hi,verdict,margin_lo,pieces\n");
    for c in certs {
        for r in &c.regimes {
            let kind = serde_json::to_value(r.kind).expect("kind serializes");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                c.id,
                r.pair,
                kind.as_str().unwrap_or_default(),
                r.interval[0].decimal,
                r.interval[1].decimal,
                verdict_word(r.verdict),
                r.margin_lo.as_ref().map(|b| b.decimal.as_str()).unwrap_or(""),
                r.pieces
            ));
        }
    }
    out
}

/// Human-readable summary, one line per certificate plus offending pieces.
pub fn certificates_text(certs: &[Certificate]) -> String {
    let mut out = String::new();
    let width = certs.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
    out.push_str(&format!("{:<width$}  {:<9}  {:>5}  {:>8}  coverage\n", "id", "verdict", "pairs", "pieces"));
    for c in certs {
        out.push_str(&format!("{:<width$}  {:<9}  {:>5}  {:>8}  {}\n", c.id, verdict_word(c.verdict), c.pairs.len(), c.pieces, c.coverage));
        if let Some(r) = c.offending() {
            let at = r.offending.as_ref().unwrap_or(&r.interval);
            out.push_str(&format!("{:width$}  pair {} not certified on [{}, {}]\n", "", r.pair, at[0].decimal, at[1].decimal));
        }
    }
    let ok = certs.iter().filter(|c| c.certified).count();
    let partial = certs.iter().filter(|c| c.certified && !c.full_domain).count();
    out.push_str(&format!("{ok}/{} certified ({partial} on part of the claimed domain)\n", certs.len()));
    out
}

pub fn render_certificates(certs: &[Certificate], format: Format) -> String {
    match format {
        Format::Json => certificates_json(certs),
        Format::Csv => certificates_csv(certs),
        Format::Text => certificates_text(certs),
    }
}

/// B_{2k} with the bound checks that apply at k.
#[derive(Clone, Debug, Serialize)]
pub struct BernoulliRow {
    pub k: u32,
    #[serde(with = "rational_str")]
    pub b2k: Rational,
    pub lemma4: bool,
    pub lemma5: Option<bool>,
    pub lemma6: bool,
    pub lemma7: Option<bool>,
    pub pi_digits: u32,
}

pub fn bernoulli_rows(k_max: u32, start_digits: u32) -> Result<Vec<BernoulliRow>> {
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let ks: Vec<u32> = (1..=k_max).collect();
    map_ordered(&ks, |&k| {
            let l4 = check_lemma4_at(k, start_digits)?;
            let l6 = check_lemma6_at(k, start_digits)?;
            let (l5, l7) = if k >= 2 { (Some(check_lemma5_at(k, start_digits)?), Some(check_lemma7_at(k, start_digits)?)) } else { (None, None) };
            let digits = [Some(&l4), Some(&l6), l5.as_ref(), l7.as_ref()].into_iter().flatten().map(|l| l.pi_digits).max().unwrap_or(0);
            Ok(BernoulliRow {
                k,
                b2k: bernoulli(2 * k as usize),
                lemma4: l4.passed(),
                lemma5: l5.map(|l| l.passed()),
                lemma6: l6.passed(),
                lemma7: l7.map(|l| l.passed()),
                pi_digits: digits,
            })
    })
    .into_iter()
    .collect()
}

fn mark(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "-",
    }
}

pub fn render_bernoulli(rows: &[BernoulliRow], format: Format) -> String {
    match format {
        Format::Json => to_json(rows),
        Format::Csv => {
            let mut out = String::from("k,b2k,lemma4,lemma5,lemma6,lemma7,pi_digits\n");
            for r in rows {
                out.push_str(&format!("{},{},{},{},{},{},{}\n", r.k, to_exact(&r.b2k), mark(Some(r.lemma4)), mark(r.lemma5), mark(Some(r.lemma6)), mark(r.lemma7), r.pi_digits));
            }
            out
        }
        Format::Text => {
            let mut out = String::from("k     B_2k                                    L4    L5    L6    L7    pi digits\n");
            for r in rows {
                let b = format!("B_{} = {}", 2 * r.k, to_exact(&r.b2k));
                let b = if b.len() > 38 { format!("{}...", &b[..35]) } else { b };
                out.push_str(&format!(
                    "{:<5} {:<38}  {:<5} {:<5} {:<5} {:<5} {}\n",
                    r.k,
                    b,
                    mark(Some(r.lemma4)),
                    mark(r.lemma5),
                    mark(Some(r.lemma6)),
                    mark(r.lemma7),
                    r.pi_digits
                ));
            }
            out
        }
    }
}

/// Coefficients of one series from both construction routes.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub atom: String,
    pub order: usize,
    pub closed_form: Vec<(usize, String)>,
    pub alternate: Vec<(usize, String)>,
    pub routes_agree: bool,
}

fn nonzero(coeffs: &[Rational]) -> Vec<(usize, String)> {
    coeffs.iter().enumerate().filter(|(_, c)| !num_traits::Zero::is_zero(*c)).map(|(j, c)| (j, to_exact(c))).collect()
}

pub fn series_report(atom: SeriesAtom, order: usize) -> SeriesReport {
    let cmp = compare_routes(atom, order);
    SeriesReport {
        atom: atom.name().to_string(),
        order,
        closed_form: nonzero(cmp.closed_form.coeffs()),
        alternate: nonzero(cmp.alternate.coeffs()),
        routes_agree: cmp.agree(),
    }
}

pub fn render_series(r: &SeriesReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => {
            let mut out = String::from("power,closed_form,alternate\n");
            for ((j, a), (_, b)) in r.closed_form.iter().zip(&r.alternate) {
                out.push_str(&format!("{j},{a},{b}\n"));
            }
            out
        }
        Format::Text => {
            let mut out = format!("{} to order {}; routes agree: {}\n", r.atom, r.order, r.routes_agree);
            for (j, c) in &r.closed_form {
                out.push_str(&format!("  x^{j}: {c}\n"));
            }
            out
        }
    }
}

/// One exactly checkable claim: a documented value against the computed one.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn claim(name: impl Into<String>, expected: Rational, actual: Rational) -> Claim {
    Claim { name: name.into(), expected: to_exact(&expected), actual: to_exact(&actual), pass: expected == actual }
}

/// Documented coefficients, the x^7..x^11 terms of the Theorem 2 auxiliary
/// series, two-route agreement for every atom and the Bernoulli bound checks.
pub fn exact_claims(k_max: u32) -> Result<Vec<Claim>> {
    let mut out = vec![
        claim("a_1", q(-1, 2), coeff(SeqId::A, 1)?),
        claim("a_2", q(143, 360), coeff(SeqId::A, 2)?),
        claim("b_1", q(-1, 6), coeff(SeqId::B, 1)?),
        claim("c_2", q(31, 180), coeff(SeqId::C, 2)?),
        claim("d_2", q(-1, 180), coeff(SeqId::D, 2)?),
        claim("e_2", q(31, 180), coeff(SeqId::E, 2)?),
    ];
    let f = theorem2_f_series(11)?;
    for j in 0..=6 {
        out.push(claim(format!("f x^{j}"), q(0, 1), f.coeff(j)));
    }
    out.push(claim("f x^7", q(1, 45), f.coeff(7)));
    out.push(claim("f x^9", q(8, 945), f.coeff(9)));
    out.push(claim("f x^11", q(46, 14175), f.coeff(11)));
    for atom in SeriesAtom::ALL {
        let cmp = compare_routes(atom, 24);
        let agree = cmp.agree();
        out.push(Claim { name: format!("routes {atom}"), expected: "agree".into(), actual: if agree { "agree" } else { "differ" }.into(), pass: agree });
    }
    let rows = bernoulli_rows(k_max, crate::bernoulli::DEFAULT_PI_DIGITS)?;
    let passed = |f: &dyn Fn(&BernoulliRow) -> Option<bool>| {
        let applicable: Vec<bool> = rows.iter().filter_map(f).collect();
        (applicable.iter().filter(|&&b| b).count(), applicable.len())
    };
    for (name, (ok, n)) in [
        ("lemma 4", passed(&|r| Some(r.lemma4))),
        ("lemma 5", passed(&|r| r.lemma5)),
        ("lemma 6", passed(&|r| Some(r.lemma6))),
        ("lemma 7", passed(&|r| r.lemma7)),
    ] {
        out.push(Claim { name: format!("{name}, k <= {k_max}"), expected: format!("{n}/{n}"), actual: format!("{ok}/{n}"), pass: ok == n });
    }
    Ok(out)
}

pub fn render_claims(claims: &[Claim], format: Format) -> String {
    match format {
        Format::Json => to_json(claims),
        Format::Csv => {
            let mut out = String::from("claim,expected,actual,pass\n");
            for c in claims {
                out.push_str(&format!("{},{},{},{}\n", c.name, c.expected, c.actual, c.pass));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in claims {
                out.push_str(&format!("{} {:<18} expected {:<12} got {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.expected, c.actual));
            }
            out
        }
    }
}

//! The per-law pipeline: gates, nice-basis route, witness route, degeneration route,
//! and the deterministic report they feed.

use super::{Expected, ExpectedX, Instance, RecordedDegeneration};
use crate::algebra::{series_signature, AnyLaw, LieLaw, SeriesSignature};
use crate::degeneration::{
    compare, format_series, in_g_phi, one_param_limit, search_degeneration, try_witness, DegenerationWitness,
    Invariants, Limit,
};
use crate::derivations::{
    derivation_space, diagonal_torus_is_maximal, positivity_gate, pre_einstein, DerivationSpace, Gate, PreEinsteinError,
};
use crate::nicebasis::{gram_matrix, is_nice, match_permutation, positive_solution, satisfies, soliton_norm, PositiveSolution};
use crate::ricci::{moment_map, soliton_check};
use crate::scalar::{format_rational, Rational, Scalar, DEFAULT_TOL};
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "EN")]
    En,
    #[serde(rename = "NOT_EN")]
    NotEn,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    /// Both an EN and a NOT_EN certificate were produced: a bug or bad input.
    #[serde(rename = "CONFLICT")]
    Conflict,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::En => "EN",
            Verdict::NotEn => "NOT_EN",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Conflict => "CONFLICT",
        }
    }

    /// Process exit code for this outcome.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::En => 0,
            Verdict::NotEn => 1,
            Verdict::Inconclusive | Verdict::Conflict => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    En,
    NotEn,
}

/// A checkable reason for a verdict. Rationals are `p/q` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// No diagonal derivations: characteristically nilpotent.
    RankZero,
    /// The pre-Einstein derivation has a non-positive eigenvalue (0-based `index`).
    NonPositivePreEinstein { phi: Vec<String>, index: usize },
    /// `Ux = [1]` has a positive solution on a nice basis of `on`.
    PositiveSolution { on: String, x: Vec<String>, soliton_norm: String },
    /// `Ux = [1]` has no positive solution (`status` is `no_positive_solution` or `inconsistent`).
    NoPositiveSolution { on: String, status: String },
    /// `m(on) = c·Id + D` with `D` a derivation.
    NilsolitonDecomposition { on: String, c: String, d: Vec<String>, stratum_norm: Option<String>, residual: f64 },
    /// `exp(tX)` with `X ∈ g_φ` sends the law to a non-isomorphic limit (or to zero).
    NonClosedOrbit {
        x: Vec<String>,
        framed: bool,
        limit: String,
        distinguishing: Vec<String>,
        source: String,
    },
}

impl Certificate {
    pub fn polarity(&self) -> Polarity {
        match self {
            Certificate::PositiveSolution { .. } | Certificate::NilsolitonDecomposition { .. } => Polarity::En,
            _ => Polarity::NotEn,
        }
    }

    pub fn route(&self) -> &'static str {
        match self {
            Certificate::RankZero => "rank_zero",
            Certificate::NonPositivePreEinstein { .. } => "pre_einstein",
            Certificate::PositiveSolution { .. } | Certificate::NoPositiveSolution { .. } => "nice_basis",
            Certificate::NilsolitonDecomposition { .. } => "witness",
            Certificate::NonClosedOrbit { .. } => "degeneration",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub dim_der: usize,
    pub derived: Vec<usize>,
    pub lcs: Vec<usize>,
    pub rank: usize,
    /// Whether the diagonal torus is certified maximal (exact laws only).
    pub torus_maximal: Option<bool>,
    pub pre_einstein: Option<Vec<String>>,
    pub nice: bool,
    /// Why the given basis is not nice.
    pub not_nice: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub verdict: Verdict,
    /// Route of the first certificate supporting the verdict, or `none`.
    pub route: String,
    pub certificates: Vec<Certificate>,
    pub invariants: InvariantSummary,
    /// Route outcomes that are not certificates (failed attempts, inconclusive searches).
    pub notes: Vec<String>,
    pub mismatches: Vec<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    /// Deterministic JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn certified(&self, p: Polarity) -> bool {
        self.certificates.iter().any(|c| c.polarity() == p)
    }

    /// One line per report: id, verdict, route, match status.
    pub fn summary(&self) -> String {
        summary_line(self)
    }
}

pub fn summary_line(r: &Report) -> String {
    let status = if r.mismatches.is_empty() {
        "match".to_string()
    } else {
        let fields: Vec<&str> = r.mismatches.iter().map(|m| m.field.as_str()).collect();
        format!("MISMATCH ({})", fields.join(", "))
    };
    let extra = r
        .certificates
        .iter()
        .find_map(|c| match c {
            Certificate::NilsolitonDecomposition { c, .. } => Some(format!("  c = {c}")),
            Certificate::PositiveSolution { soliton_norm, .. } => Some(format!("  norm = {soliton_norm}")),
            _ => None,
        })
        .unwrap_or_default();
    format!("{:<14} {:<12} {:<13} {}{}", r.id, r.verdict.as_str(), r.route, status, extra)
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Absolute tolerance for float laws.
    pub tol: f64,
    /// Trials for the random degeneration search (0 disables it).
    pub search_trials: usize,
    pub seed: u64,
    pub timing: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { tol: DEFAULT_TOL, search_trials: 1000, seed: 0, timing: false }
    }
}

fn strs<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(Scalar::display).collect()
}

fn rats(v: &[Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn dims(v: &[usize]) -> String {
    format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

struct Basics<S> {
    series: SeriesSignature,
    dim_der: usize,
    rank: usize,
    phi: Result<Vec<S>, PreEinsteinError>,
    space: DerivationSpace<S>,
}

fn basics<S: Scalar>(law: &LieLaw<S>) -> Basics<S> {
    let space = derivation_space(law);
    Basics {
        series: series_signature(law),
        dim_der: space.dim_der(),
        rank: space.diag_basis.len(),
        phi: pre_einstein(law, &space),
        space,
    }
}

/// Witness route on one law; `Err` carries the reason it did not certify.
fn witness_route<S: Scalar>(on: &str, law: &LieLaw<S>) -> Result<(Certificate, Option<f64>), String> {
    let mv = moment_map(law);
    let dec = soliton_check(law, &mv).map_err(|e| e.to_string())?;
    let norm = dec.stratum_norm();
    Ok((
        Certificate::NilsolitonDecomposition {
            on: on.to_string(),
            c: dec.c.display(),
            d: strs(&dec.d),
            stratum_norm: norm.as_ref().map(Scalar::display),
            residual: dec.residual,
        },
        norm.map(|v| v.as_f64()),
    ))
}

fn witness_invariants<S: Scalar>(law: &LieLaw<S>) -> (SeriesSignature, usize) {
    (series_signature(law), derivation_space(law).dim_der())
}

fn degeneration_certificate(w: &DegenerationWitness, source: &str) -> Certificate {
    Certificate::NonClosedOrbit {
        x: strs(&w.x),
        framed: w.frame.is_some(),
        limit: w.limit.as_ref().map_or("zero".to_string(), |l| l.to_string()),
        distinguishing: w.differences.iter().map(ToString::to_string).collect(),
        source: source.to_string(),
    }
}

struct Ctx {
    certificates: Vec<Certificate>,
    notes: Vec<String>,
    mismatches: Vec<Mismatch>,
}

impl Ctx {
    fn mismatch(&mut self, field: &str, expected: impl Into<String>, computed: impl Into<String>) {
        self.mismatches.push(Mismatch { field: field.to_string(), expected: expected.into(), computed: computed.into() });
    }
}

/// Classifies a bare law (no expectations, no auxiliary laws).
pub fn classify_law(id: &str, law: &AnyLaw, opts: &ClassifyOptions) -> Report {
    run(id, law, None, opts)
}

/// Classifies a catalog instance and compares every computed quantity with its expectations.
pub fn classify(inst: &Instance, opts: &ClassifyOptions) -> Report {
    run(&inst.id, &inst.law, Some(&inst.expected), opts)
}

/// Classifies instances in parallel (`threads == 0` uses the global pool); output order follows input.
pub fn verify_all(instances: &[Instance], opts: &ClassifyOptions, threads: usize) -> Vec<Report> {
    let go = || instances.par_iter().map(|i| classify(i, opts)).collect::<Vec<_>>();
    if threads == 0 {
        go()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
            .install(go)
    }
}

fn run(id: &str, law: &AnyLaw, exp: Option<&Expected>, opts: &ClassifyOptions) -> Report {
    let start = Instant::now();
    let law = law.clone().with_tol(opts.tol);
    let mut cx = Ctx { certificates: Vec::new(), notes: Vec::new(), mismatches: Vec::new() };

    // invariants and gates
    let (series, dim_der, rank, maximal, phi_exact, phi_strs, gate) = match &law {
        AnyLaw::Exact(l) => {
            let b = basics(l);
            let strs_phi = b.phi.as_ref().ok().map(|p| strs(p));
            let gate = b.phi.as_ref().ok().map(|p| positivity_gate(p, 0.0));
            let maximal = diagonal_torus_is_maximal(l, &b.space);
            (b.series, b.dim_der, b.rank, Some(maximal), b.phi.clone().ok(), strs_phi, (gate, b.phi.err()))
        }
        AnyLaw::Float(l) => {
            let b = basics(l);
            let strs_phi = b.phi.as_ref().ok().map(|p| strs(p));
            let gate = b.phi.as_ref().ok().map(|p| positivity_gate(p, opts.tol));
            (b.series, b.dim_der, b.rank, None, None, strs_phi, (gate, b.phi.err()))
        }
    };
    let nice_mu = match &law {
        AnyLaw::Exact(l) => is_nice(l),
        AnyLaw::Float(l) => is_nice(l),
    };
    let invariants = InvariantSummary {
        dim_der,
        derived: series.derived.clone(),
        lcs: series.lcs.clone(),
        rank,
        torus_maximal: maximal,
        pre_einstein: phi_strs.clone(),
        nice: nice_mu.is_ok(),
        not_nice: nice_mu.as_ref().err().map(ToString::to_string),
    };

    if let Some(e) = exp {
        if e.dim_der != dim_der {
            cx.mismatch("dim_der", e.dim_der.to_string(), dim_der.to_string());
        }
        if e.derived != series.derived {
            cx.mismatch("derived", dims(&e.derived), dims(&series.derived));
        }
        if e.lcs != series.lcs {
            cx.mismatch("lcs", dims(&e.lcs), dims(&series.lcs));
        }
        if e.rank != rank {
            cx.mismatch("rank", e.rank.to_string(), rank.to_string());
        }
        if let Some(p) = &e.pre_einstein {
            let got = phi_exact.as_ref().map_or("unavailable".to_string(), |q| rats(q));
            if phi_exact.as_ref() != Some(p) {
                cx.mismatch("pre_einstein", rats(p), got);
            }
        }
        if e.nice != nice_mu.is_ok() {
            cx.mismatch("nice", e.nice.to_string(), nice_mu.is_ok().to_string());
        }
    }

    match gate {
        (_, Some(PreEinsteinError::RankZero)) => cx.certificates.push(Certificate::RankZero),
        (_, Some(err)) => cx.notes.push(format!("pre_einstein: {err}")),
        (Some(Gate::Fail { index }), None) => cx.certificates.push(Certificate::NonPositivePreEinstein {
            phi: phi_strs.clone().unwrap_or_default(),
            index,
        }),
        _ => {}
    }
    let gate_passed = cx.certificates.is_empty() && phi_strs.is_some();

    // nice-basis route: on the law itself, else on an isomorphic nice law
    let mut nice_candidates: Vec<(&str, LieLaw<Rational>)> = Vec::new();
    let mut uses_witness_for_nice = false;
    match &law {
        AnyLaw::Exact(l) if nice_mu.is_ok() => nice_candidates.push(("law", l.clone())),
        AnyLaw::Float(l) if nice_mu.is_ok() => {
            // U depends only on the bracket pattern
            let pattern = LieLaw::new(l.dim(), l.brackets().keys().map(|&t| (t, Rational::from_integer(1.into()))))
                .expect("pattern of a valid law");
            nice_candidates.push(("law", pattern));
        }
        _ => {}
    }
    if let Some(e) = exp {
        if let Some(a) = &e.alternate_law {
            if is_nice(a).is_ok() {
                nice_candidates.push(("alternate_law", a.clone()));
            }
        }
        if let Some(AnyLaw::Exact(w)) = &e.witness_law {
            if is_nice(w).is_ok() {
                nice_candidates.push(("witness_law", w.clone()));
                uses_witness_for_nice = nice_candidates.len() == 1;
            }
        }
    }
    let mut lp_norm: Option<Rational> = None;
    match nice_candidates.first() {
        None => {
            if let Some(e) = exp {
                if e.u.is_some() {
                    cx.mismatch("U", "nice basis", "no nice law available");
                }
            }
        }
        Some((on, nl)) => {
            let ws = is_nice(nl).expect("candidate is nice");
            let u = gram_matrix(&ws);
            let sol = positive_solution(&u);
            match &sol {
                PositiveSolution::Positive { x } => {
                    let norm = if x.is_empty() { None } else { Some(soliton_norm(x)) };
                    cx.certificates.push(Certificate::PositiveSolution {
                        on: on.to_string(),
                        x: strs(x),
                        soliton_norm: norm.as_ref().map_or("undefined".to_string(), format_rational),
                    });
                    lp_norm = norm;
                }
                other => cx.certificates.push(Certificate::NoPositiveSolution {
                    on: on.to_string(),
                    status: other.status().to_string(),
                }),
            }
            if let Some(e) = exp {
                check_nice_expectations(&mut cx, e, &u, &sol, &lp_norm);
                if *on != "law" {
                    if let AnyLaw::Exact(l) = &law {
                        let d = compare(&Invariants::of(l), &Invariants::of(nl));
                        if !d.is_empty() {
                            cx.mismatch(on, "isomorphic to law", d[0].to_string());
                        }
                    }
                }
            }
        }
    }

    // witness route
    let explicit_witness = exp.and_then(|e| e.witness_law.as_ref()).filter(|_| !uses_witness_for_nice);
    let mut witness_norm: Option<f64> = None;
    match explicit_witness {
        Some(w) => {
            let res = match w {
                AnyLaw::Exact(l) => witness_route("witness_law", l),
                AnyLaw::Float(l) => witness_route("witness_law", &l.clone().with_tol(opts.tol)),
            };
            match res {
                Ok((c, n)) => {
                    cx.certificates.push(c);
                    witness_norm = n;
                }
                Err(why) => {
                    cx.notes.push(format!("witness_law: {why}"));
                    cx.mismatch("witness_law", "nilsoliton", why);
                }
            }
            let (ws, wd) = match w {
                AnyLaw::Exact(l) => witness_invariants(l),
                AnyLaw::Float(l) => witness_invariants(&l.clone().with_tol(opts.tol)),
            };
            if ws != series || wd != dim_der {
                cx.mismatch(
                    "witness_law.invariants",
                    format!("{} dim_der {}", format_series(&series), dim_der),
                    format!("{} dim_der {}", format_series(&ws), wd),
                );
            }
        }
        None if !uses_witness_for_nice => {
            let res = match &law {
                AnyLaw::Exact(l) => witness_route("law", l),
                AnyLaw::Float(l) => witness_route("law", l),
            };
            // the given basis is rarely a nilsoliton basis; a failure here says nothing
            if let Ok((c, n)) = res {
                cx.certificates.push(c);
                witness_norm = n;
            }
        }
        None => {}
    }
    if let (Some(a), Some(b)) = (&lp_norm, witness_norm) {
        if (a.as_f64() - b).abs() > opts.tol.max(1e-9) {
            cx.mismatch("cross_check", format_rational(a), b.display());
        }
    }
    if let Some(want) = exp.and_then(|e| e.soliton_norm.as_ref()) {
        match (&lp_norm, witness_norm) {
            (Some(got), _) if got != want => cx.mismatch("soliton_norm", format_rational(want), format_rational(got)),
            (None, Some(got)) if (got - want.as_f64()).abs() > opts.tol.max(1e-9) => {
                cx.mismatch("soliton_norm", format_rational(want), got.display())
            }
            (None, None) => cx.mismatch("soliton_norm", format_rational(want), "not computed"),
            _ => {}
        }
    }

    // degeneration route
    let recorded = exp.and_then(|e| e.degeneration.as_ref());
    match (recorded, &law) {
        (Some(rec), AnyLaw::Exact(l)) => {
            verify_recorded(&mut cx, l, phi_exact.as_deref(), rec);
        }
        (None, AnyLaw::Exact(l)) if cx.certificates.is_empty() && gate_passed && opts.search_trials > 0 => {
            let phi = phi_exact.as_ref().expect("gate passed");
            match search_degeneration(l, phi, opts.search_trials, opts.seed, &[]) {
                Some(w) => cx.certificates.push(degeneration_certificate(&w, "search")),
                None => cx.notes.push(format!(
                    "degeneration search: none in {} trials (seed {}); inconclusive",
                    opts.search_trials, opts.seed
                )),
            }
        }
        _ => {}
    }

    let en = cx.certificates.iter().any(|c| c.polarity() == Polarity::En);
    let not = cx.certificates.iter().any(|c| c.polarity() == Polarity::NotEn);
    let verdict = match (en, not) {
        (true, true) => Verdict::Conflict,
        (true, false) => Verdict::En,
        (false, true) => Verdict::NotEn,
        (false, false) => Verdict::Inconclusive,
    };
    let route = cx
        .certificates
        .iter()
        .find(|c| match verdict {
            Verdict::En => c.polarity() == Polarity::En,
            Verdict::NotEn => c.polarity() == Polarity::NotEn,
            _ => false,
        })
        .map_or("none", Certificate::route)
        .to_string();
    if let Some(e) = exp {
        let want = e.verdict.as_verdict();
        if want != verdict {
            cx.mismatch("verdict", want.as_str(), verdict.as_str());
        }
    }
    Report {
        id: id.to_string(),
        verdict,
        route,
        certificates: cx.certificates,
        invariants,
        notes: cx.notes,
        mismatches: cx.mismatches,
        timing_ms: opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    }
}

fn check_nice_expectations(
    cx: &mut Ctx,
    e: &Expected,
    u: &[Vec<i64>],
    sol: &PositiveSolution,
    lp_norm: &Option<Rational>,
) {
    let lp_positive = sol.witness().is_some();
    if let Some(pu) = &e.u {
        if match_permutation(pu, u).is_none() {
            cx.mismatch("U", format!("{pu:?}"), format!("{u:?} (no permutation matches)"));
        }
    }
    match &e.x {
        Some(ExpectedX::Vector(x)) => {
            let base = e.u.as_deref().unwrap_or(u);
            if !satisfies(base, x) {
                cx.mismatch("x", rats(x), "does not satisfy Ux = [1]");
            }
            let positive = x.iter().all(Signed::is_positive);
            if positive != lp_positive {
                cx.mismatch("x", format!("positive = {positive}"), format!("LP: {}", sol.status()));
            }
            if positive {
                if let (Some(want), Some(got)) = (&e.soliton_norm, lp_norm) {
                    let recorded = soliton_norm(x);
                    if &recorded != want || got != want {
                        cx.mismatch("soliton_norm", format_rational(want), format!("{} (recorded x), {} (LP)", recorded, got));
                    }
                }
            }
        }
        Some(ExpectedX::NonePositive) if lp_positive => {
            cx.mismatch("x", "no positive solution", format!("LP found {}", rats(sol.witness().unwrap())));
        }
        _ => {}
    }
}

fn verify_recorded(cx: &mut Ctx, law: &LieLaw<Rational>, phi: Option<&[Rational]>, rec: &RecordedDegeneration) {
    match phi {
        Some(p) if in_g_phi(&rec.x, p, 0.0) => {}
        Some(_) => cx.mismatch("degeneration.X", "X in g_phi", "trace conditions fail"),
        None => cx.mismatch("degeneration.X", "X in g_phi", "no pre-Einstein derivation"),
    }
    let lim = match one_param_limit(law, &rec.x, rec.frame.as_ref()) {
        Ok(l) => l,
        Err(err) => {
            cx.mismatch("degeneration.limit", "limit", err.to_string());
            return;
        }
    };
    let computed = match &lim {
        Limit::Law(l) => Some(l.clone()),
        Limit::Zero => None,
        Limit::Divergent { bracket: (i, j, k), exponent } => {
            cx.mismatch(
                "degeneration.limit",
                "convergent flow",
                format!("[e_{},e_{}] -> e_{} has exponent {}", i + 1, j + 1, k + 1, exponent),
            );
            return;
        }
    };
    if computed != rec.limit {
        let show = |l: &Option<LieLaw<Rational>>| l.as_ref().map_or("zero".to_string(), ToString::to_string);
        cx.mismatch("degeneration.limit", show(&rec.limit), show(&computed));
        return;
    }
    let base = Invariants::of(law);
    match try_witness(law, &base, &rec.x, rec.frame.as_ref(), None) {
        Some(w) => {
            let found = w.distinguishing() == rec.distinguishing
                || w.differences.iter().any(|d| d.to_string() == rec.distinguishing);
            if !found {
                let all: Vec<String> = w.differences.iter().map(ToString::to_string).collect();
                cx.mismatch("degeneration.distinguishing", rec.distinguishing.clone(), all.join("; "));
            }
            cx.certificates.push(degeneration_certificate(&w, "recorded"));
        }
        None => cx.mismatch("degeneration.distinguishing", rec.distinguishing.clone(), "indistinguishable"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_law;

    #[test]
    fn heisenberg_is_en_with_both_routes() {
        let r = classify_law("h", &parse_law("dim 3; [1,2]=3").unwrap(), &ClassifyOptions::default());
        assert_eq!(r.verdict, Verdict::En);
        assert_eq!(r.route, "nice_basis");
        assert!(matches!(&r.certificates[0], Certificate::PositiveSolution { x, soliton_norm, .. }
            if x == &vec!["1/3".to_string()] && soliton_norm == "3"));
        assert!(r.certificates.iter().any(|c| matches!(c, Certificate::NilsolitonDecomposition { c, .. } if c == "-6")));
        assert!(r.mismatches.is_empty());
    }

    #[test]
    fn report_json_round_trips_with_sorted_keys() {
        let r = classify_law("h", &parse_law("dim 3; [1,2]=3").unwrap(), &ClassifyOptions::default());
        let j = r.to_json();
        assert_eq!(Report::from_json(&j).unwrap(), r);
        let ci = j.find("\"certificates\"").unwrap();
        let ii = j.find("\"invariants\"").unwrap();
        let vi = j.find("\"verdict\"").unwrap();
        assert!(ci < ii && ii < vi);
    }

    #[test]
    fn abelian_is_en() {
        let r = classify_law("a", &parse_law("dim 3").unwrap(), &ClassifyOptions::default());
        assert_eq!(r.verdict, Verdict::En);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::En.exit_code(), 0);
        assert_eq!(Verdict::NotEn.exit_code(), 1);
        assert_eq!(Verdict::Inconclusive.exit_code(), 2);
        assert_eq!(Verdict::Conflict.exit_code(), 2);
    }
}

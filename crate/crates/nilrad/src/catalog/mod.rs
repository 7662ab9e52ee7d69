//! The shipped catalog of seven-dimensional laws with their expected invariants and
//! verdicts, its JSON schema, and the loader that instantiates parametric families.

mod classify;

pub use classify::{
    classify, classify_law, summary_line, verify_all, Certificate, ClassifyOptions, InvariantSummary, Mismatch,
    Polarity, Report, Verdict,
};

use crate::algebra::{jacobi_violations, parse_law_with, AnyLaw, LieLaw};
use crate::linalg::Matrix;
use crate::scalar::{parse_rational, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

/// The catalog bundled with the crate.
pub const SHIPPED: &str = include_str!("../../data/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCatalog {
    pub entries: Vec<RawEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub id: String,
    #[serde(default)]
    pub aliases: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<RawParams>,
    pub law: String,
    pub expected: RawExpected,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawParams {
    pub name: String,
    pub samples: Vec<String>,
    #[serde(default)]
    pub excluded: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawExpected {
    pub dim_der: usize,
    pub derived: Vec<usize>,
    pub lcs: Vec<usize>,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pre_einstein: Option<Vec<String>>,
    pub nice: bool,
    #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<RawX>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soliton_norm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_law: Option<String>,
    /// A law isomorphic to `law` on which the nice-basis route is run instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternate_law: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneration: Option<RawDegeneration>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawX {
    Vector(Vec<String>),
    Tag(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDegeneration {
    #[serde(rename = "X")]
    pub x: Vec<String>,
    pub limit: String,
    pub distinguishing: String,
    /// Change of basis (columns = new basis vectors) applied before the diagonal flow.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedVerdict {
    En,
    NotEn,
}

impl ExpectedVerdict {
    pub fn as_verdict(self) -> Verdict {
        match self {
            ExpectedVerdict::En => Verdict::En,
            ExpectedVerdict::NotEn => Verdict::NotEn,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpectedX {
    Vector(Vec<Rational>),
    /// `Ux = [1]` is recorded as having no positive solution, without a specific `x`.
    NonePositive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecordedDegeneration {
    pub x: Vec<Rational>,
    pub frame: Option<Matrix<Rational>>,
    /// `None` is the zero law.
    pub limit: Option<LieLaw<Rational>>,
    pub distinguishing: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub dim_der: usize,
    pub derived: Vec<usize>,
    pub lcs: Vec<usize>,
    pub rank: usize,
    pub pre_einstein: Option<Vec<Rational>>,
    pub nice: bool,
    pub u: Option<Vec<Vec<i64>>>,
    pub x: Option<ExpectedX>,
    pub verdict: ExpectedVerdict,
    pub soliton_norm: Option<Rational>,
    pub witness_law: Option<AnyLaw>,
    pub alternate_law: Option<LieLaw<Rational>>,
    pub degeneration: Option<RecordedDegeneration>,
}

/// One catalog entry, instantiated at a parameter sample if the entry is a family.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    /// `entry_id`, or `entry_id@sample` for families.
    pub id: String,
    pub entry_id: String,
    pub param: Option<(String, Rational)>,
    pub aliases: BTreeMap<String, String>,
    pub law: AnyLaw,
    pub expected: Expected,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("catalog is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("entry {id}: field {field}: {msg}")]
    Schema { id: String, field: String, msg: String },
}

fn schema(id: &str, field: &str, msg: impl Into<String>) -> CatalogError {
    CatalogError::Schema { id: id.to_string(), field: field.to_string(), msg: msg.into() }
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<Instance>, CatalogError> {
    let p = path.as_ref();
    let text = std::fs::read_to_string(p).map_err(|source| CatalogError::Io { path: p.display().to_string(), source })?;
    parse_catalog(&text)
}

pub fn shipped() -> Vec<Instance> {
    parse_catalog(SHIPPED).expect("shipped catalog is valid")
}

pub fn parse_catalog(text: &str) -> Result<Vec<Instance>, CatalogError> {
    let root: serde_json::Value = serde_json::from_str(text)?;
    let entries = root
        .get("entries")
        .and_then(|e| e.as_array())
        .ok_or_else(|| schema("<root>", "entries", "missing or not an array"))?;
    if let Some(extra) = root.as_object().and_then(|o| o.keys().find(|k| *k != "entries")) {
        return Err(schema("<root>", extra, "unknown field"));
    }
    let mut out = Vec::new();
    for (pos, v) in entries.iter().enumerate() {
        let id = v
            .get("id")
            .and_then(|x| x.as_str())
            .map(str::to_string)
            .unwrap_or_else(|| format!("#{}", pos + 1));
        let raw: RawEntry = serde_json::from_value(v.clone()).map_err(|e| {
            let msg = e.to_string();
            let field = field_of(&msg);
            schema(&id, &field, msg)
        })?;
        out.extend(instantiate(&raw)?);
    }
    Ok(out)
}

/// Best-effort field name from a serde message like "missing field `law`".
fn field_of(msg: &str) -> String {
    msg.split('`').nth(1).unwrap_or("?").to_string()
}

fn rational(id: &str, field: &str, s: &str) -> Result<Rational, CatalogError> {
    parse_rational(s).ok_or_else(|| schema(id, field, format!("not a rational: {s:?}")))
}

fn rationals(id: &str, field: &str, v: &[String]) -> Result<Vec<Rational>, CatalogError> {
    v.iter().map(|s| rational(id, field, s)).collect()
}

fn law(id: &str, field: &str, text: &str, params: &BTreeMap<String, Rational>) -> Result<AnyLaw, CatalogError> {
    let l = parse_law_with(text, params).map_err(|e| schema(id, field, e.to_string()))?;
    let bad = match &l {
        AnyLaw::Exact(x) => jacobi_violations(x).len(),
        AnyLaw::Float(x) => jacobi_violations(x).len(),
    };
    if bad > 0 {
        return Err(schema(id, field, format!("Jacobi identity fails on {bad} triple(s)")));
    }
    Ok(l)
}

fn exact_law(id: &str, field: &str, text: &str, params: &BTreeMap<String, Rational>) -> Result<LieLaw<Rational>, CatalogError> {
    match law(id, field, text, params)? {
        AnyLaw::Exact(l) => Ok(l),
        AnyLaw::Float(_) => Err(schema(id, field, "must have rational coefficients")),
    }
}

/// Expands a raw entry into one instance per parameter sample.
pub fn instantiate(raw: &RawEntry) -> Result<Vec<Instance>, CatalogError> {
    let id = raw.id.as_str();
    let samples: Vec<Option<(String, Rational)>> = match &raw.params {
        None => vec![None],
        Some(p) => {
            let excluded = rationals(id, "params.excluded", &p.excluded)?;
            if p.samples.is_empty() {
                return Err(schema(id, "params.samples", "no samples"));
            }
            let mut v = Vec::new();
            for s in &p.samples {
                let q = rational(id, "params.samples", s)?;
                if excluded.contains(&q) {
                    return Err(schema(id, "params.samples", format!("sample {s} is excluded")));
                }
                v.push(Some((p.name.clone(), q)));
            }
            v
        }
    };
    samples
        .into_iter()
        .map(|sample| {
            let params: BTreeMap<String, Rational> = sample.iter().cloned().collect();
            let inst_id = match &sample {
                None => id.to_string(),
                Some((_, q)) => format!("{id}@{q}"),
            };
            let law = law(id, "law", &raw.law, &params)?;
            let expected = expected(id, &raw.expected, &params, law.dim())?;
            Ok(Instance {
                id: inst_id,
                entry_id: id.to_string(),
                param: sample,
                aliases: raw.aliases.clone(),
                law,
                expected,
            })
        })
        .collect()
}

fn expected(id: &str, e: &RawExpected, params: &BTreeMap<String, Rational>, n: usize) -> Result<Expected, CatalogError> {
    let verdict = match e.verdict.as_str() {
        "EN" => ExpectedVerdict::En,
        "NOT_EN" => ExpectedVerdict::NotEn,
        other => return Err(schema(id, "expected.verdict", format!("expected EN or NOT_EN, got {other:?}"))),
    };
    let pre_einstein = e.pre_einstein.as_ref().map(|v| rationals(id, "expected.pre_einstein", v)).transpose()?;
    if pre_einstein.as_ref().is_some_and(|p| p.len() != n) {
        return Err(schema(id, "expected.pre_einstein", format!("length must be {n}")));
    }
    if let Some(u) = &e.u {
        if u.iter().any(|r| r.len() != u.len()) {
            return Err(schema(id, "expected.U", "not square"));
        }
    }
    let x = match &e.x {
        None => None,
        Some(RawX::Tag(t)) if t == "none_positive" => Some(ExpectedX::NonePositive),
        Some(RawX::Tag(t)) => return Err(schema(id, "expected.x", format!("unknown tag {t:?}"))),
        Some(RawX::Vector(v)) => {
            let x = rationals(id, "expected.x", v)?;
            if e.u.as_ref().is_some_and(|u| u.len() != x.len()) {
                return Err(schema(id, "expected.x", "length differs from U"));
            }
            Some(ExpectedX::Vector(x))
        }
    };
    let soliton_norm = e.soliton_norm.as_deref().map(|s| rational(id, "expected.soliton_norm", s)).transpose()?;
    let witness_law = e.witness_law.as_deref().map(|t| law(id, "expected.witness_law", t, params)).transpose()?;
    let alternate_law = e
        .alternate_law
        .as_deref()
        .map(|t| exact_law(id, "expected.alternate_law", t, params))
        .transpose()?;
    for (f, d) in [
        ("expected.witness_law", witness_law.as_ref().map(AnyLaw::dim)),
        ("expected.alternate_law", alternate_law.as_ref().map(LieLaw::dim)),
    ] {
        if d.is_some_and(|d| d != n) {
            return Err(schema(id, f, format!("dimension must be {n}")));
        }
    }
    let degeneration = match &e.degeneration {
        None => None,
        Some(d) => {
            let x = rationals(id, "expected.degeneration.X", &d.x)?;
            if x.len() != n {
                return Err(schema(id, "expected.degeneration.X", format!("length must be {n}")));
            }
            let frame = match &d.frame {
                None => None,
                Some(rows) => {
                    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                        return Err(schema(id, "expected.degeneration.frame", format!("must be {n}×{n}")));
                    }
                    Some(rows.iter().map(|r| rationals(id, "expected.degeneration.frame", r)).collect::<Result<_, _>>()?)
                }
            };
            let limit = match d.limit.as_str() {
                "zero" => None,
                t => Some(exact_law(id, "expected.degeneration.limit", t, params)?),
            };
            Some(RecordedDegeneration { x, frame, limit, distinguishing: d.distinguishing.clone() })
        }
    };
    Ok(Expected {
        dim_der: e.dim_der,
        derived: e.derived.clone(),
        lcs: e.lcs.clone(),
        rank: e.rank,
        pre_einstein,
        nice: e.nice,
        u: e.u.clone(),
        x,
        verdict,
        soliton_norm,
        witness_law,
        alternate_law,
        degeneration,
    })
}

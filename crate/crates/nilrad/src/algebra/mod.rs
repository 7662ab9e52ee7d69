//! Lie algebra laws given by structure constants.
//!
//! Indices are 0-based throughout the API; the text format is 1-based.

mod parse;

pub use parse::{parse_law, parse_law_with, ParseError};

use crate::linalg::{self, Matrix};
use crate::scalar::{format_f64, format_rational, Rational, Scalar, ScalarKind, DEFAULT_TOL};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// `(i, j, k)` with `i < j`: the coefficient of `e_k` in `[e_i, e_j]`.
pub type Triple = (usize, usize, usize);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LawError {
    #[error("index out of range in bracket ({0},{1},{2}) for dimension {3}")]
    IndexOutOfRange(usize, usize, usize, usize),
    #[error("bracket [{0},{1}] must have i < j")]
    BadOrder(usize, usize),
    #[error("duplicate bracket term ({0},{1},{2})")]
    Duplicate(usize, usize, usize),
    #[error("zero coefficient in bracket ({0},{1},{2})")]
    ZeroCoefficient(usize, usize, usize),
    #[error("singular change of basis")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
}

/// Sparse structure constants over one scalar kind.
#[derive(Clone, Debug, PartialEq)]
pub struct LieLaw<S> {
    dim: usize,
    brackets: BTreeMap<Triple, S>,
    tol: f64,
}

impl<S: Scalar> LieLaw<S> {
    /// Validated constructor; every triple must satisfy `i < j < dim`, `k < dim`.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (Triple, S)>) -> Result<Self, LawError> {
        let mut brackets = BTreeMap::new();
        for ((i, j, k), c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(LawError::IndexOutOfRange(i, j, k, dim));
            }
            if i >= j {
                return Err(LawError::BadOrder(i, j));
            }
            if c.is_zero_tol(0.0) {
                return Err(LawError::ZeroCoefficient(i, j, k));
            }
            if brackets.insert((i, j, k), c).is_some() {
                return Err(LawError::Duplicate(i, j, k));
            }
        }
        Ok(LieLaw { dim, brackets, tol: DEFAULT_TOL })
    }

    pub fn abelian(dim: usize) -> Self {
        LieLaw { dim, brackets: BTreeMap::new(), tol: DEFAULT_TOL }
    }

    /// Builds from a dense antisymmetric tensor `t[i][j][k]`, dropping entries within `tol` of zero.
    pub fn from_tensor(t: &[Vec<Vec<S>>], tol: f64) -> Self {
        let dim = t.len();
        let mut brackets = BTreeMap::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in 0..dim {
                    if !t[i][j][k].is_zero_tol(tol) {
                        brackets.insert((i, j, k), t[i][j][k].clone());
                    }
                }
            }
        }
        LieLaw { dim, brackets, tol: DEFAULT_TOL }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ScalarKind {
        S::KIND
    }

    pub fn brackets(&self) -> &BTreeMap<Triple, S> {
        &self.brackets
    }

    pub fn len(&self) -> usize {
        self.brackets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Tolerance used by float-law operations (ignored for exact laws).
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Coefficient of `e_k` in `[e_i, e_j]` for any ordering of `i, j`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> S {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => S::zero(),
            Less => self.brackets.get(&(i, j, k)).cloned().unwrap_or_else(S::zero),
            Greater => self.brackets.get(&(j, i, k)).map(|c| -c.clone()).unwrap_or_else(S::zero),
        }
    }

    /// Dense antisymmetric tensor `t[i][j][k] = c_{ij}^k`.
    pub fn tensor(&self) -> Vec<Vec<Vec<S>>> {
        let n = self.dim;
        let mut t = vec![vec![vec![S::zero(); n]; n]; n];
        for (&(i, j, k), c) in &self.brackets {
            t[i][j][k] = c.clone();
            t[j][i][k] = -c.clone();
        }
        t
    }

    /// `[u, v]` for coordinate vectors.
    pub fn bracket(&self, u: &[S], v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (&(i, j, k), c) in &self.brackets {
            let w = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            if !w.is_zero_tol(0.0) {
                out[k] = out[k].clone() + w * c.clone();
            }
        }
        out
    }

    /// `Σ (c_{ij}^k)²` over stored `i < j`.
    pub fn norm_sq(&self) -> S {
        self.brackets.values().fold(S::zero(), |a, c| a + c.clone() * c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        LieLaw {
            dim: self.dim,
            brackets: self.brackets.iter().map(|(t, c)| (*t, c.clone() * s.clone())).collect(),
            tol: self.tol,
        }
    }

    pub fn to_float(&self) -> LieLaw<f64> {
        LieLaw {
            dim: self.dim,
            brackets: self.brackets.iter().map(|(t, c)| (*t, c.as_f64())).collect(),
            tol: self.tol,
        }
    }

    /// Keeps only the brackets selected by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Triple) -> bool) -> Self {
        LieLaw {
            dim: self.dim,
            brackets: self.brackets.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (*t, c.clone())).collect(),
            tol: self.tol,
        }
    }

    /// Approximate equality of coefficients (exact for rational laws).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .brackets
                .keys()
                .chain(other.brackets.keys())
                .all(|&(i, j, k)| self.c(i, j, k).approx_eq(&other.c(i, j, k), tol))
    }
}

fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    (0..n).map(|q| if q == i { S::one() } else { S::zero() }).collect()
}

fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

/// A failed Jacobi sum `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]` (0-based indices).
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation<S> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vec<S>,
}

pub fn jacobi_violations<S: Scalar>(law: &LieLaw<S>) -> Vec<JacobiViolation<S>> {
    let n = law.dim;
    let tol = law.tol;
    let e: Vec<Vec<S>> = (0..n).map(|i| unit(n, i)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = law.bracket(&e[i], &law.bracket(&e[j], &e[k]));
                let b = law.bracket(&e[j], &law.bracket(&e[k], &e[i]));
                let c = law.bracket(&e[k], &law.bracket(&e[i], &e[j]));
                let r = add(&add(&a, &b), &c);
                if r.iter().any(|x| !x.is_zero_tol(tol)) {
                    out.push(JacobiViolation { i, j, k, residual: r });
                }
            }
        }
    }
    out
}

/// Dimensions of the derived series and the descending central series.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SeriesSignature {
    pub derived: Vec<usize>,
    pub lcs: Vec<usize>,
}

impl SeriesSignature {
    pub fn is_nilpotent(&self) -> bool {
        self.lcs.last() == Some(&0)
    }
}

fn span_brackets<S: Scalar>(law: &LieLaw<S>, a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut vs = Vec::new();
    for u in a {
        for v in b {
            let w = law.bracket(u, v);
            if w.iter().any(|x| !x.is_zero_tol(law.tol)) {
                vs.push(w);
            }
        }
    }
    linalg::row_basis(&vs, law.tol)
}

pub fn series_signature<S: Scalar>(law: &LieLaw<S>) -> SeriesSignature {
    let n = law.dim;
    let full: Vec<Vec<S>> = (0..n).map(|i| unit(n, i)).collect();
    let chase = |next: &dyn Fn(&[Vec<S>]) -> Vec<Vec<S>>| {
        let mut dims = vec![n];
        let mut cur = full.clone();
        while !cur.is_empty() {
            let nxt = next(&cur);
            let stalled = nxt.len() == cur.len();
            dims.push(nxt.len());
            if stalled {
                break;
            }
            cur = nxt;
        }
        dims
    };
    let derived = chase(&|cur| span_brackets(law, cur, cur));
    let lcs = chase(&|cur| span_brackets(law, &full, cur));
    SeriesSignature { derived, lcs }
}

/// `(g·μ)(x, y) = g μ(g⁻¹x, g⁻¹y)`.
pub fn act<S: Scalar>(g: &Matrix<S>, law: &LieLaw<S>) -> Result<LieLaw<S>, LawError> {
    let n = law.dim;
    if g.len() != n || g.iter().any(|r| r.len() != n) {
        return Err(LawError::DimMismatch { expected: n, got: g.len() });
    }
    let gi = linalg::inverse(g, law.tol.min(1e-12)).ok_or(LawError::Singular)?;
    Ok(act_with_inverse(g, &gi, law))
}

/// As [`act`], with a precomputed inverse.
pub fn act_with_inverse<S: Scalar>(g: &Matrix<S>, gi: &Matrix<S>, law: &LieLaw<S>) -> LieLaw<S> {
    let n = law.dim;
    let z = S::zero();
    // image of the old bracket on the new basis vectors g e_a:  μ(g⁻¹ e_a, g⁻¹ e_b)
    let cols: Vec<Vec<S>> = (0..n).map(|a| (0..n).map(|r| gi[r][a].clone()).collect()).collect();
    let mut t = vec![vec![vec![z.clone(); n]; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let w = law.bracket(&cols[a], &cols[b]);
            if w.iter().all(|x| x.is_zero_tol(0.0)) {
                continue;
            }
            let gw = linalg::mat_vec(g, &w);
            for (c, v) in gw.into_iter().enumerate() {
                t[b][a][c] = -v.clone();
                t[a][b][c] = v;
            }
        }
    }
    let drop_tol = if S::KIND == ScalarKind::Float { law.tol * 1e-3 } else { 0.0 };
    LieLaw::from_tensor(&t, drop_tol).with_tol(law.tol)
}

fn fmt_law<S>(law: &LieLaw<S>, f: &mut fmt::Formatter<'_>, coef: impl Fn(&S) -> Option<String>) -> fmt::Result {
    write!(f, "dim {}", law.dim)?;
    let mut cur: Option<(usize, usize)> = None;
    for (&(i, j, k), c) in &law.brackets {
        if cur == Some((i, j)) {
            write!(f, "+")?;
        } else {
            write!(f, "; [{},{}]=", i + 1, j + 1)?;
            cur = Some((i, j));
        }
        match coef(c) {
            None => write!(f, "{}", k + 1)?,
            Some(s) => write!(f, "{}*{}", k + 1, s)?,
        }
    }
    Ok(())
}

impl fmt::Display for LieLaw<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_law(self, f, |c| (*c != <Rational as Scalar>::one()).then(|| format_rational(c)))
    }
}

impl fmt::Display for LieLaw<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_law(self, f, |c| (*c != 1.0).then(|| format_f64(*c)))
    }
}

/// A law of either scalar kind, as produced by the parser.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyLaw {
    Exact(LieLaw<Rational>),
    Float(LieLaw<f64>),
}

impl AnyLaw {
    pub fn dim(&self) -> usize {
        match self {
            AnyLaw::Exact(l) => l.dim(),
            AnyLaw::Float(l) => l.dim(),
        }
    }

    pub fn kind(&self) -> ScalarKind {
        match self {
            AnyLaw::Exact(_) => ScalarKind::Exact,
            AnyLaw::Float(_) => ScalarKind::Float,
        }
    }

    pub fn as_exact(&self) -> Option<&LieLaw<Rational>> {
        match self {
            AnyLaw::Exact(l) => Some(l),
            AnyLaw::Float(_) => None,
        }
    }

    pub fn to_float(&self) -> LieLaw<f64> {
        match self {
            AnyLaw::Exact(l) => l.to_float(),
            AnyLaw::Float(l) => l.clone(),
        }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        match self {
            AnyLaw::Exact(l) => AnyLaw::Exact(l.with_tol(tol)),
            AnyLaw::Float(l) => AnyLaw::Float(l.with_tol(tol)),
        }
    }

    pub fn jacobi_ok(&self) -> bool {
        match self {
            AnyLaw::Exact(l) => jacobi_violations(l).is_empty(),
            AnyLaw::Float(l) => jacobi_violations(l).is_empty(),
        }
    }
}

impl fmt::Display for AnyLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyLaw::Exact(l) => l.fmt(f),
            AnyLaw::Float(l) => l.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;
    use crate::scalar::{int, rat};

    fn heis() -> LieLaw<Rational> {
        LieLaw::new(3, [((0, 1, 2), int(1))]).unwrap()
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(LieLaw::new(3, [((0, 1, 3), int(1))]), Err(LawError::IndexOutOfRange(0, 1, 3, 3)));
        assert_eq!(LieLaw::new(3, [((1, 0, 2), int(1))]), Err(LawError::BadOrder(1, 0)));
        assert_eq!(LieLaw::new(3, [((0, 1, 2), int(0))]), Err(LawError::ZeroCoefficient(0, 1, 2)));
        assert_eq!(
            LieLaw::new(3, [((0, 1, 2), int(1)), ((0, 1, 2), int(2))]),
            Err(LawError::Duplicate(0, 1, 2))
        );
    }

    #[test]
    fn antisymmetric_lookup() {
        let h = heis();
        assert_eq!(h.c(1, 0, 2), int(-1));
        assert_eq!(h.c(0, 0, 2), int(0));
    }

    #[test]
    fn heisenberg_is_lie() {
        assert!(jacobi_violations(&heis()).is_empty());
    }

    #[test]
    fn non_lie_residual() {
        // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e3
        let l = LieLaw::new(3, [((0, 1, 2), int(1)), ((1, 2, 0), int(1)), ((0, 2, 2), int(1))]).unwrap();
        let v = jacobi_violations(&l);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].i, v[0].j, v[0].k), (0, 1, 2));
        assert_eq!(v[0].residual, vec![int(-1), int(0), int(0)]);
    }

    #[test]
    fn series_of_small_laws() {
        assert_eq!(series_signature(&heis()), SeriesSignature { derived: vec![3, 1, 0], lcs: vec![3, 1, 0] });
        let ab: LieLaw<Rational> = LieLaw::abelian(7);
        assert_eq!(series_signature(&ab), SeriesSignature { derived: vec![7, 0], lcs: vec![7, 0] });
        let zero: LieLaw<Rational> = LieLaw::abelian(0);
        assert_eq!(series_signature(&zero), SeriesSignature { derived: vec![0], lcs: vec![0] });
    }

    #[test]
    fn non_nilpotent_series_stalls() {
        // [e1,e2]=e2 is solvable, not nilpotent
        let l = LieLaw::new(2, [((0, 1, 1), int(1))]).unwrap();
        let s = series_signature(&l);
        assert_eq!(s.lcs, vec![2, 1, 1]);
        assert!(!s.is_nilpotent());
    }

    #[test]
    fn action_by_diagonal_and_identity() {
        let h = heis();
        assert_eq!(act(&identity(3), &h).unwrap(), h);
        let g = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(2)]];
        assert_eq!(act(&g, &h).unwrap().c(0, 1, 2), int(2));
        let sing = vec![vec![int(0); 3]; 3];
        assert_eq!(act(&sing, &h), Err(LawError::Singular));
    }

    #[test]
    fn action_composes() {
        let h = heis();
        let g = vec![vec![int(1), int(2), int(0)], vec![int(0), int(1), int(0)], vec![int(1), int(0), int(3)]];
        let k = vec![vec![int(2), int(0), int(1)], vec![int(1), int(1), int(0)], vec![int(0), int(0), rat(1, 2)]];
        let lhs = act(&g, &act(&k, &h).unwrap()).unwrap();
        let rhs = act(&linalg::matmul(&g, &k), &h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_format() {
        let l = LieLaw::new(7, [((0, 1, 2), int(1)), ((1, 2, 4), int(1)), ((1, 2, 6), rat(-1, 2))]).unwrap();
        assert_eq!(l.to_string(), "dim 7; [1,2]=3; [2,3]=5+7*-1/2");
        assert_eq!(LieLaw::<Rational>::abelian(4).to_string(), "dim 4");
        let f = LieLaw::new(3, [((0, 1, 2), 0.5f64)]).unwrap();
        assert_eq!(f.to_string(), "dim 3; [1,2]=3*0.5");
    }
}

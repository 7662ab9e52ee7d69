//! Diagonal one-parameter degenerations `g_t = exp(tX)` inside `G_φ`, their limits,
//! invariant-based non-isomorphism certificates and a seeded random search.

use crate::algebra::{act_with_inverse, series_signature, LieLaw, SeriesSignature};
use crate::derivations::{derivation_space, diagonal_rank, diagonal_torus_is_maximal};
use crate::linalg::{self, Matrix};
use crate::scalar::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;
use thiserror::Error;

/// `Σ a_i = 0` and `Σ φ_i a_i = 0`.
pub fn in_g_phi<S: Scalar>(x: &[S], phi: &[S], tol: f64) -> bool {
    x.len() == phi.len()
        && x.iter().fold(S::zero(), |s, a| s + a.clone()).is_zero_tol(tol)
        && linalg::dot(x, phi).is_zero_tol(tol)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Limit<S> {
    Law(LieLaw<S>),
    Zero,
    /// Some bracket blows up; carries that bracket (0-based) and its exponent.
    Divergent { bracket: (usize, usize, usize), exponent: S },
}

#[derive(Debug, Error, PartialEq)]
pub enum DegenerationError {
    #[error("frame matrix is singular")]
    SingularFrame,
    #[error("exponent vector has length {got}, expected {want}")]
    DimMismatch { got: usize, want: usize },
}

/// Limit of `exp(tX)·μ` as `t → ∞`, optionally in the frame `F` (columns are the new basis).
/// The flow acts on `F⁻¹·μ`; a limit law is reported back in the original coordinates.
pub fn one_param_limit<S: Scalar>(
    law: &LieLaw<S>,
    x: &[S],
    frame: Option<&Matrix<S>>,
) -> Result<Limit<S>, DegenerationError> {
    let n = law.dim();
    if x.len() != n {
        return Err(DegenerationError::DimMismatch { got: x.len(), want: n });
    }
    let tol = law.tol();
    let (framed, f_and_inv) = match frame {
        None => (law.clone(), None),
        Some(f) => {
            let fi = linalg::inverse(f, tol).ok_or(DegenerationError::SingularFrame)?;
            (act_with_inverse(&fi, f, law), Some((f.clone(), fi)))
        }
    };
    let mut keep = BTreeSet::new();
    for &(i, j, k) in framed.brackets().keys() {
        let e = x[i].clone() + x[j].clone() - x[k].clone();
        if e.is_zero_tol(tol) {
            keep.insert((i, j, k));
        } else if !e.is_positive_tol(tol) {
            return Ok(Limit::Divergent { bracket: (i, j, k), exponent: e });
        }
    }
    if keep.is_empty() {
        return Ok(Limit::Zero);
    }
    let lim = framed.filter(|t| keep.contains(t));
    Ok(Limit::Law(match f_and_inv {
        None => lim,
        Some((f, fi)) => act_with_inverse(&f, &fi, &lim),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    Series,
    DimDer,
    Rank,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Series => "series",
            Invariant::DimDer => "dim_der",
            Invariant::Rank => "rank",
        }
    }
}

/// The isomorphism invariants `distinguish` compares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub series: SeriesSignature,
    pub dim_der: usize,
    /// Diagonal rank; a lower bound for the rank, equal to it when `torus_maximal`.
    pub rank: usize,
    pub torus_maximal: bool,
}

impl Invariants {
    pub fn of(law: &LieLaw<Rational>) -> Self {
        let space = derivation_space(law);
        Invariants {
            series: series_signature(law),
            dim_der: space.dim_der(),
            rank: diagonal_rank(law).0,
            torus_maximal: diagonal_torus_is_maximal(law, &space),
        }
    }

    fn value(&self, inv: Invariant) -> String {
        match inv {
            Invariant::Series => format_series(&self.series),
            Invariant::DimDer => self.dim_der.to_string(),
            Invariant::Rank => self.rank.to_string(),
        }
    }
}

pub fn format_series(s: &SeriesSignature) -> String {
    let j = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    format!("({})/({})", j(&s.derived), j(&s.lcs))
}

/// One invariant on which two laws differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub invariant: Invariant,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} vs {}", self.invariant.name(), self.left, self.right)
    }
}

/// Every invariant (series, dim Der, rank — in that order) on which the invariants differ.
/// Ranks are compared only when both diagonal tori are certified maximal.
/// Empty means indistinguishable by these invariants, not isomorphic.
pub fn compare(a: &Invariants, b: &Invariants) -> Vec<Difference> {
    let ranks_comparable = a.torus_maximal && b.torus_maximal;
    [Invariant::Series, Invariant::DimDer, Invariant::Rank]
        .into_iter()
        .filter(|&inv| inv != Invariant::Rank || ranks_comparable)
        .filter_map(|inv| {
            let (l, r) = (a.value(inv), b.value(inv));
            (l != r).then_some(Difference { invariant: inv, left: l, right: r })
        })
        .collect()
}

pub fn distinguish(a: &LieLaw<Rational>, b: &LieLaw<Rational>) -> Vec<Difference> {
    compare(&Invariants::of(a), &Invariants::of(b))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationWitness {
    pub x: Vec<Rational>,
    pub frame: Option<Matrix<Rational>>,
    /// `None` for the zero law.
    pub limit: Option<LieLaw<Rational>>,
    /// Empty for a zero limit.
    pub differences: Vec<Difference>,
}

impl DegenerationWitness {
    pub fn distinguishing(&self) -> String {
        match self.differences.first() {
            None => "zero".to_string(),
            Some(d) => d.to_string(),
        }
    }
}

/// Checks a single exponent vector; `Some` iff the limit is zero or is separated from `law`.
pub fn try_witness(
    law: &LieLaw<Rational>,
    base: &Invariants,
    x: &[Rational],
    frame: Option<&Matrix<Rational>>,
    cache: Option<&Mutex<HashMap<Vec<(usize, usize, usize)>, Invariants>>>,
) -> Option<DegenerationWitness> {
    match one_param_limit(law, x, frame).ok()? {
        Limit::Divergent { .. } => None,
        Limit::Zero => Some(DegenerationWitness { x: x.to_vec(), frame: frame.cloned(), limit: None, differences: vec![] }),
        Limit::Law(lim) => {
            if lim.len() == law.len() && frame.is_none() {
                return None;
            }
            let key: Vec<_> = lim.brackets().keys().copied().collect();
            let cached = cache.and_then(|c| c.lock().unwrap().get(&key).cloned());
            let inv = match cached {
                Some(i) => i,
                None => {
                    let i = Invariants::of(&lim);
                    if let Some(c) = cache {
                        c.lock().unwrap().insert(key, i.clone());
                    }
                    i
                }
            };
            let differences = compare(base, &inv);
            (!differences.is_empty()).then(|| DegenerationWitness {
                x: x.to_vec(),
                frame: frame.cloned(),
                limit: Some(lim),
                differences,
            })
        }
    }
}

/// Exact orthogonal projection of `v` onto `{Σa = 0, Σφa = 0}`, rescaled to a primitive integer vector.
pub fn project_to_lattice(v: &[i64], phi: &[Rational]) -> Vec<BigInt> {
    let n = v.len();
    let ones = vec![Rational::from_integer(1.into()); n];
    let cons = linalg::row_basis(&[ones, phi.to_vec()], 0.0);
    // P v = v − Aᵀ (A Aᵀ)⁻¹ A v
    let vq: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
    let gram: Matrix<Rational> = cons.iter().map(|a| cons.iter().map(|b| linalg::dot(a, b)).collect()).collect();
    let av: Vec<Rational> = cons.iter().map(|a| linalg::dot(a, &vq)).collect();
    let y = linalg::solve(&gram, &av, 0.0).expect("constraint rows are independent");
    let p: Vec<Rational> = (0..n)
        .map(|q| cons.iter().zip(&y).fold(vq[q].clone(), |s, (a, yi)| s - &a[q] * yi))
        .collect();
    linalg::primitive_integer(&p)
}

/// Deterministic candidate stream for a seed: injected vectors first, then projected samples.
pub fn candidates(phi: &[Rational], trials: usize, seed: u64, injected: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = phi.len();
    let mut out: Vec<Vec<Rational>> = injected.to_vec();
    while out.len() < trials + injected.len() {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-30..=30)).collect();
        let p = project_to_lattice(&v, phi);
        if p.iter().all(Zero::is_zero) {
            // still counts as a trial
            out.push(vec![<Rational as Zero>::zero(); n]);
            continue;
        }
        out.push(p.into_iter().map(Rational::from_integer).collect());
    }
    out
}

/// Seeded search for a diagonal `X ∈ g_φ` whose flow kills or visibly changes `law`.
/// `None` is inconclusive: it proves nothing about orbit closedness.
pub fn search_degeneration(
    law: &LieLaw<Rational>,
    phi: &[Rational],
    trials: usize,
    seed: u64,
    injected: &[Vec<Rational>],
) -> Option<DegenerationWitness> {
    if law.is_empty() {
        return None;
    }
    let base = Invariants::of(law);
    let cache = Mutex::new(HashMap::new());
    let pool = candidates(phi, trials, seed, injected);
    pool.par_iter()
        .filter(|x| x.iter().any(|a| !a.is_zero()) && in_g_phi(x, phi, 0.0))
        .find_map_first(|x| try_witness(law, &base, x, None, Some(&cache)))
}

/// Smallest exponent `a_i + a_j − a_k` over the brackets, as a float (diagnostics).
pub fn min_exponent(law: &LieLaw<Rational>, x: &[Rational]) -> Option<f64> {
    law.brackets()
        .keys()
        .map(|&(i, j, k)| (&x[i] + &x[j] - &x[k]).to_f64().unwrap_or(f64::NAN))
        .reduce(f64::min)
}

/// True iff every exponent is nonnegative.
pub fn is_contracting(law: &LieLaw<Rational>, x: &[Rational]) -> bool {
    law.brackets().keys().all(|&(i, j, k)| !(&x[i] + &x[j] - &x[k]).is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{jacobi_violations, parse_law};
    use crate::scalar::{int, rat};

    fn exact(s: &str) -> LieLaw<Rational> {
        parse_law(s).unwrap().as_exact().unwrap().clone()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn membership() {
        let phi: Vec<Rational> = [1, 1, 2, 2, 3, 3, 4].iter().map(|&k| rat(4 * k, 11)).collect();
        assert!(in_g_phi(&v(&[1, -1, 0, 0, 1, -1, 0]), &phi, 0.0));
        assert!(!in_g_phi(&v(&[1; 7]), &phi, 0.0));
        let phi: Vec<Rational> = [1, 2, 2, 3, 3, 4, 5].iter().map(|&k| rat(5 * k, 17)).collect();
        assert!(in_g_phi(&v(&[-1, 2, -2, 1, 1, 0, -1]), &phi, 0.0));
    }

    #[test]
    fn identity_flow_and_zero_limit() {
        let h = exact("dim 3; [1,2]=3");
        assert_eq!(one_param_limit(&h, &v(&[0, 0, 0]), None).unwrap(), Limit::Law(h.clone()));
        assert_eq!(one_param_limit(&h, &v(&[1, 1, 0]), None).unwrap(), Limit::Zero);
        assert!(matches!(one_param_limit(&h, &v(&[0, 0, 1]), None).unwrap(), Limit::Divergent { .. }));
    }

    #[test]
    fn limit_keeps_exponent_zero_brackets() {
        let l = exact("dim 5; [1,2]=3; [1,3]=4; [2,3]=5");
        // exponents: [1,2]→0, [1,3]→1, [2,3]→0
        let lim = one_param_limit(&l, &v(&[1, 0, 1, 1, 1]), None).unwrap();
        assert_eq!(lim, Limit::Law(exact("dim 5; [1,2]=3; [2,3]=5")));
        if let Limit::Law(m) = lim {
            assert!(jacobi_violations(&m).is_empty());
        }
    }

    #[test]
    fn singular_frame_is_an_error() {
        let h = exact("dim 3; [1,2]=3");
        let f = vec![v(&[1, 0, 0]), v(&[1, 0, 0]), v(&[0, 0, 1])];
        assert_eq!(one_param_limit(&h, &v(&[0, 0, 0]), Some(&f)), Err(DegenerationError::SingularFrame));
    }

    #[test]
    fn distinguish_reports_all_differences() {
        let h = exact("dim 4; [1,2]=3");
        assert!(distinguish(&h, &h).is_empty());
        let a = LieLaw::abelian(4);
        let d = distinguish(&h, &a);
        let names: Vec<_> = d.iter().map(|x| x.invariant).collect();
        assert_eq!(names, vec![Invariant::Series, Invariant::DimDer, Invariant::Rank]);
        assert_eq!(d[1].to_string(), "dim_der 10 vs 16");
    }

    #[test]
    fn projection_lands_in_g_phi() {
        let phi: Vec<Rational> = [1, 1, 2, 2, 3, 3, 4].iter().map(|&k| rat(4 * k, 11)).collect();
        let p = project_to_lattice(&[3, -7, 1, 0, 12, 5, -2], &phi);
        let q: Vec<Rational> = p.into_iter().map(Rational::from_integer).collect();
        assert!(in_g_phi(&q, &phi, 0.0));
        assert!(q.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn search_is_deterministic_and_respects_injection() {
        let l = exact("dim 4; [1,2]=3; [1,3]=4");
        let phi = {
            let sp = derivation_space(&l);
            crate::derivations::pre_einstein(&l, &sp).unwrap()
        };
        let a = search_degeneration(&l, &phi, 200, 7, &[]);
        let b = search_degeneration(&l, &phi, 200, 7, &[]);
        assert_eq!(a, b);
        assert!(search_degeneration(&LieLaw::abelian(3), &vec![int(1); 3], 50, 1, &[]).is_none());
    }
}

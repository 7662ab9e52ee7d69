//! Moment map `m(μ) = 4·Ric_μ` for the canonical inner product, and nilsoliton decompositions.
//!
//! With `⟨Ric x, y⟩ = −½ Σ ⟨[x,e_i],e_j⟩⟨[y,e_i],e_j⟩ + ¼ Σ ⟨[e_i,e_j],x⟩⟨[e_i,e_j],y⟩`
//! (sums over ordered pairs) the trace satisfies `tr m = −2 ‖μ‖²`, where `‖μ‖²` counts each
//! unordered bracket once.

use crate::algebra::LieLaw;
use crate::derivations::is_diagonal_derivation;
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};
use thiserror::Error;

/// Symmetric `n×n` value of the moment map.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentValue<S> {
    pub m: Matrix<S>,
}

impl<S: Scalar> MomentValue<S> {
    pub fn trace(&self) -> S {
        (0..self.m.len()).fold(S::zero(), |s, i| s + self.m[i][i].clone())
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.m.len()).map(|i| self.m[i][i].clone()).collect()
    }

    /// First off-diagonal entry above tolerance, if any.
    pub fn off_diagonal(&self, tol: f64) -> Option<(usize, usize)> {
        let n = self.m.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !self.m[i][j].is_zero_tol(tol))
    }
}

pub fn moment_map<S: Scalar>(law: &LieLaw<S>) -> MomentValue<S> {
    let n = law.dim();
    let t = law.tensor();
    let two = S::from_i64(2);
    let mut m = vec![vec![S::zero(); n]; n];
    for (a, row) in m.iter_mut().enumerate() {
        for (b, v) in row.iter_mut().enumerate() {
            // 4·(−½) Σ_{i,j} c_{ai}^j c_{bi}^j + 4·¼ Σ_{i,j} c_{ij}^a c_{ij}^b
            let mut first = S::zero();
            let mut second = S::zero();
            for i in 0..n {
                for j in 0..n {
                    first = first + t[a][i][j].clone() * t[b][i][j].clone();
                    second = second + t[i][j][a].clone() * t[i][j][b].clone();
                }
            }
            *v = second - two.clone() * first;
        }
    }
    MomentValue { m }
}

/// `m = c·Id + D` with `D` a diagonal derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct SolitonDecomposition<S> {
    pub c: S,
    pub d: Vec<S>,
    /// Largest disagreement between per-bracket estimates of `c` (zero when exact).
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SolitonError {
    #[error("moment value is not diagonal: entry ({0},{1}) is nonzero")]
    NotDiagonal(usize, usize),
    #[error("brackets disagree on the soliton constant (spread {residual:e})")]
    Disagreement { residual: f64 },
}

/// Reads `c = m_ii + m_jj − m_kk` off every bracket; all must agree.
pub fn soliton_check<S: Scalar>(law: &LieLaw<S>, mv: &MomentValue<S>) -> Result<SolitonDecomposition<S>, SolitonError> {
    let tol = law.tol();
    if let Some((i, j)) = mv.off_diagonal(tol) {
        return Err(SolitonError::NotDiagonal(i, j));
    }
    let diag = mv.diagonal();
    let estimates: Vec<S> = law
        .brackets()
        .keys()
        .map(|&(i, j, k)| diag[i].clone() + diag[j].clone() - diag[k].clone())
        .collect();
    let c = match estimates.first() {
        Some(c0) => c0.clone(),
        None => S::zero(),
    };
    let residual = estimates
        .iter()
        .map(|e| (e.clone() - c.clone()).as_f64().abs())
        .fold(0.0, f64::max);
    let agree = estimates.iter().all(|e| e.approx_eq(&c, tol));
    if !agree {
        return Err(SolitonError::Disagreement { residual });
    }
    let d: Vec<S> = diag.iter().map(|x| x.clone() - c.clone()).collect();
    if !is_diagonal_derivation(law, &d) {
        return Err(SolitonError::Disagreement { residual });
    }
    Ok(SolitonDecomposition { c, d, residual })
}

impl<S: Scalar> SolitonDecomposition<S> {
    /// `c / tr m`, which is `−c` once the law is scaled to `tr m = −1` (i.e. `‖μ‖² = ½`);
    /// `None` for the abelian law.
    pub fn stratum_norm(&self) -> Option<S> {
        let n = S::from_i64(self.d.len() as i64);
        let tr = self.d.iter().fold(n * self.c.clone(), |s, x| s + x.clone());
        (!tr.is_zero_tol(0.0)).then(|| self.c.clone() / tr)
    }
}

/// Compares the (scale-invariant) `−c` of a decomposition with the nice-basis soliton norm.
pub fn cross_check<S: Scalar>(norm_from_lp: &Rational, dec: &SolitonDecomposition<S>, tol: f64) -> bool {
    dec.stratum_norm()
        .is_some_and(|v| v.approx_eq(&S::from_rational(norm_from_lp), tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_law;
    use crate::scalar::{int, rat};

    fn exact(s: &str) -> LieLaw<Rational> {
        parse_law(s).unwrap().as_exact().unwrap().clone()
    }

    #[test]
    fn heisenberg_moment_and_soliton() {
        let h = exact("dim 3; [1,2]=3");
        let mv = moment_map(&h);
        assert_eq!(mv.m, vec![vec![int(-2), int(0), int(0)], vec![int(0), int(-2), int(0)], vec![int(0), int(0), int(2)]]);
        assert_eq!(mv.trace(), int(-2) * h.norm_sq());
        let dec = soliton_check(&h, &mv).unwrap();
        assert_eq!(dec.c, int(-6));
        assert_eq!(dec.d, vec![int(4), int(4), int(8)]);
        // tr m = −2, so the normalized law has −c = 3 = 1/x for U = [3]
        assert_eq!(dec.stratum_norm(), Some(int(3)));
        assert!(cross_check(&int(3), &dec, 0.0));
        assert!(!cross_check(&int(6), &dec, 0.0));
    }

    #[test]
    fn abelian_is_flat() {
        let a: LieLaw<Rational> = LieLaw::abelian(3);
        let dec = soliton_check(&a, &moment_map(&a)).unwrap();
        assert_eq!(dec.c, int(0));
        assert_eq!(dec.d, vec![int(0); 3]);
        assert_eq!(dec.stratum_norm(), None);
    }

    #[test]
    fn unbalanced_filiform_is_rejected() {
        let l = exact("dim 4; [1,2]=3*2; [1,3]=4");
        let mv = moment_map(&l);
        assert!(mv.off_diagonal(0.0).is_none());
        assert!(matches!(soliton_check(&l, &mv), Err(SolitonError::Disagreement { .. })));
    }

    #[test]
    fn off_diagonal_is_reported() {
        let l = exact("dim 4; [1,2]=3+4");
        assert!(matches!(soliton_check(&l, &moment_map(&l)), Err(SolitonError::NotDiagonal(_, _))));
    }

    #[test]
    fn balanced_filiform_is_a_soliton() {
        // [1,2]=a·e_3, [1,3]=b·e_4 gives c = −6a² and −6b² from the two brackets
        let l = exact("dim 4; [1,2]=3*2; [1,3]=4*2");
        let mv = moment_map(&l);
        assert_eq!(mv.diagonal(), vec![int(-16), int(-8), int(0), int(8)]);
        assert_eq!(mv.trace(), int(-2) * l.norm_sq());
        let dec = soliton_check(&l, &mv).unwrap();
        assert_eq!(dec.c, int(-24));
        assert_eq!(dec.d, vec![int(8), int(16), int(24), int(32)]);
        let s = l.scale(&rat(1, 2));
        assert_eq!(moment_map(&s).diagonal(), vec![int(-4), int(-2), int(0), int(2)]);
    }
}

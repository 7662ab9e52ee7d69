//! Derivation algebra, diagonal torus, pre-Einstein derivation and the positivity gate.

use crate::algebra::LieLaw;
use crate::linalg::{self, Matrix};
use crate::scalar::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Basis of `Der(μ)` and of its diagonal part (in the given basis).
#[derive(Clone, Debug)]
pub struct DerivationSpace<S> {
    pub dim: usize,
    pub basis: Vec<Matrix<S>>,
    /// Eigenvalue vectors of a basis of the diagonal derivations.
    pub diag_basis: Vec<Vec<S>>,
}

impl<S: Scalar> DerivationSpace<S> {
    pub fn dim_der(&self) -> usize {
        self.basis.len()
    }
}

/// Residual of the derivation identity `D[e_i,e_j] − [De_i,e_j] − [e_i,De_j]` over all `i < j`.
pub fn derivation_residual<S: Scalar>(law: &LieLaw<S>, d: &Matrix<S>) -> Vec<S> {
    let n = law.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in i + 1..n {
            let col = |q: usize| (0..n).map(|r| d[r][q].clone()).collect::<Vec<S>>();
            let ei: Vec<S> = (0..n).map(|q| if q == i { S::one() } else { S::zero() }).collect();
            let ej: Vec<S> = (0..n).map(|q| if q == j { S::one() } else { S::zero() }).collect();
            let lhs = linalg::mat_vec(d, &law.bracket(&ei, &ej));
            let a = law.bracket(&col(i), &ej);
            let b = law.bracket(&ei, &col(j));
            out.extend((0..n).map(|k| lhs[k].clone() - a[k].clone() - b[k].clone()));
        }
    }
    out
}

pub fn is_derivation<S: Scalar>(law: &LieLaw<S>, d: &Matrix<S>) -> bool {
    derivation_residual(law, d).iter().all(|x| x.is_zero_tol(law.tol()))
}

/// Diagonal `D = diag(d)` is a derivation iff `d_k = d_i + d_j` on every stored bracket.
pub fn is_diagonal_derivation<S: Scalar>(law: &LieLaw<S>, d: &[S]) -> bool {
    law.brackets()
        .keys()
        .all(|&(i, j, k)| (d[k].clone() - d[i].clone() - d[j].clone()).is_zero_tol(law.tol()))
}

/// Linear system whose kernel is `Der(μ)`; unknown `D[r][c]` sits at column `r·n + c`.
fn derivation_system<S: Scalar>(law: &LieLaw<S>) -> Matrix<S> {
    let n = law.dim();
    let t = law.tensor();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut row = vec![S::zero(); n * n];
                let mut any = false;
                for m in 0..n {
                    // Σ_m c_ij^m D[k][m]
                    if !t[i][j][m].is_zero_tol(0.0) {
                        row[k * n + m] = row[k * n + m].clone() + t[i][j][m].clone();
                        any = true;
                    }
                    // − Σ_m D[m][i] c_mj^k
                    if !t[m][j][k].is_zero_tol(0.0) {
                        row[m * n + i] = row[m * n + i].clone() - t[m][j][k].clone();
                        any = true;
                    }
                    // − Σ_m D[m][j] c_im^k
                    if !t[i][m][k].is_zero_tol(0.0) {
                        row[m * n + j] = row[m * n + j].clone() - t[i][m][k].clone();
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn diagonal_system<S: Scalar>(law: &LieLaw<S>) -> Matrix<S> {
    let n = law.dim();
    law.brackets()
        .keys()
        .map(|&(i, j, k)| {
            let mut r = vec![S::zero(); n];
            r[k] = r[k].clone() + S::one();
            r[i] = r[i].clone() - S::one();
            r[j] = r[j].clone() - S::one();
            r
        })
        .collect()
}

pub fn derivation_space<S: Scalar>(law: &LieLaw<S>) -> DerivationSpace<S> {
    let n = law.dim();
    let tol = law.tol();
    let sys = derivation_system(law);
    let basis = linalg::nullspace(&sys, n * n, tol)
        .into_iter()
        .map(|v| v.chunks(n).map(<[S]>::to_vec).collect())
        .collect();
    let diag_basis = linalg::nullspace(&diagonal_system(law), n, tol);
    DerivationSpace { dim: n, basis, diag_basis }
}

/// Dimension of the diagonal derivations and a canonical integer basis for them
/// (RREF over ℚ, rows scaled to primitive integer vectors, then Hermite-reduced).
pub fn diagonal_rank(law: &LieLaw<Rational>) -> (usize, Vec<Vec<BigInt>>) {
    let n = law.dim();
    let ns = linalg::nullspace(&diagonal_system(law), n, 0.0);
    let rows = linalg::row_basis(&ns, 0.0);
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| linalg::primitive_integer(r)).collect();
    let h = linalg::hermite_normal_form(&ints);
    (h.len(), h)
}

/// Whether the diagonal derivations form a maximal torus of `Der(μ)`, so that the diagonal
/// rank is the rank.
///
/// A semisimple derivation commuting with the diagonal torus `T` preserves its weight spaces;
/// if it acts by scalars on each one it is diagonal, hence in `T`. So `T` is maximal iff on every
/// weight space the traceless parts of the centralizer `z(T)` are nilpotent, which is decided by
/// building the Engel flag `W_{i+1} = {v : Xv ∈ W_i for all X}` until it stalls or fills the space.
pub fn diagonal_torus_is_maximal(law: &LieLaw<Rational>, space: &DerivationSpace<Rational>) -> bool {
    let n = law.dim();
    let weight = |q: usize| space.diag_basis.iter().map(|g| g[q].clone()).collect::<Vec<_>>();
    let weights: Vec<Vec<Rational>> = (0..n).map(weight).collect();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for q in 0..n {
        match groups.iter_mut().find(|g| weights[g[0]] == weights[q]) {
            Some(g) => g.push(q),
            None => groups.push(vec![q]),
        }
    }
    if groups.iter().all(|g| g.len() == 1) {
        return true;
    }
    // z(T): combinations of the derivation basis vanishing between different weights
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| weights[r] != weights[c])
        .collect();
    let sys: Matrix<Rational> = off
        .iter()
        .map(|&(r, c)| space.basis.iter().map(|b| b[r][c].clone()).collect())
        .collect();
    let combos = if sys.is_empty() {
        (0..space.basis.len())
            .map(|i| (0..space.basis.len()).map(|j| if i == j { <Rational as One>::one() } else { <Rational as Zero>::zero() }).collect())
            .collect()
    } else {
        linalg::nullspace(&sys, space.basis.len(), 0.0)
    };
    let centralizer: Vec<Matrix<Rational>> = combos
        .iter()
        .map(|a| {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| a.iter().zip(&space.basis).fold(<Rational as Zero>::zero(), |s, (x, b)| s + x * &b[r][c]))
                        .collect()
                })
                .collect()
        })
        .collect();
    groups.iter().filter(|g| g.len() > 1).all(|g| {
        let d = g.len();
        let dq = Rational::from_integer(BigInt::from(d));
        let blocks: Vec<Matrix<Rational>> = centralizer
            .iter()
            .map(|m| {
                let tr = g.iter().fold(<Rational as Zero>::zero(), |s, &q| s + &m[q][q]) / &dq;
                g.iter()
                    .map(|&r| g.iter().map(|&c| if r == c { &m[r][c] - &tr } else { m[r][c].clone() }).collect())
                    .collect()
            })
            .collect();
        engel_flag_fills(&blocks, d)
    })
}

/// True iff the matrices (all `d×d`) are simultaneously strictly triangularizable.
fn engel_flag_fills(ms: &[Matrix<Rational>], d: usize) -> bool {
    let mut w: Vec<Vec<Rational>> = Vec::new();
    loop {
        // rows spanning the annihilator of W
        let ann = if w.is_empty() { linalg::identity::<Rational>(d) } else { linalg::nullspace(&w, d, 0.0) };
        if ann.is_empty() {
            return true;
        }
        let mut sys = Vec::new();
        for m in ms {
            sys.extend(linalg::matmul(&ann, m));
        }
        let next = if sys.iter().all(|r| r.iter().all(Zero::is_zero)) {
            linalg::identity(d)
        } else {
            linalg::nullspace(&sys, d, 0.0)
        };
        if next.len() <= w.len() {
            return false;
        }
        w = linalg::row_basis(&next, 0.0);
    }
}

/// True iff each listed diagonal vector lies in the rational span of `gens`.
pub fn in_span(gens: &[Vec<BigInt>], vs: &[Vec<BigInt>]) -> bool {
    let q = |v: &Vec<BigInt>| v.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>();
    let base: Matrix<Rational> = gens.iter().map(q).collect();
    let r = linalg::rank(&base, 0.0);
    vs.iter().all(|v| {
        let mut m = base.clone();
        m.push(q(v));
        linalg::rank(&m, 0.0) == r
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PreEinsteinError {
    #[error("rank zero: no diagonal derivations")]
    RankZero,
    #[error("diagonal torus is not maximal: trace condition fails on derivation basis element {0}")]
    TorusNotMaximal(usize),
}

/// `φ = Σ c_a D_a` with `Σ_b tr(D_a D_b) c_b = tr(D_a)` over the diagonal torus,
/// then verified as `tr(φψ) = tr(ψ)` against the full derivation basis.
pub fn pre_einstein<S: Scalar>(law: &LieLaw<S>, space: &DerivationSpace<S>) -> Result<Vec<S>, PreEinsteinError> {
    let gens = &space.diag_basis;
    if gens.is_empty() {
        return Err(PreEinsteinError::RankZero);
    }
    let tol = law.tol();
    let gram: Matrix<S> = gens.iter().map(|a| gens.iter().map(|b| linalg::dot(a, b)).collect()).collect();
    let rhs: Vec<S> = gens.iter().map(|g| g.iter().fold(S::zero(), |s, x| s + x.clone())).collect();
    let c = linalg::solve(&gram, &rhs, tol).expect("Gram matrix of a basis is invertible");
    let n = law.dim();
    let phi: Vec<S> = (0..n)
        .map(|q| gens.iter().zip(&c).fold(S::zero(), |s, (g, ca)| s + ca.clone() * g[q].clone()))
        .collect();
    for (idx, psi) in space.basis.iter().enumerate() {
        let tr = (0..n).fold(S::zero(), |s, q| s + psi[q][q].clone());
        let tphi = (0..n).fold(S::zero(), |s, q| s + phi[q].clone() * psi[q][q].clone());
        if !(tphi - tr).is_zero_tol(tol) {
            return Err(PreEinsteinError::TorusNotMaximal(idx));
        }
    }
    Ok(phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "result")]
pub enum Gate {
    Pass,
    /// First eigenvalue that is not strictly positive (0-based).
    Fail { index: usize },
}

pub fn positivity_gate<S: Scalar>(phi: &[S], tol: f64) -> Gate {
    match phi.iter().position(|x| !x.is_positive_tol(tol)) {
        Some(index) => Gate::Fail { index },
        None => Gate::Pass,
    }
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
    fn heisenberg_derivations() {
        let h = exact("dim 3; [1,2]=3");
        let sp = derivation_space(&h);
        assert_eq!(sp.dim_der(), 6);
        assert!(sp.basis.iter().all(|d| is_derivation(&h, d)));
        let (r, gens) = diagonal_rank(&h);
        assert_eq!(r, 2);
        assert!(in_span(&gens, &[vec![1.into(), 0.into(), 1.into()], vec![0.into(), 1.into(), 1.into()]]));
        let phi = pre_einstein(&h, &sp).unwrap();
        assert_eq!(phi, vec![rat(2, 3), rat(2, 3), rat(4, 3)]);
    }

    #[test]
    fn abelian_everything_is_a_derivation() {
        let a: LieLaw<Rational> = LieLaw::abelian(4);
        let sp = derivation_space(&a);
        assert_eq!(sp.dim_der(), 16);
        assert_eq!(pre_einstein(&a, &sp).unwrap(), vec![int(1); 4]);
    }

    #[test]
    fn filiform_rank_and_phi() {
        // L_n: [1,k]=k+1 has the grading torus diag(1,0,1,..)+diag(0,1,1,..)
        let l = exact("dim 4; [1,2]=3; [1,3]=4");
        let (r, _) = diagonal_rank(&l);
        assert_eq!(r, 2);
        let sp = derivation_space(&l);
        let phi = pre_einstein(&l, &sp).unwrap();
        assert!(is_diagonal_derivation(&l, &phi));
    }

    #[test]
    fn gate() {
        let phi = [int(0), int(1), int(0), int(1), int(1), int(1), int(1)];
        assert_eq!(positivity_gate(&phi, 0.0), Gate::Fail { index: 0 });
        let phi: Vec<Rational> = (1..=7).map(|k| rat(k, 5)).collect();
        assert_eq!(positivity_gate(&phi, 0.0), Gate::Pass);
        assert_eq!(positivity_gate(&vec![int(0); 7], 0.0), Gate::Fail { index: 0 });
    }

    #[test]
    fn residual_detects_non_derivations() {
        let h = exact("dim 3; [1,2]=3");
        let mut d = linalg::zeros::<Rational>(3, 3);
        d[0][0] = int(1);
        assert!(!is_derivation(&h, &d));
        d[2][2] = int(1);
        assert!(is_derivation(&h, &d));
    }
}

//! Nice bases, weight systems, the Gram matrix `U` and the positive-solution test for `Ux = [1]`.

pub mod simplex;

use crate::algebra::{LieLaw, Triple};
use crate::scalar::{self, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use simplex::LpResult;
use std::collections::BTreeMap;

/// Weights `α = f_k − f_i − f_j` of the nonzero brackets, in lexicographic `(i, j, k)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub dim: usize,
    pub entries: Vec<Triple>,
    pub alphas: Vec<Vec<i64>>,
}

/// Why a basis fails to be nice (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "condition")]
pub enum NotNice {
    /// `[e_i, e_j]` has more than one nonzero component.
    MultipleImages { i: usize, j: usize, targets: Vec<usize> },
    /// Two different `j` give `e_k` components in `[e_i, e_j]`.
    SharedTarget { i: usize, k: usize, j1: usize, j2: usize },
}

impl std::fmt::Display for NotNice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotNice::MultipleImages { i, j, targets } => {
                let t: Vec<String> = targets.iter().map(|k| format!("e_{}", k + 1)).collect();
                write!(f, "[e_{},e_{}] has image {}", i + 1, j + 1, t.join(" + "))
            }
            NotNice::SharedTarget { i, k, j1, j2 } => {
                write!(f, "e_{} appears in both [e_{},e_{}] and [e_{},e_{}]", k + 1, i + 1, j1 + 1, i + 1, j2 + 1)
            }
        }
    }
}

pub fn is_nice<S: scalar::Scalar>(law: &LieLaw<S>) -> Result<WeightSystem, NotNice> {
    let mut images: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(i, j, k) in law.brackets().keys() {
        images.entry((i, j)).or_default().push(k);
    }
    if let Some((&(i, j), ks)) = images.iter().find(|(_, ks)| ks.len() > 1) {
        return Err(NotNice::MultipleImages { i, j, targets: ks.clone() });
    }
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(i, j), ks) in &images {
        let k = ks[0];
        for (a, b) in [(i, j), (j, i)] {
            if let Some(&prev) = seen.get(&(a, k)) {
                return Err(NotNice::SharedTarget { i: a, k, j1: prev, j2: b });
            }
            seen.insert((a, k), b);
        }
    }
    let entries: Vec<Triple> = law.brackets().keys().copied().collect();
    let alphas = entries
        .iter()
        .map(|&(i, j, k)| {
            let mut a = vec![0i64; law.dim()];
            a[k] += 1;
            a[i] -= 1;
            a[j] -= 1;
            a
        })
        .collect();
    Ok(WeightSystem { dim: law.dim(), entries, alphas })
}

pub fn gram_matrix(ws: &WeightSystem) -> Vec<Vec<i64>> {
    ws.alphas
        .iter()
        .map(|a| ws.alphas.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum PositiveSolution {
    Positive { x: Vec<Rational> },
    NoPositiveSolution,
    Inconsistent,
}

impl PositiveSolution {
    pub fn status(&self) -> &'static str {
        match self {
            PositiveSolution::Positive { .. } => "positive",
            PositiveSolution::NoPositiveSolution => "no_positive_solution",
            PositiveSolution::Inconsistent => "inconsistent",
        }
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            PositiveSolution::Positive { x } => Some(x),
            _ => None,
        }
    }
}

/// Decides whether `{x : Ux = 1, x > 0}` is nonempty by maximizing `t` subject to
/// `Ux = 1`, `x ≥ t·1`, `t ≤ 1` (the cap keeps the program bounded without changing the sign of `t*`).
pub fn positive_solution(u: &[Vec<i64>]) -> PositiveSolution {
    let m = u.len();
    if m == 0 {
        return PositiveSolution::Positive { x: Vec::new() };
    }
    let q = |v: i64| Rational::from_integer(v.into());
    // x = y + t·1, y ≥ 0, t = t⁺ − t⁻; columns: y (m), t⁺, t⁻, slack
    let row_sums: Vec<i64> = u.iter().map(|r| r.iter().sum()).collect();
    let mut a = Vec::with_capacity(m + 1);
    for (r, row) in u.iter().enumerate() {
        let mut v: Vec<Rational> = row.iter().map(|&x| q(x)).collect();
        v.extend([q(row_sums[r]), q(-row_sums[r]), q(0)]);
        a.push(v);
    }
    let mut cap = vec![q(0); m];
    cap.extend([q(1), q(-1), q(1)]);
    a.push(cap);
    let mut b = vec![q(1); m];
    b.push(q(1));
    let mut c = vec![q(0); m];
    c.extend([q(1), q(-1), q(0)]);
    match simplex::maximize(&a, &b, &c) {
        LpResult::Infeasible => PositiveSolution::Inconsistent,
        LpResult::Unbounded => unreachable!("t is capped"),
        LpResult::Optimal { x, value } => {
            if value.is_positive() {
                let t = &x[m] - &x[m + 1];
                PositiveSolution::Positive { x: x[..m].iter().map(|y| y + &t).collect() }
            } else {
                PositiveSolution::NoPositiveSolution
            }
        }
    }
}

/// `Ux = [1]` exactly.
pub fn satisfies(u: &[Vec<i64>], x: &[Rational]) -> bool {
    u.len() == x.len()
        && u.iter().all(|row| {
            row.iter().zip(x).fold(Rational::zero(), |s, (&a, xi)| s + Rational::from_integer(a.into()) * xi)
                == Rational::one()
        })
}

/// `‖S_β‖² = 1 / Σ x_a`.
pub fn soliton_norm(x: &[Rational]) -> Rational {
    let s = x.iter().fold(Rational::zero(), |s, v| s + v);
    Rational::one() / s
}

/// Finds `perm` with `p[a][b] = q[perm[a]][perm[b]]`, if any.
pub fn match_permutation(p: &[Vec<i64>], q: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() || p.iter().chain(q).any(|r| r.len() != n) {
        return None;
    }
    fn bt(a: usize, p: &[Vec<i64>], q: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = p.len();
        if a == n {
            return true;
        }
        for b in 0..n {
            if used[b] || p[a][a] != q[b][b] {
                continue;
            }
            if (0..a).all(|c| p[a][c] == q[b][perm[c]]) {
                perm.push(b);
                used[b] = true;
                if bt(a + 1, p, q, perm, used) {
                    return true;
                }
                perm.pop();
                used[b] = false;
            }
        }
        false
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    bt(0, p, q, &mut perm, &mut used).then_some(perm)
}

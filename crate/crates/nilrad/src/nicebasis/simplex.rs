//! Exact two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Solves `max c·x` subject to `A x = b`, `x ≥ 0`.

use crate::scalar::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// rows: constraints, last column is the right-hand side
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for x in self.t[r].iter_mut() {
            *x = &*x / &p;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j − c_B B⁻¹ A_j` for the current basis.
    fn reduced(&self, cost: &[Rational], allowed: &dyn Fn(usize) -> bool) -> Vec<Option<Rational>> {
        (0..self.ncols)
            .map(|j| {
                if !allowed(j) || self.basis.contains(&j) {
                    return None;
                }
                let z = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |s, (r, &bj)| s + &cost[bj] * &self.t[r][j]);
                Some(&cost[j] - z)
            })
            .collect()
    }

    /// Maximizes `cost` with Bland's rule; returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &dyn Fn(usize) -> bool) -> bool {
        let rhs = self.ncols;
        loop {
            let red = self.reduced(cost, allowed);
            let Some(enter) = red.iter().position(|r| r.as_ref().is_some_and(Signed::is_positive)) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[r][rhs] / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lv)) => {
                        if ratio < lv || (ratio == lv && self.basis[r] < self.basis[lr]) {
                            Some((r, ratio))
                        } else {
                            Some((lr, lv))
                        }
                    }
                };
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpResult {
    let m = a.len();
    let n = c.len();
    // phase I: artificial columns n..n+m, rows sign-normalized so b ≥ 0
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let s = if b[i].is_negative() { -Rational::one() } else { Rational::one() };
        let mut row: Vec<Rational> = a[i].iter().map(|x| x * &s).collect();
        row.extend((0..m).map(|j| if j == i { Rational::one() } else { Rational::zero() }));
        row.push(&b[i] * &s);
        t.push(row);
    }
    let mut tab = Tableau { t, basis: (n..n + m).collect(), ncols: n + m };
    let mut cost1 = vec![Rational::zero(); n + m];
    for c1 in cost1.iter_mut().skip(n) {
        *c1 = -Rational::one();
    }
    tab.optimize(&cost1, &|_| true);
    let infeas = tab.t.iter().zip(&tab.basis).any(|(row, &bj)| bj >= n && !row[n + m].is_zero());
    if infeas {
        return LpResult::Infeasible;
    }
    // drive zero-level artificials out of the basis, dropping redundant rows
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, j);
                r += 1;
            } else {
                tab.t.remove(r);
                tab.basis.remove(r);
            }
        } else {
            r += 1;
        }
    }
    let mut cost2 = c.to_vec();
    cost2.extend((0..m).map(|_| Rational::zero()));
    if !tab.optimize(&cost2, &|j| j < n) {
        return LpResult::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &bj) in tab.basis.iter().enumerate() {
        if bj < n {
            x[bj] = tab.t[r][n + m].clone();
        }
    }
    let value = x.iter().zip(c).fold(Rational::zero(), |s, (xi, ci)| s + xi * ci);
    LpResult::Optimal { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_lp() {
        // max x + y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![q(&[1, 2, 1, 0]), q(&[3, 1, 0, 1])];
        match maximize(&a, &q(&[4, 6]), &q(&[1, 1, 0, 0])) {
            LpResult::Optimal { x, value } => {
                assert_eq!(value, Rational::new(14.into(), 5.into()));
                assert_eq!(&x[..2], &[Rational::new(8.into(), 5.into()), Rational::new(6.into(), 5.into())]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![q(&[1, 1]), q(&[1, 1])];
        assert_eq!(maximize(&a, &q(&[1, 2]), &q(&[0, 0])), LpResult::Infeasible);
        let a = vec![q(&[1, -1])];
        assert_eq!(maximize(&a, &q(&[1]), &q(&[1, 0])), LpResult::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = vec![q(&[1, 1]), q(&[2, 2])];
        match maximize(&a, &q(&[1, 2]), &q(&[1, 0])) {
            LpResult::Optimal { value, .. } => assert_eq!(value, int(1)),
            other => panic!("{other:?}"),
        }
    }
}

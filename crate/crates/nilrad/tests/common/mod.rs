//! Brute-force oracle for positive solutions of `Ux = [1]`, shared by test targets.
#![allow(clippy::needless_range_loop)]

use nilrad::scalar::int;
use nilrad::Rational;
use num_traits::{Signed, Zero};

/// Solves `a x = b` by exact elimination; `Some` iff consistent with a unique solution.
fn unique_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    let mut row = 0;
    for c in 0..cols {
        let p = (row..m.len()).find(|&i| !m[i][c].is_zero())?;
        m.swap(row, p);
        let piv = m[row][c].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let v = m[i][j].clone() - f.clone() * m[row][j].clone();
                    m[i][j] = v;
                }
            }
        }
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[c][cols].clone()).collect())
}

/// Does some `x` (of any sign) solve `Ux = 1`?
pub fn consistent(u: &[Vec<i64>]) -> bool {
    // a solvable system stays solvable on some column subset with a unique solution
    let n = u.len();
    (0u32..1 << n).any(|s| {
        let cols: Vec<usize> = (0..n).filter(|j| s >> j & 1 == 1).collect();
        let a: Vec<Vec<Rational>> = u.iter().map(|r| cols.iter().map(|&j| int(r[j])).collect()).collect();
        unique_solution(&a, &vec![int(1); n]).is_some()
    })
}

/// Positive solution exists iff the vertices and extreme rays of `{x ≥ 0, Ux = 1}`
/// jointly support every coordinate and at least one vertex exists.
pub fn brute_force_positive(u: &[Vec<i64>]) -> bool {
    let n = u.len();
    let mut covered = vec![false; n];
    let mut vertex = false;
    for s in 1u32..1 << n {
        let cols: Vec<usize> = (0..n).filter(|j| s >> j & 1 == 1).collect();
        let a: Vec<Vec<Rational>> = u.iter().map(|r| cols.iter().map(|&j| int(r[j])).collect()).collect();
        if let Some(x) = unique_solution(&a, &vec![int(1); n]) {
            if x.iter().all(|v| v.is_positive()) {
                vertex = true;
                cols.iter().for_each(|&j| covered[j] = true);
            }
        }
        // ray: Ur = 0, Σr = 1
        let mut ar = a.clone();
        ar.push(vec![int(1); cols.len()]);
        let mut br = vec![int(0); n];
        br.push(int(1));
        if let Some(r) = unique_solution(&ar, &br) {
            if r.iter().all(|v| v.is_positive()) {
                cols.iter().for_each(|&j| covered[j] = true);
            }
        }
    }
    vertex && covered.iter().all(|&c| c)
}

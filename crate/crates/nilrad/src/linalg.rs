//! Small dense linear algebra over a [`Scalar`], plus integer Hermite reduction.

use crate::scalar::{Rational, Scalar, ScalarKind};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix<S> = Vec<Vec<S>>;

pub fn identity<S: Scalar>(n: usize) -> Matrix<S> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect()
}

pub fn zeros<S: Scalar>(r: usize, c: usize) -> Matrix<S> {
    vec![vec![S::zero(); c]; r]
}

pub fn matmul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out: Matrix<S> = zeros(n, p);
    for i in 0..n {
        for k in 0..m {
            if a[i][k] == S::zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] = out[i][j].clone() + a[i][k].clone() * b[k][j].clone();
            }
        }
    }
    out
}

pub fn transpose<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    let c = a.first().map_or(0, Vec::len);
    (0..c).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec<S: Scalar>(a: &Matrix<S>, v: &[S]) -> Vec<S> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
        .collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn pivot_row<S: Scalar>(m: &Matrix<S>, from: usize, col: usize, tol: f64) -> Option<usize> {
    match S::KIND {
        ScalarKind::Exact => (from..m.len()).find(|&r| !m[r][col].is_zero_tol(tol)),
        ScalarKind::Float => {
            let best = (from..m.len()).max_by(|&a, &b| {
                m[a][col].as_f64().abs().total_cmp(&m[b][col].as_f64().abs())
            })?;
            (!m[best][col].is_zero_tol(tol)).then_some(best)
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<S: Scalar>(m: &mut Matrix<S>, tol: f64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pivot_row(m, r, c, tol) else { continue };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero_tol(0.0) {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                if m[r][j] != S::zero() {
                    let v = m[i][j].clone() - f.clone() * m[r][j].clone();
                    m[i][j] = v;
                }
            }
            if S::KIND == ScalarKind::Float {
                m[i][c] = S::zero();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(m: &Matrix<S>, tol: f64) -> usize {
    let mut a = m.clone();
    rref(&mut a, tol).len()
}

/// Basis of `{v : m v = 0}` with `ncols` unknowns, one vector per free column.
pub fn nullspace<S: Scalar>(m: &Matrix<S>, ncols: usize, tol: f64) -> Vec<Vec<S>> {
    let mut a = match S::KIND {
        ScalarKind::Exact => integer_rref(m),
        ScalarKind::Float => m.clone(),
    };
    // already reduced on the exact path; this just recovers the pivot columns
    let pivots = rref(&mut a, tol);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Reduced row echelon form of an exact matrix, computed fraction-free on primitive
/// integer rows (content divided out after every combination); zero rows are dropped.
///
/// Tall systems are first cut down to rows independent modulo a prime; the result is
/// accepted only if it annihilates every original row, else all rows are used.
fn integer_rref<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let cols = m.first().map_or(0, Vec::len);
    let mut all: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| primitive_integer(&r.iter().map(|x| x.as_rational().expect("exact scalar")).collect::<Vec<_>>()))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    all.sort();
    all.dedup();
    let picked = independent_rows_mod_p(&all, cols);
    if picked.len() < all.len() {
        let (rows, pivots) = integer_rref_rows(picked.iter().map(|&i| all[i].clone()).collect(), cols);
        if annihilates(&rows, &pivots, &all, cols) {
            return to_scalar_rows(&rows, &pivots);
        }
    }
    let (rows, pivots) = integer_rref_rows(all, cols);
    to_scalar_rows(&rows, &pivots)
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 − 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Indices of a maximal set of rows independent modulo [`PRIME`].
fn independent_rows_mod_p(rows: &[Vec<BigInt>], cols: usize) -> Vec<usize> {
    let p = BigInt::from(PRIME);
    let reduce = |x: &BigInt| -> u64 { x.mod_floor(&p).try_into().expect("reduced below 2^61") };
    // echelon basis keyed by pivot column, rows scaled to pivot 1
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, r) in rows.iter().enumerate() {
        let mut v: Vec<u64> = r.iter().map(reduce).collect();
        for (c, b) in &basis {
            let f = v[*c];
            if f != 0 {
                for j in 0..cols {
                    v[j] = (v[j] + PRIME - mulmod(f, b[j])) % PRIME;
                }
            }
        }
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let inv = powmod(v[c], PRIME - 2);
            v.iter_mut().for_each(|x| *x = mulmod(*x, inv));
            basis.push((c, v));
            picked.push(idx);
            if picked.len() == cols {
                break;
            }
        }
    }
    picked
}

/// Every row of `all` lies in the span of the integer RREF `(rows, pivots)`.
///
/// Rows of an RREF vanish at each other's pivots, so `r = Σ_k (r[p_k]/d_k)·rows_k` is
/// forced; only the free columns need checking, all scaled by `L = lcm d_k`.
fn annihilates(rows: &[Vec<BigInt>], pivots: &[usize], all: &[Vec<BigInt>], cols: usize) -> bool {
    let l = pivots.iter().zip(rows).fold(BigInt::one(), |acc, (&c, r)| acc.lcm(&r[c]));
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let scaled: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(pivots)
        .map(|(r, &c)| {
            let f = &l / &r[c];
            free.iter().map(|&j| &r[j] * &f).collect()
        })
        .collect();
    all.iter().all(|r| {
        free.iter().enumerate().all(|(fi, &j)| {
            let mut sum = BigInt::zero();
            for (s, &c) in scaled.iter().zip(pivots) {
                if !r[c].is_zero() && !s[fi].is_zero() {
                    sum += &r[c] * &s[fi];
                }
            }
            sum == &r[j] * &l
        })
    })
}

fn to_scalar_rows<S: Scalar>(rows: &[Vec<BigInt>], pivots: &[usize]) -> Matrix<S> {
    rows.iter()
        .zip(pivots)
        .map(|(r, &c)| {
            let d = &r[c];
            r.iter().map(|x| S::from_rational(&Rational::new(x.clone(), d.clone()))).collect()
        })
        .collect()
}

/// Fraction-free RREF of primitive integer rows: returns the nonzero rows and their pivots.
fn integer_rref_rows(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    for c in 0..cols {
        let done = pivots.len();
        if done == rows.len() {
            break;
        }
        // smallest pivot keeps entries small
        let Some(p) = (done..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].abs()) else {
            continue;
        };
        rows.swap(done, p);
        let (head, tail) = rows.split_at_mut(done + 1);
        let piv = &head[done];
        tail.iter_mut().for_each(|r| eliminate(r, piv, c));
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        pivots.push(c);
    }
    for (k, &c) in pivots.iter().enumerate().rev() {
        let (head, tail) = rows.split_at_mut(k);
        head.iter_mut().for_each(|r| eliminate(r, &tail[0], c));
    }
    rows.truncate(pivots.len());
    (rows, pivots)
}

/// `r ← a·r − b·piv` clearing column `c`, then divides out the content of `r`.
fn eliminate(r: &mut [BigInt], piv: &[BigInt], c: usize) {
    if r[c].is_zero() {
        return;
    }
    let g = piv[c].gcd(&r[c]);
    let (a, b) = (&piv[c] / &g, &r[c] / &g);
    for (x, y) in r.iter_mut().zip(piv) {
        *x = &*x * &a - y * &b;
    }
    let mut content = BigInt::zero();
    for x in r.iter().filter(|x| !x.is_zero()) {
        content = content.gcd(x);
        if content.is_one() {
            return;
        }
    }
    if !content.is_zero() {
        r.iter_mut().for_each(|x| *x /= &content);
    }
}

/// Row basis (RREF rows) of the span of `vecs`.
pub fn row_basis<S: Scalar>(vecs: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut a = vecs.to_vec();
    let k = rref(&mut a, tol).len();
    a.truncate(k);
    a
}

pub fn inverse<S: Scalar>(m: &Matrix<S>, tol: f64) -> Option<Matrix<S>> {
    let n = m.len();
    let mut a: Matrix<S> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            row
        })
        .collect();
    let piv = rref(&mut a, tol);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `a x = b`; returns one solution (free variables zero) or `None` if inconsistent.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &[S], tol: f64) -> Option<Vec<S>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Matrix<S> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let piv = rref(&mut aug, tol);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![S::zero(); n];
    for (r, &p) in piv.iter().enumerate() {
        x[p] = aug[r][n].clone();
    }
    Some(x)
}

pub fn to_f64_matrix<S: Scalar>(m: &Matrix<S>) -> Matrix<f64> {
    m.iter().map(|r| r.iter().map(Scalar::as_f64).collect()).collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Row-style Hermite normal form of an integer matrix; zero rows are dropped.
/// Pivots are positive and entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let nz: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in 0..cols {
                    let t = &a[r][j] * &q;
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let t = &a[r][j] * &q;
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

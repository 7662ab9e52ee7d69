use nilrad::catalog::{shipped, Instance};
use nilrad::degeneration::{candidates, compare, in_g_phi, one_param_limit, Invariants, Limit};
use nilrad::derivations::{derivation_space, pre_einstein};
use nilrad::linalg::{matmul, Matrix};
use nilrad::nicebasis::{gram_matrix, is_nice, positive_solution, satisfies, PositiveSolution};
use nilrad::ricci::moment_map;
use nilrad::scalar::{int, rat};
use nilrad::{act, jacobi_violations, LieLaw, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

mod common;
use common::{brute_force_positive, consistent};
use std::sync::OnceLock;

fn catalog() -> &'static [Instance] {
    static C: OnceLock<Vec<Instance>> = OnceLock::new();
    C.get_or_init(shipped)
}

fn exact_laws() -> Vec<&'static LieLaw<Rational>> {
    catalog().iter().filter_map(|i| i.law.as_exact()).collect()
}

/// Unit lower times unit upper triangular with small integer entries, times a rational diagonal.
fn rational_g(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec((1i64..=3, 1i64..=3), n),
    )
        .prop_map(move |(l, u, d)| {
            let lo: Matrix<Rational> = (0..n)
                .map(|i| (0..n).map(|j| if i == j { int(1) } else if j < i { int(l[i * n + j]) } else { int(0) }).collect())
                .collect();
            let up: Matrix<Rational> = (0..n)
                .map(|i| (0..n).map(|j| if i == j { rat(d[i].0, d[i].1) } else if j > i { int(u[i * n + j]) } else { int(0) }).collect())
                .collect();
            matmul(&lo, &up)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn action_composes(idx in 0usize..1000, g in rational_g(7), h in rational_g(7)) {
        let laws = exact_laws();
        let law = laws[idx % laws.len()];
        let left = act(&g, &act(&h, law).unwrap()).unwrap();
        let right = act(&matmul(&g, &h), law).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn invariants_survive_change_of_basis(idx in 0usize..1000, g in rational_g(7)) {
        let laws = exact_laws();
        let law = laws[idx % laws.len()];
        let moved = act(&g, law).unwrap();
        let (a, b) = (Invariants::of(law), Invariants::of(&moved));
        prop_assert_eq!(&a.series, &b.series);
        prop_assert_eq!(a.dim_der, b.dim_der);
        prop_assert!(compare(&a, &b).is_empty(), "{:?}", compare(&a, &b));
    }
}

// --- positive solutions of Ux = [1] against vertex/ray enumeration ---

fn check_lp(u: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let got = positive_solution(u);
    let want = brute_force_positive(u);
    match &got {
        PositiveSolution::Positive { x } => {
            prop_assert!(want, "LP found {x:?} for {u:?}, enumeration did not");
            prop_assert!(satisfies(u, x));
            prop_assert!(x.iter().all(|v| v.is_positive()));
        }
        PositiveSolution::NoPositiveSolution => {
            prop_assert!(!want, "{u:?}");
            prop_assert!(consistent(u), "{u:?}");
        }
        PositiveSolution::Inconsistent => {
            prop_assert!(!want && !consistent(u), "{u:?}");
        }
    }
    Ok(())
}

#[test]
fn lp_matches_enumeration_on_catalog() {
    let mut seen = 0;
    for inst in catalog() {
        let Ok(ws) = is_nice(&inst.law.to_float()) else { continue };
        let u = gram_matrix(&ws);
        if u.len() > 10 {
            continue;
        }
        check_lp(&u).unwrap_or_else(|e| panic!("{}: {e}", inst.id));
        seen += 1;
    }
    assert!(seen > 50, "{seen}");
}

fn symmetric(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            (0..n).map(|i| (0..n).map(|j| if i <= j { v[i * n + j] } else { v[j * n + i] }).collect()).collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lp_matches_enumeration_on_random(u in symmetric(4)) {
        check_lp(&u)?;
    }
}

// --- moment map ---

fn rotation(n: usize, angles: &[(usize, usize, f64)]) -> Matrix<f64> {
    let mut g: Matrix<f64> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for &(a, b, t) in angles {
        let (a, b) = (a % n, b % n);
        if a == b {
            continue;
        }
        let mut r: Matrix<f64> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        r[a][a] = t.cos();
        r[b][b] = t.cos();
        r[a][b] = -t.sin();
        r[b][a] = t.sin();
        g = matmul(&r, &g);
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn moment_map_is_equivariant(idx in 0usize..1000, angles in prop::collection::vec((0usize..7, 0usize..7, -3.2f64..3.2), 1..12)) {
        let insts = catalog();
        let law = insts[idx % insts.len()].law.to_float();
        let n = law.dim();
        let g = rotation(n, &angles);
        let moved = act(&g, &law).unwrap();
        let m = moment_map(&law).m;
        let gt: Matrix<f64> = (0..n).map(|i| (0..n).map(|j| g[j][i]).collect()).collect();
        let conj = matmul(&matmul(&g, &m), &gt);
        let mm = moment_map(&moved).m;
        for i in 0..n {
            for j in 0..n {
                prop_assert!((conj[i][j] - mm[i][j]).abs() < 1e-8, "({i},{j}): {} vs {}", conj[i][j], mm[i][j]);
            }
        }
    }
}

#[test]
fn moment_map_scales_quadratically() {
    for law in exact_laws() {
        let m = moment_map(law).m;
        for s in [2, 3] {
            let ms = moment_map(&law.scale(&int(s))).m;
            for (r, rs) in m.iter().zip(&ms) {
                for (a, b) in r.iter().zip(rs) {
                    assert_eq!(a.clone() * int(s * s), b.clone());
                }
            }
        }
    }
}

#[test]
fn trace_identity_on_catalog() {
    for inst in catalog() {
        if let Some(law) = inst.law.as_exact() {
            assert_eq!(moment_map(law).trace(), int(-2) * law.norm_sq(), "{}", inst.id);
        } else {
            let law = inst.law.to_float();
            assert!((moment_map(&law).trace() + 2.0 * law.norm_sq()).abs() < 1e-9, "{}", inst.id);
        }
    }
}

// --- degenerations ---

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn limits_satisfy_jacobi(idx in 0usize..1000, x in prop::collection::vec(-3i64..=3, 7)) {
        let laws = exact_laws();
        let law = laws[idx % laws.len()];
        let x: Vec<Rational> = x.into_iter().map(int).collect();
        if let Ok(Limit::Law(lim)) = one_param_limit(law, &x, None) {
            prop_assert!(jacobi_violations(&lim).is_empty(), "{lim}");
            prop_assert!(lim.len() <= law.len());
        }
    }

    #[test]
    fn search_pool_stays_in_g_phi(idx in 0usize..1000, seed in any::<u64>()) {
        let laws = exact_laws();
        let law = laws[idx % laws.len()];
        let Ok(phi) = pre_einstein(law, &derivation_space(law)) else { return Ok(()) };
        for x in candidates(&phi, 8, seed, &[]) {
            prop_assert!(in_g_phi(&x, &phi, 0.0));
        }
    }
}

#[test]
fn limit_of_zero_flow_is_the_law() {
    for law in exact_laws() {
        let x = vec![Rational::zero(); law.dim()];
        assert_eq!(one_param_limit(law, &x, None), Ok(Limit::Law(law.clone())));
    }
}

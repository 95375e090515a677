use cyclowenzl::combinat::{all_shapes, count_updown, default_u, enumerate_updown, Multipartition};
use cyclowenzl::numeric::{real_to_f64, residual_tolerance, Matrix, Real};
use cyclowenzl::params::{wk_partial_fractions, ParamSet};
use cyclowenzl::rat::{q, qf};
use cyclowenzl::seminormal::*;
use cyclowenzl::{Error, Q};
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

const PREC: usize = 256;

fn mp(c: Vec<Vec<usize>>) -> Multipartition {
    Multipartition::new(c).unwrap()
}

fn to_f64(m: &Matrix<Real>) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(real_to_f64).collect()).collect()
}

fn mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn dist(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn relation_suite() {
    for r in 1..=3 {
        for n in 1..=4 {
            let ps = ParamSet::default_for(r, n);
            let reps = build_all(r, n, &ps, PREC).unwrap();
            let rep = verify_relations(&reps, &ps).unwrap();
            assert!(rep.passes(PREC), "r={r} n={n}: {rep:?}");
            let tol = residual_tolerance(PREC);
            for (name, f) in &rep.families {
                assert!(f.exact_zero || f.max_scaled < tol, "{name}");
            }
            assert!(rep.family(FAMILY_CYCLOTOMIC).is_some());
            if n >= 2 {
                assert!(rep.family(FAMILY_ANTISYM).unwrap().exact_zero);
                assert!(rep.family(FAMILY_E_SQUARE).is_some());
            }
            if n >= 3 {
                assert!(rep.family(FAMILY_BRAID).is_some());
            }
            if n >= 2 && r >= 2 {
                assert!(rep.family(FAMILY_UNWRAP).is_some());
            }
        }
    }
}

/// A few relations recomputed in plain `f64` products as a cross-check of
/// the residual bookkeeping.
#[test]
fn relations_in_double_precision() {
    let ps = ParamSet::default_for(2, 3);
    let w0 = cyclowenzl::numeric::Scalar::to_f64(&ps.omega[0]);
    for rep in build_all(2, 3, &ps, 128).unwrap() {
        let s: Vec<_> = rep.gens.s.iter().map(to_f64).collect();
        let e: Vec<_> = rep.gens.e.iter().map(to_f64).collect();
        let x: Vec<_> = rep.gens.x.iter().map(to_f64).collect();
        let d = rep.dim();
        let id: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let scale = 1.0 + x.iter().flatten().flatten().map(|v| v.abs()).fold(0.0, f64::max).powi(2);
        let tol = 1e-9 * scale;
        for i in 0..2 {
            assert!(dist(&mul(&s[i], &s[i]), &id) < tol);
            let ee = mul(&e[i], &e[i]);
            let we: Vec<Vec<f64>> = e[i].iter().map(|row| row.iter().map(|v| v * w0).collect()).collect();
            assert!(dist(&ee, &we) < tol * w0.abs().max(1.0));
            assert!(dist(&mul(&e[i], &s[i]), &e[i]) < tol);
        }
        let lhs = mul(&mul(&s[0], &s[1]), &s[0]);
        let rhs = mul(&mul(&s[1], &s[0]), &s[1]);
        assert!(dist(&lhs, &rhs) < tol);
        // S_1 X_1 - X_2 S_1 = E_1 - 1
        let skein_l: Vec<Vec<f64>> = mul(&s[0], &x[0]).iter().zip(mul(&x[1], &s[0])).map(|(a, b)| a.iter().zip(b).map(|(p, q)| p - q).collect()).collect();
        let skein_r: Vec<Vec<f64>> = e[0].iter().zip(&id).map(|(a, b)| a.iter().zip(b).map(|(p, q)| p - q).collect()).collect();
        assert!(dist(&skein_l, &skein_r) < tol);
    }
}

#[test]
fn matrices_are_symmetric_and_diagonal() {
    for (r, n) in [(1, 4), (2, 3), (3, 3)] {
        let ps = ParamSet::default_for(r, n);
        for rep in build_all(r, n, &ps, 128).unwrap() {
            for m in rep.gens.s.iter().chain(&rep.gens.e) {
                assert_eq!(m.transpose(), *m);
            }
            for (j, x) in rep.gens.x.iter().enumerate() {
                for (i, t) in rep.coeffs.tableaux.iter().enumerate() {
                    for c in 0..rep.dim() {
                        if c != i {
                            assert!(x.get(i, c).repr().is_zero());
                        }
                    }
                    let want = cyclowenzl::numeric::real_from_q(&t.content(j + 1, &ps.u), 128);
                    assert_eq!(*x.get(i, i), want);
                }
            }
            let f = count_updown(r, n, rep.lambda()).unwrap();
            assert_eq!(BigUint::from(rep.dim()), f);
        }
    }
}

#[test]
fn coefficient_tables() {
    for r in 1..=2 {
        for n in 2..=4 {
            let ps = ParamSet::from_u(default_u(r, n), 16, 128);
            for lambda in all_shapes(r, n) {
                let co = SemiCoeffs::new(&lambda, n, &ps).unwrap();
                for k in 1..n {
                    for (i, t) in co.tableaux.iter().enumerate() {
                        match &co.steps[k - 1][i] {
                            StepCoeff::Return { e } => {
                                assert!(e.is_positive());
                                let c = t.content(k, &ps.u);
                                let pf = wk_partial_fractions(t, k, &ps).unwrap();
                                let res = pf.iter().find(|(x, _)| *x == c).map(|(_, v)| v.clone()).unwrap();
                                assert_eq!(&res, e, "residue oracle");
                                assert_eq!(&e_diag(t, k, &ps).unwrap(), e);
                            }
                            StepCoeff::Move { a, b_sq, partner } => {
                                assert!(a.abs() <= Q::one());
                                assert_eq!(b_sq, &(Q::one() - a * a));
                                assert_eq!(b_sq.is_zero(), partner.is_none());
                                assert!(e_diag(t, k, &ps).is_err());
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn exact_identities() {
    for r in 1..=2 {
        for n in 1..=4 {
            let ps = ParamSet::default_for(r, n);
            let mut total = IdentityReport::default();
            for lambda in all_shapes(r, n) {
                total.merge(&check_identities(&lambda, n, &ps).unwrap());
            }
            assert!(total.ok(), "r={r} n={n}: {:?}", total.failures);
            if n >= 2 {
                assert!(total.checked.get("identity_a").copied().unwrap_or(0) > 0);
            }
        }
    }
}

#[test]
fn identity_a_by_substitution() {
    let u1 = qf(9, 2);
    let ps = ParamSet::from_u(vec![u1.clone()], 8, 64);
    let t = &enumerate_updown(2, &Multipartition::empty(1)).unwrap()[0];
    let e = e_diag(t, 1, &ps).unwrap();
    assert_eq!(e, q(2) * &u1 + Q::one());
    assert_eq!(&e / (q(2) * &u1), Q::one() + Q::one() / (q(2) * &u1));
}

#[test]
fn build_rep_examples() {
    let ps = ParamSet::from_u(vec![qf(3, 2)], 12, 128);
    assert_eq!(e_diag(&enumerate_updown(2, &Multipartition::empty(1)).unwrap()[0], 1, &ps).unwrap(), q(4));

    let ps = ParamSet::default_for(1, 2);
    let rep = build_rep(&Multipartition::empty(1), 2, &ps, 128).unwrap();
    let f = |m: &Matrix<Real>| real_to_f64(m.get(0, 0));
    assert_eq!(f(&rep.gens.s[0]), 1.0);
    assert_eq!(f(&rep.gens.e[0]), cyclowenzl::numeric::Scalar::to_f64(&ps.omega[0]));
    assert_eq!(f(&rep.gens.x[0]), cyclowenzl::numeric::Scalar::to_f64(&ps.u[0]));
    assert_eq!(f(&rep.gens.x[1]), -cyclowenzl::numeric::Scalar::to_f64(&ps.u[0]));

    let ps = ParamSet::default_for(2, 2);
    let rep = build_rep(&mp(vec![vec![1], vec![1]]), 2, &ps, 128).unwrap();
    let a = cyclowenzl::numeric::Scalar::to_f64(&(Q::one() / (&ps.u[1] - &ps.u[0])));
    let s = to_f64(&rep.gens.s[0]);
    let b = (1.0 - a * a).sqrt();
    assert!((s[0][0].abs() - a.abs()).abs() < 1e-12);
    assert!((s[0][1] - b).abs() < 1e-12 && (s[1][0] - b).abs() < 1e-12);
    assert!((s[0][0] + s[1][1]).abs() < 1e-12);
    assert!(rep.gens.e[0].is_zero());
}

#[test]
fn one_dimensional_modules() {
    let ps = ParamSet::default_for(2, 3);
    for rep in build_all(2, 3, &ps, 128).unwrap() {
        if rep.dim() == 1 {
            for s in &rep.gens.s {
                let v = real_to_f64(s.get(0, 0));
                assert!(v == 1.0 || v == -1.0);
            }
        }
    }
}

#[test]
fn regime_is_enforced() {
    let bad = ParamSet::from_u(vec![q(1), q(1)], 8, 256);
    assert!(matches!(build_rep(&Multipartition::empty(2), 2, &bad, 128), Err(Error::Regime(_) | Error::NotGeneric(_))));
    assert!(matches!(check_regime(&bad, 2), Err(Error::Regime(_))));
    assert!(check_regime(&ParamSet::default_for(3, 4), 4).is_ok());
}

#[test]
fn branching() {
    for r in 1..=2 {
        for n in 2..=4 {
            let ps = ParamSet::default_for(r, n);
            for rep in build_all(r, n, &ps, PREC).unwrap() {
                let blocks = branching_blocks(&rep).unwrap();
                let lambda = rep.lambda().clone();
                for (mu, idx) in &blocks {
                    assert_eq!(BigUint::from(idx.len()), count_updown(r, n - 1, mu).unwrap());
                    let diff = lambda.size() as isize - mu.size() as isize;
                    assert_eq!(diff.abs(), 1);
                }
                let sum: usize = blocks.values().map(Vec::len).sum();
                assert_eq!(sum, rep.dim());
                let off = off_block_residual(&rep, &blocks);
                assert!(off < residual_tolerance(PREC), "off-block {off}");
            }
        }
    }
    let ps = ParamSet::default_for(2, 2);
    let rep = build_rep(&mp(vec![vec![1], vec![1]]), 2, &ps, 128).unwrap();
    let blocks = branching_blocks(&rep).unwrap();
    let keys: Vec<_> = blocks.keys().cloned().collect();
    assert_eq!(keys.len(), 2);
    assert!(keys.contains(&mp(vec![vec![1], vec![]])) && keys.contains(&mp(vec![vec![], vec![1]])));
}

#[test]
fn commutant_is_scalar() {
    for (r, n) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let ps = ParamSet::default_for(r, n);
        for rep in build_all(r, n, &ps, 128).unwrap() {
            if rep.dim() <= 8 {
                assert_eq!(commutant_dimension(&rep.gens, 128), 1, "{}", rep.lambda());
            }
        }
    }
}

#[test]
fn exe_at_matrix_level() {
    for r in 1..=3 {
        let n = 3;
        let ps = ParamSet::default_for(r, n);
        for rep in build_all(r, n, &ps, PREC).unwrap() {
            assert!(check_exe(&rep, &ps).unwrap().passes(PREC));
        }
    }
}

fn load(name: &str) -> ModuleFile {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn fixture_files_are_exact() {
    for name in ["e0_line.json", "e0_plane.json", "nonsemisimple_r2.json", "nonsemisimple_r3.json"] {
        let m = load(name);
        let rep = m.check().unwrap();
        assert!(rep.all_exact(), "{name}: {rep:?}");
        assert!(rep.families.values().all(|f| f.max_residual == 0.0));
    }
    for r in [2, 3] {
        let g = load(&format!("nonsemisimple_r{r}.json")).matrices().unwrap();
        let shifted = g.x[0].sub(&Matrix::identity(2, 0).scale(&qf(1, 4))).unwrap();
        assert!(!shifted.is_zero());
        assert!(shifted.mul(&shifted).unwrap().is_zero());
    }
    assert!(fixture_nonsemisimple(4).is_err());
}

#[test]
fn fixture_plane_family() {
    let u = vec![qf(3, 2), q(-5)];
    let om = ParamSet::from_u(u.clone(), 4, 64).omega;
    for b in [q(1), qf(-2, 7), q(11)] {
        assert!(fixture_e0_plane(&u, &om, 0, 1, b).check().unwrap().all_exact());
    }
    for i in 0..2 {
        for eps in [1, -1] {
            assert!(fixture_e0_line(&u, &om, i, eps).check().unwrap().all_exact());
        }
    }
    let mut broken = fixture_e0_plane(&u, &om, 0, 1, q(3));
    broken.x[0][0][0] = "0".into();
    assert!(!broken.check().unwrap().all_exact());
}

#[test]
fn json_export() {
    let ps = ParamSet::default_for(2, 2);
    let rep = build_rep(&mp(vec![vec![1], vec![1]]), 2, &ps, 128).unwrap();
    let v = rep.to_json();
    let text = serde_json::to_string(&v).unwrap();
    assert!(text.contains("\"S\"") || text.contains("\"s\""), "{text}");
}

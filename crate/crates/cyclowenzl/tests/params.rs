use cyclowenzl::combinat::{all_shapes, default_u, enumerate_updown};
use cyclowenzl::params::*;
use cyclowenzl::rat::{as_integer, half, pow, q, qf};
use cyclowenzl::{Error, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Newton-style oracle: `a q_a = Σ_{k odd, k ≤ a} 2 p_k q_{a-k}`, from the
/// logarithmic derivative of `∏ (1 + x y)/(1 - x y)`.
fn schur_q_newton(a: usize, x: &[Q]) -> Q {
    let p = |k: usize| -> Q { x.iter().map(|v| pow(v, k)).sum() };
    let mut qs = vec![Q::one()];
    for m in 1..=a {
        let mut s = Q::zero();
        for k in (1..=m).step_by(2) {
            s += q(2) * p(k) * &qs[m - k];
        }
        qs.push(s / q(m as i64));
    }
    qs.swap_remove(a)
}

fn sample_u(r: usize) -> Vec<Q> {
    [qf(3, 2), q(-5), qf(7, 3), q(-11), qf(1, 4)][..r].to_vec()
}

#[test]
fn schur_q_matches_newton_oracle() {
    for r in 1..=4 {
        let x = sample_u(r);
        for a in 0..=10 {
            assert_eq!(schur_q(a, &x), schur_q_newton(a, &x), "r={r} a={a}");
        }
    }
}

#[test]
fn omega_constant_terms() {
    for r in 1..=4 {
        let u = sample_u(r);
        let s: Q = u.iter().sum();
        let expect = if r % 2 == 1 { q(2) * s + Q::one() } else { q(2) * s };
        assert_eq!(omega_value(&u, 0), expect);
    }
}

#[test]
fn omega_matches_residue_form() {
    for r in 1..=4 {
        let u = sample_u(r);
        for a in 0..=10 {
            assert_eq!(omega_value(&u, a), omega_residue_form(&u, a).unwrap(), "r={r} a={a}");
        }
    }
    assert!(omega_residue_form(&[q(1), q(1)], 0).is_err());
}

#[test]
fn omega_integral_for_integer_u() {
    for r in 1..=4 {
        for n in 1..=3 {
            let u = default_u(r, n);
            for a in 0..=12 {
                assert!(as_integer(&omega_value(&u, a)).is_some());
            }
        }
    }
}

#[test]
fn derived_omega_is_admissible() {
    for r in 1..=4 {
        for u in [sample_u(r), default_u(r, 3)] {
            let ps = ParamSet::from_u(u, 12, 256);
            let adm = check_admissible(&ps.omega);
            assert!(adm.admissible, "r={r}");
            assert_eq!(adm.checked, 6);
        }
    }
}

#[test]
fn admissibility_detects_failure() {
    let mut bad = vec![Q::zero(); 6];
    bad[0] = Q::one();
    bad[1] = q(5);
    assert_eq!(check_admissible(&bad).first_failure, Some(0));
    let ps = ParamSet::from_u(sample_u(2), 12, 256);
    let mut om = ps.omega.clone();
    om[7] += Q::one();
    assert_eq!(check_admissible(&om).first_failure, Some(3));
}

#[test]
fn quadratic_sequence_is_admissible() {
    let mut om = vec![Q::one(), Q::zero()];
    for a in 0..30 {
        let next = half() * &om[a + 1] - qf(1, 16) * &om[a];
        om.push(next);
    }
    assert!(check_admissible(&om).admissible);
    assert!(w1_product_identity(&om, 30));
}

#[test]
fn brauer_specialization() {
    for w in [q(4), qf(-7, 3), qf(5, 2)] {
        let u = vec![(&w - Q::one()) * half()];
        for a in 0..=10 {
            assert_eq!(omega_value(&u, a), &w * pow(&u[0], a));
        }
    }
}

#[test]
fn truncation_is_enforced() {
    let ps = ParamSet::from_u(sample_u(2), 5, 256);
    assert!(omega_from_u(&ps, 5).is_ok());
    assert!(matches!(omega_from_u(&ps, 6), Err(Error::Truncation { .. })));
    assert_eq!(default_trunc(2, 3), 16);
}

#[test]
fn w1_expansion_identity() {
    for r in 1..=4 {
        let ps = ParamSet::from_u(sample_u(r), 14, 256);
        assert!(w1_identity_check(&ps, 14).unwrap());
        assert!(w1_product_identity(&ps.omega, 14));
    }
}

#[test]
fn residues_and_recursion() {
    for r in 1..=2 {
        for n in 1..=4 {
            let ps = ParamSet::from_u(default_u(r, n), 16, 256);
            for lambda in all_shapes(r, n) {
                for t in enumerate_updown(n, &lambda).unwrap() {
                    for k in 1..=n {
                        assert!(w_residue_check(&t, k, &ps).unwrap());
                        let pf = wk_partial_fractions(&t, k, &ps).unwrap();
                        assert!(pf.iter().all(|(_, res)| !res.is_zero()));
                        let rat = wk_rational(&t, k, &ps).unwrap();
                        assert_eq!(wk_recursive_rational(&t, k, &ps).unwrap(), rat);
                        assert!(wk_recursive(&t, k, &ps, 16).unwrap().agrees(&rat.expand(16)));
                        // W_k / y vanishes at infinity
                        let over_y = rat.div(&RationalFunction::from_poly(Poly::y())).unwrap();
                        assert!(over_y.num().degree() < over_y.den().degree());
                    }
                    // W_1 agrees with the Ω series
                    assert!(rat_matches_omega(&t, &ps));
                }
            }
        }
    }
}

fn rat_matches_omega(t: &cyclowenzl::combinat::UpDownTableau, ps: &ParamSet) -> bool {
    let s = wk_rational(t, 1, ps).unwrap().expand(12);
    (0..=12).all(|a| s.coeff(-(a as i64)) == ps.omega[a])
}

#[test]
fn partial_fractions_rebuild_the_function() {
    let ps = ParamSet::default_for(2, 3);
    for lambda in all_shapes(2, 3) {
        for t in enumerate_updown(3, &lambda).unwrap() {
            for k in 1..=3 {
                let pf = wk_partial_fractions(&t, k, &ps).unwrap();
                let mut sum = RationalFunction::constant(Q::zero());
                for (c, res) in &pf {
                    let term = RationalFunction::new(Poly::constant(res.clone()), Poly::linear(c)).unwrap();
                    sum = sum.add(&term);
                }
                let w = wk_rational(&t, k, &ps).unwrap();
                assert_eq!(sum.mul(&RationalFunction::from_poly(Poly::y())), w);
            }
        }
    }
}

#[test]
fn collisions_are_errors() {
    let ps = ParamSet::from_u(vec![q(1), q(2)], 8, 256);
    let lam = cyclowenzl::combinat::Multipartition::empty(2);
    let t = &enumerate_updown(2, &lam).unwrap()[0];
    assert!(matches!(wk_rational(t, 2, &ps), Err(Error::NotGeneric(_))));
}

#[test]
fn param_config_parses() {
    let cfg: ParamConfig = serde_json::from_str(r#"{"r": 2, "u": ["3/2", "-5"], "N": 12, "precision_bits": 128}"#).unwrap();
    assert_eq!(cfg.trunc, Some(12));
    assert_eq!(cfg.u.unwrap().len(), 2);
}

proptest! {
    #[test]
    fn random_u_is_admissible(nums in proptest::collection::vec((-30i64..30, 1i64..6), 1..5)) {
        let u: Vec<Q> = nums.iter().map(|&(a, b)| qf(a, b)).collect();
        let om: Vec<Q> = (0..=11).map(|a| omega_value(&u, a)).collect();
        prop_assert!(check_admissible(&om).admissible);
        prop_assert!(w1_product_identity(&om, 11));
        for a in 0..=6 {
            prop_assert_eq!(schur_q(a, &u), schur_q_newton(a, &u));
        }
    }
}

//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use cyclowenzl::combinat::{
    all_shapes, count_updown, default_u, double_factorial_odd, enumerate_updown, factorial, multipartitions,
    standard_tableaux, Multipartition,
};
use cyclowenzl::hecke::{
    det, gamma, gamma_all_paths, gamma_product, gram_matrix, is_semisimple, m_lambda_square_check,
    m_lambda_square_scalar, nilpotent_renumbering, HeckeAlgebra, MurphyBasis,
};
use cyclowenzl::numeric::Matrix;
use cyclowenzl::params::{
    check_admissible, omega_value, w_residue_check, wk_rational, wk_recursive_rational, ParamSet,
};
use cyclowenzl::rat::{half, pow, q, qf};
use cyclowenzl::seminormal::{
    branching_blocks, build_all, check_identities, fixture_e0_line, fixture_e0_plane, fixture_nonsemisimple, off_block_residual,
    quadratic_omega, verify_relations, IdentityReport, ModuleFile,
};
use cyclowenzl::wcell::{cellular_count, cellular_rank_report, enumerate_r_regular};
use cyclowenzl::Q;
use num_bigint::BigUint;
use num_traits::{One, Zero};

const PRECISION: usize = 256;
/// `2^{-216}`: relation residuals are compared as `residual / dim` against it.
const RELATION_TOL: f64 = 1.0 / (1u128 << 108) as f64 / (1u128 << 108) as f64;
/// Branching off-block entries, absolute.
const OFF_BLOCK_TOL: f64 = RELATION_TOL;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn target(r: usize, n: usize) -> BigUint {
    BigUint::from(r).pow(n as u32) * double_factorial_odd(n)
}

fn counting_identity() -> Outcome {
    let mut cases = 0;
    for r in 1..=3 {
        for n in 0..=6 {
            let mut total = BigUint::zero();
            for l in all_shapes(r, n) {
                let f = count_updown(r, n, &l).map_err(|e| e.to_string())?;
                total += &f * &f;
            }
            ensure(total == target(r, n), || format!("r={r} n={n}: {total} != {}", target(r, n)))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (r,n) pairs"))
}

fn updown_formula() -> Outcome {
    let mut shapes = 0;
    for r in 1..=3 {
        for n in 0..=6 {
            for l in all_shapes(r, n) {
                let f = count_updown(r, n, &l).map_err(|e| e.to_string())?;
                let listed = enumerate_updown(n, &l).map_err(|e| e.to_string())?.len();
                ensure(f == BigUint::from(listed), || format!("r={r} n={n} {l}: {f} vs {listed}"))?;
                shapes += 1;
            }
        }
    }
    Ok(format!("{shapes} shapes"))
}

fn regular_census() -> Outcome {
    for r in 1..=3 {
        for n in 0..=4 {
            let m = enumerate_r_regular(r, n);
            ensure(BigUint::from(m.len()) == target(r, n), || format!("r={r} n={n}: {}", m.len()))?;
            ensure(m.iter().all(|x| x.is_r_regular(r)), || format!("r={r} n={n}: irregular monomial"))?;
        }
    }
    Ok("r<=3, n<=4".into())
}

fn relation_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    for r in 1..=3 {
        for n in 1..=4 {
            let ps = ParamSet::default_for(r, n);
            let reps = build_all(r, n, &ps, PRECISION).map_err(|e| e.to_string())?;
            let rep = verify_relations(&reps, &ps).map_err(|e| e.to_string())?;
            for (name, f) in &rep.families {
                ensure(f.exact_zero || f.max_scaled < RELATION_TOL, || {
                    format!("r={r} n={n} {name}: {:e}", f.max_scaled)
                })?;
                worst = worst.max(f.max_scaled);
            }
        }
    }
    Ok(format!("max residual/dim {worst:e} < {RELATION_TOL:e}"))
}

fn identity_suite() -> Outcome {
    let mut ids = IdentityReport::default();
    let mut rational = 0;
    for r in 1..=2 {
        for n in 1..=4 {
            let ps = ParamSet::default_for(r, n);
            for l in all_shapes(r, n) {
                ids.merge(&check_identities(&l, n, &ps).map_err(|e| e.to_string())?);
                for t in enumerate_updown(n, &l).map_err(|e| e.to_string())? {
                    for k in 1..=n {
                        let res = w_residue_check(&t, k, &ps).map_err(|e| e.to_string())?;
                        ensure(res, || format!("w-residue fails at {t}, k={k}"))?;
                        let a = wk_rational(&t, k, &ps).map_err(|e| e.to_string())?;
                        let b = wk_recursive_rational(&t, k, &ps).map_err(|e| e.to_string())?;
                        ensure(a == b, || format!("W != W~ at {t}, k={k}"))?;
                        rational += 1;
                    }
                }
            }
        }
    }
    ensure(ids.ok(), || ids.failures.join("; "))?;
    let total: usize = ids.checked.values().sum();
    Ok(format!("{total} coefficient identities, {rational} rational-function pairs"))
}

fn admissibility() -> Outcome {
    let samples = [qf(3, 2), q(-5), qf(7, 3), q(-11)];
    for r in 1..=4 {
        for u in [samples[..r].to_vec(), default_u(r, 3)] {
            let om: Vec<Q> = (0..=12).map(|a| omega_value(&u, a)).collect();
            let adm = check_admissible(&om);
            ensure(adm.admissible, || format!("r={r}: fails at {:?}", adm.first_failure))?;
        }
    }
    ensure(check_admissible(&quadratic_omega(24)).admissible, || "quadratic recursion".into())?;
    for w in [q(4), qf(-7, 3), q(11)] {
        let u = vec![(&w - Q::one()) * half()];
        for a in 0..=10 {
            ensure(omega_value(&u, a) == &w * pow(&u[0], a), || format!("Brauer ω={w}, a={a}"))?;
        }
    }
    Ok("derived, quadratic-recursion and Brauer sequences".into())
}

fn fixtures() -> Outcome {
    let u = vec![qf(3, 2), q(-5)];
    let om = ParamSet::from_u(u.clone(), 4, 64).omega;
    let mut files: Vec<ModuleFile> = vec![fixture_e0_line(&u, &om, 1, -1), fixture_e0_plane(&u, &om, 0, 1, q(3))];
    for r in [2, 3] {
        files.push(fixture_nonsemisimple(r).map_err(|e| e.to_string())?);
    }
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["e0_line.json", "e0_plane.json", "nonsemisimple_r2.json", "nonsemisimple_r3.json"] {
        let text = std::fs::read_to_string(format!("{dir}/{name}")).map_err(|e| e.to_string())?;
        files.push(serde_json::from_str(&text).map_err(|e| e.to_string())?);
    }
    for f in &files {
        let rep = f.check().map_err(|e| e.to_string())?;
        ensure(rep.all_exact(), || format!("{}: nonzero residual", f.name))?;
    }
    for r in [2, 3] {
        let g = fixture_nonsemisimple(r).map_err(|e| e.to_string())?.matrices().map_err(|e| e.to_string())?;
        let shifted = g.x[0].sub(&Matrix::identity(2, 0).scale(&qf(1, 4))).map_err(|e| e.to_string())?;
        ensure(!shifted.is_zero(), || "X_1 - 1/4 vanishes".into())?;
        let sq = shifted.mul(&shifted).map_err(|e| e.to_string())?;
        ensure(sq.is_zero(), || "(X_1 - 1/4)^2 != 0".into())?;
    }
    Ok(format!("{} modules exact", files.len()))
}

fn hecke_structure() -> Outcome {
    let samples = [qf(7, 2), q(-4)];
    for r in 1..=2 {
        for n in 1..=3 {
            let h = HeckeAlgebra::new(n, &samples[..r]).map_err(|e| e.to_string())?;
            let expect = r.pow(n as u32) * factorial(n).to_string().parse::<usize>().unwrap();
            let c = h.closure_check();
            ensure(c.ok() && c.dimension == expect, || format!("r={r} n={n}: {:?}", c.failures))?;
            let b = MurphyBasis::new(&h).map_err(|e| e.to_string())?;
            ensure(b.len() == expect && b.rank == expect, || format!("r={r} n={n}: Murphy rank {}", b.rank))?;
        }
    }
    Ok("closure and Murphy rank r^n n!".into())
}

fn gram_factorization() -> Outcome {
    let samples = [qf(7, 2), q(-4)];
    let mut shapes = 0;
    for r in 1..=2 {
        for n in 1..=3 {
            let u = &samples[..r];
            let h = HeckeAlgebra::new(n, u).map_err(|e| e.to_string())?;
            let b = MurphyBasis::new(&h).map_err(|e| e.to_string())?;
            for l in multipartitions(r, n) {
                let g = gram_matrix(&h, &b, &l).map_err(|e| e.to_string())?;
                let d = det(g.entries.clone());
                let p = gamma_product(&l, u).map_err(|e| e.to_string())?;
                ensure(g.consistent && d == p, || format!("r={r} n={n} {l}: det {d} vs {p}"))?;
                for t in standard_tableaux(&l) {
                    let g0 = gamma(&t, u).map_err(|e| e.to_string())?;
                    let all = gamma_all_paths(&t, u).map_err(|e| e.to_string())?;
                    ensure(all.iter().all(|x| *x == g0), || format!("path dependence at {t}"))?;
                }
                shapes += 1;
            }
        }
    }
    Ok(format!("{shapes} shapes"))
}

fn semisimplicity() -> Outcome {
    for n in 1..=3usize {
        let ni = n as i64;
        for d in -(ni + 2)..=(ni + 2) {
            let u = vec![q(0), q(d)];
            let expect = d.unsigned_abs() as usize >= n;
            ensure(is_semisimple(2, n, &u) == expect, || format!("n={n} d={d}"))?;
            if expect {
                let (ok, c, _) = m_lambda_square_check(n, &u).map_err(|e| e.to_string())?;
                ensure(ok && c == m_lambda_square_scalar(n, &u) && !c.is_zero(), || format!("m² at n={n} d={d}"))?;
            } else if d != 0 {
                let v = nilpotent_renumbering(n, &u).ok_or("no renumbering")?;
                let (ok, c, zero) = m_lambda_square_check(n, &v).map_err(|e| e.to_string())?;
                ensure(ok && c.is_zero() && zero, || format!("witness at n={n} d={d}"))?;
            }
        }
        let (ok, _, _) = m_lambda_square_check(n, &[qf(7, 2), q(-4), qf(1, 3)]).map_err(|e| e.to_string())?;
        ensure(ok, || format!("r=3 m² at n={n}"))?;
    }
    Ok("boundary |u1-u2| = n, witnesses n<=3".into())
}

fn cellular_rank() -> Outcome {
    for r in 1..=3 {
        for n in 0..=6 {
            ensure(cellular_count(r, n) == target(r, n), || format!("count r={r} n={n}"))?;
        }
    }
    let mut ranks = Vec::new();
    for (r, n) in [(1, 2), (1, 3), (2, 2)] {
        let rep = cellular_rank_report(n, &ParamSet::default_for(r, n), PRECISION).map_err(|e| e.to_string())?;
        ensure(rep.ok, || format!("r={r} n={n}: rank {} of {}", rep.rank.rank, rep.expected))?;
        ranks.push(format!("({r},{n})={}", rep.rank.rank));
    }
    Ok(ranks.join(" "))
}

fn branching() -> Outcome {
    let mut worst: f64 = 0.0;
    for r in 1..=2 {
        for n in 2..=4 {
            let ps = ParamSet::default_for(r, n);
            for rep in build_all(r, n, &ps, PRECISION).map_err(|e| e.to_string())? {
                let lambda: Multipartition = rep.lambda().clone();
                let blocks = branching_blocks(&rep).map_err(|e| e.to_string())?;
                let mut want: Vec<Multipartition> = lambda
                    .removable()
                    .iter()
                    .map(|x| lambda.remove(x).unwrap())
                    .chain(lambda.addable().iter().map(|x| lambda.add(x).unwrap()).filter(|m| m.size() < n))
                    .filter(|m| count_updown(r, n - 1, m).map(|c| !c.is_zero()).unwrap_or(false))
                    .collect();
                want.sort();
                let got: Vec<Multipartition> = blocks.keys().cloned().collect();
                ensure(got == want, || format!("{lambda}: blocks {got:?}"))?;
                for (mu, idx) in &blocks {
                    let f = count_updown(r, n - 1, mu).map_err(|e| e.to_string())?;
                    ensure(BigUint::from(idx.len()) == f, || format!("{lambda} ↓ {mu}: {} vs {f}", idx.len()))?;
                }
                let off = off_block_residual(&rep, &blocks);
                ensure(off < OFF_BLOCK_TOL, || format!("{lambda}: off-block {off:e}"))?;
                worst = worst.max(off);
            }
        }
    }
    Ok(format!("max off-block {worst:e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("counting identity", counting_identity),
        ("updown count formula", updown_formula),
        ("r-regular census", regular_census),
        ("seminormal relations", relation_suite),
        ("exact identities", identity_suite),
        ("admissibility", admissibility),
        ("fixture modules", fixtures),
        ("Hecke dimension and Murphy rank", hecke_structure),
        ("Gram factorization", gram_factorization),
        ("semisimplicity boundary", semisimplicity),
        ("cellular rank", cellular_rank),
        ("branching", branching),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

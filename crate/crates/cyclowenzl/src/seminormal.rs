//! Seminormal representations `Δ(λ)` of `W_{r,n}(u)`: exact coefficient
//! tables, high precision generator matrices, a relation checker that also
//! accepts hand-written modules, and exact identities among the
//! coefficients.

use std::collections::BTreeMap;

use dashu_base::SquareRoot;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{enumerate_updown, k_neighbors, sk_action, Multipartition, UpDownTableau};
use crate::numeric::{real_from_q, real_to_string, residual_tolerance, Matrix, Real, Scalar};
use crate::params::{node_contents, wk_recursive, OmegaMode, ParamSet};
use crate::rat::{self, q, sign_pow, Q};
use crate::{Error, Result};

/// Checks that `u` is generic for `n`: `u_i ± u_j = d` (`i ≠ j`) or
/// `2u_i = d` with `d` an integer forces `|d| >= 2n`.
pub fn check_generic(u: &[Q], n: usize) -> Result<()> {
    let bound = q(2 * n as i64);
    let bad = |x: &Q| x.is_integer() && x.abs() < bound;
    for i in 0..u.len() {
        if bad(&(&u[i] * q(2))) {
            return Err(Error::NotGeneric(format!("2u_{} = {} is a small integer", i + 1, rat::fmt_q(&(&u[i] * q(2))))));
        }
        for j in 0..i {
            for (sym, x) in [("-", &u[j] - &u[i]), ("+", &u[j] + &u[i])] {
                if bad(&x) {
                    return Err(Error::NotGeneric(format!(
                        "u_{} {sym} u_{} = {} is a small integer",
                        j + 1,
                        i + 1,
                        rat::fmt_q(&x)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The regime in which every `e_tt(k)` is positive and `|a_t(k)| <= 1`:
/// `|u_1| > … > |u_r| >= n`, consecutive magnitudes at least `2n` apart,
/// `u_i > 0` for odd `i` and `u_i < 0` for even `i`, `u` generic and `Ω`
/// derived from `u`.
pub fn check_regime(ps: &ParamSet, n: usize) -> Result<()> {
    let u = &ps.u;
    if u.len() != ps.r || ps.r == 0 {
        return Err(Error::Regime(format!("expected {} parameters, got {}", ps.r, u.len())));
    }
    if ps.mode != OmegaMode::UAdmissibleDerived {
        return Err(Error::Regime("Ω must be derived from u".into()));
    }
    let nq = q(n as i64);
    for (i, x) in u.iter().enumerate() {
        let positive = i % 2 == 0;
        if (positive && !x.is_positive()) || (!positive && !x.is_negative()) {
            return Err(Error::Regime(format!(
                "u_{} = {} must be {}",
                i + 1,
                rat::fmt_q(x),
                if positive { "positive" } else { "negative" }
            )));
        }
    }
    if u[ps.r - 1].abs() < nq {
        return Err(Error::Regime(format!("|u_{}| < n = {n}", ps.r)));
    }
    for i in 1..ps.r {
        if u[i - 1].abs() - u[i].abs() < q(2 * n as i64) {
            return Err(Error::Regime(format!("|u_{}| - |u_{}| < 2n", i, i + 1)));
        }
    }
    check_generic(u, n)
}

/// `e_tt(k) = (2c - (-1)^r) ∏_{c(α) ≠ c} (c + c(α))/(c - c(α))` with
/// `c = c_t(k)` and `α` over the addable and removable nodes of `t_{k-1}`.
pub fn e_diag(t: &UpDownTableau, k: usize, ps: &ParamSet) -> Result<Q> {
    if !t.returns_at(k) {
        return Err(Error::Domain(format!("t_{} != t_{} in {t}", k - 1, k + 1)));
    }
    let cs = node_contents(t, k, &ps.u)?;
    let c = t.content(k, &ps.u);
    let mut e = q(2) * &c - sign_pow(ps.r);
    for a in cs.iter().filter(|a| **a != c) {
        e *= (&c + a) / (&c - a);
    }
    Ok(e)
}

/// `a_t(k) = 1/(c_t(k+1) - c_t(k))`.
pub fn a_coeff(t: &UpDownTableau, k: usize, u: &[Q]) -> Result<Q> {
    let d = t.content(k + 1, u) - t.content(k, u);
    if d.is_zero() {
        return Err(Error::NotGeneric(format!("c_t({}) = c_t({k}) in {t}", k + 1)));
    }
    Ok(Q::one() / d)
}

/// Coefficients of one tableau at one `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepCoeff {
    /// `t_{k-1} = t_{k+1}`.
    Return {
        #[serde(with = "rat::serde_q")]
        e: Q,
    },
    /// `t_{k-1} != t_{k+1}`; `partner` indexes `S_k t` when defined.
    Move {
        #[serde(with = "rat::serde_q")]
        a: Q,
        #[serde(with = "rat::serde_q")]
        b_sq: Q,
        partner: Option<usize>,
    },
}

/// Exact tables for `Δ(λ)` at level `n`.
#[derive(Clone, Debug, Serialize)]
pub struct SemiCoeffs {
    pub lambda: Multipartition,
    pub n: usize,
    pub tableaux: Vec<UpDownTableau>,
    #[serde(serialize_with = "ser_q_table")]
    pub contents: Vec<Vec<Q>>,
    /// `steps[k - 1][t]` for `1 <= k < n`.
    pub steps: Vec<Vec<StepCoeff>>,
}

fn ser_q_table<S: serde::Serializer>(t: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(|row| row.iter().map(rat::fmt_q).collect::<Vec<_>>()))
}

impl SemiCoeffs {
    pub fn new(lambda: &Multipartition, n: usize, ps: &ParamSet) -> Result<Self> {
        if lambda.r() != ps.r {
            return Err(Error::SizeMismatch(format!("λ has {} components, r = {}", lambda.r(), ps.r)));
        }
        check_generic(&ps.u, n)?;
        let tableaux = enumerate_updown(n, lambda)?;
        let index: BTreeMap<&UpDownTableau, usize> = tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let contents = tableaux.iter().map(|t| t.contents(&ps.u)).collect();
        let mut steps = Vec::new();
        for k in 1..n {
            let mut row = Vec::with_capacity(tableaux.len());
            for t in &tableaux {
                if t.returns_at(k) {
                    row.push(StepCoeff::Return { e: e_diag(t, k, ps)? });
                } else {
                    let a = a_coeff(t, k, &ps.u)?;
                    let b_sq = Q::one() - &a * &a;
                    let partner = sk_action(t, k)?.map(|s| index[&s]);
                    row.push(StepCoeff::Move { a, b_sq, partner });
                }
            }
            steps.push(row);
        }
        Ok(SemiCoeffs { lambda: lambda.clone(), n, tableaux, contents, steps })
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    /// Indices grouped into `∼_k` classes.
    pub fn classes(&self, k: usize) -> Vec<Vec<usize>> {
        let mut by_key: BTreeMap<Vec<&Multipartition>, Vec<usize>> = BTreeMap::new();
        for (i, t) in self.tableaux.iter().enumerate() {
            let key: Vec<&Multipartition> =
                t.steps().iter().enumerate().filter(|(j, _)| *j + 1 != k).map(|(_, m)| m).collect();
            by_key.entry(key).or_default().push(i);
        }
        by_key.into_values().collect()
    }

    fn e(&self, k: usize, t: usize) -> Option<&Q> {
        match &self.steps[k - 1][t] {
            StepCoeff::Return { e } => Some(e),
            StepCoeff::Move { .. } => None,
        }
    }
}

/// Generator matrices `S_k, E_k` (`k < n`) and `X_j` (`j <= n`) of a
/// purported module.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrices<T> {
    pub n: usize,
    pub s: Vec<Matrix<T>>,
    pub e: Vec<Matrix<T>>,
    pub x: Vec<Matrix<T>>,
}

impl<T: Scalar> GeneratorMatrices<T> {
    pub fn new(n: usize, s: Vec<Matrix<T>>, e: Vec<Matrix<T>>, x: Vec<Matrix<T>>) -> Result<Self> {
        let k = n.saturating_sub(1);
        if s.len() != k || e.len() != k || x.len() != n {
            return Err(Error::SizeMismatch(format!(
                "n = {n} needs {k} S, {k} E and {n} X matrices, got {}, {}, {}",
                s.len(),
                e.len(),
                x.len()
            )));
        }
        let d = x.first().map_or(0, |m| m.rows());
        if s.iter().chain(&e).chain(&x).any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::SizeMismatch(format!("all generator matrices must be {d}x{d}")));
        }
        Ok(GeneratorMatrices { n, s, e, x })
    }

    pub fn dim(&self) -> usize {
        self.x.first().map_or(0, |m| m.rows())
    }
}

/// `Δ(λ)` with its coefficient tables.
#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub coeffs: SemiCoeffs,
    pub precision: usize,
    pub gens: GeneratorMatrices<Real>,
}

impl RepMatrices {
    pub fn lambda(&self) -> &Multipartition {
        &self.coeffs.lambda
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn n(&self) -> usize {
        self.coeffs.n
    }

    /// JSON with decimal entries at full precision and the exact tables.
    pub fn to_json(&self) -> serde_json::Value {
        let mats = |ms: &[Matrix<Real>]| -> Vec<Vec<Vec<String>>> {
            ms.iter()
                .map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(real_to_string).collect()).collect())
                .collect()
        };
        serde_json::json!({
            "lambda": self.coeffs.lambda,
            "n": self.n(),
            "dim": self.dim(),
            "precision_bits": self.precision,
            "S": mats(&self.gens.s),
            "E": mats(&self.gens.e),
            "X": mats(&self.gens.x),
            "coefficients": self.coeffs,
        })
    }
}

fn sqrt_q(x: &Q, precision: usize) -> Real {
    if x.is_zero() {
        Real::ZERO
    } else {
        real_from_q(x, precision).sqrt()
    }
}

/// The seminormal matrices of `Δ(λ)`, `λ ⊢ n - 2f`, with nonnegative
/// square roots.
pub fn build_rep(lambda: &Multipartition, n: usize, ps: &ParamSet, precision: usize) -> Result<RepMatrices> {
    check_regime(ps, n)?;
    let coeffs = SemiCoeffs::new(lambda, n, ps)?;
    let d = coeffs.dim();
    let real = |x: &Q| real_from_q(x, precision);
    let mut s_mats = Vec::new();
    let mut e_mats = Vec::new();
    for k in 1..n {
        let mut s = Matrix::<Real>::zeros(d, d);
        let mut e = Matrix::<Real>::zeros(d, d);
        for class in coeffs.classes(k) {
            let first = class[0];
            if coeffs.e(k, first).is_some() {
                for &i in &class {
                    let ei = coeffs.e(k, i).expect("class shares t_{k-1} = t_{k+1}");
                    if !ei.is_positive() {
                        return Err(Error::Regime(format!("e_tt({k}) = {} is not positive", rat::fmt_q(ei))));
                    }
                    for &j in &class {
                        if j < i {
                            continue;
                        }
                        let ej = coeffs.e(k, j).expect("same class");
                        let est = if i == j { real(ei) } else { sqrt_q(&(ei * ej), precision) };
                        let denom = &coeffs.contents[i][k - 1] + &coeffs.contents[j][k - 1];
                        if denom.is_zero() {
                            return Err(Error::NotGeneric(format!("c_s({k}) + c_t({k}) = 0")));
                        }
                        let sst = if i == j {
                            (&est - real(&Q::one())) / real(&denom)
                        } else {
                            &est / real(&denom)
                        };
                        e.set(i, j, est.clone());
                        e.set(j, i, est);
                        s.set(i, j, sst.clone());
                        s.set(j, i, sst);
                    }
                }
            } else {
                for &i in &class {
                    let StepCoeff::Move { a, b_sq, partner } = &coeffs.steps[k - 1][i] else {
                        unreachable!("class members share the return condition");
                    };
                    if b_sq.is_negative() {
                        return Err(Error::Regime(format!("|a_t({k})| > 1")));
                    }
                    s.set(i, i, real(a));
                    if let Some(p) = partner {
                        s.set(i, *p, sqrt_q(b_sq, precision));
                    }
                }
            }
        }
        s_mats.push(s);
        e_mats.push(e);
    }
    let x_mats = (0..n)
        .map(|j| Matrix::diagonal(coeffs.contents.iter().map(|c| real(&c[j])).collect()))
        .collect();
    let gens = GeneratorMatrices::new(n, s_mats, e_mats, x_mats)?;
    Ok(RepMatrices { coeffs, precision, gens })
}

/// Every `Δ(λ)` for `λ ⊢ n - 2f`, built in parallel.
pub fn build_all(r: usize, n: usize, ps: &ParamSet, precision: usize) -> Result<Vec<RepMatrices>> {
    crate::combinat::all_shapes(r, n).par_iter().map(|l| build_rep(l, n, ps, precision)).collect()
}

pub const FAMILY_INVOLUTION: &str = "a:S^2=1";
pub const FAMILY_BRAID: &str = "b:braid";
pub const FAMILY_E_SQUARE: &str = "c:E^2=w0E";
pub const FAMILY_COMMUTE: &str = "d:commute";
pub const FAMILY_SKEIN: &str = "e:skein";
pub const FAMILY_UNWRAP: &str = "f:EX^aE=w_aE";
pub const FAMILY_TANGLE: &str = "g:ES=E";
pub const FAMILY_KINK: &str = "h:EEE=E";
pub const FAMILY_ANTISYM: &str = "i:E(X+X)=0";
pub const FAMILY_CYCLOTOMIC: &str = "cyclotomic";
pub const FAMILY_EXE: &str = "exe:E_kX_k^aE_k";

/// Worst residual of one relation family.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FamilyResidual {
    /// Largest Frobenius norm of `lhs - rhs`.
    pub max_residual: f64,
    /// Largest `residual / dim`, the quantity compared to the tolerance.
    pub max_scaled: f64,
    pub exact_zero: bool,
    pub instances: usize,
}

impl Default for FamilyResidual {
    fn default() -> Self {
        FamilyResidual { max_residual: 0.0, max_scaled: 0.0, exact_zero: true, instances: 0 }
    }
}

/// Residuals per relation family.
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct RelationReport {
    pub families: BTreeMap<String, FamilyResidual>,
}

impl RelationReport {
    fn record<T: Scalar>(&mut self, family: &str, diff: &Matrix<T>) {
        let f = self.families.entry(family.to_string()).or_default();
        let dim = diff.rows().max(1) as f64;
        let res = diff.frobenius();
        f.instances += 1;
        f.exact_zero &= diff.is_zero();
        f.max_residual = f.max_residual.max(res);
        f.max_scaled = f.max_scaled.max(res / dim);
    }

    pub fn merge(&mut self, other: &RelationReport) {
        for (name, o) in &other.families {
            let f = self.families.entry(name.clone()).or_default();
            f.instances += o.instances;
            f.exact_zero &= o.exact_zero;
            f.max_residual = f.max_residual.max(o.max_residual);
            f.max_scaled = f.max_scaled.max(o.max_scaled);
        }
    }

    /// Every residual below `2^{-(precision - 40)}·dim`.
    pub fn passes(&self, precision: usize) -> bool {
        let tol = residual_tolerance(precision);
        self.families.values().all(|f| f.exact_zero || f.max_scaled < tol)
    }

    pub fn all_exact(&self) -> bool {
        self.families.values().all(|f| f.exact_zero)
    }

    pub fn family(&self, name: &str) -> Option<&FamilyResidual> {
        self.families.get(name)
    }
}

fn prod<T: Scalar>(ms: &[&Matrix<T>]) -> Matrix<T> {
    let mut out = ms[0].clone();
    for m in &ms[1..] {
        out = out.mul(m).expect("square of equal size");
    }
    out
}

fn diff<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.sub(b).expect("equal size")
}

fn power<T: Scalar>(m: &Matrix<T>, a: usize, precision: usize) -> Matrix<T> {
    let mut out = Matrix::identity(m.rows(), precision);
    for _ in 0..a {
        out = out.mul(m).expect("square");
    }
    out
}

/// Residuals of every defining relation on the given matrices, with
/// `E_1X_1^aE_1 = ω_aE_1` for `0 < a < r` and `∏ (X_1 - u_i) = 0`.
pub fn check_module<T: Scalar>(
    g: &GeneratorMatrices<T>,
    u: &[Q],
    omega: &[Q],
    precision: usize,
) -> Result<RelationReport> {
    let n = g.n;
    let d = g.dim();
    let r = u.len();
    if omega.len() < r.max(1) {
        return Err(Error::Truncation { needed: r.max(1) - 1, have: omega.len().saturating_sub(1) });
    }
    let id = Matrix::<T>::identity(d, precision);
    let c = |x: &Q| T::from_q(x, precision);
    let mut rep = RelationReport::default();
    let (s, e, x) = (&g.s, &g.e, &g.x);
    for i in 0..n.saturating_sub(1) {
        rep.record(FAMILY_INVOLUTION, &diff(&prod(&[&s[i], &s[i]]), &id));
        rep.record(FAMILY_E_SQUARE, &diff(&prod(&[&e[i], &e[i]]), &e[i].scale(&c(&omega[0]))));
        // skein
        let minus = diff(&e[i], &id);
        rep.record(FAMILY_SKEIN, &diff(&diff(&prod(&[&s[i], &x[i]]), &prod(&[&x[i + 1], &s[i]])), &minus));
        rep.record(FAMILY_SKEIN, &diff(&diff(&prod(&[&x[i], &s[i]]), &prod(&[&s[i], &x[i + 1]])), &minus));
        // E_iS_i = E_i = S_iE_i
        rep.record(FAMILY_TANGLE, &diff(&prod(&[&e[i], &s[i]]), &e[i]));
        rep.record(FAMILY_TANGLE, &diff(&prod(&[&s[i], &e[i]]), &e[i]));
        // E_i(X_i + X_{i+1}) = 0 = (X_i + X_{i+1})E_i
        let xx = x[i].add(&x[i + 1]).expect("equal size");
        rep.record(FAMILY_ANTISYM, &prod(&[&e[i], &xx]));
        rep.record(FAMILY_ANTISYM, &prod(&[&xx, &e[i]]));
        for j in 0..n {
            if j != i && j != i + 1 {
                rep.record(FAMILY_BRAID, &diff(&prod(&[&s[i], &x[j]]), &prod(&[&x[j], &s[i]])));
                rep.record(FAMILY_COMMUTE, &diff(&prod(&[&e[i], &x[j]]), &prod(&[&x[j], &e[i]])));
            }
        }
        for j in 0..n.saturating_sub(1) {
            if j > i + 1 {
                rep.record(FAMILY_BRAID, &diff(&prod(&[&s[i], &s[j]]), &prod(&[&s[j], &s[i]])));
                rep.record(FAMILY_COMMUTE, &diff(&prod(&[&s[i], &e[j]]), &prod(&[&e[j], &s[i]])));
                rep.record(FAMILY_COMMUTE, &diff(&prod(&[&s[j], &e[i]]), &prod(&[&e[i], &s[j]])));
                rep.record(FAMILY_COMMUTE, &diff(&prod(&[&e[i], &e[j]]), &prod(&[&e[j], &e[i]])));
            }
        }
        if i + 2 < n {
            let j = i + 1;
            rep.record(FAMILY_BRAID, &diff(&prod(&[&s[i], &s[j], &s[i]]), &prod(&[&s[j], &s[i], &s[j]])));
            rep.record(FAMILY_TANGLE, &diff(&prod(&[&s[i], &e[j], &e[i]]), &prod(&[&s[j], &e[i]])));
            rep.record(FAMILY_TANGLE, &diff(&prod(&[&e[j], &e[i], &s[j]]), &prod(&[&e[j], &s[i]])));
            rep.record(FAMILY_KINK, &diff(&prod(&[&e[j], &e[i], &e[j]]), &e[j]));
            rep.record(FAMILY_KINK, &diff(&prod(&[&e[i], &e[j], &e[i]]), &e[i]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            rep.record(FAMILY_COMMUTE, &diff(&prod(&[&x[i], &x[j]]), &prod(&[&x[j], &x[i]])));
        }
    }
    if n >= 2 {
        for a in 1..r {
            let xa = power(&x[0], a, precision);
            rep.record(FAMILY_UNWRAP, &diff(&prod(&[&e[0], &xa, &e[0]]), &e[0].scale(&c(&omega[a]))));
        }
    }
    if n >= 1 {
        let mut poly = id.clone();
        for ui in u {
            poly = poly.mul(&diff(&x[0], &id.scale(&c(ui)))).expect("square");
        }
        rep.record(FAMILY_CYCLOTOMIC, &poly);
    }
    Ok(rep)
}

/// `E_kX_k^aE_k = ω_k^{(a)}E_k` for `1 <= k < n`, `a < r`, with `ω_k^{(a)}`
/// read off the series recursion on each `∼_k` class.
pub fn check_exe(rep: &RepMatrices, ps: &ParamSet) -> Result<RelationReport> {
    let mut out = RelationReport::default();
    let n = rep.n();
    let p = rep.precision;
    for k in 1..n {
        for a in 0..ps.r {
            let mut scal = Vec::with_capacity(rep.dim());
            for t in &rep.coeffs.tableaux {
                let w = wk_recursive(t, k, ps, a)?.coeff(-(a as i64));
                scal.push(real_from_q(&w, p));
            }
            let lhs = prod(&[&rep.gens.e[k - 1], &power(&rep.gens.x[k - 1], a, p), &rep.gens.e[k - 1]]);
            let rhs = Matrix::diagonal(scal).mul(&rep.gens.e[k - 1])?;
            out.record(FAMILY_EXE, &diff(&lhs, &rhs));
        }
    }
    Ok(out)
}

/// All relation families plus the `E_kX_k^aE_k` family over every
/// representation.
pub fn verify_relations(reps: &[RepMatrices], ps: &ParamSet) -> Result<RelationReport> {
    let parts: Vec<RelationReport> = reps
        .par_iter()
        .map(|rep| {
            let mut r = check_module(&rep.gens, &ps.u, &ps.omega, rep.precision)?;
            r.merge(&check_exe(rep, ps)?);
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let mut out = RelationReport::default();
    for p in &parts {
        out.merge(p);
    }
    Ok(out)
}

/// Counts of verified instances per exact identity.  Any failure is a
/// counterexample recorded in `failures`.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub checked: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn tally(&mut self, name: &str, holds: bool, what: impl FnOnce() -> String) {
        *self.checked.entry(name.to_string()).or_default() += 1;
        if !holds {
            self.failures.push(format!("{name}: {}", what()));
        }
    }

    pub fn merge(&mut self, o: &IdentityReport) {
        for (k, v) in &o.checked {
            *self.checked.entry(k.clone()).or_default() += v;
        }
        self.failures.extend(o.failures.iter().cloned());
    }
}

/// Exact checks on the coefficient tables of `Δ(λ)`:
///
/// * `Σ_t e_tt/(c_s + c_t) = 1 + 1/(2c_s)` over `t ∼_k s`;
/// * `Σ_t e_tt/(c_s + c_t)² = (1 - 1/(4c_s²))/e_ss + 1/(2c_s²)`;
/// * `Σ_t e_tt/((c_s + c_t)(c_t + c_t')) = 1/(2c_s c_t')` for `t' ∼_k s`,
///   `t' != s`;
/// * `e_ss(k)e_ss(k+1) = 1` when also `s_k = s_{k+2}`;
/// * `b_t(k)² e_tt(k+1) = b_u(k+1)² e_uu(k)` when `S_k t = S_{k+1} u`;
/// * `a_{S_k s}(k) = -a_s(k)`, and `b_s(k) = 0` exactly when `S_k s` is
///   undefined.
///
/// The three sums run over every `k < n` with `s_{k-1} = s_{k+1}`.
pub fn check_identities(lambda: &Multipartition, n: usize, ps: &ParamSet) -> Result<IdentityReport> {
    let co = SemiCoeffs::new(lambda, n, ps)?;
    let mut rep = IdentityReport::default();
    let index: BTreeMap<&UpDownTableau, usize> = co.tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let one = Q::one();
    let two = q(2);
    for k in 1..n {
        let classes = co.classes(k);
        for class in &classes {
            if co.e(k, class[0]).is_none() {
                continue;
            }
            for &s in class {
                let cs = &co.contents[s][k - 1];
                let es = co.e(k, s).expect("return class");
                let label = || format!("s = {}, k = {k}", co.tableaux[s]);
                let mut sum_a = Q::zero();
                let mut sum_b = Q::zero();
                for &t in class {
                    let ct = &co.contents[t][k - 1];
                    let et = co.e(k, t).expect("return class");
                    sum_a += et / (cs + ct);
                    sum_b += et / ((cs + ct) * (cs + ct));
                }
                rep.tally("identity_a", sum_a == &one + &one / (&two * cs), label);
                let rhs_b = (&one - &one / (q(4) * cs * cs)) / es + &one / (&two * cs * cs);
                rep.tally("identity_b", sum_b == rhs_b, label);
                for &tp in class.iter().filter(|&&tp| tp != s) {
                    let ctp = &co.contents[tp][k - 1];
                    let mut sum_c = Q::zero();
                    for &t in class {
                        let ct = &co.contents[t][k - 1];
                        let et = co.e(k, t).expect("return class");
                        sum_c += et / ((cs + ct) * (ct + ctp));
                    }
                    rep.tally("identity_c", sum_c == &one / (&two * cs * ctp), || {
                        format!("s = {}, t' = {}, k = {k}", co.tableaux[s], co.tableaux[tp])
                    });
                }
                // e(k)e(k+1) = 1 and the b-e equality when s_k = s_{k+2}
                if k + 1 < n && co.tableaux[s].at(k) == co.tableaux[s].at(k + 2) {
                    let e_next = co.e(k + 1, s).expect("s_k = s_{k+2}");
                    rep.tally("ees", es * e_next == one, label);
                    let st = &co.tableaux[s];
                    for t in k_neighbors(st, k + 1)? {
                        let Ok(Some(skt)) = sk_action(&t, k) else { continue };
                        for uu in k_neighbors(st, k)? {
                            let Ok(Some(sku)) = sk_action(&uu, k + 1) else { continue };
                            if skt != sku {
                                continue;
                            }
                            let (ti, ui) = (index[&t], index[&uu]);
                            let b_sq = |kk: usize, i: usize| match &co.steps[kk - 1][i] {
                                StepCoeff::Move { b_sq, .. } => b_sq.clone(),
                                StepCoeff::Return { .. } => Q::zero(),
                            };
                            let lhs = b_sq(k, ti) * co.e(k + 1, ti).expect("t ∼_{k+1} s returns");
                            let rhs = b_sq(k + 1, ui) * co.e(k, ui).expect("u ∼_k s returns");
                            rep.tally("be_equality", lhs == rhs, || format!("t = {t}, u = {uu}, k = {k}"));
                        }
                    }
                }
            }
        }
        for (i, st) in co.steps[k - 1].iter().enumerate() {
            if let StepCoeff::Move { a, b_sq, partner } = st {
                match partner {
                    Some(p) => {
                        let StepCoeff::Move { a: ap, .. } = &co.steps[k - 1][*p] else {
                            rep.tally("x_equal", false, || format!("partner of {} returns", co.tableaux[i]));
                            continue;
                        };
                        rep.tally("x_equal", *ap == -a.clone(), || format!("s = {}, k = {k}", co.tableaux[i]));
                        rep.tally("b_nonzero_iff_defined", !b_sq.is_zero(), || format!("s = {}", co.tableaux[i]));
                    }
                    None => {
                        rep.tally("b_nonzero_iff_defined", b_sq.is_zero(), || format!("s = {}", co.tableaux[i]))
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Basis indices grouped by `t_{n-1}`.
pub fn branching_blocks(rep: &RepMatrices) -> Result<BTreeMap<Multipartition, Vec<usize>>> {
    let n = rep.n();
    if n < 2 {
        return Err(Error::Domain("restriction needs n > 1".into()));
    }
    let mut out: BTreeMap<Multipartition, Vec<usize>> = BTreeMap::new();
    for (i, t) in rep.coeffs.tableaux.iter().enumerate() {
        out.entry(t.at(n - 1)).or_default().push(i);
    }
    Ok(out)
}

/// Frobenius norm of the entries of `S_k, E_k` (`k < n - 1`) and `X_j`
/// (`j <= n - 1`) that join different blocks.
pub fn off_block_residual(rep: &RepMatrices, blocks: &BTreeMap<Multipartition, Vec<usize>>) -> f64 {
    let n = rep.n();
    let mut label = vec![0usize; rep.dim()];
    for (b, idx) in blocks.values().enumerate() {
        for &i in idx {
            label[i] = b;
        }
    }
    let mats = rep.gens.s[..n - 2]
        .iter()
        .chain(&rep.gens.e[..n - 2])
        .chain(&rep.gens.x[..n - 1]);
    let mut worst = 0f64;
    for m in mats {
        let mut off = Matrix::<Real>::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if label[i] != label[j] {
                    off.set(i, j, m.get(i, j).clone());
                }
            }
        }
        worst = worst.max(off.frobenius());
    }
    worst
}

/// Numerical dimension of `{C : CG = GC for every generator G}`, computed
/// from the null space of the stacked commutator equations at `precision`
/// bits.
pub fn commutant_dimension(g: &GeneratorMatrices<Real>, precision: usize) -> usize {
    let d = g.dim();
    let gens: Vec<&Matrix<Real>> = g.s.iter().chain(&g.e).chain(&g.x).collect();
    // Unknown C_{pq} is column p*d + q; equation (i, j) of generator G reads
    // Σ_q C_{iq} G_{qj} - Σ_p G_{ip} C_{pj} = 0.
    let mut cols: Vec<Vec<Real>> = vec![Vec::new(); d * d];
    for gm in gens {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![Real::ZERO; d * d];
                for q in 0..d {
                    let v = gm.get(q, j);
                    if !v.repr().is_zero() {
                        row[i * d + q] = &row[i * d + q] + v;
                    }
                }
                for p in 0..d {
                    let v = gm.get(i, p);
                    if !v.repr().is_zero() {
                        row[p * d + j] = &row[p * d + j] - v;
                    }
                }
                for (c, x) in cols.iter_mut().zip(row) {
                    c.push(x);
                }
            }
        }
    }
    let rank = crate::numeric::numerical_rank(cols, precision).rank;
    d * d - rank
}

/// A module written out by hand, with parameters and exact entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub name: String,
    pub n: usize,
    #[serde(with = "rat::serde_q_vec")]
    pub u: Vec<Q>,
    #[serde(with = "rat::serde_q_vec")]
    pub omega: Vec<Q>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<Vec<String>>>,
    #[serde(rename = "E")]
    pub e: Vec<Vec<Vec<String>>>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<Vec<String>>>,
}

impl ModuleFile {
    pub fn matrices(&self) -> Result<GeneratorMatrices<Q>> {
        let conv = |ms: &[Vec<Vec<String>>]| -> Result<Vec<Matrix<Q>>> {
            ms.iter()
                .map(|m| {
                    let rows = m
                        .iter()
                        .map(|row| row.iter().map(|s| rat::parse_q(s)).collect::<Result<Vec<Q>>>())
                        .collect::<Result<Vec<_>>>()?;
                    Matrix::from_rows(rows)
                })
                .collect()
        };
        GeneratorMatrices::new(self.n, conv(&self.s)?, conv(&self.e)?, conv(&self.x)?)
    }

    pub fn from_matrices(name: &str, g: &GeneratorMatrices<Q>, u: &[Q], omega: &[Q]) -> Self {
        let conv = |ms: &[Matrix<Q>]| -> Vec<Vec<Vec<String>>> {
            ms.iter().map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(rat::fmt_q).collect()).collect()).collect()
        };
        ModuleFile {
            name: name.into(),
            n: g.n,
            u: u.to_vec(),
            omega: omega.to_vec(),
            s: conv(&g.s),
            e: conv(&g.e),
            x: conv(&g.x),
        }
    }

    pub fn check(&self) -> Result<RelationReport> {
        check_module(&self.matrices()?, &self.u, &self.omega, 0)
    }
}

fn scalar_mat(x: Q) -> Matrix<Q> {
    Matrix::diagonal(vec![x])
}

/// One-dimensional module with `E = 0`: `S = ε`, `X_1 = u_i`,
/// `X_2 = u_i + ε`.
pub fn fixture_e0_line(u: &[Q], omega: &[Q], i: usize, eps: i64) -> ModuleFile {
    let ui = u[i].clone();
    let g = GeneratorMatrices {
        n: 2,
        s: vec![scalar_mat(q(eps))],
        e: vec![scalar_mat(Q::zero())],
        x: vec![scalar_mat(ui.clone()), scalar_mat(ui + q(eps))],
    };
    ModuleFile::from_matrices("E=0 one-dimensional", &g, u, omega)
}

/// Two-dimensional module with `E = 0`: `S = (1/(u_i - u_j))[[-1, b], [c, 1]]`
/// with `bc = (u_i - u_j)² - 1`, `X_1 = diag(u_i, u_j)`,
/// `X_2 = diag(u_j, u_i)`.
pub fn fixture_e0_plane(u: &[Q], omega: &[Q], i: usize, j: usize, b: Q) -> ModuleFile {
    let d = &u[i] - &u[j];
    let c = (&d * &d - Q::one()) / &b;
    let inv = Q::one() / &d;
    let m = |rows: Vec<Vec<Q>>| Matrix::from_rows(rows).expect("square");
    let g = GeneratorMatrices {
        n: 2,
        s: vec![m(vec![vec![-inv.clone(), &b * &inv], vec![&c * &inv, inv.clone()]])],
        e: vec![Matrix::zeros(2, 2)],
        x: vec![
            Matrix::diagonal(vec![u[i].clone(), u[j].clone()]),
            Matrix::diagonal(vec![u[j].clone(), u[i].clone()]),
        ],
    };
    ModuleFile::from_matrices("E=0 two-dimensional", &g, u, omega)
}

/// `ω_0 = 1`, `ω_1 = 0`, `ω_{a+2} = ½ω_{a+1} - ω_a/16`.
pub fn quadratic_omega(len: usize) -> Vec<Q> {
    let mut w = vec![Q::one(), Q::zero()];
    while w.len() < len {
        let a = w.len() - 2;
        let next = rat::half() * &w[a + 1] - rat::qf(1, 16) * &w[a];
        w.push(next);
    }
    w.truncate(len);
    w
}

/// The two-dimensional module on which `X_1` is not semisimple, for `r = 2`
/// (`u = (¼, ¼)`) or `r = 3` (`u = (¼, ¼, -½)`).
pub fn fixture_nonsemisimple(r: usize) -> Result<ModuleFile> {
    let u = match r {
        2 => vec![rat::qf(1, 4), rat::qf(1, 4)],
        3 => vec![rat::qf(1, 4), rat::qf(1, 4), rat::qf(-1, 2)],
        _ => return Err(Error::Domain(format!("the fixture exists for r = 2, 3, not {r}"))),
    };
    let f = |a: i64, b: i64| rat::qf(a, b);
    let m = |rows: Vec<Vec<Q>>| Matrix::from_rows(rows).expect("square");
    let g = GeneratorMatrices {
        n: 2,
        s: vec![Matrix::diagonal(vec![q(1), q(-1)])],
        e: vec![Matrix::diagonal(vec![q(1), q(0)])],
        x: vec![
            m(vec![vec![q(0), f(1, 4)], vec![f(-1, 4), f(1, 2)]]),
            m(vec![vec![q(0), f(-1, 4)], vec![f(1, 4), f(-1, 2)]]),
        ],
    };
    Ok(ModuleFile::from_matrices("non-semisimple X_1", &g, &u, &quadratic_omega(8)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qf;

    fn mp(c: Vec<Vec<usize>>) -> Multipartition {
        Multipartition::new(c).unwrap()
    }

    #[test]
    fn e_diag_first_step() {
        let ps = ParamSet::from_u(vec![qf(3, 2)], 12, 256);
        let t = &enumerate_updown(2, &Multipartition::empty(1)).unwrap()[0];
        assert_eq!(e_diag(t, 1, &ps).unwrap(), q(4));
        assert_eq!(e_diag(t, 1, &ps).unwrap(), ps.omega[0]);
    }

    #[test]
    fn regime_checks() {
        assert!(check_regime(&ParamSet::default_for(3, 4), 4).is_ok());
        assert!(matches!(check_regime(&ParamSet::from_u(vec![q(1), q(1)], 8, 256), 2), Err(Error::Regime(_))));
        assert!(matches!(check_regime(&ParamSet::from_u(vec![q(20), q(-2)], 8, 256), 3), Err(Error::Regime(_))));
        assert!(check_generic(&[q(0), q(7)], 3).is_err());
        assert!(check_generic(&[qf(1, 3), qf(7, 5)], 3).is_ok());
    }

    #[test]
    fn small_reps() {
        let ps = ParamSet::default_for(1, 2);
        let rep = build_rep(&Multipartition::empty(1), 2, &ps, 128).unwrap();
        assert_eq!(rep.dim(), 1);
        let u1 = ps.u[0].clone();
        let f = crate::numeric::real_to_f64;
        assert_eq!(f(rep.gens.s[0].get(0, 0)), 1.0);
        assert_eq!(f(rep.gens.e[0].get(0, 0)), Scalar::to_f64(&ps.omega[0]));
        assert_eq!(f(rep.gens.x[1].get(0, 0)), Scalar::to_f64(&-u1));

        let ps2 = ParamSet::default_for(2, 2);
        let rep = build_rep(&mp(vec![vec![1], vec![1]]), 2, &ps2, 128).unwrap();
        let a = Scalar::to_f64(&(Q::one() / (&ps2.u[1] - &ps2.u[0])));
        let s = &rep.gens.s[0];
        let b = (1.0 - a * a).sqrt();
        let near = |x: &Real, y: f64| (f(x) - y).abs() < 1e-12;
        // the first basis vector adds the u_2 box first
        assert!(near(s.get(0, 0), -a) || near(s.get(0, 0), a));
        assert!(near(s.get(0, 1), b) && near(s.get(1, 0), b));
        assert!(near(&(s.get(0, 0) + s.get(1, 1)), 0.0));
    }

    #[test]
    fn fixtures_exact() {
        let u = vec![qf(3, 2), q(-5)];
        let om = crate::params::ParamSet::from_u(u.clone(), 4, 64).omega;
        for eps in [1, -1] {
            assert!(fixture_e0_line(&u, &om, 1, eps).check().unwrap().all_exact());
        }
        assert!(fixture_e0_plane(&u, &om, 0, 1, q(3)).check().unwrap().all_exact());
        for r in [2, 3] {
            let f = fixture_nonsemisimple(r).unwrap();
            assert!(f.check().unwrap().all_exact());
            let g = f.matrices().unwrap();
            let shifted = g.x[0].sub(&Matrix::identity(2, 0).scale(&qf(1, 4))).unwrap();
            assert!(!shifted.is_zero());
            assert!(shifted.mul(&shifted).unwrap().is_zero());
        }
        let mut broken = fixture_e0_plane(&u, &om, 0, 1, q(3));
        broken.s[0][0][0] = "7".into();
        assert!(!broken.check().unwrap().all_exact());
    }

    #[test]
    fn identity_a_by_hand() {
        let ps = ParamSet::from_u(vec![qf(9, 2)], 8, 64);
        let rep = check_identities(&Multipartition::empty(1), 2, &ps).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(rep.checked["identity_a"], 1);
    }

    #[test]
    fn branching_small() {
        let ps = ParamSet::default_for(2, 2);
        let rep = build_rep(&mp(vec![vec![1], vec![1]]), 2, &ps, 128).unwrap();
        let blocks = branching_blocks(&rep).unwrap();
        let labels: Vec<String> = blocks.keys().map(|m| m.to_string()).collect();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.values().all(|b| b.len() == 1), "{labels:?}");
    }
}

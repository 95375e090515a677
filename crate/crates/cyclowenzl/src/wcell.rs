//! `W_{r,n}(u)` realized on `⊕_λ Δ(λ)`: word evaluation, numerical rank,
//! `r`-regular monomials and the cellular elements
//! `C = S_e^* X^ρ E^f M_st X^κ S_d`.
//!
//! In the generic regime the realization is faithful, so linear
//! independence of a family of words is certified by the rank of their
//! images.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{
    coset_reps, multipartitions, standard_tableaux, tableau_perm, Multipartition, Perm, UpDownTableau,
};
use crate::diagrams::{enumerate_diagrams, word_for_diagram, BrauerDiagram, GeneratorWord, Letter};
use crate::hecke::{gram_matrix, row_stabilizer, HeckeAlgebra, MurphyBasis};
use crate::numeric::{numerical_rank, real_from_q, residual_tolerance, Matrix, RankReport, Real};
use crate::params::ParamSet;
use crate::rat::Q;
use crate::seminormal::{build_all, check_regime, RepMatrices};
use crate::{Error, Result};

/// A formal combination `Σ c_i w_i` of words.
pub type LinearWord = Vec<(Q, GeneratorWord)>;

/// Block-diagonal matrices, one block per `Δ(λ)`.
pub type Blocks = Vec<Matrix<Real>>;

/// Generator matrices of every `Δ(λ)`, `λ ⊢ n - 2f`.
#[derive(Clone, Debug)]
pub struct Realization {
    r: usize,
    n: usize,
    precision: usize,
    blocks: Vec<RepMatrices>,
}

impl Realization {
    pub fn new(n: usize, ps: &ParamSet, precision: usize) -> Result<Self> {
        check_regime(ps, n)?;
        let blocks = build_all(ps.r, n, ps, precision)?;
        Ok(Realization { r: ps.r, n, precision, blocks })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn blocks(&self) -> &[RepMatrices] {
        &self.blocks
    }

    pub fn block_index(&self, lambda: &Multipartition) -> Option<usize> {
        self.blocks.iter().position(|b| b.lambda() == lambda)
    }

    /// Dimension of the module `⊕ Δ(λ)`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    /// Dimension of the block-diagonal matrix algebra, `Σ dim Δ(λ)²`.
    pub fn algebra_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim() * b.dim()).sum()
    }

    fn letter(&self, rep: &RepMatrices, l: Letter) -> Result<Matrix<Real>> {
        let g = &rep.gens;
        match l {
            Letter::S(i) if i >= 1 && i < self.n => Ok(g.s[i - 1].clone()),
            Letter::E(i) if i >= 1 && i < self.n => Ok(g.e[i - 1].clone()),
            Letter::X(j, k) if j >= 1 && j <= self.n => {
                let x = &g.x[j - 1];
                let mut out = x.clone();
                for _ in 1..k {
                    out = out.mul(x)?;
                }
                Ok(out)
            }
            _ => Err(Error::Domain(format!("letter {l} out of range for n = {}", self.n))),
        }
    }

    fn eval_block(&self, rep: &RepMatrices, w: &GeneratorWord) -> Result<Matrix<Real>> {
        let mut acc: Option<Matrix<Real>> = None;
        for &l in &w.letters {
            let m = self.letter(rep, l)?;
            acc = Some(match acc {
                None => m,
                Some(a) => a.mul(&m)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Matrix::identity(rep.dim(), self.precision)))
    }

    /// The image of a word, block by block.
    pub fn evaluate(&self, w: &GeneratorWord) -> Result<Blocks> {
        w.validate(self.n)?;
        self.blocks.iter().map(|b| self.eval_block(b, w)).collect()
    }

    pub fn evaluate_linear(&self, c: &[(Q, GeneratorWord)]) -> Result<Blocks> {
        let mut out = self.zero();
        for (coef, w) in c {
            let k = real_from_q(coef, self.precision);
            let img = self.evaluate(w)?;
            out = out.iter().zip(&img).map(|(a, b)| a.add(&b.scale(&k))).collect::<Result<_>>()?;
        }
        Ok(out)
    }

    /// The image of a product of combinations.
    pub fn evaluate_product(&self, factors: &[LinearWord]) -> Result<Blocks> {
        let mut acc = self.identity();
        for f in factors {
            acc = mul_blocks(&acc, &self.evaluate_linear(f)?)?;
        }
        Ok(acc)
    }

    pub fn identity(&self) -> Blocks {
        self.blocks.iter().map(|b| Matrix::identity(b.dim(), self.precision)).collect()
    }

    pub fn zero(&self) -> Blocks {
        self.blocks.iter().map(|b| Matrix::zeros(b.dim(), b.dim())).collect()
    }

    /// Numerical rank of the images of `words`.
    pub fn rank_of(&self, words: &[GeneratorWord]) -> Result<RankReport> {
        let vals: Vec<Blocks> = words.par_iter().map(|w| self.evaluate(w)).collect::<Result<_>>()?;
        Ok(self.rank_of_values(vals))
    }

    pub fn rank_of_values(&self, values: Vec<Blocks>) -> RankReport {
        numerical_rank(values.iter().map(|b| vectorize(b)).collect(), self.precision)
    }
}

pub fn vectorize(blocks: &[Matrix<Real>]) -> Vec<Real> {
    blocks.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

pub fn mul_blocks(a: &[Matrix<Real>], b: &[Matrix<Real>]) -> Result<Blocks> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch("block counts differ".into()));
    }
    a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
}

/// Frobenius norm of `a - b` over all blocks.
pub fn block_residual(a: &[Matrix<Real>], b: &[Matrix<Real>]) -> Result<f64> {
    let mut sq = 0.0;
    for (x, y) in a.iter().zip(b) {
        sq += x.sub(y)?.frobenius().powi(2);
    }
    Ok(sq.sqrt())
}

/// `X^α B_γ X^β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularMonomial {
    pub alpha: Vec<usize>,
    pub gamma: BrauerDiagram,
    pub beta: Vec<usize>,
}

fn x_word(exps: &[usize]) -> Vec<Letter> {
    exps.iter().enumerate().filter(|(_, &k)| k > 0).map(|(j, &k)| Letter::X(j + 1, k)).collect()
}

impl RegularMonomial {
    pub fn word(&self) -> GeneratorWord {
        let mut letters = x_word(&self.alpha);
        letters.extend(word_for_diagram(&self.gamma).letters);
        letters.extend(x_word(&self.beta));
        GeneratorWord::new(letters)
    }

    /// Regular, with every exponent below `r`.
    pub fn is_r_regular(&self, r: usize) -> bool {
        let n = self.gamma.n();
        let top_left: Vec<usize> = self.gamma.top_arcs().iter().map(|a| a.0).collect();
        let bottom_left: Vec<usize> = self.gamma.bottom_arcs().iter().map(|a| a.0).collect();
        self.alpha.len() == n
            && self.beta.len() == n
            && self.alpha.iter().chain(&self.beta).all(|&k| k < r)
            && top_left.iter().all(|&i| self.alpha[i - 1] == 0)
            && (1..=n).all(|l| self.beta[l - 1] == 0 || bottom_left.contains(&l))
    }
}

impl fmt::Display for RegularMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// `Σα + Σβ`.
pub fn degree(m: &RegularMonomial) -> usize {
    m.alpha.iter().chain(&m.beta).sum()
}

fn tuples(slots: &[usize], n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; n]];
    for &i in slots {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..r).map(move |k| {
                    let mut w = v.clone();
                    w[i - 1] = k;
                    w
                })
            })
            .collect();
    }
    out
}

/// Every `r`-regular monomial, diagram by diagram.
pub fn enumerate_r_regular(r: usize, n: usize) -> Vec<RegularMonomial> {
    let mut out = Vec::new();
    for g in enumerate_diagrams(n) {
        let top_left: Vec<usize> = g.top_arcs().iter().map(|a| a.0).collect();
        let free: Vec<usize> = (1..=n).filter(|i| !top_left.contains(i)).collect();
        let bottom_left: Vec<usize> = g.bottom_arcs().iter().map(|a| a.0).collect();
        for alpha in tuples(&free, n, r) {
            for beta in tuples(&bottom_left, n, r) {
                out.push(RegularMonomial { alpha: alpha.clone(), gamma: g.clone(), beta });
            }
        }
    }
    out
}

/// `(t, κ, d) ∈ δ(f, λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellIndex {
    pub t: UpDownTableau,
    /// Length `n`, supported on `n-1, n-3, …, n-2f+1` (1-based).
    pub kappa: Vec<usize>,
    #[serde(serialize_with = "ser_perm")]
    pub d: Perm,
}

fn ser_perm<S: serde::Serializer>(p: &Perm, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.one_line())
}

fn kappa_slots(n: usize, f: usize) -> Vec<usize> {
    (0..f).map(|i| n - 1 - 2 * i).collect()
}

/// `δ(f, λ)` for `λ ⊢ n - 2f`.
pub fn delta(r: usize, n: usize, f: usize, lambda: &Multipartition) -> Result<Vec<CellIndex>> {
    if lambda.r() != r || lambda.size() + 2 * f != n {
        return Err(Error::SizeMismatch(format!("{lambda} is not an {r}-multipartition of {n} - 2·{f}")));
    }
    let ds = coset_reps(n, f)?;
    let kappas = tuples(&kappa_slots(n, f), n, r);
    let mut out = Vec::new();
    for t in standard_tableaux(lambda) {
        for kappa in &kappas {
            for d in &ds {
                out.push(CellIndex { t: t.clone(), kappa: kappa.clone(), d: d.clone() });
            }
        }
    }
    Ok(out)
}

/// `#δ(f, λ) = #T^std(λ) · r^f · |D_f|`.
pub fn delta_count(r: usize, n: usize, f: usize, lambda: &Multipartition) -> BigUint {
    let m = n - 2 * f;
    // |D_f| = n! / ((n-2f)! 2^f f!)
    let mut cosets = BigUint::one();
    for k in m + 1..=n {
        cosets *= BigUint::from(k);
    }
    for k in 1..=f {
        cosets /= BigUint::from(2 * k);
    }
    lambda.count_standard() * BigUint::from(r).pow(f as u32) * cosets
}

/// `Σ_{(f,λ)} (#δ(f,λ))²`.
pub fn cellular_count(r: usize, n: usize) -> BigUint {
    (0..=n / 2)
        .flat_map(|f| multipartitions(r, n - 2 * f).into_iter().map(move |l| (f, l)))
        .map(|(f, l)| {
            let c = delta_count(r, n, f, &l);
            &c * &c
        })
        .sum()
}

/// `E^f = E_{n-1} E_{n-3} ⋯ E_{n-2f+1}`.
pub fn e_f_word(n: usize, f: usize) -> GeneratorWord {
    GeneratorWord::new(kappa_slots(n, f).into_iter().map(Letter::E).collect())
}

/// `X^κ = X_{n-1}^{κ_{n-1}} X_{n-3}^{κ_{n-3}} ⋯`.
pub fn x_kappa_word(kappa: &[usize]) -> GeneratorWord {
    GeneratorWord::new(
        kappa.iter().enumerate().rev().filter(|(_, &k)| k > 0).map(|(j, &k)| Letter::X(j + 1, k)).collect(),
    )
}

fn single(w: GeneratorWord) -> LinearWord {
    vec![(Q::one(), w)]
}

/// `M_st` as a product of combinations:
/// `S_{d(s)^{-1}} · ∏_{s≥2} ∏_{i ≤ a_{s-1}} (X_i - u_s) · Σ_{w ∈ S_λ} S_w · S_{d(t)}`.
pub fn m_st_factors(u: &[Q], s: &UpDownTableau, t: &UpDownTableau) -> Result<Vec<LinearWord>> {
    let lambda = s.shape();
    if t.shape() != lambda || !s.is_standard() || !t.is_standard() || lambda.r() != u.len() {
        return Err(Error::SizeMismatch(format!("{s} and {t} are not standard of one shape")));
    }
    let mut out = vec![single(GeneratorWord::from_perm(&tableau_perm(s).inverse()))];
    let mut a = 0;
    for (k, us) in u.iter().enumerate().skip(1) {
        a += lambda.comp(k).iter().sum::<usize>();
        for i in 1..=a {
            out.push(vec![(Q::one(), GeneratorWord::new(vec![Letter::X(i, 1)])), (-us.clone(), GeneratorWord::empty())]);
        }
    }
    out.push(row_stabilizer(&lambda).iter().map(|w| (Q::one(), GeneratorWord::from_perm(w))).collect());
    out.push(single(GeneratorWord::from_perm(&tableau_perm(t))));
    Ok(out)
}

/// `C^{(f,λ)}_{(s,ρ,e)(t,κ,d)}`, kept as a product of combinations of words.
#[derive(Clone, Debug)]
pub struct CellularElement {
    pub f: usize,
    pub lambda: Multipartition,
    pub left: CellIndex,
    pub right: CellIndex,
    pub factors: Vec<LinearWord>,
}

impl CellularElement {
    /// The declared `f` of the `E^f` factor.
    pub fn filtration_index(&self) -> usize {
        self.f
    }

    /// Expanded as one combination of words.
    pub fn expand(&self) -> LinearWord {
        let mut acc: LinearWord = vec![(Q::one(), GeneratorWord::empty())];
        for f in &self.factors {
            acc = acc
                .iter()
                .flat_map(|(c, w)| f.iter().map(move |(c2, w2)| (c * c2, w.concat(w2))))
                .filter(|(c, _)| !c.is_zero())
                .collect();
        }
        acc
    }

    /// The image of the combination under `*`, factor order reversed.
    pub fn star_factors(&self) -> Vec<LinearWord> {
        self.factors.iter().rev().map(|f| f.iter().map(|(c, w)| (c.clone(), w.star())).collect()).collect()
    }
}

fn check_index(r: usize, n: usize, f: usize, lambda: &Multipartition, x: &CellIndex) -> Result<()> {
    let slots = kappa_slots(n, f);
    let ok = x.t.shape() == *lambda
        && x.t.is_standard()
        && x.kappa.len() == n
        && x.kappa.iter().enumerate().all(|(j, &k)| k < r && (k == 0 || slots.contains(&(j + 1))))
        && coset_reps(n, f)?.contains(&x.d);
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("malformed triple for (f = {f}, {lambda})")))
    }
}

/// `S_e^* X^ρ E^f M_st X^κ S_d` for `(s,ρ,e), (t,κ,d) ∈ δ(f,λ)`.
pub fn cellular_element(
    u: &[Q],
    n: usize,
    f: usize,
    lambda: &Multipartition,
    left: &CellIndex,
    right: &CellIndex,
) -> Result<CellularElement> {
    let r = u.len();
    if lambda.r() != r || lambda.size() + 2 * f != n {
        return Err(Error::SizeMismatch(format!("{lambda} is not an {r}-multipartition of {n} - 2·{f}")));
    }
    check_index(r, n, f, lambda, left)?;
    check_index(r, n, f, lambda, right)?;
    let mut factors = vec![
        single(GeneratorWord::from_perm(&left.d).star()),
        single(x_kappa_word(&left.kappa)),
        single(e_f_word(n, f)),
    ];
    factors.extend(m_st_factors(u, &left.t, &right.t)?);
    factors.push(single(x_kappa_word(&right.kappa)));
    factors.push(single(GeneratorWord::from_perm(&right.d)));
    Ok(CellularElement { f, lambda: lambda.clone(), left: left.clone(), right: right.clone(), factors })
}

/// Every cellular element of `W_{r,n}(u)`.
pub fn all_cellular_elements(u: &[Q], n: usize) -> Result<Vec<CellularElement>> {
    let r = u.len();
    let mut out = Vec::new();
    for f in 0..=n / 2 {
        for lambda in multipartitions(r, n - 2 * f) {
            let idx = delta(r, n, f, &lambda)?;
            for a in &idx {
                for b in &idx {
                    out.push(cellular_element(u, n, f, &lambda, a, b)?);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CellularRankReport {
    pub r: usize,
    pub n: usize,
    /// `Σ (#δ(f,λ))²`.
    pub count: String,
    /// `r^n (2n-1)!!`.
    pub expected: String,
    pub rank: RankReport,
    pub ok: bool,
}

/// Rank of the images of all cellular elements against `r^n (2n-1)!!`.
pub fn cellular_rank_report(n: usize, ps: &ParamSet, precision: usize) -> Result<CellularRankReport> {
    let r = ps.r;
    let real = Realization::new(n, ps, precision)?;
    let elems = all_cellular_elements(&ps.u, n)?;
    let vals: Vec<Blocks> = elems.par_iter().map(|c| real.evaluate_product(&c.factors)).collect::<Result<_>>()?;
    let rank = real.rank_of_values(vals);
    let count = cellular_count(r, n);
    let expected = BigUint::from(r).pow(n as u32) * crate::combinat::double_factorial_odd(n);
    let ok = count == expected
        && BigUint::from(elems.len()) == count
        && BigUint::from(rank.rank) == expected
        && BigUint::from(real.algebra_dim()) == expected;
    Ok(CellularRankReport { r, n, count: count.to_string(), expected: expected.to_string(), rank, ok })
}

pub fn cellular_rank_check(n: usize, ps: &ParamSet, precision: usize) -> Result<bool> {
    Ok(cellular_rank_report(n, ps, precision)?.ok)
}

/// Rank of the images of all `r`-regular monomials.
pub fn regular_rank(n: usize, ps: &ParamSet, precision: usize) -> Result<RankReport> {
    let real = Realization::new(n, ps, precision)?;
    let words: Vec<GeneratorWord> = enumerate_r_regular(ps.r, n).iter().map(|m| m.word()).collect();
    real.rank_of(&words)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct StarReport {
    /// Largest `‖ρ(C*) - ρ(C)ᵀ‖`.
    pub transpose_residual: f64,
    /// Largest `‖ρ(C_{LR}*) - ρ(C_{RL})‖` on the blocks `Δ(μ)` with
    /// `|μ| >= n - 2f`, where `W^{f+1}` acts as zero.
    pub swap_residual_mod: f64,
    /// The same over every block.
    pub swap_residual_full: f64,
}

/// Compares `C*` with `Cᵀ` and with the element of swapped indices.
///
/// With the literal `M_st` the product `∏ (X_i - u_s)` commutes with
/// `S_w` only up to terms in the ideal generated by `E_{n-2f-1}`, so
/// `C_{LR}* = C_{RL}` holds modulo `W^{f+1}` rather than on the nose.
pub fn cellular_star_report(real: &Realization, u: &[Q]) -> Result<StarReport> {
    let n = real.n();
    let elems = all_cellular_elements(u, n)?;
    let res: Vec<(f64, f64, f64)> = elems
        .par_iter()
        .map(|c| {
            let img = real.evaluate_product(&c.factors)?;
            let star = real.evaluate_product(&c.star_factors())?;
            let swapped = cellular_element(u, n, c.f, &c.lambda, &c.right, &c.left)?;
            let swapped = real.evaluate_product(&swapped.factors)?;
            let tr: Blocks = img.iter().map(|m| m.transpose()).collect();
            let mut modsq = 0.0;
            for (b, (x, y)) in real.blocks().iter().zip(star.iter().zip(&swapped)) {
                if b.lambda().size() + 2 * c.f >= n {
                    modsq += x.sub(y)?.frobenius().powi(2);
                }
            }
            Ok((block_residual(&star, &tr)?, modsq.sqrt(), block_residual(&star, &swapped)?))
        })
        .collect::<Result<_>>()?;
    let max = |f: fn(&(f64, f64, f64)) -> f64| res.iter().map(f).fold(0.0, f64::max);
    Ok(StarReport {
        transpose_residual: max(|x| x.0),
        swap_residual_mod: max(|x| x.1),
        swap_residual_full: max(|x| x.2),
    })
}

/// Largest `‖ρ(E^f M_st) - ρ(M_st E^f)‖` over all `(f, λ, s, t)`.
pub fn ef_commute_residual(real: &Realization, u: &[Q]) -> Result<f64> {
    let n = real.n();
    let mut worst: f64 = 0.0;
    for f in 0..=n / 2 {
        let ef = real.evaluate(&e_f_word(n, f))?;
        for lambda in multipartitions(u.len(), n - 2 * f) {
            let std = standard_tableaux(&lambda);
            for s in &std {
                for t in &std {
                    let m = real.evaluate_product(&m_st_factors(u, s, t)?)?;
                    worst = worst.max(block_residual(&mul_blocks(&ef, &m)?, &mul_blocks(&m, &ef)?)?);
                }
            }
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeCompatReport {
    pub instances: usize,
    /// Instances where the pairing `⟨m_t, m_v⟩` is nonzero.
    pub nonzero_pairings: usize,
    pub max_scaled_residual: f64,
    pub ok: bool,
}

/// On the block `Δ(λ)`, `|λ| = n - 2f`, checks
/// `ρ(C_{(s,0,1)(t,0,1)} C_{(v,0,1)(s,0,1)}) = ω_0^f ⟨m_t, m_v⟩ ρ(E^f M_ss)`.
pub fn hecke_compat(real: &Realization, ps: &ParamSet, max_f: usize) -> Result<HeckeCompatReport> {
    let n = real.n();
    let u = &ps.u;
    let omega0 = ps.omega(0)?.clone();
    let tol = residual_tolerance(real.precision());
    let mut instances = 0;
    let mut nonzero = 0;
    let mut worst: f64 = 0.0;
    for f in 0..=max_f.min(n / 2) {
        let m = n - 2 * f;
        let h = HeckeAlgebra::new(m, u)?;
        let basis = MurphyBasis::new(&h)?;
        let ef = real.evaluate(&e_f_word(n, f))?;
        let w0f = (0..f).fold(Q::one(), |acc, _| acc * &omega0);
        for lambda in multipartitions(u.len(), m) {
            let gram = gram_matrix(&h, &basis, &lambda)?;
            let bi = real.block_index(&lambda).ok_or_else(|| Error::Domain(format!("no block {lambda}")))?;
            let dim = real.blocks()[bi].dim().max(1) as f64;
            let std = &gram.tableaux;
            let zero_kappa = vec![0; n];
            let id = Perm::identity(n);
            let idx = |t: &UpDownTableau| CellIndex { t: t.clone(), kappa: zero_kappa.clone(), d: id.clone() };
            for s in std {
                let ess = mul_blocks(&ef, &real.evaluate_product(&m_st_factors(u, s, s)?)?)?;
                for (ti, t) in std.iter().enumerate() {
                    let c1 = cellular_element(u, n, f, &lambda, &idx(s), &idx(t))?;
                    let c1 = real.evaluate_product(&c1.factors)?;
                    for (vi, v) in std.iter().enumerate() {
                        let c2 = cellular_element(u, n, f, &lambda, &idx(v), &idx(s))?;
                        let c2 = real.evaluate_product(&c2.factors)?;
                        let lhs = c1[bi].mul(&c2[bi])?;
                        let pairing = &w0f * &gram.entries[ti][vi];
                        let rhs = ess[bi].scale(&real_from_q(&pairing, real.precision()));
                        let res = lhs.sub(&rhs)?.frobenius() / dim;
                        worst = worst.max(res);
                        instances += 1;
                        if !pairing.is_zero() {
                            nonzero += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(HeckeCompatReport { instances, nonzero_pairings: nonzero, max_scaled_residual: worst, ok: worst < tol })
}

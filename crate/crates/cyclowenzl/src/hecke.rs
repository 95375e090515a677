//! The degenerate cyclotomic Hecke algebra `H_{r,n}(u)`: exact arithmetic on
//! the basis `Y^α T_w` (`0 <= α_i < r`), the Murphy basis, Gram matrices,
//! the `γ` recurrence and the semisimplicity criterion.
//!
//! Products are computed through the left regular representation.  `T_i`
//! acts on `Y^α T_w` by `T_i f T_w = (s_i f) T_{s_i w} - (∂_i f) T_w` with
//! `∂_i f = (f - s_i f)/(Y_i - Y_{i+1})`, `Y_1` by multiplication followed by
//! the cyclotomic reduction, and `Y_{j+1} = T_j Y_j T_j + T_j`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{
    dominates, multipartitions, sk_action, standard_tableaux, tableau_dominates, tableau_perm, top_tableau,
    Multipartition, Perm, UpDownTableau,
};
use crate::numeric::exact_rank_rows;
use crate::rat::{self, q, Q};
use crate::{Error, Result};

type SparseVec = BTreeMap<usize, Q>;

fn axpy(out: &mut SparseVec, c: &Q, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let e = out.entry(*k).or_insert_with(Q::zero);
        *e += c * x;
        if e.is_zero() {
            out.remove(k);
        }
    }
}

/// A finitely supported combination of basis monomials `Y^α T_w` of one
/// `H_{r,n}`, keyed by basis index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElement {
    r: usize,
    n: usize,
    coeffs: SparseVec,
}

impl HeckeElement {
    pub fn zero(r: usize, n: usize) -> Self {
        HeckeElement { r, n, coeffs: SparseVec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<usize, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> Q {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Q::zero)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if (self.r, self.n) != (o.r, o.n) {
            return Err(Error::SizeMismatch(format!(
                "elements of H_({},{}) and H_({},{})",
                self.r, self.n, o.r, o.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        axpy(&mut out.coeffs, &Q::one(), &o.coeffs);
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        axpy(&mut out.coeffs, &-Q::one(), &o.coeffs);
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = HeckeElement::zero(self.r, self.n);
        axpy(&mut out.coeffs, c, &self.coeffs);
        out
    }
}

/// One serialized monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub alpha: Vec<usize>,
    /// One-line notation, 1-based.
    pub w: Vec<usize>,
    #[serde(with = "rat::serde_q")]
    pub coeff: Q,
}

/// `H_{r,n}(u)` with precomputed regular-representation operators.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    r: usize,
    n: usize,
    u: Vec<Q>,
    perms: Vec<Perm>,
    perm_index: HashMap<Perm, usize>,
    /// Coefficients `c_0, …, c_{r-1}` of `∏ (Y - u_i) = Y^r + Σ c_k Y^k`.
    cyclo: Vec<Q>,
    t_cols: Vec<Vec<SparseVec>>,
    y_cols: Vec<Vec<SparseVec>>,
}

impl HeckeAlgebra {
    pub fn new(n: usize, u: &[Q]) -> Result<Self> {
        let r = u.len();
        if r == 0 {
            return Err(Error::Domain("need at least one parameter".into()));
        }
        let perms = Perm::all(n);
        let perm_index = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        // ∏ (Y - u_i), lowest degree first
        let mut poly = vec![Q::one()];
        for ui in u {
            let mut next = vec![Q::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * ui;
            }
            poly = next;
        }
        poly.pop();
        let mut alg = HeckeAlgebra {
            r,
            n,
            u: u.to_vec(),
            perms,
            perm_index,
            cyclo: poly,
            t_cols: Vec::new(),
            y_cols: Vec::new(),
        };
        let dim = alg.dim();
        alg.t_cols = (1..n).map(|i| (0..dim).map(|b| alg.t_on_basis(i, b)).collect()).collect();
        if n > 0 {
            let y1: Vec<SparseVec> = (0..dim).map(|b| alg.y1_on_basis(b)).collect();
            alg.y_cols.push(y1);
        }
        for j in 1..n {
            let col: Vec<SparseVec> = (0..dim)
                .into_par_iter()
                .map(|b| {
                    let e: SparseVec = [(b, Q::one())].into_iter().collect();
                    let tb = alg.apply_t(j, &e);
                    let mut out = alg.apply_t(j, &alg.apply_y(j, &tb));
                    axpy(&mut out, &Q::one(), &tb);
                    out
                })
                .collect();
            alg.y_cols.push(col);
        }
        Ok(alg)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> &[Q] {
        &self.u
    }

    /// `r^n n!`.
    pub fn dim(&self) -> usize {
        self.r.pow(self.n as u32) * self.perms.len()
    }

    fn alpha_index(&self, alpha: &[usize]) -> usize {
        alpha.iter().fold(0, |acc, &a| acc * self.r + a)
    }

    fn alpha_of(&self, mut idx: usize) -> Vec<usize> {
        let mut a = vec![0; self.n];
        for slot in a.iter_mut().rev() {
            *slot = idx % self.r;
            idx /= self.r;
        }
        a
    }

    /// Basis index of `Y^α T_w`.
    pub fn index(&self, alpha: &[usize], w: &Perm) -> Result<usize> {
        if alpha.len() != self.n || w.n() != self.n || alpha.iter().any(|&a| a >= self.r) {
            return Err(Error::Domain(format!("({alpha:?}, {w}) is not a basis monomial")));
        }
        Ok(self.alpha_index(alpha) * self.perms.len() + self.perm_index[w])
    }

    /// `(α, w)` of a basis index.
    pub fn monomial(&self, idx: usize) -> (Vec<usize>, Perm) {
        let np = self.perms.len();
        (self.alpha_of(idx / np), self.perms[idx % np].clone())
    }

    fn basis(&self, idx: usize) -> HeckeElement {
        HeckeElement { r: self.r, n: self.n, coeffs: [(idx, Q::one())].into_iter().collect() }
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement::zero(self.r, self.n)
    }

    pub fn one(&self) -> HeckeElement {
        self.scalar(Q::one())
    }

    pub fn scalar(&self, c: Q) -> HeckeElement {
        let idx = self.index(&vec![0; self.n], &Perm::identity(self.n)).expect("identity");
        self.basis(idx).scale(&c)
    }

    /// `T_i`, `1 <= i < n`.
    pub fn t(&self, i: usize) -> Result<HeckeElement> {
        if i == 0 || i >= self.n {
            return Err(Error::Domain(format!("T_{i} needs 1 <= i < {}", self.n)));
        }
        Ok(self.basis(self.index(&vec![0; self.n], &Perm::transposition(self.n, i))?))
    }

    /// `T_w = T_{i1}⋯T_{ik}` for the reduced word of `w`.
    pub fn t_w(&self, w: &Perm) -> Result<HeckeElement> {
        Ok(self.basis(self.index(&vec![0; self.n], w)?))
    }

    /// `Y_j`, `1 <= j <= n`.
    pub fn y(&self, j: usize) -> Result<HeckeElement> {
        if j == 0 || j > self.n {
            return Err(Error::Domain(format!("Y_{j} needs 1 <= j <= {}", self.n)));
        }
        Ok(HeckeElement { r: self.r, n: self.n, coeffs: self.apply_y(j, &self.one().coeffs) })
    }

    fn t_on_basis(&self, i: usize, b: usize) -> SparseVec {
        let (alpha, w) = self.monomial(b);
        let si = Perm::transposition(self.n, i);
        let mut out = SparseVec::new();
        let mut swapped = alpha.clone();
        swapped.swap(i - 1, i);
        let idx = self.index(&swapped, &si.then(&w)).expect("valid");
        out.insert(idx, Q::one());
        let (a, c) = (alpha[i - 1], alpha[i]);
        if a != c {
            let (hi, lo, sign) = if a > c { (a, c, -Q::one()) } else { (c, a, Q::one()) };
            for p in 0..hi - lo {
                let mut beta = alpha.clone();
                beta[i - 1] = lo + p;
                beta[i] = lo + (hi - lo - 1 - p);
                let idx = self.index(&beta, &w).expect("exponents stay below r");
                let e = out.entry(idx).or_insert_with(Q::zero);
                *e += &sign;
                if e.is_zero() {
                    out.remove(&idx);
                }
            }
        }
        out
    }

    fn y1_on_basis(&self, b: usize) -> SparseVec {
        let (alpha, w) = self.monomial(b);
        let mut out = SparseVec::new();
        if alpha[0] + 1 < self.r {
            let mut beta = alpha.clone();
            beta[0] += 1;
            out.insert(self.index(&beta, &w).expect("valid"), Q::one());
        } else {
            for (k, c) in self.cyclo.iter().enumerate() {
                if !c.is_zero() {
                    let mut beta = alpha.clone();
                    beta[0] = k;
                    out.insert(self.index(&beta, &w).expect("valid"), -c.clone());
                }
            }
        }
        out
    }

    fn apply_cols(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (b, c) in v {
            axpy(&mut out, c, &cols[*b]);
        }
        out
    }

    fn apply_t(&self, i: usize, v: &SparseVec) -> SparseVec {
        Self::apply_cols(&self.t_cols[i - 1], v)
    }

    fn apply_y(&self, j: usize, v: &SparseVec) -> SparseVec {
        Self::apply_cols(&self.y_cols[j - 1], v)
    }

    /// Left multiplication by the basis monomial `idx`.
    fn apply_monomial(&self, idx: usize, v: &SparseVec) -> SparseVec {
        let (alpha, w) = self.monomial(idx);
        let mut cur = v.clone();
        for &i in w.reduced_word().iter().rev() {
            cur = self.apply_t(i, &cur);
        }
        for (j, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                cur = self.apply_y(j + 1, &cur);
            }
        }
        cur
    }

    fn own(&self, a: &HeckeElement) -> Result<()> {
        if (a.r, a.n) != (self.r, self.n) {
            return Err(Error::SizeMismatch(format!(
                "element of H_({},{}) used in H_({},{})",
                a.r, a.n, self.r, self.n
            )));
        }
        Ok(())
    }

    /// `a · b` in normal form.
    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.own(a)?;
        self.own(b)?;
        let mut out = SparseVec::new();
        for (idx, c) in &a.coeffs {
            axpy(&mut out, c, &self.apply_monomial(*idx, &b.coeffs));
        }
        Ok(HeckeElement { r: self.r, n: self.n, coeffs: out })
    }

    pub fn product(&self, factors: &[HeckeElement]) -> Result<HeckeElement> {
        let mut out = self.one();
        for f in factors {
            out = self.multiply(&out, f)?;
        }
        Ok(out)
    }

    /// The anti-involution fixing every `T_i` and `Y_j`.
    pub fn star(&self, a: &HeckeElement) -> Result<HeckeElement> {
        self.own(a)?;
        let mut out = self.zero();
        for (idx, c) in &a.coeffs {
            let (alpha, w) = self.monomial(*idx);
            let mono = self.index(&alpha, &Perm::identity(self.n))?;
            let term = self.multiply(&self.t_w(&w.inverse())?, &self.basis(mono))?;
            out = out.add(&term.scale(c))?;
        }
        Ok(out)
    }

    pub fn to_records(&self, a: &HeckeElement) -> Vec<MonomialRecord> {
        a.coeffs
            .iter()
            .map(|(idx, c)| {
                let (alpha, w) = self.monomial(*idx);
                MonomialRecord { alpha, w: w.one_line(), coeff: c.clone() }
            })
            .collect()
    }

    pub fn from_records(&self, recs: &[MonomialRecord]) -> Result<HeckeElement> {
        let mut out = self.zero();
        for rec in recs {
            let w = Perm::from_one_line(&rec.w)?;
            out = out.add(&self.basis(self.index(&rec.alpha, &w)?).scale(&rec.coeff))?;
        }
        Ok(out)
    }

    /// Dense coordinates.
    pub fn coordinates(&self, a: &HeckeElement) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (i, c) in &a.coeffs {
            v[*i] = c.clone();
        }
        v
    }

    /// Checks the defining relations on the regular representation and that
    /// `Y^α T_w · 1` is the basis vector `(α, w)`.
    pub fn closure_check(&self) -> ClosureReport {
        let dim = self.dim();
        let e = |b: usize| -> SparseVec { [(b, Q::one())].into_iter().collect() };
        let n = self.n;
        let mut failures = Vec::new();
        let mut fail = |name: String| {
            if failures.len() < 20 {
                failures.push(name);
            }
        };
        let reached: Vec<usize> = (0..dim)
            .filter(|&b| {
                let v = self.apply_monomial(b, &e(self.index(&vec![0; n], &Perm::identity(n)).expect("1")));
                v.len() == 1 && v.get(&b).is_some_and(|c| c.is_one())
            })
            .collect();
        for b in 0..dim {
            let v = e(b);
            for i in 1..n {
                let ti = |x: &SparseVec| self.apply_t(i, x);
                if ti(&ti(&v)) != v {
                    fail(format!("T_{i}^2 on {b}"));
                }
                // T_iY_i - Y_{i+1}T_i = -1 and Y_iT_i - T_iY_{i+1} = -1
                let mut lhs = ti(&self.apply_y(i, &v));
                axpy(&mut lhs, &-Q::one(), &self.apply_y(i + 1, &ti(&v)));
                axpy(&mut lhs, &Q::one(), &v);
                if !lhs.is_empty() {
                    fail(format!("skein T_{i}Y_{i} on {b}"));
                }
                let mut lhs = self.apply_y(i, &ti(&v));
                axpy(&mut lhs, &-Q::one(), &ti(&self.apply_y(i + 1, &v)));
                axpy(&mut lhs, &Q::one(), &v);
                if !lhs.is_empty() {
                    fail(format!("skein Y_{i}T_{i} on {b}"));
                }
                for j in 1..=n {
                    if j != i && j != i + 1 && ti(&self.apply_y(j, &v)) != self.apply_y(j, &ti(&v)) {
                        fail(format!("T_{i}Y_{j} on {b}"));
                    }
                }
                for j in i + 1..n {
                    let tj = |x: &SparseVec| self.apply_t(j, x);
                    let ok = if j == i + 1 { ti(&tj(&ti(&v))) == tj(&ti(&tj(&v))) } else { ti(&tj(&v)) == tj(&ti(&v)) };
                    if !ok {
                        fail(format!("braid T_{i}T_{j} on {b}"));
                    }
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    if self.apply_y(i, &self.apply_y(j, &v)) != self.apply_y(j, &self.apply_y(i, &v)) {
                        fail(format!("Y_{i}Y_{j} on {b}"));
                    }
                }
            }
            let mut acc = v.clone();
            for ui in &self.u {
                let mut next = self.apply_y(1, &acc);
                axpy(&mut next, &-ui.clone(), &acc);
                acc = next;
            }
            if !acc.is_empty() {
                fail(format!("cyclotomic on {b}"));
            }
        }
        ClosureReport { dimension: dim, spanned: reached.len(), relations_hold: failures.is_empty(), failures }
    }
}

/// Result of [`HeckeAlgebra::closure_check`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClosureReport {
    /// `r^n n!`.
    pub dimension: usize,
    /// Basis monomials recovered as `Y^α T_w · 1`.
    pub spanned: usize,
    pub relations_hold: bool,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn ok(&self) -> bool {
        self.relations_hold && self.spanned == self.dimension
    }
}

/// Row of `t^λ` holding each entry, as `(component, row)`.
fn rows_of_top(lambda: &Multipartition) -> Vec<(usize, usize)> {
    top_tableau(lambda).entries().into_iter().map(|(node, _)| (node.comp, node.row)).collect()
}

/// The row stabilizer of `t^λ`.
pub fn row_stabilizer(lambda: &Multipartition) -> Vec<Perm> {
    let rows = rows_of_top(lambda);
    Perm::all(lambda.size()).into_iter().filter(|w| (0..rows.len()).all(|x| rows[x] == rows[w.apply(x)])).collect()
}

/// `x_λ = Σ_{w ∈ S_λ} T_w`.
pub fn x_lambda(h: &HeckeAlgebra, lambda: &Multipartition) -> Result<HeckeElement> {
    let mut out = h.zero();
    for w in row_stabilizer(lambda) {
        out = out.add(&h.t_w(&w)?)?;
    }
    Ok(out)
}

/// `u_λ = ∏_{i=1}^{r-1} (Y_1 - u_{i+1})⋯(Y_{a_i} - u_{i+1})`,
/// `a_i = |λ^{(1)}| + … + |λ^{(i)}|`.
pub fn u_lambda(h: &HeckeAlgebra, lambda: &Multipartition) -> Result<HeckeElement> {
    let mut out = h.one();
    let mut a = 0;
    for i in 1..h.r() {
        a += lambda.comp(i).iter().sum::<usize>();
        for j in 1..=a {
            let f = h.y(j)?.sub(&h.scalar(h.u()[i].clone()))?;
            out = h.multiply(&out, &f)?;
        }
    }
    Ok(out)
}

fn check_shape(h: &HeckeAlgebra, lambda: &Multipartition) -> Result<()> {
    if lambda.r() != h.r() || lambda.size() != h.n() {
        return Err(Error::SizeMismatch(format!("{lambda} is not an {}-multipartition of {}", h.r(), h.n())));
    }
    Ok(())
}

/// `m_λ = u_λ x_λ`.
pub fn murphy_m_lambda(h: &HeckeAlgebra, lambda: &Multipartition) -> Result<HeckeElement> {
    check_shape(h, lambda)?;
    h.multiply(&u_lambda(h, lambda)?, &x_lambda(h, lambda)?)
}

/// `m_st = T_{d(s)^{-1}} u_λ x_λ T_{d(t)}`.
pub fn murphy_m(h: &HeckeAlgebra, s: &UpDownTableau, t: &UpDownTableau) -> Result<HeckeElement> {
    let lambda = s.shape();
    if t.shape() != lambda || !s.is_standard() || !t.is_standard() {
        return Err(Error::SizeMismatch(format!("{s} and {t} are not standard of one shape")));
    }
    check_shape(h, &lambda)?;
    let m = murphy_m_lambda(h, &lambda)?;
    let left = h.t_w(&tableau_perm(s).inverse())?;
    let right = h.t_w(&tableau_perm(t))?;
    h.product(&[left, m, right])
}

/// Label of a Murphy basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MurphyLabel {
    pub lambda: Multipartition,
    pub s: UpDownTableau,
    pub t: UpDownTableau,
}

/// The whole Murphy basis with an exact coordinate solver.
#[derive(Clone, Debug)]
pub struct MurphyBasis {
    pub labels: Vec<MurphyLabel>,
    pub elements: Vec<HeckeElement>,
    /// Row-reduced `[M | I]` giving `M^{-1}` when `M` is invertible.
    inverse: Option<Vec<Vec<Q>>>,
    pub rank: usize,
}

impl MurphyBasis {
    pub fn new(h: &HeckeAlgebra) -> Result<Self> {
        let mut labels = Vec::new();
        for lambda in multipartitions(h.r(), h.n()) {
            let std = standard_tableaux(&lambda);
            for s in &std {
                for t in &std {
                    labels.push(MurphyLabel { lambda: lambda.clone(), s: s.clone(), t: t.clone() });
                }
            }
        }
        let elements: Vec<HeckeElement> =
            labels.par_iter().map(|l| murphy_m(h, &l.s, &l.t)).collect::<Result<_>>()?;
        let dim = h.dim();
        let rows: Vec<Vec<Q>> = elements.iter().map(|e| h.coordinates(e)).collect();
        let rank = exact_rank_rows(rows.clone(), dim);
        let inverse = (rank == dim && labels.len() == dim).then(|| invert_columns(&rows));
        Ok(MurphyBasis { labels, elements, inverse, rank })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, s: &UpDownTableau, t: &UpDownTableau) -> Option<usize> {
        self.labels.iter().position(|l| &l.s == s && &l.t == t)
    }

    /// Coordinates of `a` in the Murphy basis.
    pub fn solve(&self, h: &HeckeAlgebra, a: &HeckeElement) -> Result<Vec<Q>> {
        let inv = self.inverse.as_ref().ok_or_else(|| Error::Domain("Murphy family is not a basis".into()))?;
        let v = h.coordinates(a);
        Ok(inv
            .iter()
            .map(|row| row.iter().zip(&v).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum())
            .collect())
    }
}

/// Inverse of the matrix whose columns are `cols`, by Gauss–Jordan.
fn invert_columns(cols: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let d = cols.len();
    // a[i][j] = cols[j][i]
    let mut a: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
    let mut inv: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for c in 0..d {
        let p = (c..d).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(c, p);
        inv.swap(c, p);
        let piv = Q::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &piv;
        }
        for x in inv[c].iter_mut() {
            *x *= &piv;
        }
        let (arow, irow) = (a[c].clone(), inv[c].clone());
        for i in 0..d {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for (x, y) in a[i].iter_mut().zip(&arow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in inv[i].iter_mut().zip(&irow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    inv
}

/// Exact determinant.
pub fn det(mut a: Vec<Vec<Q>>) -> Q {
    let d = a.len();
    let mut out = Q::one();
    for c in 0..d {
        let Some(p) = (c..d).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(c, p);
            out = -out;
        }
        out *= &a[c][c];
        let piv = Q::one() / &a[c][c];
        for i in c + 1..d {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &piv;
            let row = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(&row) {
                *x -= &f * y;
            }
        }
    }
    out
}

/// Gram matrix of the cell module of `λ`: entry `(s, t)` is the coefficient
/// of `m_{t^λ t^λ}` in `m_{t^λ s} m_{t t^λ}`.  `consistent` records that the
/// product has no other component outside shapes strictly dominating `λ`.
#[derive(Clone, Debug, Serialize)]
pub struct GramMatrix {
    pub lambda: Multipartition,
    pub tableaux: Vec<UpDownTableau>,
    #[serde(serialize_with = "ser_q_matrix")]
    pub entries: Vec<Vec<Q>>,
    pub consistent: bool,
}

fn ser_q_matrix<S: serde::Serializer>(m: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|r| r.iter().map(rat::fmt_q).collect::<Vec<_>>()))
}

pub fn gram_matrix(h: &HeckeAlgebra, basis: &MurphyBasis, lambda: &Multipartition) -> Result<GramMatrix> {
    check_shape(h, lambda)?;
    let std = standard_tableaux(lambda);
    let top = top_tableau(lambda);
    let target = basis.index_of(&top, &top).expect("t^λ is standard");
    let mut consistent = true;
    let mut entries = vec![vec![Q::zero(); std.len()]; std.len()];
    for (i, s) in std.iter().enumerate() {
        let left = &basis.elements[basis.index_of(&top, s).expect("standard")];
        for (j, t) in std.iter().enumerate() {
            let right = &basis.elements[basis.index_of(t, &top).expect("standard")];
            let coords = basis.solve(h, &h.multiply(left, right)?)?;
            for (k, c) in coords.iter().enumerate() {
                if c.is_zero() || k == target {
                    continue;
                }
                let mu = &basis.labels[k].lambda;
                if mu == lambda || !dominates(mu, lambda) {
                    consistent = false;
                }
            }
            entries[i][j] = coords[target].clone();
        }
    }
    Ok(GramMatrix { lambda: lambda.clone(), tableaux: std, entries, consistent })
}

pub fn gram_det(h: &HeckeAlgebra, basis: &MurphyBasis, lambda: &Multipartition) -> Result<Q> {
    Ok(det(gram_matrix(h, basis, lambda)?.entries))
}

/// `H_{r,n}` generic: `u_i - u_j = d` with `d` an integer forces `|d| >= n`.
pub fn is_h_generic(u: &[Q], n: usize) -> bool {
    let bound = q(n as i64);
    (0..u.len()).all(|i| {
        (0..i).all(|j| {
            let d = &u[i] - &u[j];
            !(d.is_integer() && num_traits::Signed::abs(&d) < bound)
        })
    })
}

/// `H_{r,n}(u)` over a field of characteristic zero is semisimple exactly
/// when `u` is generic for it.
pub fn is_semisimple(r: usize, n: usize, u: &[Q]) -> bool {
    u.len() == r && is_h_generic(u, n)
}

/// `γ_{t^λ} = ∏ (λ^{(t)}_i)! · ∏_{s<t} ∏_{(i,j) ∈ λ^{(s)}} (j - i + u_s - u_t)`.
pub fn gamma_top(lambda: &Multipartition, u: &[Q]) -> Q {
    let mut g = Q::one();
    for comp in lambda.comps() {
        for &part in comp {
            for k in 1..=part {
                g *= q(k as i64);
            }
        }
    }
    for s in 0..lambda.r() {
        for (i, &part) in lambda.comps()[s].iter().enumerate() {
            for j in 1..=part {
                for t in s + 1..lambda.r() {
                    g *= q(j as i64) - q(i as i64 + 1) + &u[s] - &u[t];
                }
            }
        }
    }
    g
}

fn content_step(s: &UpDownTableau, t: &UpDownTableau, k: usize, u: &[Q]) -> Result<Q> {
    let d = s.content(k, u) - t.content(k, u);
    if d.is_zero() {
        return Err(Error::NotGeneric(format!("equal contents at {k}")));
    }
    Ok((&d + Q::one()) * (&d - Q::one()) / (&d * &d))
}

/// Tableaux `s = S_k t` with `s ⊳ t`, as `(k, s)`.
fn raisers(t: &UpDownTableau) -> Vec<(usize, UpDownTableau)> {
    (1..t.n())
        .filter_map(|k| match sk_action(t, k) {
            Ok(Some(s)) if s != *t && tableau_dominates(&s, t) => Some((k, s)),
            _ => None,
        })
        .collect()
}

/// `γ_t` along the first descending path from `t^λ`.
pub fn gamma(t: &UpDownTableau, u: &[Q]) -> Result<Q> {
    let lambda = t.shape();
    if !is_h_generic(u, t.n()) {
        return Err(Error::NotGeneric("u is not generic for H".into()));
    }
    let top = top_tableau(&lambda);
    let mut cur = t.clone();
    let mut factor = Q::one();
    while cur != top {
        let Some((k, s)) = raisers(&cur).into_iter().next() else {
            return Err(Error::Domain(format!("no S_k raising {cur}")));
        };
        factor *= content_step(&s, &cur, k, u)?;
        cur = s;
    }
    Ok(factor * gamma_top(&lambda, u))
}

/// `γ_t` over every descending path from `t^λ`; all values agree when the
/// recurrence is path independent.
pub fn gamma_all_paths(t: &UpDownTableau, u: &[Q]) -> Result<Vec<Q>> {
    let lambda = t.shape();
    let top = top_tableau(&lambda);
    fn go(cur: &UpDownTableau, top: &UpDownTableau, u: &[Q], acc: Q, out: &mut Vec<Q>) -> Result<()> {
        if cur == top {
            out.push(acc);
            return Ok(());
        }
        for (k, s) in raisers(cur) {
            go(&s, top, u, &acc * content_step(&s, cur, k, u)?, out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(t, &top, u, gamma_top(&lambda, u), &mut out)?;
    Ok(out)
}

/// `G(λ) = ∏_t γ_t`.
pub fn gamma_product(lambda: &Multipartition, u: &[Q]) -> Result<Q> {
    standard_tableaux(lambda).iter().try_fold(Q::one(), |acc, t| Ok(acc * gamma(t, u)?))
}

/// Expands `Y_k m_st` in the Murphy basis and checks that the coefficient of
/// `m_st` is `c_s(k)`, every other shape-`λ` term is `m_vt` with `v ⊳ s`,
/// and every other term has shape strictly dominating `λ`.
pub fn yk_spectral_check(h: &HeckeAlgebra, basis: &MurphyBasis, lambda: &Multipartition) -> Result<bool> {
    check_shape(h, lambda)?;
    let std = standard_tableaux(lambda);
    for s in &std {
        for t in &std {
            let idx = basis.index_of(s, t).expect("standard");
            for k in 1..=h.n() {
                let prod = h.multiply(&h.y(k)?, &basis.elements[idx])?;
                let coords = basis.solve(h, &prod)?;
                for (j, c) in coords.iter().enumerate() {
                    let l = &basis.labels[j];
                    let ok = if j == idx {
                        *c == s.content(k, h.u())
                    } else if c.is_zero() {
                        true
                    } else if &l.lambda == lambda {
                        l.t == *t && l.s != *s && tableau_dominates(&l.s, s)
                    } else {
                        dominates(&l.lambda, lambda)
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `n! ∏_{t=2}^r ∏_{d=0}^{n-1} (u_1 + d - u_t)`.
pub fn m_lambda_square_scalar(n: usize, u: &[Q]) -> Q {
    let mut c = Q::one();
    for k in 1..=n {
        c *= q(k as i64);
    }
    for ut in &u[1..] {
        for d in 0..n {
            c *= &u[0] + q(d as i64) - ut;
        }
    }
    c
}

/// Checks `m_λ² = n! ∏ ∏ (u_1 + d - u_t) m_λ` for `λ = ((n), ∅, …)`.
pub fn m_lambda_square_check(n: usize, u: &[Q]) -> Result<(bool, Q, bool)> {
    let h = HeckeAlgebra::new(n, u)?;
    let mut comps = vec![Vec::new(); u.len()];
    if n > 0 {
        comps[0] = vec![n];
    }
    let lambda = Multipartition::new(comps)?;
    let m = murphy_m_lambda(&h, &lambda)?;
    let sq = h.multiply(&m, &m)?;
    let c = m_lambda_square_scalar(n, u);
    Ok((sq == m.scale(&c), c, sq.is_zero()))
}

/// When `u` is not generic for `H_{r,n}`, renumbers it so that
/// `u_t = u_1 + d` for some `t > 1` and `0 <= d < n`, which makes `m_λ`
/// with `λ = ((n), ∅, …)` square to zero.
pub fn nilpotent_renumbering(n: usize, u: &[Q]) -> Option<Vec<Q>> {
    let bound = q(n as i64);
    for i in 0..u.len() {
        for j in 0..u.len() {
            let d = &u[j] - &u[i];
            if i != j && d.is_integer() && d >= Q::zero() && d < bound {
                let mut v = vec![u[i].clone(), u[j].clone()];
                v.extend(u.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, x)| x.clone()));
                return Some(v);
            }
        }
    }
    None
}

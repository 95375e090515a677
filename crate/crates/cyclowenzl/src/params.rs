//! Parameter sets, Schur q-functions, admissible `Ω`, truncated series in
//! `y^{-1}` and the rational functions `W_k(y, t)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{addable_removable, default_u, UpDownTableau};
use crate::rat::{self, half, q, sign_pow, Q};
use crate::{Error, Result};

/// Dense polynomial in `y`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `y - c`.
    pub fn linear(c: &Q) -> Self {
        Self::new(vec![-c.clone(), Q::one()])
    }

    pub fn y() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let len = self.0.len().max(o.0.len());
        let z = Q::zero();
        Poly::new((0..len).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.0.len() - 1;
        if rem.len() < d.0.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        let lead_inv = Q::one() / d.lead();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * dj;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.lead()))
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, y: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * y + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    /// `p(-y)`.
    pub fn reflect(&self) -> Poly {
        Poly(self.0.iter().enumerate().map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c }).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => rat::fmt_q(c),
                1 => format!("{}*y", rat::fmt_q(c)),
                _ => format!("{}*y^{i}", rat::fmt_q(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self { num, den: Poly::constant(Q::one()) });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let l = den.lead();
        Ok(Self { num: num.scale(&(Q::one() / &l)), den: den.monic() })
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, Poly::constant(Q::one())).expect("nonzero denominator")
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).sub(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Domain("division by zero rational function".into()));
        }
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn eval(&self, y: &Q) -> Result<Q> {
        let d = self.den.eval(y);
        if d.is_zero() {
            return Err(Error::Domain(format!("pole at {}", rat::fmt_q(y))));
        }
        Ok(self.num.eval(y) / d)
    }

    /// Residue at a simple pole `c`; zero when `c` is not a pole.
    pub fn residue_simple(&self, c: &Q) -> Result<Q> {
        if !self.den.eval(c).is_zero() {
            return Ok(Q::zero());
        }
        let dd = self.den.derivative().eval(c);
        if dd.is_zero() {
            return Err(Error::Domain(format!("pole at {} is not simple", rat::fmt_q(c))));
        }
        Ok(self.num.eval(c) / dd)
    }

    /// Expansion at `y = ∞`, keeping powers `y^p` with `p >= -order`.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let a = self.num.degree();
        let b = self.den.degree();
        if a < 0 {
            return TruncatedSeries::zero(order);
        }
        let lead = (a - b) as i64;
        // Coefficients of x = 1/y in reversed polynomials.
        let nrev: Vec<Q> = self.num.0.iter().rev().cloned().collect();
        let drev: Vec<Q> = self.den.0.iter().rev().cloned().collect();
        let count = (lead + order as i64 + 1).max(0) as usize;
        let mut out = vec![Q::zero(); count];
        let d0_inv = Q::one() / &drev[0];
        for i in 0..count {
            let mut acc = nrev.get(i).cloned().unwrap_or_else(Q::zero);
            for j in 1..=i.min(drev.len() - 1) {
                acc -= &drev[j] * &out[i - j];
            }
            out[i] = acc * &d0_inv;
        }
        TruncatedSeries::new(lead, out, order)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// A Laurent series in `y` truncated below `y^{-order}`: entry `i` of
/// `coeffs` is the coefficient of `y^{lead - i}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    lead: i64,
    coeffs: Vec<Q>,
    order: usize,
}

impl TruncatedSeries {
    pub fn new(lead: i64, mut coeffs: Vec<Q>, order: usize) -> Self {
        let keep = (lead + order as i64 + 1).max(0) as usize;
        coeffs.truncate(keep);
        coeffs.resize(keep, Q::zero());
        TruncatedSeries { lead, coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(0, Vec::new(), order)
    }

    /// `Σ_a c_a y^{-a}` from `c_0, c_1, …`.
    pub fn from_inverse_powers(c: &[Q], order: usize) -> Self {
        Self::new(0, c.to_vec(), order)
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        let lead = p.degree().max(0) as i64;
        let coeffs: Vec<Q> = (0..=lead).rev().map(|i| p.0.get(i as usize).cloned().unwrap_or_else(Q::zero)).collect();
        Self::new(lead, coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `y^p`.
    pub fn coeff(&self, p: i64) -> Q {
        if p > self.lead || p < -(self.order as i64) {
            return Q::zero();
        }
        self.coeffs.get((self.lead - p) as usize).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficients of `y^0, y^{-1}, …, y^{-order}`.
    pub fn inverse_powers(&self) -> Vec<Q> {
        (0..=self.order as i64).map(|a| self.coeff(-a)).collect()
    }

    fn top(&self) -> i64 {
        self.lead.max(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let lead = self.top().max(o.top());
        let coeffs = (0..=(lead + order as i64)).map(|i| self.coeff(lead - i) + o.coeff(lead - i)).collect();
        Self::new(lead, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.lead, self.coeffs.iter().map(|c| -c).collect(), self.order)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Product.  A factor with leading power `y^l`, `l > 0`, costs the other
    /// factor `l` orders of accuracy.
    pub fn mul(&self, o: &Self) -> Self {
        let order = (self.order as i64 - o.lead.max(0)).min(o.order as i64 - self.lead.max(0)).max(0) as usize;
        let lead = self.lead + o.lead;
        let count = (lead + order as i64 + 1).max(0) as usize;
        let mut out = vec![Q::zero(); count];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < count {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(lead, out, order)
    }

    /// `f(-y)`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.lead - i as i64).rem_euclid(2) == 0 { c.clone() } else { -c })
            .collect();
        Self::new(self.lead, coeffs, self.order)
    }

    /// Coefficientwise equality down to `y^{-order}` of both.
    pub fn agrees(&self, o: &Self) -> bool {
        let order = self.order.min(o.order) as i64;
        let top = self.top().max(o.top());
        (-order..=top).all(|p| self.coeff(p) == o.coeff(p))
    }
}

/// How `Ω` was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaMode {
    UAdmissibleDerived,
    UserSupplied,
}

/// `(r, u, Ω)` with truncation order and float precision.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ParamSet {
    pub r: usize,
    #[serde(with = "rat::serde_q_vec")]
    pub u: Vec<Q>,
    #[serde(with = "rat::serde_q_vec")]
    pub omega: Vec<Q>,
    pub mode: OmegaMode,
    #[serde(rename = "N")]
    pub trunc: usize,
    pub precision_bits: usize,
}

pub const DEFAULT_PRECISION: usize = 256;

/// Truncation order `2r + 4n`.
pub fn default_trunc(r: usize, n: usize) -> usize {
    2 * r + 4 * n
}

impl ParamSet {
    /// `Ω` derived from `u`, stored up to `ω_trunc`.
    pub fn from_u(u: Vec<Q>, trunc: usize, precision_bits: usize) -> Self {
        let r = u.len();
        let omega = (0..=trunc).map(|a| omega_value(&u, a)).collect();
        ParamSet { r, u, omega, mode: OmegaMode::UAdmissibleDerived, trunc, precision_bits }
    }

    /// Default generic parameters for `W_{r,n}`.
    pub fn default_for(r: usize, n: usize) -> Self {
        Self::from_u(default_u(r, n), default_trunc(r, n), DEFAULT_PRECISION)
    }

    pub fn user_supplied(u: Vec<Q>, omega: Vec<Q>, precision_bits: usize) -> Self {
        let trunc = omega.len().saturating_sub(1);
        ParamSet { r: u.len(), u, omega, mode: OmegaMode::UserSupplied, trunc, precision_bits }
    }

    pub fn omega(&self, a: usize) -> Result<&Q> {
        self.omega.get(a).ok_or(Error::Truncation { needed: a, have: self.trunc })
    }

    pub fn with_precision(mut self, bits: usize) -> Self {
        self.precision_bits = bits;
        self
    }
}

/// On-disk parameter file: `{"r": 2, "u": ["3/2", "-5"], "N": 12,
/// "precision_bits": 256}`.  Every key is optional.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ParamConfig {
    pub r: Option<usize>,
    pub n: Option<usize>,
    pub u: Option<Vec<String>>,
    #[serde(rename = "N")]
    pub trunc: Option<usize>,
    pub precision_bits: Option<usize>,
}

/// `q_a(x)`: the coefficient of `y^a` in `∏ (1 + x_i y) / (1 - x_i y)`.
pub fn schur_q(a: usize, x: &[Q]) -> Q {
    let mut series = vec![Q::zero(); a + 1];
    series[0] = Q::one();
    for xi in x {
        // (1 + x y)/(1 - x y) = 1 + 2 Σ_{k≥1} x^k y^k
        let mut factor = vec![Q::zero(); a + 1];
        factor[0] = Q::one();
        let mut p = Q::one();
        for f in factor.iter_mut().skip(1) {
            p *= xi;
            *f = &p * q(2);
        }
        let mut next = vec![Q::zero(); a + 1];
        for i in 0..=a {
            if series[i].is_zero() {
                continue;
            }
            for j in 0..=a - i {
                next[i + j] += &series[i] * &factor[j];
            }
        }
        series = next;
    }
    series.swap_remove(a)
}

/// `ω_a = q_{a+1}(u) - ½(-1)^r q_a(u) + ½δ_{a0}`.
pub fn omega_value(u: &[Q], a: usize) -> Q {
    let r = u.len();
    let mut w = schur_q(a + 1, u) - half() * sign_pow(r) * schur_q(a, u);
    if a == 0 {
        w += half();
    }
    w
}

/// [`omega_value`] guarded by the parameter set's truncation order.
pub fn omega_from_u(ps: &ParamSet, a: usize) -> Result<Q> {
    if a > ps.trunc {
        return Err(Error::Truncation { needed: a, have: ps.trunc });
    }
    Ok(omega_value(&ps.u, a))
}

/// `Σ_j v_j^a γ_j` with `γ_i = (2v_i - (-1)^d) ∏_{j≠i} (v_i + v_j)/(v_i - v_j)`
/// for pairwise distinct `v`.
pub fn omega_residue_form(v: &[Q], a: usize) -> Result<Q> {
    let d = v.len();
    let mut total = Q::zero();
    for (i, vi) in v.iter().enumerate() {
        let mut g = q(2) * vi - sign_pow(d);
        for (j, vj) in v.iter().enumerate() {
            if i != j {
                let diff = vi - vj;
                if diff.is_zero() {
                    return Err(Error::NotGeneric("repeated parameter".into()));
                }
                g *= (vi + vj) / diff;
            }
        }
        total += g * rat::pow(vi, a);
    }
    Ok(total)
}

/// Result of testing the admissibility recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// Smallest `a` with `ω_{2a+1}` violating the recursion.
    pub first_failure: Option<usize>,
    pub checked: usize,
}

/// `ω_{2a+1} = ½{-ω_{2a} + Σ_{b=1}^{2a+1} (-1)^{b-1} ω_{b-1} ω_{2a+1-b}}` for
/// every `a` with `2a + 1` in range.
pub fn check_admissible(omega: &[Q]) -> Admissibility {
    let mut checked = 0;
    for a in 0.. {
        let odd = 2 * a + 1;
        if odd >= omega.len() {
            break;
        }
        let mut s = -omega[2 * a].clone();
        for b in 1..=odd {
            let term = &omega[b - 1] * &omega[odd - b];
            if b % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        checked += 1;
        if omega[odd] != s * half() {
            return Admissibility { admissible: false, first_failure: Some(a), checked };
        }
    }
    Admissibility { admissible: true, first_failure: None, checked }
}

/// `W̃_1(y) = Σ_a ω_a y^{-a}` to order `order`.
pub fn w1_series(ps: &ParamSet, order: usize) -> Result<TruncatedSeries> {
    if ps.mode != OmegaMode::UAdmissibleDerived {
        return Err(Error::Domain("W_1 series needs u-derived Ω".into()));
    }
    let omega: Vec<Q> = (0..=order).map(|a| omega_value(&ps.u, a)).collect();
    Ok(TruncatedSeries::from_inverse_powers(&omega, order))
}

/// `(y - ½(-1)^r) ∏ (y + c_i)/(y - c_i)` over the given contents.
fn product_form(r: usize, contents: &[Q]) -> RationalFunction {
    let mut num = Poly::new(vec![-half() * sign_pow(r), Q::one()]);
    let mut den = Poly::constant(Q::one());
    for c in contents {
        num = num.mul(&Poly::linear(&-c.clone()));
        den = den.mul(&Poly::linear(c));
    }
    RationalFunction::new(num, den).expect("monic denominator")
}

/// `y - ½` as a rational function.
fn y_minus_half() -> RationalFunction {
    RationalFunction::from_poly(Poly::new(vec![-half(), Q::one()]))
}

/// `W̃_1(y) + y - ½ = (y - ½(-1)^r) ∏ (y + u_i)/(y - u_i)` to order `order`.
pub fn w1_identity_check(ps: &ParamSet, order: usize) -> Result<bool> {
    let lhs = w1_series(ps, order)?.add(&TruncatedSeries::from_poly(&Poly::new(vec![-half(), Q::one()]), order));
    let rhs = product_form(ps.r, &ps.u).expand(order);
    Ok(lhs.agrees(&rhs))
}

/// `(W̃_1(y) + y - ½)(W̃_1(-y) - y - ½) = (½ - y)(½ + y)` to order `order`,
/// for an arbitrary `ω_0, …, ω_order`.
pub fn w1_product_identity(omega: &[Q], order: usize) -> bool {
    let order = order.min(omega.len().saturating_sub(1));
    let w = TruncatedSeries::from_inverse_powers(omega, order);
    let y = TruncatedSeries::from_poly(&Poly::y(), order);
    let h = TruncatedSeries::from_poly(&Poly::constant(half()), order);
    let left = w.add(&y).sub(&h);
    let right = w.reflect().sub(&y).sub(&h);
    let target = TruncatedSeries::from_poly(&Poly::new(vec![qf_quarter(), Q::zero(), -Q::one()]), order);
    left.mul(&right).agrees(&target)
}

fn qf_quarter() -> Q {
    rat::qf(1, 4)
}

/// Contents of the addable and removable nodes of `t_{k-1}`, checked to be
/// distinct and nonzero.
pub fn node_contents(t: &UpDownTableau, k: usize, u: &[Q]) -> Result<Vec<Q>> {
    if k == 0 || k > t.n() {
        return Err(Error::Domain(format!("k = {k} out of range 1..={}", t.n())));
    }
    let cs: Vec<Q> = addable_removable(&t.at(k - 1), u).into_iter().map(|x| x.1).collect();
    for (i, c) in cs.iter().enumerate() {
        if c.is_zero() {
            return Err(Error::NotGeneric(format!("node content 0 at step {k}")));
        }
        if cs[..i].contains(c) {
            return Err(Error::NotGeneric(format!("repeated node content {} at step {k}", rat::fmt_q(c))));
        }
    }
    Ok(cs)
}

/// `W_k(y, t) = ½ - y + (y - ½(-1)^r) ∏_α (y + c(α))/(y - c(α))` over the
/// addable and removable nodes `α` of `t_{k-1}`.
pub fn wk_rational(t: &UpDownTableau, k: usize, ps: &ParamSet) -> Result<RationalFunction> {
    let cs = node_contents(t, k, &ps.u)?;
    Ok(product_form(ps.r, &cs).sub(&y_minus_half()))
}

/// Poles and residues of `W_k(y, t)/y` at the node contents of `t_{k-1}`.
pub fn wk_partial_fractions(t: &UpDownTableau, k: usize, ps: &ParamSet) -> Result<Vec<(Q, Q)>> {
    let cs = node_contents(t, k, &ps.u)?;
    let w = wk_rational(t, k, ps)?.div(&RationalFunction::from_poly(Poly::y()))?;
    cs.into_iter().map(|c| w.residue_simple(&c).map(|r| (c, r))).collect()
}

/// `W_k/y` equals the sum of its polar parts at the node contents, with no
/// constant term and no pole at zero.
pub fn w_residue_check(t: &UpDownTableau, k: usize, ps: &ParamSet) -> Result<bool> {
    let w = wk_rational(t, k, ps)?.div(&RationalFunction::from_poly(Poly::y()))?;
    let mut sum = RationalFunction::constant(Q::zero());
    for (c, res) in wk_partial_fractions(t, k, ps)? {
        sum = sum.add(&RationalFunction::new(Poly::constant(res), Poly::linear(&c))?);
    }
    Ok(w.sub(&sum).is_zero())
}

/// `((y+c)² - 1)/((y-c)² - 1) · (y-c)²/(y+c)²`.
pub fn recursion_factor(c: &Q) -> RationalFunction {
    let plus = Poly::linear(&-c.clone());
    let minus = Poly::linear(c);
    let one = Poly::constant(Q::one());
    let num = plus.mul(&plus).sub(&one).mul(&minus.mul(&minus));
    let den = minus.mul(&minus).sub(&one).mul(&plus.mul(&plus));
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `W̃_k(y)` specialized at `X_i ↦ c_t(i)`, run through the recursion as
/// truncated series starting from `Σ ω_a y^{-a}`.
pub fn wk_recursive(t: &UpDownTableau, k: usize, ps: &ParamSet, order: usize) -> Result<TruncatedSeries> {
    if k == 0 || k > t.n() {
        return Err(Error::Domain(format!("k = {k} out of range 1..={}", t.n())));
    }
    if ps.omega.len() <= order {
        return Err(Error::Truncation { needed: order, have: ps.trunc });
    }
    let shift = TruncatedSeries::from_poly(&Poly::new(vec![-half(), Q::one()]), order);
    let mut g = TruncatedSeries::from_inverse_powers(&ps.omega[..=order], order).add(&shift);
    for i in 1..k {
        let c = t.content(i, &ps.u);
        g = g.mul(&recursion_factor(&c).expand(order + 1));
    }
    Ok(g.sub(&shift))
}

/// The same recursion carried out exactly in rational functions from
/// `W_1(y, ∅)`.
pub fn wk_recursive_rational(t: &UpDownTableau, k: usize, ps: &ParamSet) -> Result<RationalFunction> {
    if k == 0 || k > t.n() {
        return Err(Error::Domain(format!("k = {k} out of range 1..={}", t.n())));
    }
    let mut g = product_form(ps.r, &ps.u);
    for i in 1..k {
        g = g.mul(&recursion_factor(&t.content(i, &ps.u)));
    }
    Ok(g.sub(&y_minus_half()))
}

/// `ω_k^{(a)}` on the class of `t`: the coefficient of `y^{-a}` in `W_k(y, t)`.
pub fn omega_k(t: &UpDownTableau, k: usize, ps: &ParamSet, a: usize) -> Result<Q> {
    Ok(wk_rational(t, k, ps)?.expand(a).coeff(-(a as i64)))
}

//! Dense matrices over exact rationals or binary floats of configurable
//! precision, Frobenius residuals and singular-value rank.

use std::ops::{Add, Mul, Neg, Sub};

use dashu_base::{Abs, SquareRoot};
use dashu_float::{round::mode::HalfEven, FBig};
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::rat::Q;
use crate::{Error, Result};

/// Binary floating point with round-half-even.
pub type Real = FBig<HalfEven, 2>;

fn ibig(x: &BigInt) -> IBig {
    let (sign, bytes) = x.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

/// Nearest `precision`-bit float to `x`.
pub fn real_from_q(x: &Q, precision: usize) -> Real {
    if x.is_zero() {
        return Real::ZERO;
    }
    let n = Real::from(ibig(x.numer())).with_precision(precision).value();
    if x.denom().is_one() {
        return n;
    }
    let d = Real::from(ibig(x.denom())).with_precision(precision).value();
    n / d
}

pub fn real_to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Decimal string carrying the full binary precision.
pub fn real_to_string(x: &Real) -> String {
    if x.repr().is_zero() {
        return "0".into();
    }
    let digits = (x.precision() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1;
    x.clone().with_base_and_precision::<10>(digits).value().to_string()
}

/// Field operations shared by the exact and the floating checkers.
pub trait Scalar: Clone + Send + Sync + std::fmt::Debug {
    fn from_q(x: &Q, precision: usize) -> Self;
    fn zero_value() -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn to_f64(&self) -> f64;
    fn one_value(precision: usize) -> Self {
        Self::from_q(&Q::one(), precision)
    }
}

impl Scalar for Q {
    fn from_q(x: &Q, _: usize) -> Self {
        x.clone()
    }
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn plus(&self, o: &Self) -> Self {
        Add::add(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        Sub::sub(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        Mul::mul(self, o)
    }
    fn negated(&self) -> Self {
        Neg::neg(self)
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for Real {
    fn from_q(x: &Q, precision: usize) -> Self {
        real_from_q(x, precision)
    }
    fn zero_value() -> Self {
        Real::ZERO
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self.clone()
    }
    fn is_zero_value(&self) -> bool {
        self.repr().is_zero()
    }
    fn to_f64(&self) -> f64 {
        real_to_f64(self)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero_value(); rows * cols] }
    }

    pub fn identity(n: usize, precision: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one_value(precision);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_q_rows(rows: &[Vec<Q>], precision: usize) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|x| T::from_q(x, precision)).collect()).collect())
    }

    pub fn diagonal(d: Vec<T>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &T) -> Self {
        let data = self.data.iter().map(|a| if a.is_zero_value() { T::zero_value() } else { a.times(c) }).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Product skipping zero entries of the left factor.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero_value() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if b.is_zero_value() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_value())
    }

    /// Frobenius norm, which bounds the operator norm from above.
    pub fn frobenius(&self) -> f64 {
        let mut acc = T::zero_value();
        for x in &self.data {
            if !x.is_zero_value() {
                acc = acc.plus(&x.times(x));
            }
        }
        acc.to_f64().sqrt()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * m + c0 + j] = b.data[i * b.cols + j].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl Matrix<Q> {
    pub fn to_real(&self, precision: usize) -> Matrix<Real> {
        self.map(|x| real_from_q(x, precision))
    }

    /// Exact rank by fraction-free elimination.
    pub fn exact_rank(&self) -> usize {
        exact_rank_rows(self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect(), self.cols)
    }
}

/// Rank of a list of rational row vectors of length `cols`.
pub fn exact_rank_rows(mut rows: Vec<Vec<Q>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][c].clone();
        let prow: Vec<Q> = rows[rank].iter().map(|x| x / &piv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Singular values of the matrix whose columns are `cols`, largest first,
/// by one-sided Jacobi rotations at `precision` bits.
pub fn singular_values(mut cols: Vec<Vec<Real>>, precision: usize) -> Vec<Real> {
    let k = cols.len();
    let tol = real_from_q(&Q::new(BigInt::one(), BigInt::one() << (precision.saturating_sub(8))), precision);
    let one = Real::from(1).with_precision(precision).value();
    let two = Real::from(2).with_precision(precision).value();
    let dot = |a: &[Real], b: &[Real]| {
        a.iter().zip(b).fold(Real::ZERO, |acc, (x, y)| {
            if x.repr().is_zero() || y.repr().is_zero() {
                acc
            } else {
                acc + x * y
            }
        })
    };
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma.repr().is_zero() || alpha.repr().is_zero() || beta.repr().is_zero() {
                    continue;
                }
                let bound = &tol * (&alpha * &beta).sqrt();
                if gamma.clone().abs() <= bound {
                    continue;
                }
                rotated = true;
                let zeta = (&beta - &alpha) / (&two * &gamma);
                let root = (&one + &zeta * &zeta).sqrt();
                let t = if zeta >= Real::ZERO { &one / (&zeta + &root) } else { -(&one / (root - &zeta)) };
                let c = &one / (&one + &t * &t).sqrt();
                let s = &c * &t;
                let (left, right) = cols.split_at_mut(q);
                let (a, b) = (&mut left[p], &mut right[0]);
                for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                    if x.repr().is_zero() && y.repr().is_zero() {
                        continue;
                    }
                    let nx = &c * &*x - &s * &*y;
                    let ny = &s * &*x + &c * &*y;
                    *x = nx;
                    *y = ny;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<Real> = cols
        .par_iter()
        .map(|c| {
            let d = dot(c, c);
            if d.repr().is_zero() {
                Real::ZERO
            } else {
                d.sqrt()
            }
        })
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    sv
}

/// Numerical rank report for a family of vectors.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RankReport {
    pub count: usize,
    pub rank: usize,
    /// Relative singular-value threshold `2^{-precision/2}`.
    pub threshold: f64,
    pub spectrum_head: Vec<f64>,
    /// Largest dropped singular value over the smallest kept one.
    pub gap_ratio: f64,
}

/// Rank of the family `vectors` at `precision` bits: singular values above
/// `2^{-precision/2}` times the largest count.
pub fn numerical_rank(vectors: Vec<Vec<Real>>, precision: usize) -> RankReport {
    let count = vectors.len();
    let sv = singular_values(vectors, precision);
    let head = sv.iter().take(8).map(real_to_f64).collect();
    let Some(max) = sv.first().cloned() else {
        return RankReport { count, rank: 0, threshold: 2f64.powi(-(precision as i32 / 2)), spectrum_head: head, gap_ratio: 0.0 };
    };
    let thr = &max * real_from_q(&Q::new(BigInt::one(), BigInt::one() << (precision / 2)), precision);
    let rank = sv.iter().filter(|s| **s > thr && !s.repr().is_zero()).count();
    let gap_ratio = match (rank.checked_sub(1).map(|i| &sv[i]), sv.get(rank)) {
        (Some(kept), Some(dropped)) => real_to_f64(&(dropped / kept)),
        _ => 0.0,
    };
    RankReport { count, rank, threshold: 2f64.powi(-(precision as i32 / 2)), spectrum_head: head, gap_ratio }
}

/// `2^{-(precision - 40)}`, the per-dimension pass threshold for residuals.
pub fn residual_tolerance(precision: usize) -> f64 {
    2f64.powi(-(precision as i32 - 40))
}

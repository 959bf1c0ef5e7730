//! Truncated formal power series over exact rationals.
//!
//! [`USeries`] holds `c_0..=c_N` in one variable, [`BSeries`] holds
//! `c_{i,j}` for `0 ≤ i ≤ K, 0 ≤ j ≤ N` in two variables `x, y`. Arithmetic is
//! exact on the kept coefficients; anything beyond the truncation is dropped.
//! Binary operations on operands of different truncation keep the smaller one.
//!
//! The `egf_*` builders assemble the exponential generating functions of the
//! counted families:
//!
//! ```text
//! Φ(x, y; α) = Σ_{k,n} φ(k, n; α) x^k y^n / (k! n!)
//! Φ(z; α)    = Σ_n     φ(n, n; α) z^n / n!
//! ```

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, to_integer, BigInt, BigRat};
use crate::patterns::{AvoidanceSpec, Symbol};

/// Default bivariate truncation `(K, N)`.
pub const DEFAULT_BIVARIATE_ORDER: (usize, usize) = (8, 8);
/// Default univariate truncation.
pub const DEFAULT_UNIVARIATE_ORDER: usize = 12;

fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

fn frac(p: i64, q: i64) -> BigRat {
    BigRat::new(BigInt::from(p), BigInt::from(q))
}

/// Operations shared by both series types, enough for composition.
pub trait PowerSeries: Clone {
    fn constant(&self) -> &BigRat;
    /// The series `c` with the same truncation as `self`.
    fn constant_like(&self, c: BigRat) -> Self;
    fn series_add(&self, other: &Self) -> Self;
    fn series_mul(&self, other: &Self) -> Self;
    /// Smallest `m` such that the `m`-th power of any series with zero
    /// constant term vanishes under this truncation.
    fn nilpotency_bound(&self) -> usize;
}

// ---------------------------------------------------------------------------
// Univariate
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    coeffs: Vec<BigRat>,
}

impl USeries {
    pub fn zero(order: usize) -> Self {
        USeries {
            coeffs: vec![BigRat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRat::one(), order)
    }

    pub fn constant(c: BigRat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(BigRat::one(), 1, order)
    }

    /// `c z^degree`, zero if `degree` exceeds the truncation.
    pub fn monomial(c: BigRat, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Takes `coeffs` as `c_0, c_1, ...`; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least c_0");
        USeries { coeffs }
    }

    /// Polynomial with integer coefficients, truncated or padded to `order`.
    pub fn polynomial(coeffs: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (d, &c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[d] = rat(c);
        }
        s
    }

    /// `e^(a z)`.
    pub fn exp_linear(a: &BigRat, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = BigRat::one();
        for d in 0..=order {
            coeffs.push(c.clone());
            c = c * a / rat(d as i64 + 1);
        }
        USeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Result<&BigRat> {
        self.coeffs.get(d).ok_or(Error::OutsideTruncation {
            k: d,
            n: 0,
            kmax: self.order(),
            nmax: 0,
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRat::zero());
        USeries { coeffs }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by `z`, which requires `c_0 = 0`; the order drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.order() == 0 {
            return Err(Error::InvalidArgument("cannot divide an order-0 series by z".into()));
        }
        Ok(USeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `n! c_n`, which must be an integer.
    pub fn egf_count(&self, n: usize) -> Result<BigInt> {
        scaled_count(self.coeff(n)?, n, 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRat, &BigRat) -> BigRat) -> Self {
        let order = self.order().min(other.order());
        USeries {
            coeffs: (0..=order).map(|d| f(&self.coeffs[d], &other.coeffs[d])).collect(),
        }
    }
}

impl PowerSeries for USeries {
    fn constant(&self) -> &BigRat {
        &self.coeffs[0]
    }

    fn constant_like(&self, c: BigRat) -> Self {
        USeries::constant(c, self.order())
    }

    fn series_add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    fn series_mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        USeries { coeffs }
    }

    fn nilpotency_bound(&self) -> usize {
        self.order() + 1
    }
}

// ---------------------------------------------------------------------------
// Bivariate
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSeries {
    kmax: usize,
    nmax: usize,
    coeffs: Vec<BigRat>,
}

impl BSeries {
    pub fn zero(kmax: usize, nmax: usize) -> Self {
        BSeries {
            kmax,
            nmax,
            coeffs: vec![BigRat::zero(); (kmax + 1) * (nmax + 1)],
        }
    }

    pub fn one(kmax: usize, nmax: usize) -> Self {
        Self::constant(BigRat::one(), kmax, nmax)
    }

    pub fn constant(c: BigRat, kmax: usize, nmax: usize) -> Self {
        Self::monomial(c, 0, 0, kmax, nmax)
    }

    /// `c x^i y^j`, zero if outside the truncation.
    pub fn monomial(c: BigRat, i: usize, j: usize, kmax: usize, nmax: usize) -> Self {
        let mut s = Self::zero(kmax, nmax);
        if i <= kmax && j <= nmax {
            *s.at_mut(i, j) = c;
        }
        s
    }

    pub fn x(kmax: usize, nmax: usize) -> Self {
        Self::monomial(BigRat::one(), 1, 0, kmax, nmax)
    }

    pub fn y(kmax: usize, nmax: usize) -> Self {
        Self::monomial(BigRat::one(), 0, 1, kmax, nmax)
    }

    /// `e^(a x + b y)`, with coefficients `a^i b^j / (i! j!)`.
    pub fn exp_linear(a: &BigRat, b: &BigRat, kmax: usize, nmax: usize) -> Self {
        let ex = USeries::exp_linear(a, kmax);
        let ey = USeries::exp_linear(b, nmax);
        let mut s = Self::zero(kmax, nmax);
        for i in 0..=kmax {
            for j in 0..=nmax {
                *s.at_mut(i, j) = &ex.coeffs[i] * &ey.coeffs[j];
            }
        }
        s
    }

    /// `f(x)` viewed as a bivariate series.
    pub fn from_x(f: &USeries, kmax: usize, nmax: usize) -> Self {
        let mut s = Self::zero(kmax, nmax);
        for i in 0..=kmax.min(f.order()) {
            *s.at_mut(i, 0) = f.coeffs[i].clone();
        }
        s
    }

    /// `f(y)` viewed as a bivariate series.
    pub fn from_y(f: &USeries, kmax: usize, nmax: usize) -> Self {
        let mut s = Self::zero(kmax, nmax);
        for j in 0..=nmax.min(f.order()) {
            *s.at_mut(0, j) = f.coeffs[j].clone();
        }
        s
    }

    /// Builds `Σ c_{i,j} x^i y^j` from a sparse list of integer terms.
    pub fn polynomial(terms: &[(i64, usize, usize)], kmax: usize, nmax: usize) -> Self {
        let mut s = Self::zero(kmax, nmax);
        for &(c, i, j) in terms {
            if i <= kmax && j <= nmax {
                *s.at_mut(i, j) += rat(c);
            }
        }
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.kmax, self.nmax)
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.nmax + 1) + j
    }

    fn at(&self, i: usize, j: usize) -> &BigRat {
        &self.coeffs[self.idx(i, j)]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigRat {
        let idx = self.idx(i, j);
        &mut self.coeffs[idx]
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Result<&BigRat> {
        if i > self.kmax || j > self.nmax {
            return Err(Error::OutsideTruncation {
                k: i,
                n: j,
                kmax: self.kmax,
                nmax: self.nmax,
            });
        }
        Ok(self.at(i, j))
    }

    pub fn truncate(&self, kmax: usize, nmax: usize) -> Self {
        let mut s = Self::zero(kmax, nmax);
        for i in 0..=kmax.min(self.kmax) {
            for j in 0..=nmax.min(self.nmax) {
                *s.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        s
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        BSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    /// `f(y, x)`.
    pub fn swap_variables(&self) -> Self {
        let mut s = Self::zero(self.nmax, self.kmax);
        for i in 0..=self.kmax {
            for j in 0..=self.nmax {
                *s.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        s
    }

    /// The diagonal `Σ c_{n,n} z^n`, i.e. the diagonal of the coefficient
    /// array rescaled so that an EGF maps to the diagonal EGF: `n! c_{n,n}`
    /// counts become `c_n = n! c_{n,n}`.
    pub fn egf_diagonal(&self) -> USeries {
        let order = self.kmax.min(self.nmax);
        USeries {
            coeffs: (0..=order)
                .map(|n| self.at(n, n) * BigRat::from_integer(factorial(n)))
                .collect(),
        }
    }

    /// Zeroes the coefficients of `x^i` and `y^j` for `i, j ≥ 1`: no k×0 or
    /// 0×n matrix is counted for positive `k` or `n`.
    pub fn with_empty_matrix_convention(mut self) -> Self {
        for i in 1..=self.kmax {
            *self.at_mut(i, 0) = BigRat::zero();
        }
        for j in 1..=self.nmax {
            *self.at_mut(0, j) = BigRat::zero();
        }
        self
    }

    /// `k! n! c_{k,n}`, which must be an integer.
    pub fn egf_count(&self, k: usize, n: usize) -> Result<BigInt> {
        scaled_count(self.coeff(k, n)?, k, n)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRat, &BigRat) -> BigRat) -> Self {
        let (kmax, nmax) = (self.kmax.min(other.kmax), self.nmax.min(other.nmax));
        let mut s = Self::zero(kmax, nmax);
        for i in 0..=kmax {
            for j in 0..=nmax {
                *s.at_mut(i, j) = f(self.at(i, j), other.at(i, j));
            }
        }
        s
    }
}

impl PowerSeries for BSeries {
    fn constant(&self) -> &BigRat {
        self.at(0, 0)
    }

    fn constant_like(&self, c: BigRat) -> Self {
        BSeries::constant(c, self.kmax, self.nmax)
    }

    fn series_add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    fn series_mul(&self, other: &Self) -> Self {
        let (kmax, nmax) = (self.kmax.min(other.kmax), self.nmax.min(other.nmax));
        let mut s = Self::zero(kmax, nmax);
        for i1 in 0..=kmax {
            for j1 in 0..=nmax {
                let a = self.at(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=kmax - i1 {
                    for j2 in 0..=nmax - j1 {
                        let b = other.at(i2, j2);
                        if !b.is_zero() {
                            *s.at_mut(i1 + i2, j1 + j2) += a * b;
                        }
                    }
                }
            }
        }
        s
    }

    fn nilpotency_bound(&self) -> usize {
        self.kmax + self.nmax + 1
    }
}

fn scaled_count(c: &BigRat, k: usize, n: usize) -> Result<BigInt> {
    let scaled = c * BigRat::from_integer(factorial(k) * factorial(n));
    to_integer(&scaled).ok_or_else(|| Error::NonIntegerCoefficient {
        value: scaled.to_string(),
    })
}

macro_rules! impl_ops {
    ($t:ty) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                self.series_add(rhs)
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                self.zip_with(rhs, |a, b| a - b)
            }
        }
        impl Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                self.series_mul(rhs)
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.scale(&rat(-1))
            }
        }
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

impl_ops!(USeries);
impl_ops!(BSeries);

// ---------------------------------------------------------------------------
// exp, division, composition
// ---------------------------------------------------------------------------

/// Exponential of a univariate series with zero constant term.
///
/// Uses `f' = g' f`, i.e. `d f_d = Σ_{j=1}^{d} j g_j f_{d-j}`.
pub fn exp_series(g: &USeries) -> Result<USeries> {
    if !g.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    Ok(USeries {
        coeffs: exp_coeffs(&g.coeffs),
    })
}

fn exp_coeffs(g: &[BigRat]) -> Vec<BigRat> {
    let mut f = vec![BigRat::one()];
    for d in 1..g.len() {
        let mut acc = BigRat::zero();
        for j in 1..=d {
            if !g[j].is_zero() {
                acc += &g[j] * &f[d - j] * rat(j as i64);
            }
        }
        f.push(acc / rat(d as i64));
    }
    f
}

/// Exponential of a bivariate series with zero constant term.
///
/// The `x^0` row is the univariate exponential of `g(0, y)`; the remaining
/// rows follow from `x ∂_x f = (x ∂_x g) f`.
pub fn exp_bseries(g: &BSeries) -> Result<BSeries> {
    if !g.at(0, 0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let (kmax, nmax) = g.orders();
    let mut f = BSeries::zero(kmax, nmax);
    let row0: Vec<BigRat> = (0..=nmax).map(|j| g.at(0, j).clone()).collect();
    for (j, c) in exp_coeffs(&row0).into_iter().enumerate() {
        *f.at_mut(0, j) = c;
    }
    for i in 1..=kmax {
        for j in 0..=nmax {
            let mut acc = BigRat::zero();
            for a in 1..=i {
                for b in 0..=j {
                    let gc = g.at(a, b);
                    if !gc.is_zero() {
                        acc += gc * f.at(i - a, j - b) * rat(a as i64);
                    }
                }
            }
            *f.at_mut(i, j) = acc / rat(i as i64);
        }
    }
    Ok(f)
}

/// `num / den` for univariate series; `den` must have a nonzero constant term.
pub fn div_series(num: &USeries, den: &USeries) -> Result<USeries> {
    let d0 = &den.coeffs[0];
    if d0.is_zero() {
        return Err(Error::ZeroConstantDivisor);
    }
    let order = num.order().min(den.order());
    let mut q: Vec<BigRat> = Vec::with_capacity(order + 1);
    for d in 0..=order {
        let mut acc = num.coeffs[d].clone();
        for j in 1..=d {
            acc -= &den.coeffs[j] * &q[d - j];
        }
        q.push(acc / d0);
    }
    Ok(USeries { coeffs: q })
}

/// `num / den` for bivariate series; `den` must have a nonzero constant term.
pub fn div_bseries(num: &BSeries, den: &BSeries) -> Result<BSeries> {
    let d0 = den.at(0, 0).clone();
    if d0.is_zero() {
        return Err(Error::ZeroConstantDivisor);
    }
    let (kmax, nmax) = (num.kmax.min(den.kmax), num.nmax.min(den.nmax));
    let mut q = BSeries::zero(kmax, nmax);
    // (i, j) only depends on entries earlier in row-major order
    for i in 0..=kmax {
        for j in 0..=nmax {
            let mut acc = num.at(i, j).clone();
            for a in 0..=i {
                for b in 0..=j {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let dc = den.at(a, b);
                    if !dc.is_zero() {
                        acc -= dc * q.at(i - a, j - b);
                    }
                }
            }
            *q.at_mut(i, j) = acc / &d0;
        }
    }
    Ok(q)
}

/// `outer(inner)` where `inner` has zero constant term.
///
/// The outer series must be long enough for every power of `inner` that
/// survives the truncation.
pub fn compose<S: PowerSeries>(outer: &USeries, inner: &S) -> Result<S> {
    if !inner.constant().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let needed = inner.nilpotency_bound() - 1;
    let top = needed;
    if outer.order() < needed {
        return Err(Error::InvalidArgument(format!(
            "outer series of order {} cannot be composed exactly with inner of total degree {needed}",
            outer.order()
        )));
    }
    // Horner: (((a_top) u + a_{top-1}) u + ...) u + a_0
    let mut acc = inner.constant_like(outer.coeffs[top].clone());
    for d in (0..top).rev() {
        acc = acc.series_mul(inner).series_add(&inner.constant_like(outer.coeffs[d].clone()));
    }
    Ok(acc)
}

/// Univariate composition truncated to the shorter of the two orders.
pub fn compose_univariate(outer: &USeries, inner: &USeries) -> Result<USeries> {
    let order = outer.order().min(inner.order());
    compose(&outer.truncate(order), &inner.truncate(order))
}

/// `W(x) = Σ_{n≥1} (-n)^(n-1) x^n / n!`, the compositional inverse of `w e^w`.
pub fn lambert_w(order: usize) -> USeries {
    let mut s = USeries::zero(order);
    for n in 1..=order {
        let num = num_traits::pow(BigInt::from(-(n as i64)), n - 1);
        s.coeffs[n] = BigRat::new(num, factorial(n));
    }
    s
}

/// Whether `f` and `g` agree on every coefficient `x^k y^n` with `k, n ≥ 2`
/// inside the common truncation.
pub fn eq2_compare(f: &BSeries, g: &BSeries) -> bool {
    let (kmax, nmax) = (f.kmax.min(g.kmax), f.nmax.min(g.nmax));
    (2..=kmax).all(|i| (2..=nmax).all(|j| f.at(i, j) == g.at(i, j)))
}

// ---------------------------------------------------------------------------
// Generating functions
// ---------------------------------------------------------------------------

fn e(a: i64, b: i64, kmax: usize, nmax: usize) -> BSeries {
    BSeries::exp_linear(&rat(a), &rat(b), kmax, nmax)
}

fn poly(terms: &[(i64, usize, usize)], kmax: usize, nmax: usize) -> BSeries {
    BSeries::polynomial(terms, kmax, nmax)
}

/// `e^(x+y) / (e^x + e^y - e^(x+y))`, including its unit coefficients on both axes.
pub fn lonesum_closed_form(kmax: usize, nmax: usize) -> BSeries {
    let exy = e(1, 1, kmax, nmax);
    let den = &(&e(1, 0, kmax, nmax) + &e(0, 1, kmax, nmax)) - &exy;
    div_bseries(&exy, &den).expect("denominator has constant term 1")
}

/// `exp[(e^x - 1)(e^y - 1) + x + y]`, including its unit coefficients on both axes.
pub fn gamma_closed_form(kmax: usize, nmax: usize) -> BSeries {
    let one = BSeries::one(kmax, nmax);
    let inner = &(&(&e(1, 0, kmax, nmax) - &one) * &(&e(0, 1, kmax, nmax) - &one))
        + &poly(&[(1, 1, 0), (1, 0, 1)], kmax, nmax);
    exp_bseries(&inner).expect("zero constant term")
}

fn gamma_c_bivariate(kmax: usize, nmax: usize) -> BSeries {
    // 1 + (e^{2x} - 1)(e^{2y} - 1) / 2
    let one = BSeries::one(kmax, nmax);
    let prod = &(&e(2, 0, kmax, nmax) - &one) * &(&e(0, 2, kmax, nmax) - &one);
    &one + &prod.scale(&frac(1, 2))
}

/// `2 e^{y(e^x + 1) + x}`, the common leading part of both forms of Φ(x,y;T).
fn t_leading(kmax: usize, nmax: usize) -> BSeries {
    let y = BSeries::y(kmax, nmax);
    let x = BSeries::x(kmax, nmax);
    let inner = &(&y * &(&e(1, 0, kmax, nmax) + &BSeries::one(kmax, nmax))) + &x;
    exp_bseries(&inner).expect("zero constant term").scale(&rat(2))
}

fn t_bivariate(kmax: usize, nmax: usize) -> BSeries {
    // 2e^{y(e^x+1)+x} - (y²+2y)/2 e^{2x+2y} + (y²-1) e^{x+2y} - e^x - (y²-2y+2)/2 e^{2y} + 2
    let half = frac(1, 2);
    let a = poly(&[(1, 0, 2), (2, 0, 1)], kmax, nmax).scale(&half);
    let b = poly(&[(1, 0, 2), (-1, 0, 0)], kmax, nmax);
    let c = poly(&[(1, 0, 2), (-2, 0, 1), (2, 0, 0)], kmax, nmax).scale(&half);
    let mut s = t_leading(kmax, nmax);
    s = &s - &(&a * &e(2, 2, kmax, nmax));
    s = &s + &(&b * &e(1, 2, kmax, nmax));
    s = &s - &e(1, 0, kmax, nmax);
    s = &s - &(&c * &e(0, 2, kmax, nmax));
    &s + &BSeries::constant(rat(2), kmax, nmax)
}

/// The part of Φ(x,y;T) that survives on coefficients with `k, n ≥ 2`:
/// `2e^{y(e^x+1)+x} - (y²+2y)/2 e^{2x+2y} + (y²-1) e^{x+2y}`.
pub fn t_interior_form(kmax: usize, nmax: usize) -> BSeries {
    let a = poly(&[(1, 0, 2), (2, 0, 1)], kmax, nmax).scale(&frac(1, 2));
    let b = poly(&[(1, 0, 2), (-1, 0, 0)], kmax, nmax);
    let s = &t_leading(kmax, nmax) - &(&a * &e(2, 2, kmax, nmax));
    &s + &(&b * &e(1, 2, kmax, nmax))
}

/// `2 e^{xy + x + y}`: twice the EGF of rook placements.
fn tl_leading(kmax: usize, nmax: usize) -> BSeries {
    let inner = poly(&[(1, 1, 1), (1, 1, 0), (1, 0, 1)], kmax, nmax);
    exp_bseries(&inner).expect("zero constant term").scale(&rat(2))
}

fn tl_bivariate(kmax: usize, nmax: usize) -> BSeries {
    // 2e^{xy+x+y} - (xy)²/2 - 2xy + 3 - 2e^x - 2e^y
    //   + x(e^y - 2y - 1)(e^y - 1) + y(e^x - 2x - 1)(e^x - 1)
    let one = BSeries::one(kmax, nmax);
    let (ex, ey) = (e(1, 0, kmax, nmax), e(0, 1, kmax, nmax));
    let mut s = &tl_leading(kmax, nmax) - &poly(&[(1, 2, 2)], kmax, nmax).scale(&frac(1, 2));
    s = &s + &poly(&[(-2, 1, 1), (3, 0, 0)], kmax, nmax);
    s = &s - &(&ex + &ey).scale(&rat(2));
    let xpart = &(&BSeries::x(kmax, nmax) * &(&ey - &poly(&[(2, 0, 1), (1, 0, 0)], kmax, nmax))) * &(&ey - &one);
    let ypart = &(&BSeries::y(kmax, nmax) * &(&ex - &poly(&[(2, 1, 0), (1, 0, 0)], kmax, nmax))) * &(&ex - &one);
    &(&s + &xpart) + &ypart
}

/// The part of Φ(x,y;T,L) that survives on coefficients with `k, n ≥ 2`:
/// `2e^{xy+x+y} - (xy)²/2`.
pub fn tl_interior_form(kmax: usize, nmax: usize) -> BSeries {
    &tl_leading(kmax, nmax) - &poly(&[(1, 2, 2)], kmax, nmax).scale(&frac(1, 2))
}

/// `x^i y^j / (i! j!)` scaled by `c`.
fn egf_term(c: i64, i: usize, j: usize, kmax: usize, nmax: usize) -> BSeries {
    let denom = factorial(i) * factorial(j);
    BSeries::monomial(BigRat::new(BigInt::from(c), denom), i, j, kmax, nmax)
}

fn jo_bivariate(kmax: usize, nmax: usize) -> BSeries {
    // Rows k = 1, 2 and columns n = 1, 2 come from
    //   x e^{2y} + (x²/2!)(1+y)² e^{2y} and the mirror image,
    // the doubly counted corner x^a y^b (a, b ≤ 2) is removed once, and the
    // finitely many remaining cells are added term by term.
    let half = frac(1, 2);
    let (e2x, e2y) = (e(2, 0, kmax, nmax), e(0, 2, kmax, nmax));
    let x = BSeries::x(kmax, nmax);
    let y = BSeries::y(kmax, nmax);
    let mut s = BSeries::one(kmax, nmax);
    s = &s + &(&x * &e2y);
    s = &s + &(&y * &e2x);
    let row2 = &poly(&[(1, 2, 0), (2, 2, 1), (1, 2, 2)], kmax, nmax) * &e2y;
    let col2 = &poly(&[(1, 0, 2), (2, 1, 2), (1, 2, 2)], kmax, nmax) * &e2x;
    s = &s + &row2.scale(&half);
    s = &s + &col2.scale(&half);
    let overlap = &(&poly(&[(1, 1, 0), (1, 0, 1), (2, 1, 1), (2, 2, 1), (2, 1, 2)], kmax, nmax)
        + &poly(&[(1, 2, 0), (1, 0, 2)], kmax, nmax).scale(&half))
        + &egf_term(14, 2, 2, kmax, nmax);
    s = &s - &overlap;
    let cells: [(i64, usize, usize); 12] = [
        (156, 3, 3),
        (408, 3, 4),
        (408, 4, 3),
        (840, 4, 4),
        (720, 3, 5),
        (720, 5, 3),
        (720, 3, 6),
        (720, 6, 3),
        (720, 4, 5),
        (720, 5, 4),
        (720, 4, 6),
        (720, 6, 4),
    ];
    for (c, i, j) in cells {
        s = &s + &egf_term(c, i, j, kmax, nmax);
    }
    s
}

/// Φ(x, y; α) truncated to `(kmax, nmax)`.
///
/// Available for `{I}`, `{Γ}`, `{C}`, `{T}`, `{L}`, `{Γ,C}`, `{T,L}` and `{J,O}`.
pub fn egf_bivar(spec: AvoidanceSpec, kmax: usize, nmax: usize) -> Result<BSeries> {
    use Symbol::*;
    let symbols: Vec<Symbol> = spec.symbols().collect();
    let s = match symbols.as_slice() {
        [I] => lonesum_closed_form(kmax, nmax).with_empty_matrix_convention(),
        [Gamma] | [C] => gamma_closed_form(kmax, nmax).with_empty_matrix_convention(),
        [Gamma, C] => gamma_c_bivariate(kmax, nmax),
        [T] => t_bivariate(kmax, nmax),
        [L] => t_bivariate(nmax, kmax).swap_variables(),
        [T, L] => tl_bivariate(kmax, nmax),
        [J, O] => jo_bivariate(kmax, nmax),
        _ => return Err(Error::NoGeneratingFunction(spec.to_string())),
    };
    Ok(s)
}

pub fn has_bivariate_egf(spec: AvoidanceSpec) -> bool {
    egf_bivar(spec, 0, 0).is_ok()
}

fn ez(a: i64, order: usize) -> USeries {
    USeries::exp_linear(&rat(a), order)
}

/// `Σ_{m=0}^{N} (1 - e^{-(m+1)z})^m`. Term `m` is `O(z^m)`, so stopping at
/// `m = N` is exact through order `N`.
pub fn lonesum_diagonal(order: usize, outer_terms: usize) -> USeries {
    let one = USeries::one(order);
    let mut s = USeries::zero(order);
    for m in 0..=outer_terms {
        let base = &one - &ez(-(m as i64 + 1), order);
        let mut p = one.clone();
        for _ in 0..m {
            p = &p * &base;
        }
        s = &s + &p;
    }
    s
}

fn t_diagonal(order: usize) -> USeries {
    // -2 W(u) / (z (1 + W(u))) + (z² - 1) e^{2z} - 2z(z + 1) e^{4z},  u = -z e^z.
    // W(u) = -z + O(z²), so -2 W(u) / z is an ordinary series; build it one
    // order higher and divide by z before taking the quotient.
    let hi = order + 1;
    let u = -&(&USeries::variable(hi) * &ez(1, hi));
    let w = compose(&lambert_w(hi), &u).expect("u has zero constant term");
    let num = w.scale(&rat(-2)).shift_down().expect("W(u) has zero constant term");
    let z = USeries::variable(hi);
    let den = (&z + &(&z * &w)).shift_down().expect("z + z W(u) has zero constant term");
    let lead = div_series(&num, &den).expect("1 + W(u) has constant term 1");
    let a = &USeries::polynomial(&[-1, 0, 1], order) * &ez(2, order);
    let b = &USeries::polynomial(&[0, 2, 2], order) * &ez(4, order);
    &(&lead + &a) - &b
}

fn tl_diagonal(order: usize) -> USeries {
    // 2 e^{z/(1-z)} / (1 - z) - 1 - 2z - z²
    let one_minus_z = USeries::polynomial(&[1, -1], order);
    let ratio = div_series(&USeries::variable(order), &one_minus_z).expect("constant term 1");
    let ex = exp_series(&ratio).expect("zero constant term");
    let lead = div_series(&ex, &one_minus_z).expect("constant term 1").scale(&rat(2));
    &lead - &USeries::polynomial(&[1, 2, 1], order)
}

/// Φ(z; α) truncated to `order`.
///
/// Available for `{I}`, `{T}`, `{L}`, `{Γ,C}`, `{T,L}` and `{J,O}`; the
/// diagonal of `{Γ}` has no closed form here.
pub fn egf_diag(spec: AvoidanceSpec, order: usize) -> Result<USeries> {
    use Symbol::*;
    let symbols: Vec<Symbol> = spec.symbols().collect();
    let s = match symbols.as_slice() {
        [I] => lonesum_diagonal(order, order),
        [Gamma, C] => (&ez(4, order) + &USeries::one(order)).scale(&frac(1, 2)),
        [T] | [L] => t_diagonal(order),
        [T, L] => tl_diagonal(order),
        [J, O] => USeries::polynomial(&[1, 2, 7, 26, 35], order),
        _ => return Err(Error::NoGeneratingFunction(format!("{spec} (diagonal)"))),
    };
    Ok(s)
}

pub fn has_diagonal_egf(spec: AvoidanceSpec) -> bool {
    egf_diag(spec, 0).is_ok()
}

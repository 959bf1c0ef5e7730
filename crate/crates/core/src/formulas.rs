//! Closed-form counts `φ(k, n; α)`.
//!
//! Every function here follows the empty-matrix conventions
//! `φ(0, 0) = 1` and `φ(k, 0) = φ(0, n) = 0` for `k, n ≥ 1`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, poly_bernoulli, pow, pow2, stirling2, to_integer, BigInt, BigRat};
use crate::patterns::{AvoidanceSpec, Oracle, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Formula,
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Formula => "formula",
            Provenance::Oracle => "oracle",
        })
    }
}

/// A count together with the question it answers and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiResult {
    pub k: usize,
    pub n: usize,
    pub alpha: AvoidanceSpec,
    pub value: BigInt,
    pub provenance: Provenance,
}

/// Value forced by the empty-matrix conventions, if either side is zero.
fn boundary(k: usize, n: usize) -> Option<BigInt> {
    (k == 0 || n == 0).then(|| BigInt::from((k == 0 && n == 0) as u8))
}

/// Lonesum matrices: the poly-Bernoulli number `B_n^(-k)`.
pub fn phi_i(k: usize, n: usize) -> BigInt {
    boundary(k, n).unwrap_or_else(|| poly_bernoulli(n, k))
}

/// `Σ_m m! S(n+1, m+1) S(k+1, m+1)`.
pub fn phi_gamma(k: usize, n: usize) -> BigInt {
    if let Some(v) = boundary(k, n) {
        return v;
    }
    (0..=k.min(n))
        .map(|m| factorial(m) * stirling2(n + 1, m + 1) * stirling2(k + 1, m + 1))
        .sum()
}

/// Same count as [`phi_gamma`] by complementing entries.
pub fn phi_c(k: usize, n: usize) -> BigInt {
    phi_gamma(k, n)
}

/// `2^(k+n-1)`: the first row and column determine the rest.
pub fn phi_gamma_c(k: usize, n: usize) -> BigInt {
    boundary(k, n).unwrap_or_else(|| pow(2, k + n - 1))
}

/// `2 Σ_{l≥1} C(n, l-1) l^k + (n² - n - 4) 2^(n-2) - n(n+3) 2^(n+k-3)`.
///
/// The powers of two are fractional for small `k, n`, so the expression is
/// evaluated over the rationals and the result must come out integral.
pub fn phi_t(k: usize, n: usize) -> Result<BigInt> {
    if let Some(v) = boundary(k, n) {
        return Ok(v);
    }
    let sum: BigInt = (1..=n + 1)
        .map(|l| binomial(n, l as i64 - 1) * pow(l as i64, k))
        .sum();
    let (ki, ni) = (k as i64, n as i64);
    let value = BigRat::from_integer(BigInt::from(2) * sum)
        + BigRat::from_integer(BigInt::from(ni * ni - ni - 4)) * pow2(ni - 2)
        - BigRat::from_integer(BigInt::from(ni * (ni + 3))) * pow2(ni + ki - 3);
    to_integer(&value).ok_or_else(|| Error::NonIntegerResult {
        k,
        n,
        value: value.to_string(),
    })
}

/// Transpose of the `T` count.
pub fn phi_l(k: usize, n: usize) -> Result<BigInt> {
    phi_t(n, k)
}

/// Number of placements of non-attacking rooks on a k×n board.
pub fn rook_placements(k: usize, n: usize) -> BigInt {
    (0..=k.min(n))
        .map(|m| binomial(k, m as i64) * binomial(n, m as i64) * factorial(m))
        .sum()
}

/// Avoiding both `T` and `L`.
///
/// Piecewise: a single row or column is unconstrained, `φ(2,2) = 12`, and
/// otherwise the count is twice the number of rook placements.
pub fn phi_tl(k: usize, n: usize) -> BigInt {
    let (a, b) = (k.min(n), k.max(n));
    match (a, b) {
        (0, _) => boundary(k, n).unwrap(),
        (1, _) => pow(2, b),
        (2, 2) => BigInt::from(12),
        _ => BigInt::from(2) * rook_placements(a, b),
    }
}

/// Avoiding both `J` and `O`, i.e. monochromatic 2×2 submatrices.
///
/// Two-colourings of `K_{k,n}` without a monochromatic `K_{2,2}` vanish for
/// `k, n ≥ 5`, which leaves finitely many nonzero values outside the first
/// two rows.
pub fn phi_jo(k: usize, n: usize) -> BigInt {
    let (a, b) = (k.min(n), k.max(n));
    match (a, b) {
        (0, _) => boundary(k, n).unwrap(),
        (1, _) => pow(2, b),
        // (b² + 3b + 4) 2^(b-2), b ≥ 2 here
        (2, _) => BigInt::from(b * b + 3 * b + 4) * pow(2, b - 2),
        (3, 3) => BigInt::from(156),
        (3, 4) => BigInt::from(408),
        (4, 4) => BigInt::from(840),
        (3 | 4, 5 | 6) => BigInt::from(720),
        _ => BigInt::zero(),
    }
}

/// Which avoidance sets have a closed form in this module.
pub fn has_closed_form(spec: AvoidanceSpec) -> bool {
    closed_form(spec).is_some()
}

type ClosedForm = fn(usize, usize) -> Result<BigInt>;

fn closed_form(spec: AvoidanceSpec) -> Option<ClosedForm> {
    use Symbol::*;
    let symbols: Vec<Symbol> = spec.symbols().collect();
    let f: ClosedForm = match symbols.as_slice() {
        [I] => |k, n| Ok(phi_i(k, n)),
        [Gamma] => |k, n| Ok(phi_gamma(k, n)),
        [C] => |k, n| Ok(phi_c(k, n)),
        [T] => phi_t,
        [L] => phi_l,
        [Gamma, C] => |k, n| Ok(phi_gamma_c(k, n)),
        [T, L] => |k, n| Ok(phi_tl(k, n)),
        [J, O] => |k, n| Ok(phi_jo(k, n)),
        _ => return None,
    };
    Some(f)
}

/// `φ(k, n; α)` with the default oracle guard for sets without a closed form.
pub fn phi(k: usize, n: usize, spec: &AvoidanceSpec) -> Result<PhiResult> {
    phi_with_oracle(k, n, spec, &Oracle::default())
}

/// `φ(k, n; α)`: closed form when one exists, exhaustive count otherwise.
pub fn phi_with_oracle(k: usize, n: usize, spec: &AvoidanceSpec, oracle: &Oracle) -> Result<PhiResult> {
    let (value, provenance) = match closed_form(*spec) {
        Some(f) => (f(k, n)?, Provenance::Formula),
        None => (oracle.count(k, n, *spec)?, Provenance::Oracle),
    };
    debug_assert!(value >= BigInt::zero());
    Ok(PhiResult {
        k,
        n,
        alpha: *spec,
        value,
        provenance,
    })
}

/// `Σ_m C(n, m) m! S(k, m) 2^(n-m)`: functions `[k] → [n]` where every
/// element outside the image gets one of two colours, counted by image size.
pub fn function_count_identity_lhs(k: usize, n: usize) -> BigInt {
    (0..=n)
        .map(|m| binomial(n, m as i64) * factorial(m) * stirling2(k, m) * pow(2, n - m))
        .sum()
}

/// `Σ_l C(n, l) l^k`, the same count with `0^0 = 1`.
pub fn function_count_identity_rhs(k: usize, n: usize) -> BigInt {
    (0..=n)
        .map(|l| {
            let p = if k == 0 { BigInt::one() } else { pow(l as i64, k) };
            binomial(n, l as i64) * p
        })
        .sum()
}

//! Exact integer and rational arithmetic plus memoized combinatorial numbers.
//!
//! All counts are [`BigInt`]s and all series coefficients are [`BigRat`]s, so
//! nothing in the crate can overflow. Factorials, binomial rows and Stirling
//! rows are extended on demand by their recurrences and cached for the
//! lifetime of the process in a shared [`CombCache`].

use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as BigRat;

/// Memo tables for `n!`, `C(n, m)` and `S(n, m)`.
///
/// Rows are only ever appended, never mutated, so a value handed out once is
/// the value every later reader sees.
#[derive(Debug, Default)]
pub struct CombCache {
    factorials: RwLock<Vec<BigInt>>,
    pascal: RwLock<Vec<Vec<BigInt>>>,
    stirling: RwLock<Vec<Vec<BigInt>>>,
}

impl CombCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache used by the free functions of this module.
    pub fn global() -> &'static CombCache {
        static CACHE: OnceLock<CombCache> = OnceLock::new();
        CACHE.get_or_init(CombCache::new)
    }

    pub fn factorial(&self, n: usize) -> BigInt {
        if let Some(v) = self.factorials.read().unwrap().get(n) {
            return v.clone();
        }
        let mut table = self.factorials.write().unwrap();
        if table.is_empty() {
            table.push(BigInt::one());
        }
        while table.len() <= n {
            let i = table.len();
            let next = &table[i - 1] * BigInt::from(i);
            table.push(next);
        }
        table[n].clone()
    }

    /// `C(n, m)`, zero outside `0 <= m <= n`.
    pub fn binomial(&self, n: usize, m: i64) -> BigInt {
        if m < 0 || m as u64 > n as u64 {
            return BigInt::zero();
        }
        let m = m as usize;
        if let Some(row) = self.pascal.read().unwrap().get(n) {
            return row[m].clone();
        }
        let mut rows = self.pascal.write().unwrap();
        if rows.is_empty() {
            rows.push(vec![BigInt::one()]);
        }
        while rows.len() <= n {
            let prev = rows.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigInt::one());
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        rows[n][m].clone()
    }

    /// Stirling number of the second kind `S(n, m)`.
    pub fn stirling2(&self, n: usize, m: usize) -> BigInt {
        if m > n {
            return BigInt::zero();
        }
        if let Some(row) = self.stirling.read().unwrap().get(n) {
            return row[m].clone();
        }
        let mut rows = self.stirling.write().unwrap();
        if rows.is_empty() {
            rows.push(vec![BigInt::one()]);
        }
        while rows.len() <= n {
            let i = rows.len();
            let prev = &rows[i - 1];
            let mut row = vec![BigInt::zero(); i + 1];
            // S(i, j) = j S(i-1, j) + S(i-1, j-1)
            for j in 1..=i {
                let mut v = prev[j - 1].clone();
                if j < i {
                    v += &prev[j] * BigInt::from(j);
                }
                row[j] = v;
            }
            rows.push(row);
        }
        rows[n][m].clone()
    }
}

pub fn factorial(n: usize) -> BigInt {
    CombCache::global().factorial(n)
}

pub fn binomial(n: usize, m: i64) -> BigInt {
    CombCache::global().binomial(n, m)
}

pub fn stirling2(n: usize, m: usize) -> BigInt {
    CombCache::global().stirling2(n, m)
}

/// Bernoulli number under the `x e^x / (e^x - 1)` convention (`B_1 = +1/2`),
/// evaluated as `Σ_m (-1)^(m+n) m! S(n, m) / (m + 1)`.
pub fn bernoulli(n: usize) -> BigRat {
    let mut acc = BigRat::zero();
    for m in 0..=n {
        let term = BigRat::new(factorial(m) * stirling2(n, m), BigInt::from(m + 1));
        if (m + n).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Poly-Bernoulli number `B_n^(-k) = Σ_{m ≤ min(n,k)} (m!)² S(n+1, m+1) S(k+1, m+1)`.
pub fn poly_bernoulli(n: usize, k: usize) -> BigInt {
    (0..=n.min(k))
        .map(|m| {
            let f = factorial(m);
            &f * &f * stirling2(n + 1, m + 1) * stirling2(k + 1, m + 1)
        })
        .sum()
}

/// `base^exp` for a nonnegative integer exponent.
pub fn pow(base: i64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

/// `2^exp` for any integer exponent, as an exact rational.
pub fn pow2(exp: i64) -> BigRat {
    let p = pow(2, exp.unsigned_abs() as usize);
    if exp >= 0 {
        BigRat::from_integer(p)
    } else {
        BigRat::new(BigInt::one(), p)
    }
}

/// Returns the integer value of `r`, or `None` when `r` has a denominator.
pub fn to_integer(r: &BigRat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

pub fn is_nonnegative(r: &BigRat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(p: i64, q: i64) -> BigRat {
        BigRat::new(int(p), int(q))
    }

    /// Counts set partitions of `{0..n}` into `m` blocks via restricted growth strings.
    fn partitions_brute(n: usize, m: usize) -> u64 {
        fn go(pos: usize, n: usize, max_block: usize, m: usize) -> u64 {
            if pos == n {
                return (max_block == m) as u64;
            }
            // put element `pos` into an existing block or open a new one
            let mut total = 0;
            for b in 0..=max_block {
                let next_max = if b == max_block { max_block + 1 } else { max_block };
                if next_max <= m {
                    total += go(pos + 1, n, next_max, m);
                }
            }
            total
        }
        go(0, n, 0, m)
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        let product: i64 = (1..=10).product();
        assert_eq!(factorial(10), int(product));
        assert_eq!(product, 3_628_800);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(4, 7), int(0));
        assert_eq!(binomial(4, -1), int(0));
        assert_eq!(binomial(20, 10), int(184_756));
        assert_eq!(binomial(0, 0), int(1));
    }

    #[test]
    fn binomial_symmetry_and_row_sums() {
        for n in 0..=30usize {
            let mut sum = BigInt::zero();
            for m in 0..=n as i64 {
                assert_eq!(binomial(n, m), binomial(n, n as i64 - m));
                sum += binomial(n, m);
            }
            assert_eq!(sum, pow(2, n));
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(partitions_brute(4, 2), 7);
        assert_eq!(stirling2(4, 2), int(7));
        assert_eq!(stirling2(3, 1), int(1));
        for n in 0..=8 {
            assert_eq!(stirling2(n, n), int(1));
        }
        assert_eq!(stirling2(0, 0), int(1));
        assert_eq!(stirling2(5, 0), int(0));
        assert_eq!(stirling2(2, 5), int(0));
    }

    #[test]
    fn stirling_recurrence_and_enumeration() {
        for n in 1..=30usize {
            for m in 1..=n {
                let rhs = BigInt::from(m) * stirling2(n - 1, m) + stirling2(n - 1, m - 1);
                assert_eq!(stirling2(n, m), rhs, "S({n},{m})");
            }
        }
        for n in 0..=8 {
            for m in 0..=n {
                assert_eq!(stirling2(n, m), int(partitions_brute(n, m) as i64));
            }
        }
    }

    #[test]
    fn fresh_cache_matches_global() {
        // touch the global tables in a different order first
        let _ = stirling2(40, 3);
        let _ = binomial(35, 7);
        let fresh = CombCache::new();
        for n in (0..=40).rev() {
            for m in 0..=n {
                assert_eq!(fresh.stirling2(n, m), stirling2(n, m));
                assert_eq!(fresh.binomial(n, m as i64), binomial(n, m as i64));
            }
            assert_eq!(fresh.factorial(n), factorial(n));
        }
    }

    #[test]
    fn concurrent_readers_agree() {
        let cache = CombCache::new();
        let expected: Vec<BigInt> = (0..60).map(|n| stirling2(n, n / 2)).collect();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for n in (0..60).rev() {
                        assert_eq!(cache.stirling2(n, n / 2), expected[n]);
                    }
                });
            }
        });
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(4), rat(-1, 30));
        for n in (3..=15).step_by(2) {
            assert!(bernoulli(n).is_zero());
        }
    }

    #[test]
    fn poly_bernoulli_values() {
        assert_eq!(poly_bernoulli(0, 0), int(1));
        assert_eq!(poly_bernoulli(1, 1), int(2));
        // 16 matrices of size 2x2 minus the two diagonal ones
        assert_eq!(poly_bernoulli(2, 2), int(14));
        assert_eq!(poly_bernoulli(3, 3), int(230));
    }

    #[test]
    fn poly_bernoulli_symmetric() {
        for n in 0..=12 {
            for k in 0..=12 {
                assert_eq!(poly_bernoulli(n, k), poly_bernoulli(k, n));
            }
        }
    }

    #[test]
    fn pow2_negative_exponents() {
        assert_eq!(pow2(-2), rat(1, 4));
        assert_eq!(pow2(0), rat(1, 1));
        assert_eq!(pow2(10), rat(1024, 1));
        assert_eq!(to_integer(&rat(3, 2)), None);
        assert_eq!(to_integer(&rat(6, 2)), Some(int(3)));
    }
}

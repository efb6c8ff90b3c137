//! Exact big-integer and divisor-lattice arithmetic.
//!
//! Everything downstream reduces to a handful of number-theoretic
//! primitives: the geometric sum `σ(n, r) = 1 + r + ⋯ + r^{n−1}`, the
//! cofactor `A(n, k) = σ(n/k, r^k)` that relates level `k` data to level
//! `n` data through `A(n,k)·(r^k − 1) = r^n − 1`, and plain divisor
//! enumeration of the (small) period index `n`.
//!
//! Period indices are desk-scale integers and are factored by trial
//! division. The class-set moduli `d_n` can be astronomically larger; they
//! are handled separately by [`factor_within_budget`], which refuses to
//! guess when trial division cannot certify a complete factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::{Error, Result};

/// Prime factorization of a positive integer: `n = Π pᵢ^{αᵢ}` with the
/// primes strictly increasing.
///
/// `n = 1` is represented by an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    /// The factored integer.
    pub n: u64,
    /// `(prime, multiplicity)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// The distinct primes dividing `n`, ascending.
    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Recomputes `Π pᵢ^{αᵢ}`; equals `self.n` by construction.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, a)| acc * p.pow(a))
    }
}

/// All positive divisors of `n`, sorted ascending. Always contains 1 and `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorLattice {
    pub n: u64,
    pub divisors: Vec<u64>,
}

impl DivisorLattice {
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.divisors.iter().copied()
    }

    /// Divisors of `n` other than `n` itself, ascending.
    pub fn proper(&self) -> impl Iterator<Item = u64> + '_ {
        let n = self.n;
        self.divisors.iter().copied().filter(move |&k| k != n)
    }
}

/// The geometric sum `σ(n, r) = Σ_{i=0}^{n−1} rⁱ`, exactly.
///
/// For `r ≠ 1` this is `(rⁿ − 1)/(r − 1)` (exact division); for `r = 1` it
/// is `n`. `σ(n, 0) = 1` and `σ(n, −1)` is `0` or `1` as `n` is even or odd.
pub fn sigma(n: u64, r: &BigInt) -> BigInt {
    assert!(n >= 1, "sigma: n must be positive, got {n}");
    if r.is_one() {
        return BigInt::from(n);
    }
    let numer: BigInt = Pow::pow(r, n) - 1;
    let denom: BigInt = r - 1;
    let (q, rem) = numer.div_rem(&denom);
    debug_assert!(rem.is_zero(), "r - 1 always divides r^n - 1");
    q
}

/// The cofactor `A(n, k) = 1 + r^k + r^{2k} + ⋯ + r^{n−k} = σ(n/k, r^k)`.
///
/// Satisfies `A(n,k)·(r^k − 1) = r^n − 1` and `A(n,k)·σ(k,r) = σ(n,r)`.
/// Rejects `k ∤ n`.
pub fn cofactor(r: &BigInt, n: u64, k: u64) -> Result<BigInt> {
    assert!(n >= 1 && k >= 1, "cofactor: levels must be positive");
    if !n.is_multiple_of(k) {
        return Err(Error::NotADivisor { k, n });
    }
    let rk: BigInt = Pow::pow(r, k);
    Ok(sigma(n / k, &rk))
}

/// Prime factorization of a positive integer by trial division.
pub fn factorize(n: u64) -> PrimeFactorization {
    assert!(n >= 1, "factorize: n must be positive, got {n}");
    let mut factors = Vec::new();
    let mut m = n;
    let mut p: u64 = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut a = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    PrimeFactorization { n, factors }
}

/// All positive divisors of `n`, sorted ascending.
pub fn divisors(n: u64) -> DivisorLattice {
    let f = factorize(n);
    let mut divs = vec![1u64];
    for &(p, a) in &f.factors {
        let prev = divs.clone();
        let mut pe = 1u64;
        for _ in 0..a {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    DivisorLattice { n, divisors: divs }
}

/// The maximal proper divisors `{n/p : p prime, p | n}`, sorted ascending.
///
/// These are the only levels that matter for irreducibility: reducibility
/// to any proper divisor factors through one of them.
pub fn maximal_proper_divisors(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::NoProperDivisors);
    }
    let f = factorize(n);
    let mut out: Vec<u64> = f.distinct_primes().map(|p| n / p).collect();
    out.sort_unstable();
    Ok(out)
}

/// Complete factorization of a positive big integer by trial division, or
/// a budget error when completeness cannot be certified.
///
/// Trial divisors run up to `trial_bound`. If a cofactor `> 1` remains
/// after that, it is prime exactly when it is below `trial_bound²`;
/// anything larger might still be composite, so the function refuses
/// rather than returning a possibly-incomplete factorization.
pub fn factor_within_budget(n: &BigInt, trial_bound: u64) -> Result<Vec<(BigInt, u32)>> {
    assert!(n.is_positive(), "factor_within_budget: n must be positive");
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p: u64 = 2;
    while p <= trial_bound {
        let pb = BigInt::from(p);
        if (&pb * &pb) > m {
            break;
        }
        if m.is_multiple_of(&pb) {
            let mut a = 0u32;
            while m.is_multiple_of(&pb) {
                m /= &pb;
                a += 1;
            }
            factors.push((pb, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let next = BigInt::from(p);
        let bound = BigInt::from(trial_bound);
        // Prime either because trial division passed sqrt(m), or because
        // m has no factor up to the bound and is at most bound^2.
        let certified_prime = &next * &next > m || m <= &bound * &bound;
        if !certified_prime {
            return Err(Error::FactoringBudgetExceeded {
                modulus: n.clone(),
                trial_bound,
            });
        }
        factors.push((m, 1));
    }
    Ok(factors)
}

/// All divisors of the integer with the given factorization, ascending.
pub fn divisors_from_factorization(factors: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, a) in factors {
        let prev = divs.clone();
        let mut pe = BigInt::one();
        for _ in 0..*a {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * &pe));
        }
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient of the integer with the given factorization.
pub fn totient_from_factorization(factors: &[(BigInt, u32)]) -> BigInt {
    let mut phi = BigInt::one();
    for (p, a) in factors {
        let pe1: BigInt = Pow::pow(p, (a - 1) as u64);
        phi *= &pe1 * (p - 1);
    }
    phi
}

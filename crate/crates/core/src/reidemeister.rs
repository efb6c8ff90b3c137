//! The cyclic-group model of the fiberwise Reidemeister set of `f_{r,s}`
//! and its iterates.
//!
//! At level `n` the class set is `ℤ/d_n` with `d_n = gcd(|r^n − 1|, |s·σ(n,r)|)`
//! (`ℤ` itself when `d_n = 0`). Three maps drive everything:
//!
//! - the iterate action `[f^ω]`: multiplication by `r` mod `d_n`. Since
//!   `d_n | r^n − 1`, `r` is invertible mod `d_n`, the action is a bijection
//!   and `[f^ω]^n` is the identity;
//! - the boosting map `γ_{k,n} : ℤ/d_k → ℤ/d_n` for `k | n`: multiplication
//!   by the cofactor `A(n,k)`. It is well defined because
//!   `A(n,k)·(a_k, b_k) = (a_n, b_n)`, which also gives the exact
//!   multiplicativity `d_n = |A(n,k)|·d_k` whenever `A(n,k) ≠ 0`;
//! - reducibility: a class at level `n` lies in the image of `γ_{k,n}`
//!   exactly when `gcd(A(n,k) mod d_n, d_n)` divides its residue.
//!
//! A consequence used throughout: if `d_k = 0` for some `k | n` then
//! `d_n = 0` too (the level-`n` vector is a multiple of the level-`k` one),
//! so at any level with `d_n > 0` every divisor level is finite and every
//! cofactor into it is nonzero.
//!
//! Orbits of `[f^ω]` stratify by `e = d_n / gcd(t, d_n)`: the residues of
//! stratum `e` form a free orbit family of length `ord_e(r)` and are
//! reducible to `k` exactly when `e | d_k`. This gives counting routes that
//! do not enumerate residues; they are cross-checked against enumeration in
//! the test suites.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{cofactor, divisors, factor_within_budget, maximal_proper_divisors, sigma};
use crate::{Error, Result};

/// The fiberwise torus map `f_{r,s}(x, y) = (x^r y^s, y)`.
///
/// Every pair of integers is a valid map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiberTorusMap {
    /// Fiber degree: the first coordinate is raised to this power.
    pub r: i64,
    /// Shear exponent: the power of the base coordinate mixed into the fiber.
    pub s: i64,
}

impl FiberTorusMap {
    pub fn new(r: i64, s: i64) -> Self {
        FiberTorusMap { r, s }
    }
}

/// Exact data of the n-th iterate: `f^n_{r,s}(x,y) = (x^{a_n + 1} y^{b_n}, y)`
/// in the sense that `a_n = r^n − 1` and `b_n = s·σ(n, r)`.
///
/// `d_n = gcd(|a_n|, |b_n|)` is the order of the level-`n` Reidemeister set;
/// `d_n = 0` (iff `a_n = b_n = 0`) means the set is infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelData {
    pub n: u64,
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
}

impl LevelData {
    /// True when the level-`n` Reidemeister set is infinite.
    pub fn is_degenerate(&self) -> bool {
        self.d.is_zero()
    }
}

/// The cardinality of a Reidemeister set: `d_n` when positive, infinite
/// when `d_n = 0` (the class set is all of `ℤ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReidemeisterCount {
    Finite(BigInt),
    Infinite,
}

/// One Reidemeister class: a canonical residue in `[0, d_n)` at its level.
///
/// Only constructible at levels with `d_n > 0`. The class does not carry
/// the map; callers must pass the same map to every operation on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReidemeisterClass {
    level: u64,
    residue: BigInt,
}

impl ReidemeisterClass {
    /// Builds the class of `residue` at level `n`, validating `0 ≤ residue < d_n`.
    pub fn new(map: FiberTorusMap, n: u64, residue: BigInt) -> Result<Self> {
        let lv = level(map, n);
        if lv.is_degenerate() {
            return Err(Error::InfiniteLevel { level: n });
        }
        if residue.is_negative() || residue >= lv.d {
            return Err(Error::ResidueOutOfRange {
                residue,
                modulus: lv.d,
            });
        }
        Ok(ReidemeisterClass { level: n, residue })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }
}

/// One orbit of the `[f^ω]` action on `ℤ/d_n`.
///
/// `members` are listed in iteration order starting from the smallest
/// residue of the orbit; `length = members.len()` divides `n`; `depth` is
/// the smallest divisor of `n` the orbit reduces to (constant along the
/// orbit); `irreducible` means `depth = n`. Every class at a level with
/// `d_n > 0` is essential, so `essential` is always true on a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub level: u64,
    pub members: Vec<u64>,
    pub length: u64,
    pub depth: u64,
    pub irreducible: bool,
    pub essential: bool,
}

impl OrbitRecord {
    /// The smallest residue of the orbit.
    pub fn representative(&self) -> u64 {
        self.members[0]
    }
}

/// Orbit counts of the `[f^ω]` action at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCounts {
    /// Number of orbits on all of `ℤ/d_n`.
    pub total: BigInt,
    /// Number of orbits consisting of irreducible classes (`O_n`).
    pub irreducible: BigInt,
}

/// Verdict of the n-torality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Torality {
    Toral,
    NotToral(ToralityWitness),
}

/// First violation found by [`is_n_toral`]: an orbit whose depth and
/// length differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToralityWitness {
    pub level: u64,
    pub residue: BigInt,
    pub depth: u64,
    pub length: u64,
}

/// Exact level data of the n-th iterate.
pub fn level(map: FiberTorusMap, n: u64) -> LevelData {
    assert!(n >= 1, "level: n must be positive, got {n}");
    let r = BigInt::from(map.r);
    let a: BigInt = num_traits::Pow::pow(&r, n) - 1;
    let b = BigInt::from(map.s) * sigma(n, &r);
    let d = a.gcd(&b);
    LevelData { n, a, b, d }
}

/// The Reidemeister number of `f^n` over the base: `d_n`, or infinite when
/// `d_n = 0`.
pub fn reidemeister_number(map: FiberTorusMap, n: u64) -> ReidemeisterCount {
    let lv = level(map, n);
    if lv.is_degenerate() {
        ReidemeisterCount::Infinite
    } else {
        ReidemeisterCount::Finite(lv.d)
    }
}

/// The Nielsen number of `f^n` over the base.
///
/// Equals the Reidemeister number `d_n` when that is finite and nonzero;
/// the degenerate case `d_n = 0` (the iterate is fiberwise deformable to a
/// fixed-point-free map) contributes no essential classes and yields 0.
pub fn nielsen_number(map: FiberTorusMap, n: u64) -> BigInt {
    level(map, n).d
}

/// The modulus of the image of `γ_{k,n}` inside `ℤ/d_n`: the image is
/// exactly the multiples of `gcd(A(n,k) mod d_n, d_n)`.
fn image_modulus(map: FiberTorusMap, n: u64, k: u64, d_n: &BigInt) -> Result<BigInt> {
    let a = cofactor(&BigInt::from(map.r), n, k)?;
    Ok(a.mod_floor(d_n).gcd(d_n))
}

/// Applies `[f^ω]` to a class: residue ↦ `r·residue mod d_n`.
///
/// A bijection of `ℤ/d_n`, and the n-th power is the identity.
pub fn fomega(map: FiberTorusMap, class: &ReidemeisterClass) -> Result<ReidemeisterClass> {
    let lv = level(map, class.level);
    if lv.is_degenerate() {
        return Err(Error::InfiniteLevel { level: class.level });
    }
    if class.residue >= lv.d {
        return Err(Error::ResidueOutOfRange {
            residue: class.residue.clone(),
            modulus: lv.d,
        });
    }
    let residue = (BigInt::from(map.r) * &class.residue).mod_floor(&lv.d);
    Ok(ReidemeisterClass {
        level: class.level,
        residue,
    })
}

/// Boosts a class from its level `k` up to level `n` (`k | n`):
/// residue ↦ `A(n,k)·residue mod d_n`.
pub fn gamma(map: FiberTorusMap, class: &ReidemeisterClass, n: u64) -> Result<ReidemeisterClass> {
    let k = class.level;
    if !n.is_multiple_of(k) {
        return Err(Error::NotADivisor { k, n });
    }
    let lv_n = level(map, n);
    if lv_n.is_degenerate() {
        return Err(Error::InfiniteLevel { level: n });
    }
    let a = cofactor(&BigInt::from(map.r), n, k)?;
    let residue = (a.mod_floor(&lv_n.d) * &class.residue).mod_floor(&lv_n.d);
    Ok(ReidemeisterClass { level: n, residue })
}

/// Whether the class (at level `n`) lies in the image of `γ_{k,n}`.
///
/// Membership test: `gcd(A(n,k) mod d_n, d_n)` divides the residue. This is
/// the literal image of the multiplication map even in the corner case of
/// an infinite source set.
pub fn is_reducible_to(map: FiberTorusMap, class: &ReidemeisterClass, k: u64) -> Result<bool> {
    let n = class.level;
    if !n.is_multiple_of(k) {
        return Err(Error::NotADivisor { k, n });
    }
    let lv = level(map, n);
    if lv.is_degenerate() {
        return Err(Error::InfiniteLevel { level: n });
    }
    let g = image_modulus(map, n, k, &lv.d)?;
    Ok(class.residue.is_multiple_of(&g))
}

/// The depth of a class: the smallest `k | n` it reduces to.
///
/// `k = n` always succeeds (`A(n,n) = 1`), so the scan over divisors in
/// ascending order terminates with an exact minimum.
pub fn depth(map: FiberTorusMap, class: &ReidemeisterClass) -> Result<u64> {
    for k in divisors(class.level).iter() {
        if is_reducible_to(map, class, k)? {
            return Ok(k);
        }
    }
    unreachable!("every class is reducible to its own level");
}

/// Partitions `ℤ/d_n` into `[f^ω]`-orbits by direct enumeration.
///
/// Requires `0 < d_n ≤ cap`; larger levels must go through
/// [`count_orbits_fast`] or the closed-form counting in [`crate::formulas`].
/// Orbits are listed by ascending representative.
pub fn orbit_decomposition(map: FiberTorusMap, n: u64, cap: u64) -> Result<Vec<OrbitRecord>> {
    let lv = level(map, n);
    if lv.is_degenerate() {
        return Err(Error::InfiniteLevel { level: n });
    }
    let d = match lv.d.to_u64() {
        Some(d) if d <= cap => d,
        _ => {
            return Err(Error::CapExceeded {
                modulus: lv.d,
                cap,
            })
        }
    };
    let r_mod = BigInt::from(map.r)
        .mod_floor(&lv.d)
        .to_u64()
        .expect("reduced multiplier fits in u64");

    // Image moduli g_k = gcd(A(n,k) mod d, d) per divisor k, ascending.
    let mut strata_moduli: Vec<(u64, u64)> = Vec::new();
    for k in divisors(n).iter() {
        let g = image_modulus(map, n, k, &lv.d)?
            .to_u64()
            .expect("image modulus divides d");
        strata_moduli.push((k, g));
    }
    let depth_of = |t: u64| -> u64 {
        strata_moduli
            .iter()
            .find(|&&(_, g)| t.is_multiple_of(g))
            .expect("reducible to its own level")
            .0
    };

    let mut visited = vec![false; d as usize];
    let mut records = Vec::new();
    for t in 0..d {
        if visited[t as usize] {
            continue;
        }
        let mut members = Vec::new();
        let mut u = t;
        loop {
            visited[u as usize] = true;
            members.push(u);
            u = ((r_mod as u128 * u as u128) % d as u128) as u64;
            if u == t {
                break;
            }
        }
        let length = members.len() as u64;
        assert!(n.is_multiple_of(length), "orbit length {length} must divide {n}");
        let orbit_depth = depth_of(t);
        // Depth is a stratum invariant and the stratum is constant along
        // the orbit; check the latter directly.
        debug_assert!(members.iter().all(|&m| m.gcd(&d) == t.gcd(&d)));
        records.push(OrbitRecord {
            level: n,
            members,
            length,
            depth: orbit_depth,
            irreducible: orbit_depth == n,
            essential: true,
        });
    }
    Ok(records)
}

/// The number `I_n` of irreducible classes at level `n`, by
/// inclusion–exclusion over the maximal proper divisors.
///
/// A residue is irreducible iff it avoids the image of `γ_{k,n}` for every
/// maximal proper divisor `k`; the images are the multiples of
/// `g_k = gcd(A(n,k) mod d_n, d_n)` and any intersection of them has size
/// `d_n / lcm(g_k, …)`. Exact for arbitrarily large `d_n`.
pub fn count_irreducible_classes(map: FiberTorusMap, n: u64) -> Result<BigInt> {
    let lv = level(map, n);
    if lv.is_degenerate() {
        return Err(Error::InfiniteLevel { level: n });
    }
    if n == 1 {
        return Ok(lv.d);
    }
    let mut moduli = Vec::new();
    for k in maximal_proper_divisors(n)? {
        moduli.push(image_modulus(map, n, k, &lv.d)?);
    }
    let mut count = BigInt::zero();
    for mask in 0u32..(1 << moduli.len()) {
        let mut l = BigInt::one();
        for (i, g) in moduli.iter().enumerate() {
            if mask & (1 << i) != 0 {
                l = l.lcm(g);
            }
        }
        let (term, rem) = lv.d.div_rem(&l);
        debug_assert!(rem.is_zero(), "lcm of divisors of d divides d");
        if mask.count_ones() % 2 == 0 {
            count += term;
        } else {
            count -= term;
        }
    }
    Ok(count)
}

/// Divisors `e` of the integer with factorization `factors`, paired with
/// `φ(e)`, sorted by `e`.
fn strata_of(factors: &[(BigInt, u32)]) -> Vec<(BigInt, BigInt)> {
    let mut strata = vec![(BigInt::one(), BigInt::one())];
    for (p, a) in factors {
        let prev = strata.clone();
        let mut pe = BigInt::one();
        for c in 1..=*a {
            pe *= p;
            let phi_part = if c == 1 {
                p - 1
            } else {
                (&pe / p) * (p - 1)
            };
            strata.extend(prev.iter().map(|(e, phi)| (e * &pe, phi * &phi_part)));
        }
    }
    strata.sort_by(|x, y| x.0.cmp(&y.0));
    strata
}

/// Multiplicative order of `r` modulo `e`, given that it divides `n`.
///
/// `e` must divide some `d_m` with `r^n ≡ 1 (mod d_m)`, so the order is
/// the smallest divisor `l` of `n` with `r^l ≡ 1 (mod e)`.
fn multiplicative_order_dividing(r: i64, e: &BigInt, n: u64) -> u64 {
    if e.is_one() {
        return 1;
    }
    let base = BigInt::from(r).mod_floor(e);
    for l in divisors(n).iter() {
        if base.modpow(&BigInt::from(l), e).is_one() {
            return l;
        }
    }
    unreachable!("order of r mod {e} must divide {n}");
}

/// Orbit counts of the `[f^ω]` action without enumerating residues.
///
/// Stratifying `ℤ/d_n` by `e = d_n / gcd(t, d_n)`, the stratum of `e` has
/// `φ(e)` residues, splits into orbits of length `ord_e(r)`, and consists
/// of irreducible classes iff `e ∤ d_{n/p}` for every prime `p | n`. So
///
/// ```text
/// total = Σ_{e | d_n} φ(e)/ord_e(r),        O_n = Σ over irreducible strata.
/// ```
///
/// Needs the full factorization of `d_n`; fails with a budget error when
/// trial division up to `trial_bound` cannot certify one. Agrees exactly
/// with [`orbit_decomposition`] whenever both run.
pub fn count_orbits_fast(map: FiberTorusMap, n: u64, trial_bound: u64) -> Result<OrbitCounts> {
    let lv = level(map, n);
    if lv.is_degenerate() {
        return Err(Error::InfiniteLevel { level: n });
    }
    let r_mod = BigInt::from(map.r).mod_floor(&lv.d);
    if r_mod.is_one() || lv.d.is_one() {
        // Identity action: every class is a singleton orbit.
        return Ok(OrbitCounts {
            irreducible: count_irreducible_classes(map, n)?,
            total: lv.d,
        });
    }
    let factors = factor_within_budget(&lv.d, trial_bound)?;
    let sub_moduli: Vec<BigInt> = if n == 1 {
        Vec::new()
    } else {
        maximal_proper_divisors(n)?
            .into_iter()
            .map(|k| level(map, k).d)
            .collect()
    };
    let mut total = BigInt::zero();
    let mut irreducible = BigInt::zero();
    for (e, phi) in strata_of(&factors) {
        let ord = multiplicative_order_dividing(map.r, &e, n);
        let (orbits, rem) = phi.div_rem(&BigInt::from(ord));
        debug_assert!(rem.is_zero(), "the action is free on each stratum");
        if sub_moduli.iter().all(|dk| !dk.is_multiple_of(&e)) {
            irreducible += &orbits;
        }
        total += orbits;
    }
    Ok(OrbitCounts { total, irreducible })
}

/// Orbit counts via the stratified formula, falling back to enumeration
/// when factoring fails but the modulus is under `cap`.
pub fn robust_orbit_counts(
    map: FiberTorusMap,
    n: u64,
    cap: u64,
    trial_bound: u64,
) -> Result<OrbitCounts> {
    match count_orbits_fast(map, n, trial_bound) {
        Ok(c) => Ok(c),
        Err(e @ Error::FactoringBudgetExceeded { .. }) => {
            let records = orbit_decomposition(map, n, cap).map_err(|_| e)?;
            let irreducible = records.iter().filter(|o| o.irreducible).count();
            Ok(OrbitCounts {
                total: BigInt::from(records.len()),
                irreducible: BigInt::from(irreducible),
            })
        }
        Err(e) => Err(e),
    }
}

/// `N_B P_n = n · O_n`: the level times the number of irreducible essential
/// orbits. Propagates unavailability of `O_n`.
pub fn nbpn(map: FiberTorusMap, n: u64, cap: u64, trial_bound: u64) -> Result<BigInt> {
    let counts = robust_orbit_counts(map, n, cap, trial_bound)?;
    Ok(BigInt::from(n) * counts.irreducible)
}

/// Tests n-torality: every orbit at every level `m | n` has depth equal to
/// length, and every boosting map between those levels is injective.
///
/// Returns the first violating orbit (by ascending level, then ascending
/// stratum) as a witness. Levels with `d_m = 0` make the conditions
/// undecidable in this model and yield an [`Error::InfiniteLevel`];
/// factoring failures yield the budget error.
pub fn is_n_toral(map: FiberTorusMap, n: u64, trial_bound: u64) -> Result<Torality> {
    let levels: Vec<LevelData> = divisors(n).iter().map(|m| level(map, m)).collect();
    for lv in &levels {
        if lv.is_degenerate() {
            return Err(Error::InfiniteLevel { level: lv.n });
        }
    }
    for lv in &levels {
        let m = lv.n;
        // Injectivity of every γ_{k,m} is equivalent to A(m,k) ≠ 0, which
        // is automatic once d_m > 0.
        debug_assert!(divisors(m)
            .iter()
            .all(|k| !cofactor(&BigInt::from(map.r), m, k).unwrap().is_zero()));
        let sub_levels: Vec<&LevelData> = levels.iter().filter(|l| m % l.n == 0).collect();
        let factors = factor_within_budget(&lv.d, trial_bound)?;
        for (e, _) in strata_of(&factors) {
            let length = multiplicative_order_dividing(map.r, &e, m);
            let orbit_depth = sub_levels
                .iter()
                .find(|l| l.d.is_multiple_of(&e))
                .expect("e divides d_m")
                .n;
            if orbit_depth != length {
                return Ok(Torality::NotToral(ToralityWitness {
                    level: m,
                    residue: &lv.d / &e,
                    depth: orbit_depth,
                    length,
                }));
            }
        }
    }
    Ok(Torality::Toral)
}

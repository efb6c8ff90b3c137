//! Geometric oracle: exact rational-point dynamics of `f_{r,s}` on the
//! 2-torus.
//!
//! In additive coordinates on `(ℝ/ℤ)²` the map is
//! `(x, y) ↦ (r·x + s·y, y)`, so the fixed set of the n-th iterate is
//! `Fix(f^n) = {a_n·x + b_n·y ∈ ℤ}` with `a_n = r^n − 1`, `b_n = s·σ(n,r)`:
//! for `d_n = gcd(|a_n|, |b_n|) > 0` that is a disjoint union of `d_n`
//! parallel circles, indexed by `(a_n·x + b_n·y) mod d_n`. The indexing
//! matches the residue of the algebraic Reidemeister class the component
//! carries, which is what makes the cross-module comparisons exact.
//!
//! All points are exact rationals and all comparisons are equalities; a
//! point is declared periodic only by honest iteration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{cofactor, divisors, maximal_proper_divisors};
use crate::reidemeister::{level, FiberTorusMap, LevelData};
use crate::{Error, Result};

/// An exact rational point of the torus, both coordinates reduced
/// fractions in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalTorusPoint {
    x: BigRational,
    y: BigRational,
}

fn reduce_mod_one(v: BigRational) -> BigRational {
    let f = v.floor();
    v - f
}

impl RationalTorusPoint {
    /// Builds a torus point, reducing both coordinates mod 1.
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalTorusPoint {
            x: reduce_mod_one(x),
            y: reduce_mod_one(y),
        }
    }

    /// Convenience constructor from integer fractions; panics on zero
    /// denominators.
    pub fn from_fractions(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(xn), BigInt::from(xd)),
            BigRational::new(BigInt::from(yn), BigInt::from(yd)),
        )
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }
}

/// One application of the map: `(x, y) ↦ (r·x + s·y mod 1, y)`.
pub fn step(map: FiberTorusMap, p: &RationalTorusPoint) -> RationalTorusPoint {
    let x = BigRational::from(BigInt::from(map.r)) * &p.x
        + BigRational::from(BigInt::from(map.s)) * &p.y;
    RationalTorusPoint {
        x: reduce_mod_one(x),
        y: p.y.clone(),
    }
}

/// The smallest `n ≤ bound` with `f^n(p) = p`, or `None`.
///
/// Decided purely by iterating [`step`] and comparing exact rationals.
pub fn minimal_period(map: FiberTorusMap, p: &RationalTorusPoint, bound: u64) -> Option<u64> {
    assert!(bound >= 1, "minimal_period: bound must be positive");
    let mut q = p.clone();
    for n in 1..=bound {
        q = step(map, &q);
        if &q == p {
            return Some(n);
        }
    }
    None
}

/// Path components of `Fix(f^n)`: either `d_n` parallel circles or the
/// whole torus (the degenerate case `a_n = b_n = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentCount {
    Circles(BigInt),
    WholeTorus,
}

impl ComponentCount {
    /// Number of path components (the whole torus is one).
    pub fn count(&self) -> BigInt {
        match self {
            ComponentCount::Circles(d) => d.clone(),
            ComponentCount::WholeTorus => BigInt::one(),
        }
    }
}

/// The fixed-point set of `f^n` with its component structure and indexing
/// data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixComponents {
    pub n: u64,
    pub count: ComponentCount,
    level: LevelData,
}

impl FixComponents {
    /// The component index of a point of `Fix(f^n)`:
    /// `(a_n·x + b_n·y) mod d_n`, an exact integer on the fixed set.
    ///
    /// Returns `None` if the point is not fixed by `f^n`, or in the
    /// degenerate whole-torus case where the index is undefined.
    pub fn component_index(&self, p: &RationalTorusPoint) -> Option<BigInt> {
        if self.level.is_degenerate() {
            return None;
        }
        let v = BigRational::from(self.level.a.clone()) * p.x()
            + BigRational::from(self.level.b.clone()) * p.y();
        if !v.is_integer() {
            return None;
        }
        Some(v.to_integer().mod_floor(&self.level.d))
    }
}

/// Component structure of `Fix(f^n)`.
pub fn fix_components(map: FiberTorusMap, n: u64) -> FixComponents {
    let lv = level(map, n);
    let count = if lv.is_degenerate() {
        ComponentCount::WholeTorus
    } else {
        ComponentCount::Circles(lv.d.clone())
    };
    FixComponents {
        n,
        count,
        level: lv,
    }
}

/// The number `M_n` of components of `Fix(f^n)` every point of which has
/// minimal period exactly `n`.
///
/// A point of component `t` is fixed by `f^k` (for `k | n`) exactly when
/// `A(n,k) | t`, so the count excludes, for each maximal proper divisor
/// `k`, the components with index `≡ 0 mod |A(n,k)|`, by
/// inclusion–exclusion. Requires `d_n > 0`.
pub fn minimal_component_count(map: FiberTorusMap, n: u64) -> Result<BigInt> {
    let lv = level(map, n);
    if lv.is_degenerate() {
        return Err(Error::InfiniteLevel { level: n });
    }
    if n == 1 {
        return Ok(lv.d);
    }
    // A divisor level with an infinite class set would make its whole
    // fixed set one torus, leaving no component of exact period n. (With
    // d_n > 0 this cannot actually occur: level vectors are multiples of
    // their divisor-level vectors.)
    for k in divisors(n).proper() {
        if level(map, k).is_degenerate() {
            return Ok(BigInt::zero());
        }
    }
    let r = BigInt::from(map.r);
    let mut moduli = Vec::new();
    for k in maximal_proper_divisors(n)? {
        let a = cofactor(&r, n, k)?.abs();
        debug_assert!(!a.is_zero() && lv.d.is_multiple_of(&a));
        moduli.push(a);
    }
    let mut count = BigInt::zero();
    for mask in 0u32..(1 << moduli.len()) {
        let mut l = BigInt::one();
        for (i, m) in moduli.iter().enumerate() {
            if mask & (1 << i) != 0 {
                l = l.lcm(m);
            }
        }
        let term = &lv.d / &l;
        if mask.count_ones() % 2 == 0 {
            count += term;
        } else {
            count -= term;
        }
    }
    Ok(count)
}

/// An exact rational point on the component of `Fix(f^n)` with index `t`.
///
/// Solves `a_n·u + b_n·v = d_n` by the extended Euclidean algorithm and
/// returns `(u·t/d_n, v·t/d_n)`, which satisfies `a_n·x + b_n·y = t`.
/// The point's minimal period under honest iteration equals the depth of
/// the residue `t`; in particular it is exactly `n` when `t` is counted by
/// [`minimal_component_count`].
pub fn sample_component_point(
    map: FiberTorusMap,
    n: u64,
    t: &BigInt,
) -> Result<RationalTorusPoint> {
    let lv = level(map, n);
    if lv.is_degenerate() {
        return Err(Error::InfiniteLevel { level: n });
    }
    if t.is_negative() || t >= &lv.d {
        return Err(Error::ResidueOutOfRange {
            residue: t.clone(),
            modulus: lv.d,
        });
    }
    let egcd = lv.a.extended_gcd(&lv.b);
    let (mut g, mut u, mut v) = (egcd.gcd, egcd.x, egcd.y);
    if g.is_negative() {
        g = -g;
        u = -u;
        v = -v;
    }
    debug_assert_eq!(g, lv.d);
    let x = BigRational::new(u * t, lv.d.clone());
    let y = BigRational::new(v * t, lv.d.clone());
    let point = RationalTorusPoint::new(x, y);
    debug_assert_eq!(
        fix_components(map, n).component_index(&point),
        Some(t.clone())
    );
    Ok(point)
}

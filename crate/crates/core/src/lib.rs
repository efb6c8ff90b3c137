//! Exact computation of Reidemeister and Nielsen-type periodic-point
//! invariants for fiber-preserving torus maps.
//!
//! The maps under study are the fiberwise linear self-maps of the torus
//! `T = S¹ × S¹` over the circle,
//!
//! ```text
//! f_{r,s}(x, y) = (x^r · y^s, y),        r, s ∈ ℤ,
//! ```
//!
//! where the projection onto the second coordinate is the bundle map.
//! For the n-th iterate `f^n(x, y) = (x^{r^n} · y^{s·σ(n,r)}, y)` with
//! `σ(n, r) = 1 + r + ⋯ + r^{n-1}`, the fiberwise Reidemeister set is a
//! cyclic group: writing `a_n = r^n − 1`, `b_n = s·σ(n, r)` and
//! `d_n = gcd(|a_n|, |b_n|)`, two fiber classes are identified exactly when
//! they differ by an integer combination of `a_n` and `b_n`, so the set of
//! classes is `ℤ/d_n` (and `ℤ` itself when `d_n = 0`).
//!
//! On that model this crate computes, all in exact arbitrary-precision
//! arithmetic:
//!
//! - the iterate action on classes (multiplication by `r` mod `d_n`), orbit
//!   decompositions, orbit lengths and depths, and irreducibility
//!   ([`reidemeister`]);
//! - the divisor-lattice counting quantities `A_n`, the Möbius/closed-form
//!   equivalents, and the periodic number `n·O_n` ([`formulas`]);
//! - an independent geometric oracle on exact rational points of the torus:
//!   fixed-set components, component indexing, and minimal-period
//!   certification by honest iteration ([`geometry`]).
//!
//! The two routes — algebraic class counting and geometric component
//! counting — are kept separate so each can validate the other.
//!
//! Everything here is pure and deterministic; no floating point is used
//! anywhere (a float cannot certify that a point is periodic).

pub mod arith;
pub mod formulas;
pub mod geometry;
pub mod reidemeister;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Default cap on the number of residues an orbit enumeration will walk.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Default bound on trial divisors when factoring a class-set modulus.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A level/divisor argument pair violated `k | n`.
    #[error("{k} does not divide {n}")]
    NotADivisor { k: u64, n: u64 },
    /// An operation that needs proper divisors was given n = 1.
    #[error("n = 1 has no proper divisors")]
    NoProperDivisors,
    /// The Reidemeister set at this level is infinite (`d_n = 0`), so the
    /// requested finite-set operation is undefined.
    #[error("Reidemeister set at level {level} is infinite (d = 0)")]
    InfiniteLevel { level: u64 },
    /// A residue was out of range for its modulus.
    #[error("residue {residue} is not a canonical representative mod {modulus}")]
    ResidueOutOfRange { residue: BigInt, modulus: BigInt },
    /// The class-set modulus is larger than the enumeration cap.
    #[error("modulus {modulus} exceeds the enumeration cap {cap}")]
    CapExceeded { modulus: BigInt, cap: u64 },
    /// The class-set modulus could not be fully factored within the
    /// trial-division budget, so divisor-stratified counting is unavailable.
    #[error("factoring budget exhausted on {modulus} (trial bound {trial_bound})")]
    FactoringBudgetExceeded { modulus: BigInt, trial_bound: u64 },
    /// `totient_formula` was called outside its scope (r = 1, s ≠ 0).
    #[error("totient formula requires r = 1 and s != 0 (got r = {r}, s = {s})")]
    TotientScope { r: i64, s: i64 },
}

impl Error {
    /// True when the error reports a resource limit rather than a
    /// mathematical degeneracy.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::FactoringBudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

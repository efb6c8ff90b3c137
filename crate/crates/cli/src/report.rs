//! Aggregation of per-map analysis into plain report records.
//!
//! Reports carry tri-state outcomes: a check either holds, fails with a
//! witness, or was not evaluated with a reason. Mathematical
//! disagreements (non-torality, the periodic number exceeding the
//! geometric bound) are findings to surface, never errors; only resource
//! limits make a report partial.

use nbp_core::arith::{cofactor, divisors};
use nbp_core::formulas::{
    an_recursive, cross_validate, Check, ToralityCheck, ValidationReport,
};
use nbp_core::geometry::{
    fix_components, minimal_component_count, minimal_period, sample_component_point,
};
use nbp_core::reidemeister::{
    count_irreducible_classes, level, nielsen_number, orbit_decomposition, robust_orbit_counts,
    FiberTorusMap, ReidemeisterClass, ToralityWitness,
};
use nbp_core::{BigInt, Error};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Limits;

/// Tri-state outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flag {
    True,
    False { witness: String },
    NotEvaluated { resource_limited: bool, reason: String },
}

impl Flag {
    pub fn is_true(&self) -> bool {
        matches!(self, Flag::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Flag::False { .. })
    }

    fn from_check(c: &Check) -> Flag {
        match c {
            Check::Holds => Flag::True,
            Check::Fails { witness } => Flag::False {
                witness: witness.clone(),
            },
            Check::NotEvaluated {
                resource_limited,
                reason,
            } => Flag::NotEvaluated {
                resource_limited: *resource_limited,
                reason: reason.clone(),
            },
        }
    }

    fn resource_limited(&self) -> bool {
        matches!(
            self,
            Flag::NotEvaluated {
                resource_limited: true,
                ..
            }
        )
    }
}

/// Torality verdict with its structured witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToralFlag {
    True,
    False(ToralityWitness),
    NotEvaluated { resource_limited: bool, reason: String },
}

impl ToralFlag {
    fn resource_limited(&self) -> bool {
        matches!(
            self,
            ToralFlag::NotEvaluated {
                resource_limited: true,
                ..
            }
        )
    }
}

/// One divisor-lattice row of a level analysis.
#[derive(Debug, Clone)]
pub struct LevelRow {
    pub k: u64,
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
    pub nielsen: BigInt,
    pub an: BigInt,
}

/// Full analysis of one `(map, n)`.
#[derive(Debug, Clone)]
pub struct PeriodicReport {
    pub r: i64,
    pub s: i64,
    pub n: u64,
    /// One row per divisor of `n`, ascending.
    pub rows: Vec<LevelRow>,
    /// `O_n`, when orbit counting succeeded.
    pub orbits: Option<BigInt>,
    /// Why `O_n` is missing (resource limit or degenerate level).
    pub orbits_unavailable: Option<Flag>,
    /// `I_n`; absent at degenerate levels.
    pub irreducible: Option<BigInt>,
    /// `n·O_n`.
    pub nbpn: Option<BigInt>,
    /// `M_n`; absent at degenerate levels.
    pub minimal_components: Option<BigInt>,
    pub n_toral: ToralFlag,
    pub formulas_agree: Flag,
    pub an_equals_in: Flag,
    pub an_equals_non: Flag,
    pub nbpn_le_mn: Flag,
    pub geometric_equals_algebraic: Flag,
}

impl PeriodicReport {
    /// True when some part of the report was cut short by a cap or budget
    /// (exit code 3 for the CLI).
    pub fn resource_limited(&self) -> bool {
        self.orbits_unavailable
            .as_ref()
            .map(Flag::resource_limited)
            .unwrap_or(false)
            || self.n_toral.resource_limited()
            || [
                &self.formulas_agree,
                &self.an_equals_in,
                &self.an_equals_non,
                &self.nbpn_le_mn,
                &self.geometric_equals_algebraic,
            ]
            .iter()
            .any(|f| f.resource_limited())
    }

    /// The `A_n` of the analyzed level (last lattice row).
    pub fn an(&self) -> &BigInt {
        &self.rows.last().expect("lattice is never empty").an
    }
}

fn degenerate_flag(n: u64) -> Flag {
    Flag::NotEvaluated {
        resource_limited: false,
        reason: format!("Reidemeister set at level {n} is infinite"),
    }
}

/// Builds the full per-level report for `cmd analyze`.
pub fn build_periodic_report(map: FiberTorusMap, n: u64, limits: Limits) -> PeriodicReport {
    let rows: Vec<LevelRow> = divisors(n)
        .iter()
        .map(|k| {
            let lv = level(map, k);
            LevelRow {
                k,
                nielsen: lv.d.clone(),
                an: an_recursive(map, k),
                a: lv.a,
                b: lv.b,
                d: lv.d,
            }
        })
        .collect();

    let cv: ValidationReport = cross_validate(map, n, limits.enumeration_cap, limits.trial_bound);
    let orbits = cv.orbit_counts.as_ref().map(|c| c.irreducible.clone());
    let orbits_unavailable = if orbits.is_none() {
        Some(Flag::from_check(&cv.an_equals_nbpn))
    } else {
        None
    };

    let minimal_components = minimal_component_count(map, n).ok();
    let degenerate = level(map, n).is_degenerate();

    let nbpn_le_mn = match (&cv.nbpn, &minimal_components) {
        (Some(nbpn), Some(mn)) => {
            if nbpn <= mn {
                Flag::True
            } else {
                Flag::False {
                    witness: format!("nbpn {nbpn} > Mn {mn}"),
                }
            }
        }
        _ => match &orbits_unavailable {
            Some(f) if !degenerate => f.clone(),
            _ => degenerate_flag(n),
        },
    };

    let geometric_equals_algebraic = if degenerate {
        degenerate_flag(n)
    } else {
        let mn = minimal_components.clone().expect("level is finite");
        let i_n = cv
            .irreducible_classes
            .clone()
            .expect("level is finite");
        let fix_count = fix_components(map, n).count.count();
        let nielsen = nielsen_number(map, n);
        if mn == i_n && fix_count == nielsen {
            Flag::True
        } else {
            Flag::False {
                witness: format!(
                    "Mn {mn} vs In {i_n}; components {fix_count} vs nielsen {nielsen}"
                ),
            }
        }
    };

    let n_toral = match &cv.torality {
        ToralityCheck::Toral => ToralFlag::True,
        ToralityCheck::NotToral(w) => ToralFlag::False(w.clone()),
        ToralityCheck::NotEvaluated {
            resource_limited,
            reason,
        } => ToralFlag::NotEvaluated {
            resource_limited: *resource_limited,
            reason: reason.clone(),
        },
    };

    PeriodicReport {
        r: map.r,
        s: map.s,
        n,
        rows,
        orbits,
        orbits_unavailable,
        irreducible: cv.irreducible_classes.clone(),
        nbpn: cv.nbpn.clone(),
        minimal_components,
        n_toral,
        formulas_agree: Flag::from_check(&cv.formulas_agree),
        an_equals_in: Flag::from_check(&cv.an_equals_irreducible),
        an_equals_non: Flag::from_check(&cv.an_equals_nbpn),
        nbpn_le_mn,
        geometric_equals_algebraic,
    }
}

/// A value cell of the summary table: present, skipped as degenerate, or
/// unavailable within the resource limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Value(BigInt),
    Degenerate,
    Unavailable,
}

impl Cell {
    pub fn is_unavailable(&self) -> bool {
        matches!(self, Cell::Unavailable)
    }
}

/// One row of `cmd table`.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: u64,
    pub d: BigInt,
    pub nielsen: BigInt,
    pub an: BigInt,
    pub nbpn: Cell,
    pub mn: Cell,
}

/// Summary table over `n = 1..=max_n`.
#[derive(Debug, Clone)]
pub struct SummaryTable {
    pub r: i64,
    pub s: i64,
    pub max_n: u64,
    pub rows: Vec<TableRow>,
}

impl SummaryTable {
    pub fn resource_limited(&self) -> bool {
        self.rows
            .iter()
            .any(|row| row.nbpn.is_unavailable() || row.mn.is_unavailable())
    }
}

/// Builds the per-`n` summary for `cmd table`.
pub fn build_summary_table(map: FiberTorusMap, max_n: u64, limits: Limits) -> SummaryTable {
    let an = nbp_core::formulas::AnTable::up_to(map, max_n);
    let mut rows = Vec::with_capacity(max_n as usize);
    for n in 1..=max_n {
        let lv = level(map, n);
        let (nbpn, mn) = if lv.is_degenerate() {
            (Cell::Degenerate, Cell::Degenerate)
        } else {
            let nbpn = match robust_orbit_counts(map, n, limits.enumeration_cap, limits.trial_bound)
            {
                Ok(counts) => Cell::Value(BigInt::from(n) * counts.irreducible),
                Err(e) if e.is_resource_limit() => Cell::Unavailable,
                Err(e) => unreachable!("level {n} verified finite: {e}"),
            };
            let mn = Cell::Value(minimal_component_count(map, n).expect("level is finite"));
            (nbpn, mn)
        };
        rows.push(TableRow {
            n,
            d: lv.d.clone(),
            nielsen: lv.d,
            an: an.get(n).clone(),
            nbpn,
            mn,
        });
    }
    SummaryTable {
        r: map.r,
        s: map.s,
        max_n,
        rows,
    }
}

/// One certified minimal period, with both counting certificates.
#[derive(Debug, Clone)]
pub struct PeriodCertificate {
    pub n: u64,
    /// `n·O_n`, when orbit counting succeeded.
    pub nbpn: Option<BigInt>,
    /// `A_n` (equal to `I_n` at finite levels).
    pub an: BigInt,
    /// True when both certificates are available and disagree in value
    /// (they still agree on being nonzero).
    pub values_disagree: bool,
}

/// Result of `cmd hper`: levels `n ≤ max_n` certified to occur as minimal
/// periods of every fiberwise-homotopic map.
#[derive(Debug, Clone)]
pub struct HperReport {
    pub r: i64,
    pub s: i64,
    pub max_n: u64,
    pub certified: Vec<PeriodCertificate>,
    /// Levels where certification was impossible within the limits.
    pub unavailable: Vec<u64>,
}

impl HperReport {
    pub fn resource_limited(&self) -> bool {
        !self.unavailable.is_empty()
    }

    pub fn periods(&self) -> Vec<u64> {
        self.certified.iter().map(|c| c.n).collect()
    }
}

/// Builds the certified-period list: `n` is included iff the number of
/// irreducible essential orbits is nonzero, which happens exactly when
/// `I_n > 0` — so certification survives even when `O_n` itself is out of
/// budget.
pub fn build_hper_report(map: FiberTorusMap, max_n: u64, limits: Limits) -> HperReport {
    let mut certified = Vec::new();
    let mut unavailable = Vec::new();
    for n in 1..=max_n {
        let lv = level(map, n);
        if lv.is_degenerate() {
            // No essential classes; nothing to certify at this level.
            continue;
        }
        let i_n = count_irreducible_classes(map, n).expect("level is finite");
        if i_n.is_zero() {
            continue;
        }
        let an = an_recursive(map, n);
        match robust_orbit_counts(map, n, limits.enumeration_cap, limits.trial_bound) {
            Ok(counts) => {
                let nbpn = BigInt::from(n) * counts.irreducible;
                let values_disagree = nbpn != an;
                certified.push(PeriodCertificate {
                    n,
                    nbpn: Some(nbpn),
                    an,
                    values_disagree,
                });
            }
            Err(e) if e.is_resource_limit() => {
                // I_n > 0 already certifies the period; the orbit count is
                // reported as unavailable.
                unavailable.push(n);
                certified.push(PeriodCertificate {
                    n,
                    nbpn: None,
                    an,
                    values_disagree: false,
                });
            }
            Err(_) => unreachable!("level verified finite"),
        }
    }
    HperReport {
        r: map.r,
        s: map.s,
        max_n,
        certified,
        unavailable,
    }
}

/// Per-level outcome of `cmd verify`.
#[derive(Debug, Clone)]
pub struct LevelVerify {
    pub n: u64,
    /// Violated identities: bugs, exit code 1.
    pub violations: Vec<String>,
    /// Mathematical findings: reported, fatal only under `--strict`.
    pub findings: Vec<String>,
    /// Checks skipped for resource reasons.
    pub skipped: Vec<String>,
}

impl LevelVerify {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.findings.is_empty()
    }
}

/// Result of the full invariant sweep.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub r: i64,
    pub s: i64,
    pub max_n: u64,
    pub levels: Vec<LevelVerify>,
}

impl VerifyReport {
    pub fn violation_count(&self) -> usize {
        self.levels.iter().map(|l| l.violations.len()).sum()
    }

    /// Levels with at least one finding.
    pub fn finding_count(&self) -> usize {
        self.levels.iter().filter(|l| !l.findings.is_empty()).count()
    }

    pub fn resource_limited(&self) -> bool {
        self.levels.iter().any(|l| !l.skipped.is_empty())
    }
}

/// How many witness points per level `cmd verify` iterates exactly.
const WITNESSES_PER_LEVEL: u64 = 5;

/// Runs every cross-module identity for `n = 1..=max_n`.
pub fn build_verify_report(map: FiberTorusMap, max_n: u64, limits: Limits) -> VerifyReport {
    let mut levels = Vec::new();
    for n in 1..=max_n {
        levels.push(verify_level(map, n, limits));
    }
    VerifyReport {
        r: map.r,
        s: map.s,
        max_n,
        levels,
    }
}

fn verify_level(map: FiberTorusMap, n: u64, limits: Limits) -> LevelVerify {
    let mut violations = Vec::new();
    let mut findings = Vec::new();
    let mut skipped = Vec::new();

    let cv = cross_validate(map, n, limits.enumeration_cap, limits.trial_bound);

    // Mandatory: the three A_n routes and the divisor sum.
    if !cv.formulas_agree.holds() {
        violations.push(format!(
            "A_n routes disagree: recursive {}, closed {}, mobius {}",
            cv.an_recursive, cv.an_closed_form, cv.an_mobius
        ));
    }
    let divisor_sum: BigInt = divisors(n).iter().map(|k| an_recursive(map, k)).sum();
    let nielsen = nielsen_number(map, n);
    if divisor_sum != nielsen {
        violations.push(format!(
            "divisor sum {divisor_sum} != nielsen {nielsen}"
        ));
    }
    if let Check::Fails { witness } = &cv.totient_matches {
        violations.push(format!("totient formula mismatch: {witness}"));
    }

    // Mandatory: modulus multiplicativity across the lattice.
    let lv = level(map, n);
    for k in divisors(n).iter() {
        let a = cofactor(&BigInt::from(map.r), n, k).expect("k divides n");
        let dk = level(map, k).d;
        if !a.is_zero() && !dk.is_zero() {
            let expected = a.abs() * &dk;
            if lv.d != expected {
                violations.push(format!(
                    "d_{n} = {} but |A({n},{k})|*d_{k} = {expected}",
                    lv.d
                ));
            }
        }
    }

    if !lv.is_degenerate() {
        // Mandatory: geometric counts equal algebraic counts.
        let i_n = count_irreducible_classes(map, n).expect("finite level");
        let m_n = minimal_component_count(map, n).expect("finite level");
        if i_n != m_n {
            violations.push(format!("In {i_n} != Mn {m_n}"));
        }
        let fix_count = fix_components(map, n).count.count();
        if fix_count != lv.d {
            violations.push(format!("components {fix_count} != nielsen {}", lv.d));
        }
        let mut period_sum = BigInt::zero();
        for k in divisors(n).iter() {
            period_sum += minimal_component_count(map, k).expect("finite level");
        }
        if period_sum != lv.d {
            violations.push(format!(
                "sum of exact-period components {period_sum} != d_{n} {}",
                lv.d
            ));
        }

        // Mandatory, enumeration-backed checks at small levels.
        match orbit_decomposition(map, n, limits.enumeration_cap) {
            Ok(orbits) => {
                let member_total: u64 = orbits.iter().map(|o| o.members.len() as u64).sum();
                if BigInt::from(member_total) != lv.d {
                    violations.push(format!("orbits cover {member_total} of {} residues", lv.d));
                }
                for orbit in &orbits {
                    if !n.is_multiple_of(orbit.length) {
                        violations.push(format!(
                            "orbit of {} has length {} not dividing {n}",
                            orbit.representative(),
                            orbit.length
                        ));
                    }
                    if orbit.depth % orbit.length != 0 {
                        // Surfaced as a finding: a counterexample to the
                        // length-divides-depth law would be data, not a bug.
                        findings.push(format!(
                            "orbit of {} has length {} not dividing depth {}",
                            orbit.representative(),
                            orbit.length,
                            orbit.depth
                        ));
                    }
                }
                let by_depth: u64 = orbits
                    .iter()
                    .filter(|o| o.irreducible)
                    .map(|o| o.members.len() as u64)
                    .sum();
                if i_n != BigInt::from(by_depth) {
                    violations.push(format!(
                        "In formula {i_n} != enumerated irreducible classes {by_depth}"
                    ));
                }
                if let Some(counts) = &cv.orbit_counts {
                    if counts.total != BigInt::from(orbits.len()) {
                        violations.push(format!(
                            "stratified orbit total {} != enumerated {}",
                            counts.total,
                            orbits.len()
                        ));
                    }
                }
                // Witness iteration on a few components.
                let d64 = lv.d.to_u64().expect("under cap");
                let step = (d64 / WITNESSES_PER_LEVEL).max(1);
                for t in (0..d64).step_by(step as usize) {
                    let t = BigInt::from(t);
                    let class = ReidemeisterClass::new(map, n, t.clone()).expect("in range");
                    let expected =
                        nbp_core::reidemeister::depth(map, &class).expect("finite level");
                    let point = sample_component_point(map, n, &t).expect("in range");
                    if minimal_period(map, &point, n) != Some(expected) {
                        violations.push(format!(
                            "sampled point of component {t} does not have period {expected}"
                        ));
                    }
                }
            }
            Err(Error::CapExceeded { .. }) => {
                skipped.push(format!("orbit enumeration (d_{n} exceeds cap)"));
            }
            Err(e) => violations.push(format!("orbit enumeration failed: {e}")),
        }
    }

    // Findings: tensions inherent to the map, reported but not fatal.
    match &cv.torality {
        ToralityCheck::NotToral(w) => {
            let mut note = format!(
                "not {n}-toral (level {}: residue {} has depth {} but length {})",
                w.level, w.residue, w.depth, w.length
            );
            if let (Some(nbpn), Check::Fails { .. }) = (&cv.nbpn, &cv.an_equals_nbpn) {
                note.push_str(&format!("; nbpn {} != an {}", nbpn, cv.an_recursive));
            }
            if let (Some(nbpn), Ok(mn)) = (&cv.nbpn, minimal_component_count(map, n)) {
                if nbpn > &mn {
                    note.push_str(&format!("; nbpn {nbpn} exceeds Mn {mn}"));
                }
            }
            findings.push(note);
        }
        ToralityCheck::NotEvaluated {
            resource_limited: true,
            reason,
        } => skipped.push(format!("torality ({reason})")),
        _ => {}
    }
    if cv.orbit_counts.is_none() && !lv.is_degenerate() {
        skipped.push(format!("orbit counts at level {n}"));
    }

    LevelVerify {
        n,
        violations,
        findings,
        skipped,
    }
}

//! Lower-bound witnesses for truncated-sphere exponents.
//!
//! The upper bounds in [`crate::bounds`] are certified computationally. The
//! matching lower bounds come from concrete finite complexes: skeleta of real
//! projective space at p = 2 and skeletal subquotients of the classifying
//! space of the symmetric group on p letters at odd primes. Their homology is
//! tiny and recomputable; the K-theory orders that drive the argument are
//! cited classical facts and are stored as data, never recomputed.

use crate::bounds::{truncated_sphere_upper, CertKind, ExponentCertificate};
use crate::prime::Prime;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness parameter must be at least 1")]
    InvalidParameter,
    #[error("the classifying-space witness requires an odd prime")]
    EvenPrime,
}

/// A finitely generated abelian group, as much of one as homology of the
/// witness spaces needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupDescriptor {
    Trivial,
    /// Z/n.
    Cyclic(u64),
    /// The p-local integers (degree-0 entry of a p-local table).
    LocalIntegers(u32),
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Trivial => f.write_str("0"),
            GroupDescriptor::Cyclic(n) => write!(f, "Z/{n}"),
            GroupDescriptor::LocalIntegers(p) => write!(f, "Z_({p})"),
        }
    }
}

/// Which ring the homology groups in a table are taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientRing {
    Integral,
    PLocal(Prime),
}

/// Homology of one witness space on a degree window, sparsely.
#[derive(Debug, Clone)]
pub struct HomologyTable {
    pub space: String,
    pub coefficients: CoefficientRing,
    entries: BTreeMap<u32, GroupDescriptor>,
}

impl HomologyTable {
    pub fn group(&self, i: u32) -> GroupDescriptor {
        self.entries
            .get(&i)
            .copied()
            .unwrap_or(GroupDescriptor::Trivial)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (u32, GroupDescriptor)> + '_ {
        self.entries.iter().map(|(&i, &g)| (i, g))
    }
}

/// Reduced integral homology of the 2r-skeleton of infinite real projective
/// space: Z/2 in odd degrees below the top cell, zero elsewhere. Degrees
/// outside [0, 2r] are zero.
pub fn rp_homology(r: u32, i: u32) -> GroupDescriptor {
    if r == 0 || i == 0 || i > 2 * r {
        return GroupDescriptor::Trivial;
    }
    if i % 2 == 1 {
        GroupDescriptor::Cyclic(2)
    } else {
        GroupDescriptor::Trivial
    }
}

/// p-local homology of the classifying space of the symmetric group on p
/// letters, p odd: the local integers in degree 0, Z/p in degrees
/// k(2p-2) - 1 for k > 0, zero otherwise.
pub fn bsigma_homology(p: Prime, i: u32) -> Result<GroupDescriptor, WitnessError> {
    if p.is_two() {
        return Err(WitnessError::EvenPrime);
    }
    if i == 0 {
        return Ok(GroupDescriptor::LocalIntegers(p.get()));
    }
    let period = 2 * p.get() - 2;
    if (i + 1) % period == 0 {
        Ok(GroupDescriptor::Cyclic(u64::from(p.get())))
    } else {
        Ok(GroupDescriptor::Trivial)
    }
}

/// Tabulate [`rp_homology`] on `0..=i_max`.
pub fn rp_homology_table(r: u32, i_max: u32) -> HomologyTable {
    let entries = (0..=i_max)
        .filter_map(|i| match rp_homology(r, i) {
            GroupDescriptor::Trivial => None,
            g => Some((i, g)),
        })
        .collect();
    HomologyTable {
        space: format!("RP^{}", 2 * r),
        coefficients: CoefficientRing::Integral,
        entries,
    }
}

/// Tabulate [`bsigma_homology`] on `0..=i_max`.
pub fn bsigma_homology_table(p: Prime, i_max: u32) -> Result<HomologyTable, WitnessError> {
    let mut entries = BTreeMap::new();
    for i in 0..=i_max {
        match bsigma_homology(p, i)? {
            GroupDescriptor::Trivial => {}
            g => {
                entries.insert(i, g);
            }
        }
    }
    Ok(HomologyTable {
        space: format!("B Sigma_{}", p.get()),
        coefficients: CoefficientRing::PLocal(p),
        entries,
    })
}

/// One concrete complex certifying a lower bound.
#[derive(Debug, Clone)]
pub struct WitnessRecord {
    pub p: Prime,
    /// Skeleton parameter: r for `RP^{2r}`, k for the odd-prime subquotient.
    pub parameter: u32,
    /// Exponent e of the cited cyclic K-theory group `Z/p^e`.
    pub k_order_exponent: u32,
    /// Cell degrees of the witness complex, inclusive.
    pub cell_window: (u32, u32),
    /// The truncation height n whose exponent is bounded below.
    pub degree: u32,
    pub lower: ExponentCertificate,
    /// Where the K-theory order comes from.
    pub citation: String,
}

/// Build the lower-bound witness for the given parameter.
///
/// At p = 2, parameter r gives `RP^{2r}` with reduced K-theory `Z/2^r`
/// (Atiyah) and a lower bound of r - 1 at degree n = 2r - 1. At odd p,
/// parameter k gives the skeletal subquotient of `B Sigma_p` with cells in
/// `[2p-3, k(2p-2)]`, K-theory order `p^k`, and a lower bound of k - 1 at
/// degree n = (2p-2)(k-1) + 1.
pub fn lower_bound_witness(p: Prime, parameter: u32) -> Result<WitnessRecord, WitnessError> {
    if parameter == 0 {
        return Err(WitnessError::InvalidParameter);
    }
    let record = if p.is_two() {
        let r = parameter;
        let degree = 2 * r - 1;
        WitnessRecord {
            p,
            parameter,
            k_order_exponent: r,
            cell_window: (1, 2 * r),
            degree,
            lower: ExponentCertificate {
                p,
                kind: CertKind::Lower,
                value: r - 1,
                subject: format!("tau[1,{degree}] S^0"),
                provenance: "projective-space K-theory witness".to_string(),
            },
            citation: format!("K(RP^{}) = Z/2^{} (Atiyah)", 2 * r, r),
        }
    } else {
        let k = parameter;
        let period = 2 * p.get() - 2;
        let degree = period * (k - 1) + 1;
        WitnessRecord {
            p,
            parameter,
            k_order_exponent: k,
            cell_window: (period - 1, period * k),
            degree,
            lower: ExponentCertificate {
                p,
                kind: CertKind::Lower,
                value: k - 1,
                subject: format!("tau[1,{degree}] S^0"),
                provenance: "classifying-space K-theory witness".to_string(),
            },
            citation: format!(
                "K of the [{}..{}] subquotient of B Sigma_{} = Z/{}^{} (Atiyah-Hirzebruch filtration)",
                period - 1,
                period * k,
                p.get(),
                p.get(),
                k
            ),
        }
    };
    Ok(record)
}

/// One witness whose lower bound exceeded the closed-form upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub parameter: u32,
    pub degree: u32,
    pub lower: u32,
    pub upper: u32,
}

/// Result of sweeping every witness with degree at most `n_max` against the
/// closed-form upper bounds.
#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub p: Prime,
    pub n_max: u32,
    pub checked: u32,
    pub violations: Vec<ConsistencyViolation>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `witness lower <= main upper` for every witness landing at degree
/// `n <= n_max`. An inconsistency would falsify one of the two bound
/// families, so the expected violation list is empty.
pub fn consistency_sweep(p: Prime, n_max: u32) -> ConsistencyReport {
    let mut checked = 0;
    let mut violations = Vec::new();
    for parameter in 1.. {
        let Ok(w) = lower_bound_witness(p, parameter) else {
            break;
        };
        if w.degree > n_max {
            break;
        }
        checked += 1;
        let upper = truncated_sphere_upper(p, w.degree);
        if w.lower.value > upper {
            violations.push(ConsistencyViolation {
                parameter,
                degree: w.degree,
                lower: w.lower.value,
                upper,
            });
        }
    }
    ConsistencyReport {
        p,
        n_max,
        checked,
        violations,
    }
}

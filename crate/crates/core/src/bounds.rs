//! Torsion-exponent certificates and the calculus that combines them.
//!
//! A certificate asserts that `p^value` annihilates (upper) or fails to
//! annihilate at `p^(value-1)` (lower) some truncated spectrum or map. All
//! composition laws here are additive, max, or min on the exponent, so values
//! stay small and overflow-free even when the integer bound `p^value` would
//! not fit in a machine word.

use crate::chart::ExtChart;
use crate::prime::Prime;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("degree must be at least 1, got {got}")]
    InvalidDegree { got: u32 },
    #[error("connectivity {connectivity} must not exceed the degree {degree}")]
    InvalidConnectivity { connectivity: u32, degree: u32 },
    #[error("truncation interval length must be at least 1")]
    EmptyInterval,
    #[error("group order must be at least 1")]
    InvalidGroupOrder,
    #[error("certificate primes differ: {left} vs {right}")]
    PrimeMismatch { left: u32, right: u32 },
    #[error("operation requires upper certificates, got a lower one for {subject}")]
    NotUpper { subject: String },
    #[error("need at least {needed} exponent values, got {got}")]
    ShortExponentList { needed: usize, got: usize },
    #[error("every Weyl-group order must be at least 1 (record {label})")]
    InvalidWeylOrder { label: String },
    #[error("group data must contain at least one subgroup record")]
    EmptyGroupData,
    #[error("degree {degree} equals the fixed-point dimension of subgroup {subgroup}")]
    FixedDimensionCollision { degree: u32, subgroup: String },
}

/// Which side of the annihilation inequality a certificate asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    /// `p^value` annihilates the subject.
    Upper,
    /// `p^(value)` divides the exponent of the subject (it is at least that big).
    Lower,
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertKind::Upper => "upper",
            CertKind::Lower => "lower",
        })
    }
}

/// A p-exponent statement about one object, carried as the exponent itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentCertificate {
    pub p: Prime,
    pub kind: CertKind,
    pub value: u32,
    /// What the exponent is about, e.g. `tau[1,10] S^0`.
    pub subject: String,
    /// Which operation produced the value.
    pub provenance: String,
}

impl ExponentCertificate {
    fn upper(p: Prime, value: u32, subject: impl Into<String>, provenance: &str) -> Self {
        ExponentCertificate {
            p,
            kind: CertKind::Upper,
            value,
            subject: subject.into(),
            provenance: provenance.to_string(),
        }
    }

    fn lower(p: Prime, value: u32, subject: impl Into<String>, provenance: &str) -> Self {
        ExponentCertificate {
            p,
            kind: CertKind::Lower,
            value,
            subject: subject.into(),
            provenance: provenance.to_string(),
        }
    }

    fn require_upper(&self) -> Result<(), BoundsError> {
        match self.kind {
            CertKind::Upper => Ok(()),
            CertKind::Lower => Err(BoundsError::NotUpper {
                subject: self.subject.clone(),
            }),
        }
    }
}

impl fmt::Display for ExponentCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} bound {}^{} for {} [{}]",
            self.kind,
            self.p.get(),
            self.value,
            self.subject,
            self.provenance
        )
    }
}

fn require_same_prime(a: &ExponentCertificate, b: &ExponentCertificate) -> Result<(), BoundsError> {
    if a.p == b.p {
        Ok(())
    } else {
        Err(BoundsError::PrimeMismatch {
            left: a.p.get(),
            right: b.p.get(),
        })
    }
}

/// Upper bound for the p-exponent of the truncation `tau[1,k] S^0`.
///
/// The empty truncation (`k = 0`) is a point, so its exponent is 0. For
/// `k >= 1` the value is `ceil(k/2) + 3` at p = 2 and
/// `ceil((k+3)/(2p-2)) + 1` at odd primes.
pub fn truncated_sphere_upper(p: Prime, k: u32) -> u32 {
    if k == 0 {
        return 0;
    }
    if p.is_two() {
        k.div_ceil(2) + 3
    } else {
        (k + 3).div_ceil(2 * p.get() - 2) + 1
    }
}

/// Lower bound for the p-exponent of `tau[1,n] S^0`, from the cited K-theory
/// witnesses: `floor((n-1)/2)` at p = 2 and `floor((n-1)/(2p-2))` at odd p.
pub fn truncated_sphere_lower(p: Prime, n: u32) -> u32 {
    let step = if p.is_two() { 2 } else { 2 * p.get() - 2 };
    (n - 1) / step
}

/// The closed-form bound families, with their extra parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormBound {
    /// Upper bound for `exp_p(tau[1,n] S^0)`.
    MainUpper,
    /// Lower bound for `exp_p(tau[1,n] S^0)`.
    MainLower,
    /// Upper bound for the p-exponent of the degree-n Hurewicz kernel.
    HurewiczKernel,
    /// Upper bound for the p-exponent of the degree-n Hurewicz cokernel.
    HurewiczCokernel,
    /// Upper bound for the order of the n-th k-invariant.
    KInvariant,
    /// Hurewicz kernel bound for an (m-1)-connected infinite loop space.
    InfiniteLoopKernel { connectivity: u32 },
    /// Exponent of a spectrum whose homotopy is `p^k`-torsion concentrated in
    /// an interval of the given length.
    TorsionInterval { known_exponent: u32, length: u32 },
    /// Exponent of the truncation `tau[1,n]` of a classifying-space spectrum.
    ClassifyingSpace { group_order: u64 },
}

/// Evaluate one closed-form bound at degree `n`.
pub fn closed_form_bound(
    kind: ClosedFormBound,
    p: Prime,
    n: u32,
) -> Result<ExponentCertificate, BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidDegree { got: n });
    }
    let cert = match kind {
        ClosedFormBound::MainUpper => ExponentCertificate::upper(
            p,
            truncated_sphere_upper(p, n),
            format!("tau[1,{n}] S^0"),
            "main-upper closed form",
        ),
        ClosedFormBound::MainLower => ExponentCertificate::lower(
            p,
            truncated_sphere_lower(p, n),
            format!("tau[1,{n}] S^0"),
            "main-lower closed form",
        ),
        ClosedFormBound::HurewiczKernel => ExponentCertificate::upper(
            p,
            truncated_sphere_upper(p, n),
            format!("Hurewicz kernel in degree {n}"),
            "hurewicz-kernel closed form",
        ),
        ClosedFormBound::HurewiczCokernel => ExponentCertificate::upper(
            p,
            truncated_sphere_upper(p, n - 1),
            format!("Hurewicz cokernel in degree {n}"),
            "hurewicz-cokernel closed form",
        ),
        ClosedFormBound::KInvariant => ExponentCertificate::upper(
            p,
            truncated_sphere_upper(p, n),
            format!("k-invariant order in degree {n}"),
            "k-invariant closed form",
        ),
        ClosedFormBound::InfiniteLoopKernel { connectivity } => {
            if connectivity > n {
                return Err(BoundsError::InvalidConnectivity {
                    connectivity,
                    degree: n,
                });
            }
            ExponentCertificate::upper(
                p,
                truncated_sphere_upper(p, n - connectivity),
                format!("Hurewicz kernel in degree {n}, {connectivity}-fold connective"),
                "infinite-loop-kernel closed form",
            )
        }
        ClosedFormBound::TorsionInterval {
            known_exponent,
            length,
        } => {
            if length == 0 {
                return Err(BoundsError::EmptyInterval);
            }
            ExponentCertificate::upper(
                p,
                known_exponent
                    + truncated_sphere_upper(p, length)
                    + truncated_sphere_upper(p, length - 1),
                format!("spectrum with p^{known_exponent}-torsion homotopy in a length-{length} interval"),
                "torsion-interval closed form",
            )
        }
        ClosedFormBound::ClassifyingSpace { group_order } => {
            if group_order == 0 {
                return Err(BoundsError::InvalidGroupOrder);
            }
            ExponentCertificate::upper(
                p,
                p.valuation(group_order) + truncated_sphere_upper(p, n),
                format!("tau[1,{n}] of the order-{group_order} classifying spectrum"),
                "classifying-space closed form",
            )
        }
    };
    Ok(cert)
}

/// Where the first nonzero entry of one chart row sits, if the window shows it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VanishingRow {
    /// The least internal degree t with a nonzero entry in this row.
    Known(u32),
    /// The whole row is zero inside the window; the true first entry is
    /// beyond `t_max`.
    WindowLimited,
}

/// A lower bound `f` on the internal degree of nonzero Ext: `Ext^{s,t} = 0`
/// for `t < f(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingFunction {
    /// `f(s) = slope * s + intercept` for every `s >= 0`.
    Affine { p: Prime, slope: i64, intercept: i64 },
    /// Row-by-row data extracted from a chart window. `rows[s]` describes
    /// filtration s for `s <= s_max`; a window-limited row certifies
    /// `f(s) >= t_max + 1`.
    Table {
        p: Prime,
        rows: Vec<VanishingRow>,
        s_max: u32,
        t_max: u32,
    },
}

impl VanishingFunction {
    pub fn prime(&self) -> Prime {
        match self {
            VanishingFunction::Affine { p, .. } => *p,
            VanishingFunction::Table { p, .. } => *p,
        }
    }
}

/// Extract the table form from a computed chart: `f(s)` = least t with a
/// nonzero entry in row s.
pub fn vanishing_function_from_chart(chart: &ExtChart) -> VanishingFunction {
    let rows = (0..=chart.s_max())
        .map(|s| {
            (0..=chart.t_max())
                .find(|&t| chart.dim(s, t) != 0)
                .map_or(VanishingRow::WindowLimited, VanishingRow::Known)
        })
        .collect();
    VanishingFunction::Table {
        p: chart.prime(),
        rows,
        s_max: chart.s_max(),
        t_max: chart.t_max(),
    }
}

/// Result of searching a vanishing function for an exponent bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishingBoundOutcome {
    /// The minimal filtration m with `f(m) - m > n`, as an upper certificate.
    Found(ExponentCertificate),
    /// The function provably never clears the stem: no bound exists.
    NoBound,
    /// The table ran out of rows before the condition could be decided.
    WindowLimited { s_max: u32 },
}

/// Search for the minimal m with `f(m) - m > n`; `p^m` then annihilates the
/// n-stem of the module's truncated dual.
///
/// Affine functions are decided exactly. Table functions use the sound
/// reading of a window-limited row (`f(s) >= t_max + 1`) and report a
/// window-limited outcome instead of guessing when the rows run out.
pub fn exponent_bound_from_vanishing(f: &VanishingFunction, n: u32) -> VanishingBoundOutcome {
    let p = f.prime();
    let found = |m: u32| {
        VanishingBoundOutcome::Found(ExponentCertificate::upper(
            p,
            m,
            format!("degree-{n} torsion under the vanishing line"),
            "vanishing-line minimal filtration",
        ))
    };
    match f {
        VanishingFunction::Affine { slope, intercept, .. } => {
            let n = i64::from(n);
            if *slope <= 1 {
                // f(m) - m is nonincreasing, so only m = 0 can ever work.
                if *intercept > n {
                    found(0)
                } else {
                    VanishingBoundOutcome::NoBound
                }
            } else {
                // Least m with (slope - 1) m > n - intercept.
                let need = n - intercept + 1;
                let m = if need <= 0 {
                    0
                } else {
                    (need as u64).div_ceil((slope - 1) as u64)
                };
                found(u32::try_from(m).expect("filtration fits in u32"))
            }
        }
        VanishingFunction::Table { rows, s_max, t_max, .. } => {
            for (s, row) in rows.iter().enumerate() {
                let s = s as u32;
                let first = match row {
                    VanishingRow::Known(t) => *t,
                    VanishingRow::WindowLimited => t_max + 1,
                };
                if i64::from(first) - i64::from(s) > i64::from(n) {
                    return found(s);
                }
            }
            VanishingBoundOutcome::WindowLimited { s_max: *s_max }
        }
    }
}

/// Additivity across a cofiber sequence: if `p^a` kills one end and `p^b` the
/// other, `p^(a+b)` kills the middle.
pub fn cofiber_combine(
    a: &ExponentCertificate,
    b: &ExponentCertificate,
) -> Result<ExponentCertificate, BoundsError> {
    a.require_upper()?;
    b.require_upper()?;
    require_same_prime(a, b)?;
    Ok(ExponentCertificate::upper(
        a.p,
        a.value + b.value,
        format!("cofiber of [{}] and [{}]", a.subject, b.subject),
        "cofiber additivity",
    ))
}

/// A smash factor is annihilated by whatever annihilates either factor.
pub fn smash_combine(
    a: &ExponentCertificate,
    b: &ExponentCertificate,
) -> Result<ExponentCertificate, BoundsError> {
    a.require_upper()?;
    b.require_upper()?;
    require_same_prime(a, b)?;
    Ok(ExponentCertificate::upper(
        a.p,
        a.value.min(b.value),
        format!("smash of [{}] and [{}]", a.subject, b.subject),
        "smash minimum",
    ))
}

/// An upper bound survives passing to any truncation of the subject.
pub fn truncate_cert(c: &ExponentCertificate) -> Result<ExponentCertificate, BoundsError> {
    c.require_upper()?;
    Ok(ExponentCertificate::upper(
        c.p,
        c.value,
        format!("truncation of [{}]", c.subject),
        "truncation restriction",
    ))
}

/// Sum of per-degree exponents annihilates a spectrum whose homotopy lives in
/// that interval, one cofiber step per degree. The empty interval is a point.
pub fn interval_product_bound(p: Prime, exponents: &[u32]) -> ExponentCertificate {
    ExponentCertificate::upper(
        p,
        exponents.iter().sum(),
        format!("spectrum with homotopy in an interval of {} degrees", exponents.len()),
        "interval product",
    )
}

/// Package truncation certificates as Hurewicz kernel and cokernel bounds.
///
/// The kernel in degree n is annihilated by the exponent of `tau[1,n]`; the
/// cokernel by the exponent of `tau[1,n-1]`.
pub fn hurewicz_bounds_from_cert(
    kernel_cert: &ExponentCertificate,
    cokernel_cert: &ExponentCertificate,
) -> Result<(ExponentCertificate, ExponentCertificate), BoundsError> {
    kernel_cert.require_upper()?;
    cokernel_cert.require_upper()?;
    require_same_prime(kernel_cert, cokernel_cert)?;
    let kernel = ExponentCertificate::upper(
        kernel_cert.p,
        kernel_cert.value,
        format!("Hurewicz kernel via [{}]", kernel_cert.subject),
        "hurewicz from truncation certificates",
    );
    let cokernel = ExponentCertificate::upper(
        cokernel_cert.p,
        cokernel_cert.value,
        format!("Hurewicz cokernel via [{}]", cokernel_cert.subject),
        "hurewicz from truncation certificates",
    );
    Ok((kernel, cokernel))
}

/// The degree-n k-invariant is annihilated by whatever annihilates the
/// truncation `tau[1,n]`, so an upper certificate for it transports to the
/// k-invariant with the same value.
pub fn k_invariant_bound(
    p: Prime,
    n: u32,
    cert: &ExponentCertificate,
) -> Result<ExponentCertificate, BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidDegree { got: 0 });
    }
    cert.require_upper()?;
    if cert.p != p {
        return Err(BoundsError::PrimeMismatch {
            left: p.get(),
            right: cert.p.get(),
        });
    }
    Ok(ExponentCertificate::upper(
        p,
        cert.value,
        format!("degree-{n} k-invariant via [{}]", cert.subject),
        "k-invariant transport",
    ))
}

/// Which side of the Hurewicz map a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurewiczSide {
    Kernel,
    Cokernel,
}

/// The classical partial-sum bound from caller-supplied per-stem exponents:
/// kernel in degree n needs the first n values, cokernel the first n-1.
pub fn arlettaz_bound(
    p: Prime,
    rho: &[u32],
    n: u32,
    side: HurewiczSide,
) -> Result<ExponentCertificate, BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidDegree { got: n });
    }
    let needed = match side {
        HurewiczSide::Kernel => n as usize,
        HurewiczSide::Cokernel => (n - 1) as usize,
    };
    if rho.len() < needed {
        return Err(BoundsError::ShortExponentList {
            needed,
            got: rho.len(),
        });
    }
    let value = rho[..needed].iter().sum();
    let what = match side {
        HurewiczSide::Kernel => "kernel",
        HurewiczSide::Cokernel => "cokernel",
    };
    Ok(ExponentCertificate::upper(
        p,
        value,
        format!("Hurewicz {what} in degree {n}"),
        "per-stem partial sums",
    ))
}

/// One conjugacy class of subgroups: its Weyl-group order and the dimension
/// of its fixed subspace in the ambient representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub label: String,
    pub weyl_order: u64,
    pub fixed_dim: u32,
}

/// Fixed-point data for a finite group action, one record per conjugacy
/// class of subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFixedPointData {
    pub label: String,
    pub records: Vec<SubgroupRecord>,
}

impl GroupFixedPointData {
    pub fn new(
        label: impl Into<String>,
        records: Vec<SubgroupRecord>,
    ) -> Result<Self, BoundsError> {
        if records.is_empty() {
            return Err(BoundsError::EmptyGroupData);
        }
        if let Some(bad) = records.iter().find(|r| r.weyl_order == 0) {
            return Err(BoundsError::InvalidWeylOrder {
                label: bad.label.clone(),
            });
        }
        Ok(GroupFixedPointData {
            label: label.into(),
            records,
        })
    }

    /// Records whose fixed dimension is strictly below the degree; only these
    /// contribute homotopy in the range, provided none sits exactly at it.
    fn contributing(&self, n: u32) -> Result<Vec<&SubgroupRecord>, BoundsError> {
        if let Some(hit) = self.records.iter().find(|r| r.fixed_dim == n) {
            return Err(BoundsError::FixedDimensionCollision {
                degree: n,
                subgroup: hit.label.clone(),
            });
        }
        Ok(self.records.iter().filter(|r| r.fixed_dim < n).collect())
    }
}

/// Max over contributing subgroups of `v_p(|WH|) + exp_p(tau[1, n - dim])`,
/// with the truncation exponents drawn from `cert_source`.
pub fn equivariant_bound(
    group: &GroupFixedPointData,
    n: u32,
    p: Prime,
    cert_source: impl Fn(u32) -> ExponentCertificate,
) -> Result<ExponentCertificate, BoundsError> {
    let contributing = group.contributing(n)?;
    let subject = format!("tau[1,{n}] of the {} fixed-point spectrum", group.label);
    let mut best: Option<(u32, &SubgroupRecord)> = None;
    for rec in contributing {
        let value = p.valuation(rec.weyl_order) + cert_source(n - rec.fixed_dim).value;
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, rec));
        }
    }
    Ok(match best {
        Some((value, rec)) => ExponentCertificate::upper(
            p,
            value,
            subject,
            &format!("equivariant fixed-point maximum at subgroup {}", rec.label),
        ),
        None => ExponentCertificate::upper(p, 0, subject, "no contributing subgroups"),
    })
}

/// The bound in integer form: the least common multiple over contributing
/// subgroups of `|WH| * exp(tau[1, n - dim])`, returned factored as sorted
/// `(prime, exponent)` pairs.
///
/// For each prime q the truncation factor uses the closed-form upper bound
/// when the window can contain q-torsion at all, which for the stable stems
/// starts in degree 2q - 3; below that the q-part comes from `|WH|` alone.
pub fn equivariant_lcm_form(
    group: &GroupFixedPointData,
    n: u32,
) -> Result<Vec<(u64, u32)>, BoundsError> {
    let contributing = group.contributing(n)?;
    let mut factors: std::collections::BTreeMap<u64, u32> = std::collections::BTreeMap::new();
    let mut bump = |q: u64, e: u32| {
        if e > 0 {
            let slot = factors.entry(q).or_insert(0);
            *slot = (*slot).max(e);
        }
    };
    for rec in contributing {
        let window = n - rec.fixed_dim;
        for q in torsion_primes(window) {
            bump(
                u64::from(q.get()),
                q.valuation(rec.weyl_order) + truncated_sphere_upper(q, window),
            );
        }
        for (q, e) in factorize(rec.weyl_order) {
            // Primes too large for torsion in the window still divide |WH|.
            if 2 * q - 3 > u64::from(window) {
                bump(q, e);
            }
        }
    }
    Ok(factors.into_iter().collect())
}

/// Primes that can support torsion in the stable stems 1..=window: 2 plus
/// every odd q with 2q - 3 <= window.
fn torsion_primes(window: u32) -> Vec<Prime> {
    crate::prime::primes_up_to((window + 3) / 2)
        .into_iter()
        .filter(|q| q.is_two() || 2 * q.get() - 3 <= window)
        .collect()
}

fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= x {
        if x % q == 0 {
            let mut e = 0;
            while x % q == 0 {
                x /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Render factored form as `2^8 * 3^2`, or `1` for the empty product.
pub fn format_factored(factors: &[(u64, u32)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|(q, e)| {
            if *e == 1 {
                q.to_string()
            } else {
                format!("{q}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32) -> Prime {
        Prime::new(q).unwrap()
    }

    fn main_upper(q: u32, n: u32) -> u32 {
        closed_form_bound(ClosedFormBound::MainUpper, p(q), n)
            .unwrap()
            .value
    }

    fn main_lower(q: u32, n: u32) -> u32 {
        closed_form_bound(ClosedFormBound::MainLower, p(q), n)
            .unwrap()
            .value
    }

    #[test]
    fn spot_values() {
        assert_eq!(main_upper(2, 10), 8);
        assert_eq!(main_lower(2, 10), 4);
        assert_eq!(main_upper(3, 13), 5);
        assert_eq!(main_lower(3, 13), 3);
        assert_eq!(main_upper(2, 1), 4);
        assert_eq!(main_lower(2, 1), 0);
        let coker = closed_form_bound(ClosedFormBound::HurewiczCokernel, p(5), 10).unwrap();
        assert_eq!(coker.value, 3);
        let kinv = closed_form_bound(ClosedFormBound::KInvariant, p(3), 9).unwrap();
        assert_eq!(kinv.value, 4);
        let kinv2 = closed_form_bound(ClosedFormBound::KInvariant, p(2), 9).unwrap();
        assert_eq!(kinv2.value, 8);
        let loop_kernel = closed_form_bound(
            ClosedFormBound::InfiniteLoopKernel { connectivity: 3 },
            p(2),
            7,
        )
        .unwrap();
        assert_eq!(loop_kernel.value, 5);
        let interval = closed_form_bound(
            ClosedFormBound::TorsionInterval {
                known_exponent: 1,
                length: 4,
            },
            p(2),
            1,
        )
        .unwrap();
        assert_eq!(interval.value, 11);
        let bg = closed_form_bound(ClosedFormBound::ClassifyingSpace { group_order: 6 }, p(2), 4)
            .unwrap();
        assert_eq!(bg.value, 6);
    }

    #[test]
    fn hurewicz_cokernel_at_degree_one_is_trivial() {
        let c = closed_form_bound(ClosedFormBound::HurewiczCokernel, p(2), 1).unwrap();
        assert_eq!(c.value, 0);
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(
            closed_form_bound(ClosedFormBound::MainUpper, p(2), 0),
            Err(BoundsError::InvalidDegree { got: 0 })
        );
        assert!(matches!(
            closed_form_bound(ClosedFormBound::InfiniteLoopKernel { connectivity: 8 }, p(2), 7),
            Err(BoundsError::InvalidConnectivity { .. })
        ));
        assert_eq!(
            closed_form_bound(
                ClosedFormBound::TorsionInterval {
                    known_exponent: 1,
                    length: 0
                },
                p(2),
                1
            ),
            Err(BoundsError::EmptyInterval)
        );
        assert_eq!(
            closed_form_bound(ClosedFormBound::ClassifyingSpace { group_order: 0 }, p(2), 1),
            Err(BoundsError::InvalidGroupOrder)
        );
    }

    #[test]
    fn bounds_are_nondecreasing_in_degree() {
        for q in [2u32, 3, 5] {
            for n in 1..400 {
                assert!(main_upper(q, n) <= main_upper(q, n + 1));
                assert!(main_lower(q, n) <= main_lower(q, n + 1));
                let a = closed_form_bound(ClosedFormBound::HurewiczCokernel, p(q), n)
                    .unwrap()
                    .value;
                let b = closed_form_bound(ClosedFormBound::HurewiczCokernel, p(q), n + 1)
                    .unwrap()
                    .value;
                assert!(a <= b);
            }
        }
    }

    #[test]
    fn sandwich_holds_broadly() {
        for q in crate::prime::primes_up_to(100) {
            for n in 1..=10_000 {
                assert!(
                    truncated_sphere_lower(q, n) <= truncated_sphere_upper(q, n),
                    "p = {}, n = {n}",
                    q.get()
                );
            }
        }
    }

    #[test]
    fn vanishing_search_matches_closed_form() {
        let f2 = VanishingFunction::Affine {
            p: p(2),
            slope: 3,
            intercept: -5,
        };
        for n in 1..=1000 {
            match exponent_bound_from_vanishing(&f2, n) {
                VanishingBoundOutcome::Found(c) => assert_eq!(c.value, main_upper(2, n), "n = {n}"),
                other => panic!("expected a bound at n = {n}, got {other:?}"),
            }
        }
        for q in [3u32, 5, 7, 11, 13, 17, 19, 23] {
            let f = VanishingFunction::Affine {
                p: p(q),
                slope: i64::from(2 * q - 1),
                intercept: -2 * i64::from(q),
            };
            for n in 1..=1000 {
                match exponent_bound_from_vanishing(&f, n) {
                    VanishingBoundOutcome::Found(c) => {
                        assert_eq!(c.value, main_upper(q, n), "p = {q}, n = {n}")
                    }
                    other => panic!("expected a bound at p = {q}, n = {n}, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn identity_slope_never_clears_the_stem() {
        let f = VanishingFunction::Affine {
            p: p(2),
            slope: 1,
            intercept: 0,
        };
        for n in 0..10 {
            assert_eq!(exponent_bound_from_vanishing(&f, n), VanishingBoundOutcome::NoBound);
        }
        let shifted = VanishingFunction::Affine {
            p: p(2),
            slope: 1,
            intercept: 7,
        };
        match exponent_bound_from_vanishing(&shifted, 3) {
            VanishingBoundOutcome::Found(c) => assert_eq!(c.value, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table_search_reports_window_exhaustion() {
        let table = VanishingFunction::Table {
            p: p(2),
            rows: vec![
                VanishingRow::Known(0),
                VanishingRow::Known(1),
                VanishingRow::Known(2),
            ],
            s_max: 2,
            t_max: 6,
        };
        // f(s) - s = 0 on every row; n = 0 needs strict excess.
        assert_eq!(
            exponent_bound_from_vanishing(&table, 0),
            VanishingBoundOutcome::WindowLimited { s_max: 2 }
        );
        let with_gap = VanishingFunction::Table {
            p: p(2),
            rows: vec![
                VanishingRow::Known(0),
                VanishingRow::Known(1),
                VanishingRow::WindowLimited,
            ],
            s_max: 2,
            t_max: 9,
        };
        // The empty row certifies f(2) >= 10, so f(2) - 2 >= 8 > 5.
        match exponent_bound_from_vanishing(&with_gap, 5) {
            VanishingBoundOutcome::Found(c) => assert_eq!(c.value, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn certificate_combinators() {
        let a = closed_form_bound(ClosedFormBound::MainUpper, p(2), 3).unwrap();
        let b = closed_form_bound(ClosedFormBound::MainUpper, p(2), 4).unwrap();
        assert_eq!(cofiber_combine(&a, &b).unwrap().value, a.value + b.value);
        assert_eq!(smash_combine(&a, &b).unwrap().value, a.value.min(b.value));
        assert_eq!(truncate_cert(&a).unwrap().value, a.value);

        let zero = interval_product_bound(p(2), &[]);
        assert_eq!(zero.value, 0);
        assert_eq!(cofiber_combine(&a, &zero).unwrap().value, a.value);
        assert_eq!(smash_combine(&zero, &b).unwrap().value, 0);

        let c = closed_form_bound(ClosedFormBound::MainUpper, p(2), 5).unwrap();
        let left = cofiber_combine(&cofiber_combine(&a, &b).unwrap(), &c).unwrap();
        let right = cofiber_combine(&a, &cofiber_combine(&b, &c).unwrap()).unwrap();
        assert_eq!(left.value, right.value);

        let other = closed_form_bound(ClosedFormBound::MainUpper, p(3), 3).unwrap();
        assert!(matches!(
            cofiber_combine(&a, &other),
            Err(BoundsError::PrimeMismatch { .. })
        ));
        let lower = closed_form_bound(ClosedFormBound::MainLower, p(2), 9).unwrap();
        assert!(matches!(
            cofiber_combine(&a, &lower),
            Err(BoundsError::NotUpper { .. })
        ));
    }

    #[test]
    fn interval_product_sums() {
        assert_eq!(interval_product_bound(p(2), &[1, 1, 3]).value, 5);
        assert_eq!(interval_product_bound(p(2), &[7]).value, 7);
    }

    #[test]
    fn hurewicz_pair_passthrough() {
        let k = closed_form_bound(ClosedFormBound::MainUpper, p(2), 10).unwrap();
        let c = closed_form_bound(ClosedFormBound::MainUpper, p(2), 9).unwrap();
        let (kb, cb) = hurewicz_bounds_from_cert(&k, &c).unwrap();
        assert_eq!((kb.value, cb.value), (8, 8));

        let k1 = closed_form_bound(ClosedFormBound::MainUpper, p(2), 1).unwrap();
        let c1 = interval_product_bound(p(2), &[]);
        let (kb, cb) = hurewicz_bounds_from_cert(&k1, &c1).unwrap();
        assert_eq!((kb.value, cb.value), (4, 0));

        let k3 = closed_form_bound(ClosedFormBound::MainUpper, p(3), 5).unwrap();
        assert_eq!(k3.value, 3);
    }

    #[test]
    fn arlettaz_partial_sums() {
        let rho = [1, 1, 3];
        let k = arlettaz_bound(p(2), &rho, 3, HurewiczSide::Kernel).unwrap();
        assert_eq!(k.value, 5);
        // The partial-sum bound is never better than the closed form here.
        assert!(k.value >= main_upper(2, 3));
        assert_eq!(main_upper(2, 3), 5);
        let c = arlettaz_bound(p(2), &rho, 3, HurewiczSide::Cokernel).unwrap();
        assert_eq!(c.value, 2);
        let single = arlettaz_bound(p(2), &rho, 1, HurewiczSide::Kernel).unwrap();
        assert_eq!(single.value, 1);
        assert!(matches!(
            arlettaz_bound(p(2), &rho, 5, HurewiczSide::Kernel),
            Err(BoundsError::ShortExponentList { needed: 5, got: 3 })
        ));
    }

    fn sigma3() -> GroupFixedPointData {
        GroupFixedPointData::new(
            "Sigma_3",
            vec![
                SubgroupRecord { label: "e".into(), weyl_order: 6, fixed_dim: 0 },
                SubgroupRecord { label: "C2".into(), weyl_order: 1, fixed_dim: 0 },
                SubgroupRecord { label: "C3".into(), weyl_order: 2, fixed_dim: 0 },
                SubgroupRecord { label: "Sigma_3".into(), weyl_order: 1, fixed_dim: 0 },
            ],
        )
        .unwrap()
    }

    fn sphere_cert(q: u32) -> impl Fn(u32) -> ExponentCertificate {
        move |m| closed_form_bound(ClosedFormBound::MainUpper, p(q), m).unwrap()
    }

    #[test]
    fn equivariant_symmetric_group_example() {
        let bound = equivariant_bound(&sigma3(), 3, p(2), sphere_cert(2)).unwrap();
        assert_eq!(bound.value, 6);
        // With every fixed dimension zero this is v_p(|G|) + upper(n).
        assert_eq!(bound.value, 1 + main_upper(2, 3));
    }

    #[test]
    fn equivariant_degenerations() {
        let trivial = GroupFixedPointData::new(
            "e",
            vec![SubgroupRecord { label: "e".into(), weyl_order: 1, fixed_dim: 0 }],
        )
        .unwrap();
        let bound = equivariant_bound(&trivial, 5, p(2), sphere_cert(2)).unwrap();
        assert_eq!(bound.value, main_upper(2, 5));
        assert_eq!(bound.value, 6);

        let high = GroupFixedPointData::new(
            "G",
            vec![SubgroupRecord { label: "H".into(), weyl_order: 4, fixed_dim: 9 }],
        )
        .unwrap();
        let nothing = equivariant_bound(&high, 3, p(2), sphere_cert(2)).unwrap();
        assert_eq!(nothing.value, 0);
        assert_eq!(nothing.provenance, "no contributing subgroups");

        let collide = equivariant_bound(&high, 9, p(2), sphere_cert(2));
        assert!(matches!(
            collide,
            Err(BoundsError::FixedDimensionCollision { degree: 9, .. })
        ));
    }

    #[test]
    fn group_data_validation() {
        assert_eq!(
            GroupFixedPointData::new("G", vec![]),
            Err(BoundsError::EmptyGroupData)
        );
        assert!(matches!(
            GroupFixedPointData::new(
                "G",
                vec![SubgroupRecord { label: "H".into(), weyl_order: 0, fixed_dim: 0 }]
            ),
            Err(BoundsError::InvalidWeylOrder { .. })
        ));
    }

    #[test]
    fn lcm_form_factors() {
        // n = 3: only q = 2 can hold stem torsion (2q - 3 <= 3 fails at q = 5,
        // holds at q = 3), and the C3 record contributes no extra 3-part
        // beyond its truncation bound.
        let factors = equivariant_lcm_form(&sigma3(), 3).unwrap();
        let two = factors.iter().find(|(q, _)| *q == 2).unwrap().1;
        assert_eq!(two, 1 + truncated_sphere_upper(p(2), 3));
        let three = factors.iter().find(|(q, _)| *q == 3).unwrap().1;
        assert_eq!(three, 1 + truncated_sphere_upper(p(3), 3));
        assert!(factors.iter().all(|(q, _)| *q == 2 || *q == 3));
        assert_eq!(format_factored(&factors), "2^6 * 3^4");

        let huge_weyl = GroupFixedPointData::new(
            "G",
            vec![SubgroupRecord { label: "H".into(), weyl_order: 35, fixed_dim: 0 }],
        )
        .unwrap();
        // Window 2 admits no 5- or 7-torsion in stems, so those primes appear
        // with the Weyl valuation alone.
        let factors = equivariant_lcm_form(&huge_weyl, 2).unwrap();
        assert!(factors.contains(&(5, 1)));
        assert!(factors.contains(&(7, 1)));

        assert_eq!(format_factored(&[]), "1");
        assert_eq!(format_factored(&[(2, 1)]), "2");
    }

    #[test]
    fn chart_extraction_reads_first_nonzero_rows() {
        use crate::chart::ExtChart;
        let chart = ExtChart::new(
            p(2),
            "sphere",
            2,
            6,
            vec![(0, 0, 1), (1, 1, 1), (1, 2, 1), (2, 2, 1)],
        )
        .unwrap();
        let f = vanishing_function_from_chart(&chart);
        match &f {
            VanishingFunction::Table { rows, s_max, t_max, .. } => {
                assert_eq!((*s_max, *t_max), (2, 6));
                assert_eq!(
                    rows.as_slice(),
                    &[
                        VanishingRow::Known(0),
                        VanishingRow::Known(1),
                        VanishingRow::Known(2)
                    ]
                );
            }
            _ => panic!("expected table form"),
        }
    }

    #[test]
    fn k_invariant_transport_reuses_truncation_certificates() {
        let cert = closed_form_bound(ClosedFormBound::MainUpper, p(2), 9).unwrap();
        let k = k_invariant_bound(p(2), 9, &cert).unwrap();
        assert_eq!(k.value, 8);
        assert_eq!(k.kind, CertKind::Upper);
        assert!(k.subject.contains("k-invariant"));

        let cert = closed_form_bound(ClosedFormBound::MainUpper, p(3), 9).unwrap();
        assert_eq!(k_invariant_bound(p(3), 9, &cert).unwrap().value, 4);
        let cert = closed_form_bound(ClosedFormBound::MainUpper, p(2), 1).unwrap();
        assert_eq!(k_invariant_bound(p(2), 1, &cert).unwrap().value, 4);

        assert!(matches!(
            k_invariant_bound(p(2), 0, &cert),
            Err(BoundsError::InvalidDegree { got: 0 })
        ));
        let lower = ExponentCertificate::lower(p(2), 4, "tau[1,9] S^0", "test");
        assert!(matches!(
            k_invariant_bound(p(2), 9, &lower),
            Err(BoundsError::NotUpper { .. })
        ));
        let cert = closed_form_bound(ClosedFormBound::MainUpper, p(3), 9).unwrap();
        assert!(matches!(
            k_invariant_bound(p(2), 9, &cert),
            Err(BoundsError::PrimeMismatch { .. })
        ));
    }

    #[test]
    fn closed_forms_are_nondecreasing_in_degree() {
        let kinds = [
            ClosedFormBound::MainLower,
            ClosedFormBound::MainUpper,
            ClosedFormBound::HurewiczKernel,
            ClosedFormBound::HurewiczCokernel,
            ClosedFormBound::KInvariant,
        ];
        for q in [2u32, 3, 5] {
            for kind in kinds {
                let mut prev = 0;
                for n in 1..=2000 {
                    let value = closed_form_bound(kind, p(q), n).unwrap().value;
                    assert!(value >= prev, "{kind:?} dropped at p = {q}, n = {n}");
                    prev = value;
                }
            }
        }
    }
}

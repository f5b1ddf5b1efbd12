//! Bigraded dimension tables and the structural checks run against them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::prime::Prime;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("entry ({s},{t}) lies outside the window ({s_max},{t_max})")]
    EntryOutsideWindow { s: u32, t: u32, s_max: u32, t_max: u32 },
    #[error("duplicate entry at ({s},{t})")]
    DuplicateEntry { s: u32, t: u32 },
    #[error("charts use different primes: {left} and {right}")]
    PrimeMismatch { left: u32, right: u32 },
    #[error("the charts' windows leave nothing to compare")]
    EmptyCommonWindow,
}

/// The table of Ext dimensions over a finite window: `dim(s,t)` counts the
/// degree-t free generators at homological degree s of a minimal
/// resolution. Only nonzero dimensions are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtChart {
    p: Prime,
    module: String,
    s_max: u32,
    t_max: u32,
    dims: BTreeMap<(u32, u32), u32>,
}

impl ExtChart {
    pub fn new(
        p: Prime,
        module: impl Into<String>,
        s_max: u32,
        t_max: u32,
        entries: impl IntoIterator<Item = (u32, u32, u32)>,
    ) -> Result<Self, ChartError> {
        let mut dims = BTreeMap::new();
        for (s, t, dim) in entries {
            if s > s_max || t > t_max {
                return Err(ChartError::EntryOutsideWindow { s, t, s_max, t_max });
            }
            if dim == 0 {
                continue;
            }
            if dims.insert((s, t), dim).is_some() {
                return Err(ChartError::DuplicateEntry { s, t });
            }
        }
        Ok(ExtChart { p, module: module.into(), s_max, t_max, dims })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn module_name(&self) -> &str {
        &self.module
    }

    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    /// Dimension at a bidegree; zero for absent or out-of-window entries.
    pub fn dim(&self, s: u32, t: u32) -> u32 {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn in_window(&self, s: u32, t: u32) -> bool {
        s <= self.s_max && t <= self.t_max
    }

    /// Nonzero entries as (s, t, dim), sorted by (s, t).
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.dims.iter().map(|(&(s, t), &d)| (s, t, d))
    }

    pub fn total_dimension(&self) -> u64 {
        self.dims.values().map(|&d| u64::from(d)).sum()
    }
}

/// Exclusive upper bound of the proven-empty strip for the sphere chart:
/// entries with 0 < s < t < bound(s) vanish. At p = 2 the bound is 3s - 3;
/// at odd primes it is (2p-1)s - 2.
pub fn vanishing_strip_bound(p: Prime, s: u32) -> i64 {
    let s = i64::from(s);
    if p.is_two() {
        3 * s - 3
    } else {
        (2 * i64::from(p.get()) - 1) * s - 2
    }
}

/// Whether (s, t) lies inside the proven-empty strip of the sphere chart.
pub fn in_vanishing_strip(p: Prime, s: u32, t: u32) -> bool {
    s > 0 && t > s && i64::from(t) < vanishing_strip_bound(p, s)
}

/// All nonzero chart entries inside the strip; empty means verified.
pub fn verify_vanishing(chart: &ExtChart) -> Vec<(u32, u32, u32)> {
    chart
        .entries()
        .filter(|&(s, t, _)| in_vanishing_strip(chart.prime(), s, t))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftViolation {
    pub s: u32,
    pub t: u32,
    pub actual: u32,
    pub expected: u32,
}

/// Outcome of comparing a connective-cover chart against the sphere chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftReport {
    /// Window actually compared (limited by both inputs).
    pub s_window: u32,
    pub t_window: u32,
    pub checked: usize,
    pub violations: Vec<ShiftViolation>,
}

impl ShiftReport {
    pub fn is_verified(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the chart of the 1-connective cover module against the sphere
/// chart: off the diagonal, covering dimensions agree with the sphere chart
/// shifted up by one in both gradings (the connecting map of the defining
/// short exact sequence is an isomorphism there, since the middle chart is
/// concentrated on the diagonal); on the diagonal the cover chart is zero,
/// the sphere's h0-tower having no counterpart.
pub fn verify_dimension_shift(
    sphere: &ExtChart,
    cover: &ExtChart,
) -> Result<ShiftReport, ChartError> {
    if sphere.prime() != cover.prime() {
        return Err(ChartError::PrimeMismatch {
            left: sphere.prime().get(),
            right: cover.prime().get(),
        });
    }
    if sphere.s_max() == 0 || sphere.t_max() == 0 {
        return Err(ChartError::EmptyCommonWindow);
    }
    let s_window = cover.s_max().min(sphere.s_max() - 1);
    let t_window = cover.t_max().min(sphere.t_max() - 1);
    let mut checked = 0;
    let mut violations = Vec::new();
    for s in 0..=s_window {
        for t in 0..=t_window {
            let expected = if s == t { 0 } else { sphere.dim(s + 1, t + 1) };
            let actual = cover.dim(s, t);
            checked += 1;
            if actual != expected {
                violations.push(ShiftViolation { s, t, actual, expected });
            }
        }
    }
    Ok(ShiftReport { s_window, t_window, checked, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Prime {
        Prime::TWO
    }

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn construction_validates_entries() {
        let ok = ExtChart::new(p2(), "sphere", 3, 3, vec![(0, 0, 1), (1, 2, 1)]);
        assert!(ok.is_ok());
        let out = ExtChart::new(p2(), "sphere", 3, 3, vec![(4, 0, 1)]);
        assert!(matches!(out, Err(ChartError::EntryOutsideWindow { .. })));
        let dup = ExtChart::new(p2(), "sphere", 3, 3, vec![(1, 1, 1), (1, 1, 2)]);
        assert!(matches!(dup, Err(ChartError::DuplicateEntry { .. })));
    }

    #[test]
    fn zero_dimensions_are_dropped() {
        let c = ExtChart::new(p2(), "sphere", 3, 3, vec![(1, 1, 0), (2, 2, 1)]).unwrap();
        assert_eq!(c.entries().count(), 1);
        assert_eq!(c.dim(1, 1), 0);
        assert_eq!(c.dim(2, 2), 1);
        assert_eq!(c.dim(9, 9), 0);
    }

    #[test]
    fn strip_membership_matches_inequalities() {
        // p = 2: 0 < s < t < 3s-3. At s = 3 the strip is 3 < t < 6.
        assert!(!in_vanishing_strip(p2(), 3, 3));
        assert!(in_vanishing_strip(p2(), 3, 4));
        assert!(in_vanishing_strip(p2(), 3, 5));
        assert!(!in_vanishing_strip(p2(), 3, 6));
        // s = 1, 2 admit no strip at all: 3s-3 <= s+1.
        for t in 0..10 {
            assert!(!in_vanishing_strip(p2(), 1, t));
        }
        // p = 3: 0 < s < t < 5s-2. At s = 1: 1 < t < 3.
        assert!(in_vanishing_strip(p3(), 1, 2));
        assert!(!in_vanishing_strip(p3(), 1, 3));
        // s = 0 never counts.
        assert!(!in_vanishing_strip(p2(), 0, 5));
    }

    #[test]
    fn vanishing_check_reports_offenders() {
        let dirty = ExtChart::new(p2(), "sphere", 5, 10, vec![(3, 4, 2), (3, 3, 1)]).unwrap();
        assert_eq!(verify_vanishing(&dirty), vec![(3, 4, 2)]);
        let clean = ExtChart::new(p2(), "sphere", 5, 10, vec![(3, 3, 1), (1, 2, 1)]).unwrap();
        assert!(verify_vanishing(&clean).is_empty());
    }

    #[test]
    fn shift_comparison_flags_diagonal_and_mismatches() {
        // Sphere chart fragment: diagonal plus h1 at (1,2) and h2 at (1,4).
        let sphere = ExtChart::new(
            p2(),
            "sphere",
            3,
            5,
            vec![(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1), (1, 2, 1), (1, 4, 1), (2, 4, 1)],
        )
        .unwrap();
        // Correct cover chart: dim(s,t) = sphere(s+1,t+1) off diagonal.
        let good = ExtChart::new(p2(), "tau1", 2, 4, vec![(0, 1, 1), (0, 3, 1), (1, 3, 1)]).unwrap();
        let report = verify_dimension_shift(&sphere, &good).unwrap();
        assert!(report.is_verified(), "{:?}", report.violations);
        assert_eq!(report.s_window, 2);
        assert_eq!(report.t_window, 4);

        // A diagonal entry in the cover chart is a violation.
        let bad = ExtChart::new(p2(), "tau1", 2, 4, vec![(0, 1, 1), (1, 1, 1), (0, 3, 1), (1, 3, 1)])
            .unwrap();
        let report = verify_dimension_shift(&sphere, &bad).unwrap();
        assert_eq!(
            report.violations,
            vec![ShiftViolation { s: 1, t: 1, actual: 1, expected: 0 }]
        );
    }

    #[test]
    fn shift_comparison_rejects_mixed_primes() {
        let a = ExtChart::new(p2(), "sphere", 2, 2, vec![]).unwrap();
        let b = ExtChart::new(p3(), "tau1", 2, 2, vec![]).unwrap();
        assert!(matches!(
            verify_dimension_shift(&a, &b),
            Err(ChartError::PrimeMismatch { .. })
        ));
    }
}

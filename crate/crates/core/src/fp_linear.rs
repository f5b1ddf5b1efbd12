//! Exact linear algebra over F_p.
//!
//! Matrices are stored sparsely (sorted nonzero entries per row). Reduction
//! works on per-row buffers that start sparse and switch to a dense layout
//! once a row passes 30% fill; at p = 2 the dense layout is bit-packed, so
//! the elimination inner loop is word-wide XOR.
//!
//! The pivot rule is fixed (first row with a nonzero entry, scanning columns
//! left to right), so reduction is deterministic given the entry order.

use std::fmt;

use thiserror::Error;

use crate::prime::Prime;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinearError {
    #[error("dimension mismatch: expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Fraction of nonzero columns beyond which a working row is densified.
const DENSE_FILL: f64 = 0.30;

/// A sparse vector over F_p: sorted `(index, nonzero residue)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpVector {
    len: usize,
    entries: Vec<(usize, u32)>,
}

impl FpVector {
    pub fn zero(len: usize) -> Self {
        FpVector { len, entries: Vec::new() }
    }

    /// Normalizes arbitrary `(index, value)` pairs: reduces mod p, merges
    /// duplicates, sorts, and drops zeros.
    pub fn from_entries(p: Prime, len: usize, entries: Vec<(usize, u32)>) -> Self {
        let mut entries: Vec<(usize, u32)> = entries
            .into_iter()
            .map(|(i, v)| {
                assert!(i < len, "index {i} out of bounds for length {len}");
                (i, v % p.get())
            })
            .collect();
        entries.sort_unstable_by_key(|&(i, _)| i);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match merged.last_mut() {
                Some((j, w)) if *j == i => *w = p.add(*w, v),
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0);
        FpVector { len, entries: merged }
    }

    pub fn from_dense(p: Prime, dense: &[u32]) -> Self {
        let entries = dense
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| {
                let v = v % p.get();
                (v != 0).then_some((i, v))
            })
            .collect();
        FpVector { len: dense.len(), entries }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len);
        match self.entries.binary_search_by_key(&i, |&(j, _)| j) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(i, _)| i)
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let mut out = vec![0; self.len];
        for &(i, v) in &self.entries {
            out[i] = v;
        }
        out
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{v}")?;
        }
        write!(f, "]")
    }
}

/// A sparse matrix over F_p, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<FpVector>,
}

impl FpMatrix {
    pub fn zero(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![FpVector::zero(cols); rows],
        }
    }

    pub fn from_rows(p: Prime, cols: usize, rows: Vec<FpVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length disagrees with column count");
        }
        FpMatrix { p, rows: rows.len(), cols, data: rows }
    }

    pub fn from_dense(p: Prime, dense: &[Vec<u32>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        let data: Vec<FpVector> = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                FpVector::from_dense(p, r)
            })
            .collect();
        FpMatrix { p, rows: data.len(), cols, data }
    }

    /// Builds from `(row, col, value)` triples, accumulating duplicates mod p.
    pub fn from_entries(p: Prime, rows: usize, cols: usize, entries: Vec<(usize, usize, u32)>) -> Self {
        let mut per_row: Vec<Vec<(usize, u32)>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of bounds");
            per_row[r].push((c, v));
        }
        let data = per_row
            .into_iter()
            .map(|e| FpVector::from_entries(p, cols, e))
            .collect();
        FpMatrix { p, rows, cols, data }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &FpVector {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r].get(c)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().map(|r| r.entries.len()).sum()
    }

    /// Matrix-vector product; `v` is a coordinate vector on the columns.
    pub fn apply(&self, v: &FpVector) -> Result<FpVector, LinearError> {
        if v.len() != self.cols {
            return Err(LinearError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: u64 = 0;
            // Merge along the shorter support.
            if row.entries.len() <= v.entries.len() {
                for &(c, a) in &row.entries {
                    acc += u64::from(a) * u64::from(v.get(c));
                }
            } else {
                for &(c, b) in &v.entries {
                    acc += u64::from(row.get(c)) * u64::from(b);
                }
            }
            let val = self.p.reduce(acc);
            if val != 0 {
                out.push((r, val));
            }
        }
        Ok(FpVector { len: self.rows, entries: out })
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut entries = Vec::with_capacity(self.nonzero_count());
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in &row.entries {
                entries.push((c, r, v));
            }
        }
        FpMatrix::from_entries(self.p, self.cols, self.rows, entries)
    }
}

/// Result of Gauss-Jordan elimination: the rank, the pivot columns in
/// ascending order, and the reduced row echelon form.
#[derive(Debug, Clone)]
pub struct RowReduction {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: FpMatrix,
}

enum WorkRow {
    Sparse(Vec<(usize, u32)>),
    Bits(Vec<u64>),
    Words(Vec<u32>),
}

impl WorkRow {
    fn from_vector(v: &FpVector) -> Self {
        WorkRow::Sparse(v.entries.clone())
    }

    fn is_zero(&self) -> bool {
        match self {
            WorkRow::Sparse(e) => e.is_empty(),
            WorkRow::Bits(w) => w.iter().all(|&x| x == 0),
            WorkRow::Words(w) => w.iter().all(|&x| x == 0),
        }
    }

    fn get(&self, c: usize) -> u32 {
        match self {
            WorkRow::Sparse(e) => match e.binary_search_by_key(&c, |&(i, _)| i) {
                Ok(k) => e[k].1,
                Err(_) => 0,
            },
            WorkRow::Bits(w) => ((w[c / 64] >> (c % 64)) & 1) as u32,
            WorkRow::Words(w) => w[c],
        }
    }

    fn leading(&self) -> Option<(usize, u32)> {
        match self {
            WorkRow::Sparse(e) => e.first().copied(),
            WorkRow::Bits(w) => {
                for (i, &x) in w.iter().enumerate() {
                    if x != 0 {
                        let c = i * 64 + x.trailing_zeros() as usize;
                        return Some((c, 1));
                    }
                }
                None
            }
            WorkRow::Words(w) => w.iter().enumerate().find(|&(_, &x)| x != 0).map(|(i, &x)| (i, x)),
        }
    }

    fn densify(&mut self, p: Prime, cols: usize) {
        if let WorkRow::Sparse(e) = self {
            if p.is_two() {
                let mut w = vec![0u64; cols.div_ceil(64)];
                for &(i, _) in e.iter() {
                    w[i / 64] |= 1 << (i % 64);
                }
                *self = WorkRow::Bits(w);
            } else {
                let mut w = vec![0u32; cols];
                for &(i, v) in e.iter() {
                    w[i] = v;
                }
                *self = WorkRow::Words(w);
            }
        }
    }

    fn maybe_densify(&mut self, p: Prime, cols: usize) {
        if let WorkRow::Sparse(e) = self {
            if cols > 0 && (e.len() as f64) > DENSE_FILL * (cols as f64) {
                self.densify(p, cols);
            }
        }
    }

    fn scale(&mut self, p: Prime, c: u32) {
        if c == 1 {
            return;
        }
        match self {
            WorkRow::Sparse(e) => {
                for (_, v) in e.iter_mut() {
                    *v = p.mul(*v, c);
                }
            }
            WorkRow::Bits(_) => unreachable!("only the unit scalar exists in F_2"),
            WorkRow::Words(w) => {
                for v in w.iter_mut() {
                    *v = p.mul(*v, c);
                }
            }
        }
    }

    /// `self += c * other`, densifying as needed.
    fn axpy(&mut self, p: Prime, c: u32, other: &WorkRow, cols: usize) {
        if c == 0 {
            return;
        }
        match other {
            WorkRow::Sparse(oe) => match self {
                WorkRow::Sparse(se) => {
                    let mut merged = Vec::with_capacity(se.len() + oe.len());
                    let (mut i, mut j) = (0, 0);
                    while i < se.len() || j < oe.len() {
                        match (se.get(i), oe.get(j)) {
                            (Some(&(ci, vi)), Some(&(cj, vj))) if ci == cj => {
                                let v = p.add(vi, p.mul(c, vj));
                                if v != 0 {
                                    merged.push((ci, v));
                                }
                                i += 1;
                                j += 1;
                            }
                            (Some(&(ci, vi)), Some(&(cj, _))) if ci < cj => {
                                merged.push((ci, vi));
                                i += 1;
                            }
                            (Some(_), Some(&(cj, vj))) => {
                                merged.push((cj, p.mul(c, vj)));
                                j += 1;
                            }
                            (Some(&e), None) => {
                                merged.push(e);
                                i += 1;
                            }
                            (None, Some(&(cj, vj))) => {
                                merged.push((cj, p.mul(c, vj)));
                                j += 1;
                            }
                            (None, None) => unreachable!(),
                        }
                    }
                    *self = WorkRow::Sparse(merged);
                    self.maybe_densify(p, cols);
                }
                WorkRow::Bits(w) => {
                    for &(i, _) in oe {
                        w[i / 64] ^= 1 << (i % 64);
                    }
                }
                WorkRow::Words(w) => {
                    for &(i, v) in oe {
                        w[i] = p.add(w[i], p.mul(c, v));
                    }
                }
            },
            dense => {
                self.densify(p, cols);
                match (self, dense) {
                    (WorkRow::Bits(sw), WorkRow::Bits(ow)) => {
                        for (a, b) in sw.iter_mut().zip(ow) {
                            *a ^= b;
                        }
                    }
                    (WorkRow::Words(sw), WorkRow::Words(ow)) => {
                        for (a, b) in sw.iter_mut().zip(ow) {
                            *a = p.add(*a, p.mul(c, *b));
                        }
                    }
                    _ => unreachable!("dense layouts agree within one prime"),
                }
            }
        }
    }

    fn to_vector(&self, cols: usize) -> FpVector {
        match self {
            WorkRow::Sparse(e) => FpVector { len: cols, entries: e.clone() },
            WorkRow::Bits(w) => {
                let mut entries = Vec::new();
                for (i, &x) in w.iter().enumerate() {
                    let mut x = x;
                    while x != 0 {
                        let b = x.trailing_zeros() as usize;
                        entries.push((i * 64 + b, 1));
                        x &= x - 1;
                    }
                }
                FpVector { len: cols, entries }
            }
            WorkRow::Words(w) => FpVector {
                len: cols,
                entries: w.iter().enumerate().filter(|&(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect(),
            },
        }
    }
}

/// Gauss-Jordan elimination to reduced row echelon form.
pub fn row_reduce(m: &FpMatrix) -> RowReduction {
    let p = m.p;
    let cols = m.cols;
    let mut work: Vec<WorkRow> = m.data.iter().map(WorkRow::from_vector).collect();
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..cols {
        if next == work.len() {
            break;
        }
        let Some(r) = (next..work.len()).find(|&r| work[r].get(col) != 0) else {
            continue;
        };
        work.swap(next, r);
        let lead = work[next].get(col);
        if lead != 1 {
            work[next].scale(p, p.inv(lead));
        }
        let pivot_row = std::mem::replace(&mut work[next], WorkRow::Sparse(Vec::new()));
        for (r, row) in work.iter_mut().enumerate() {
            if r == next {
                continue;
            }
            let c = row.get(col);
            if c != 0 {
                row.axpy(p, p.neg(c), &pivot_row, cols);
            }
        }
        work[next] = pivot_row;
        pivots.push(col);
        next += 1;
    }
    let data: Vec<FpVector> = work.iter().map(|w| w.to_vector(cols)).collect();
    RowReduction {
        rank: pivots.len(),
        pivots,
        reduced: FpMatrix { p, rows: m.rows, cols, data },
    }
}

/// A basis of the right kernel `{v : m v = 0}`, one vector per free column,
/// in ascending free-column order.
pub fn kernel_basis(m: &FpMatrix) -> Vec<FpVector> {
    kernel_from_reduction(&row_reduce(m))
}

/// Reads the kernel basis off an existing reduction.
pub fn kernel_from_reduction(rr: &RowReduction) -> Vec<FpVector> {
    let p = rr.reduced.p;
    let cols = rr.reduced.cols;
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (k, &c) in rr.pivots.iter().enumerate() {
            v[c] = Some(k);
        }
        v
    };
    let mut basis = Vec::with_capacity(cols - rr.rank);
    for f in 0..cols {
        if pivot_set[f].is_some() {
            continue;
        }
        let mut entries = Vec::new();
        for (k, &c) in rr.pivots.iter().enumerate() {
            let e = rr.reduced.get(k, f);
            if e != 0 {
                entries.push((c, p.neg(e)));
            }
        }
        entries.push((f, 1));
        entries.sort_unstable_by_key(|&(i, _)| i);
        basis.push(FpVector { len: cols, entries });
    }
    basis
}

/// Solves `m x = b`. Returns `None` when the system is inconsistent; free
/// variables are set to zero.
pub fn solve(m: &FpMatrix, b: &FpVector) -> Result<Option<FpVector>, LinearError> {
    if b.len() != m.rows {
        return Err(LinearError::DimensionMismatch { expected: m.rows, got: b.len() });
    }
    let mut entries = Vec::with_capacity(m.nonzero_count() + b.entries.len());
    for (r, row) in m.data.iter().enumerate() {
        for &(c, v) in &row.entries {
            entries.push((r, c, v));
        }
    }
    for &(r, v) in &b.entries {
        entries.push((r, m.cols, v));
    }
    let aug = FpMatrix::from_entries(m.p, m.rows, m.cols + 1, entries);
    let rr = row_reduce(&aug);
    if rr.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = Vec::new();
    for (k, &c) in rr.pivots.iter().enumerate() {
        let v = rr.reduced.get(k, m.cols);
        if v != 0 {
            x.push((c, v));
        }
    }
    Ok(Some(FpVector { len: m.cols, entries: x }))
}

/// An incrementally built row space in reduced echelon form. Inserting a
/// vector reports whether it enlarged the span; reducing a vector against the
/// span leaves a canonical remainder supported on non-pivot columns.
pub struct RowSpan {
    p: Prime,
    cols: usize,
    rows: Vec<WorkRow>,
    row_of_col: Vec<Option<usize>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(p: Prime, cols: usize) -> Self {
        RowSpan {
            p,
            cols,
            rows: Vec::new(),
            row_of_col: vec![None; cols],
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Pivot columns in insertion-independent (ascending) order.
    pub fn pivot_cols(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// The stored (mutually reduced) spanning rows.
    pub fn rows(&self) -> Vec<FpVector> {
        self.rows.iter().map(|w| w.to_vector(self.cols)).collect()
    }

    fn reduce_work(&self, row: &mut WorkRow) {
        // Stored rows lead at their pivot, so one ascending pass suffices.
        let mut col = 0;
        while col < self.cols {
            let c = row.get(col);
            if c != 0 {
                if let Some(r) = self.row_of_col[col] {
                    row.axpy(self.p, self.p.neg(c), &self.rows[r], self.cols);
                }
            }
            col += 1;
        }
    }

    pub fn reduce(&self, v: &FpVector) -> FpVector {
        assert_eq!(v.len(), self.cols);
        let mut row = WorkRow::from_vector(v);
        row.densify(self.p, self.cols);
        self.reduce_work(&mut row);
        row.to_vector(self.cols)
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        let mut row = WorkRow::from_vector(v);
        row.densify(self.p, self.cols);
        self.reduce_work(&mut row);
        row.is_zero()
    }

    /// Inserts a vector; returns true when it was independent of the span.
    pub fn insert(&mut self, v: &FpVector) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut row = WorkRow::from_vector(v);
        row.densify(self.p, self.cols);
        self.reduce_work(&mut row);
        let Some((pivot, lead)) = row.leading() else {
            return false;
        };
        if lead != 1 {
            row.scale(self.p, self.p.inv(lead));
        }
        // Keep the stored rows mutually reduced.
        for r in self.rows.iter_mut() {
            let c = r.get(pivot);
            if c != 0 {
                r.axpy(self.p, self.p.neg(c), &row, self.cols);
            }
        }
        self.row_of_col[pivot] = Some(self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(row);
        true
    }
}

//! Independent cross-check of the sphere chart at p = 2.
//!
//! Everything here is built from scratch on purpose: the Steenrod algebra in
//! the Milnor basis (monomials in the dual generators, multiplied by matrix
//! enumeration) instead of admissible words with Adem straightening, and
//! dense GF(2) elimination instead of the sparse row machinery. The two
//! pipelines share no arithmetic, so agreement on the chart window is strong
//! evidence against a systematic error in either.

use exponent_core::{algebra_dimension, ext_chart_of, present_module, BuiltinModule, Prime};
use std::collections::{BTreeMap, HashMap, HashSet};

/// Milnor basis monomial: exponents of the dual generators, degree of the
/// i-th (1-indexed) generator being 2^i - 1. Trailing zeros trimmed.
type Mil = Vec<u32>;

fn mil_degree(m: &[u32]) -> u32 {
    m.iter()
        .enumerate()
        .map(|(i, &r)| r * ((1u32 << (i + 1)) - 1))
        .sum()
}

fn trim(mut m: Mil) -> Mil {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

/// All Milnor monomials of the given degree, lexicographically by exponent
/// vector.
fn mil_basis(d: u32) -> Vec<Mil> {
    fn extend(d: u32, i: usize, prefix: &mut Mil, out: &mut Vec<Mil>) {
        if d == 0 {
            out.push(trim(prefix.clone()));
            return;
        }
        let w = (1u32 << (i + 1)) - 1;
        if w > d {
            return;
        }
        // Exponent of generator i+1 ranges over everything the degree allows.
        for r in 0..=d / w {
            prefix.push(r);
            extend(d - r * w, i + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(d, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Milnor product at p = 2: sum over matrices (x_ij) with weighted row sums
/// r and column sums s, each matrix contributing its diagonal-sum monomial
/// when every diagonal multinomial coefficient is odd.
fn mil_product_raw(r: &[u32], s: &[u32]) -> Vec<Mil> {
    let rows = r.len();
    let cols = s.len();
    let mut terms: HashSet<Mil> = HashSet::new();
    // x[i][j], 0 <= i <= rows, 0 <= j <= cols. Row i >= 1 decomposes r_i as
    // sum_j 2^j x_ij; column j >= 1 receives s_j split across rows, with the
    // untouched remainder landing in x[0][j].
    let mut x = vec![vec![0u32; cols + 1]; rows + 1];
    let mut col_rem: Vec<u32> = std::iter::once(0).chain(s.iter().copied()).collect();

    fn emit(rows: usize, cols: usize, x: &mut [Vec<u32>], col_rem: &[u32], terms: &mut HashSet<Mil>) {
        for j in 1..=cols {
            x[0][j] = col_rem[j];
        }
        let mut mono = Vec::new();
        let mut odd = true;
        for n in 1..=rows + cols {
            let mut sum = 0u32;
            let mut or = 0u32;
            for i in 0..=n.min(rows) {
                let j = n - i;
                if j <= cols {
                    sum += x[i][j];
                    or |= x[i][j];
                }
            }
            // The diagonal multinomial is odd exactly when the binary digits
            // of its parts are disjoint.
            if sum != or {
                odd = false;
                break;
            }
            mono.push(sum);
        }
        for j in 1..=cols {
            x[0][j] = 0;
        }
        if odd {
            let mono = trim(mono);
            if !terms.remove(&mono) {
                terms.insert(mono);
            }
        }
    }

    fn drive(
        i: usize,
        r: &[u32],
        rows: usize,
        cols: usize,
        x: &mut Vec<Vec<u32>>,
        col_rem: &mut Vec<u32>,
        terms: &mut HashSet<Mil>,
    ) {
        if i > rows {
            emit(rows, cols, x, col_rem, terms);
            return;
        }
        split(i, 1, r[i - 1], r, rows, cols, x, col_rem, terms);
    }

    fn split(
        i: usize,
        j: usize,
        remaining: u32,
        r: &[u32],
        rows: usize,
        cols: usize,
        x: &mut Vec<Vec<u32>>,
        col_rem: &mut Vec<u32>,
        terms: &mut HashSet<Mil>,
    ) {
        if j > cols {
            // Leftover weight-1 part sits in column 0.
            x[i][0] = remaining;
            drive(i + 1, r, rows, cols, x, col_rem, terms);
            x[i][0] = 0;
            return;
        }
        let w = 1u32 << j;
        let max_here = (remaining / w).min(col_rem[j]);
        for v in 0..=max_here {
            x[i][j] = v;
            col_rem[j] -= v;
            split(i, j + 1, remaining - v * w, r, rows, cols, x, col_rem, terms);
            col_rem[j] += v;
            x[i][j] = 0;
        }
    }

    drive(1, r, rows, cols, &mut x, &mut col_rem, &mut terms);
    let mut out: Vec<Mil> = terms.into_iter().collect();
    out.sort();
    out
}

struct MilnorAlgebra {
    cache: HashMap<(Mil, Mil), Vec<Mil>>,
}

impl MilnorAlgebra {
    fn new() -> Self {
        MilnorAlgebra { cache: HashMap::new() }
    }

    fn product(&mut self, a: &[u32], b: &[u32]) -> Vec<Mil> {
        let key = (a.to_vec(), b.to_vec());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let out = mil_product_raw(a, b);
        self.cache.insert(key, out.clone());
        out
    }
}

// Dense GF(2) rows for the oracle's elimination.

/// Incremental reduced row span; `insert` returns false when the vector was
/// already in the span.
struct DenseSpan {
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl DenseSpan {
    fn new() -> Self {
        DenseSpan { rows: Vec::new(), pivots: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<u8>) -> bool {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if v[piv] != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        match v.iter().position(|&b| b != 0) {
            None => false,
            Some(p) => {
                for (row, &piv) in self.rows.iter_mut().zip(&self.pivots) {
                    let _ = piv;
                    if row[p] != 0 {
                        for (a, b) in row.iter_mut().zip(&v) {
                            *a ^= b;
                        }
                    }
                }
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
        }
    }
}

/// Kernel basis of the linear map with the given columns.
fn dense_kernel(columns: &[Vec<u8>], target_dim: usize) -> Vec<Vec<u8>> {
    let n = columns.len();
    // Rows of the matrix, target_dim x n.
    let mut rows: Vec<Vec<u8>> = (0..target_dim)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot_row = std::mem::take(&mut rows[rank]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        rows[rank] = pivot_row;
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    let mut kernel = Vec::new();
    for free in 0..n {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![0u8; n];
        v[free] = 1;
        for col in 0..n {
            if let Some(r) = pivot_of_col[col] {
                v[col] = rows[r][free];
            }
        }
        kernel.push(v);
    }
    kernel
}

/// Element of a free module: generator index paired with a Milnor monomial.
type FreeElt = Vec<(usize, Mil)>;

struct OracleResolution {
    /// Degrees of the free generators, per homological degree.
    gens: Vec<Vec<u32>>,
    /// Differential images of those generators (empty at s = 0).
    diffs: Vec<Vec<FreeElt>>,
}

/// Coordinate layout of the degree-t slice of a free module with the given
/// generator degrees: blocks of Milnor monomials per generator.
fn layout(gen_degrees: &[u32], t: u32) -> (Vec<usize>, usize, Vec<Vec<Mil>>) {
    let mut offsets = Vec::with_capacity(gen_degrees.len());
    let mut bases = Vec::with_capacity(gen_degrees.len());
    let mut total = 0;
    for &d in gen_degrees {
        offsets.push(total);
        let basis = if d <= t { mil_basis(t - d) } else { Vec::new() };
        total += basis.len();
        bases.push(basis);
    }
    (offsets, total, bases)
}

fn expand(
    alg: &mut MilnorAlgebra,
    elt: &FreeElt,
    m: &[u32],
    offsets: &[usize],
    bases: &[Vec<Mil>],
    total: usize,
) -> Vec<u8> {
    let mut v = vec![0u8; total];
    for (g, mono) in elt {
        for term in alg.product(m, mono) {
            let idx = bases[*g]
                .binary_search(&term)
                .expect("product term has the expected degree");
            v[offsets[*g] + idx] ^= 1;
        }
    }
    v
}

fn oracle_resolution(s_max: u32, t_max: u32) -> OracleResolution {
    let mut alg = MilnorAlgebra::new();
    let mut gens: Vec<Vec<u32>> = vec![vec![0]];
    let mut diffs: Vec<Vec<FreeElt>> = vec![Vec::new()];
    // Kernel bases of d_s per internal degree, in slice coordinates.
    let mut kernels: Vec<Vec<Vec<Vec<u8>>>> = Vec::new();

    // d_0 is the augmentation: its kernel in degree t > 0 is the whole slice.
    let mut k0 = Vec::new();
    for t in 0..=t_max {
        let dim = mil_basis(t).len();
        let basis: Vec<Vec<u8>> = if t == 0 {
            Vec::new()
        } else {
            (0..dim)
                .map(|i| {
                    let mut v = vec![0u8; dim];
                    v[i] = 1;
                    v
                })
                .collect()
        };
        k0.push(basis);
    }
    kernels.push(k0);

    for s in 1..=s_max as usize {
        let mut my_gens: Vec<u32> = Vec::new();
        let mut my_diffs: Vec<FreeElt> = Vec::new();
        let mut my_kernels: Vec<Vec<Vec<u8>>> = Vec::new();
        let prev_gens = gens[s - 1].clone();
        for t in 0..=t_max {
            let (offsets, total, bases) = layout(&prev_gens, t);
            // Span of the image of the generators already placed.
            let mut span = DenseSpan::new();
            for (g, &dg) in my_gens.iter().enumerate() {
                if dg > t {
                    continue;
                }
                for m in mil_basis(t - dg) {
                    span.insert(expand(&mut alg, &my_diffs[g], &m, &offsets, &bases, total));
                }
            }
            // Complete to the kernel of the previous differential.
            for v in &kernels[s - 1][t as usize] {
                if span.insert(v.clone()) {
                    let mut elt: FreeElt = Vec::new();
                    for (g, &off) in offsets.iter().enumerate() {
                        for (i, mono) in bases[g].iter().enumerate() {
                            if v[off + i] != 0 {
                                elt.push((g, mono.clone()));
                            }
                        }
                    }
                    my_gens.push(t);
                    my_diffs.push(elt);
                }
            }
            // Kernel of this differential in degree t, over all columns.
            let (_, my_total, my_bases) = layout(&my_gens, t);
            let mut columns = Vec::with_capacity(my_total);
            for (g, &dg) in my_gens.iter().enumerate() {
                if dg > t {
                    continue;
                }
                for m in &my_bases[g] {
                    columns.push(expand(&mut alg, &my_diffs[g], m, &offsets, &bases, total));
                }
            }
            assert_eq!(columns.len(), my_total);
            my_kernels.push(dense_kernel(&columns, total));
        }
        gens.push(my_gens);
        diffs.push(my_diffs);
        kernels.push(my_kernels);
    }

    OracleResolution { gens, diffs }
}

impl OracleResolution {
    fn chart(&self) -> BTreeMap<(u32, u32), u32> {
        let mut out = BTreeMap::new();
        for (s, degs) in self.gens.iter().enumerate() {
            for &t in degs {
                *out.entry((s as u32, t)).or_insert(0) += 1;
            }
        }
        out
    }
}

fn sq(parts: &[u32]) -> Mil {
    trim(parts.to_vec())
}

#[test]
fn milnor_basis_counts_match_admissible_counts() {
    for d in 0..=25 {
        assert_eq!(
            mil_basis(d).len(),
            algebra_dimension(Prime::TWO, d),
            "degree {d}"
        );
    }
}

#[test]
fn milnor_products_match_classical_values() {
    let mut alg = MilnorAlgebra::new();
    assert!(alg.product(&sq(&[1]), &sq(&[1])).is_empty());
    assert_eq!(alg.product(&sq(&[1]), &sq(&[2])), vec![sq(&[3])]);
    assert_eq!(
        alg.product(&sq(&[2]), &sq(&[1])),
        vec![sq(&[0, 1]), sq(&[3])]
    );
    assert_eq!(alg.product(&sq(&[2]), &sq(&[2])), vec![sq(&[1, 1])]);
    // Q_1 squares to zero.
    assert!(alg.product(&sq(&[0, 1]), &sq(&[0, 1])).is_empty());
    // Unit on both sides.
    assert_eq!(alg.product(&sq(&[]), &sq(&[2, 1])), vec![sq(&[2, 1])]);
    assert_eq!(alg.product(&sq(&[2, 1]), &sq(&[])), vec![sq(&[2, 1])]);
}

#[test]
fn milnor_product_is_associative_in_low_degrees() {
    let mut alg = MilnorAlgebra::new();
    let words: Vec<Mil> = (1..=6).flat_map(mil_basis).collect();
    for a in &words {
        for b in &words {
            for c in &words {
                if mil_degree(a) + mil_degree(b) + mil_degree(c) > 12 {
                    continue;
                }
                let mut left: Vec<Mil> = Vec::new();
                for ab in alg.product(a, b) {
                    for t in alg.product(&ab, c) {
                        toggle(&mut left, t);
                    }
                }
                let mut right: Vec<Mil> = Vec::new();
                for bc in alg.product(b, c) {
                    for t in alg.product(a, &bc) {
                        toggle(&mut right, t);
                    }
                }
                left.sort();
                right.sort();
                assert_eq!(left, right, "({a:?})({b:?})({c:?})");
            }
        }
    }
}

fn toggle(acc: &mut Vec<Mil>, term: Mil) {
    if let Some(i) = acc.iter().position(|t| *t == term) {
        acc.remove(i);
    } else {
        acc.push(term);
    }
}

#[test]
fn oracle_chart_agrees_with_main_pipeline() {
    let s_max = 10;
    let t_max = 15;
    let oracle = oracle_resolution(s_max, t_max);
    let pres = present_module(Prime::TWO, BuiltinModule::Sphere, t_max);
    let main = ext_chart_of(&pres, s_max, t_max).unwrap();

    let oracle_chart = oracle.chart();
    for s in 0..=s_max {
        for t in 0..=t_max {
            let expected = oracle_chart.get(&(s, t)).copied().unwrap_or(0);
            assert_eq!(
                main.dim(s, t),
                expected,
                "chart mismatch at s = {s}, t = {t}"
            );
        }
    }

    // Anchors of the classical chart, frozen independently of both pipelines.
    for s in 0..=s_max {
        assert_eq!(oracle_chart.get(&(s, s)).copied().unwrap_or(0), 1);
    }
    for t in 1..=t_max {
        let expected = u32::from(matches!(t, 1 | 2 | 4 | 8));
        assert_eq!(
            oracle_chart.get(&(1, t)).copied().unwrap_or(0),
            expected,
            "filtration-one class at t = {t}"
        );
    }

    // The differentials of the oracle resolution really compose to zero.
    let mut alg = MilnorAlgebra::new();
    for s in 2..=s_max as usize {
        for (g, elt) in oracle.diffs[s].iter().enumerate() {
            let t = oracle.gens[s][g];
            let (offsets, total, bases) = layout(&oracle.gens[s - 2], t);
            let mut acc = vec![0u8; total];
            for (h, mono) in elt {
                let image = expand(
                    &mut alg,
                    &oracle.diffs[s - 1][*h],
                    mono,
                    &offsets,
                    &bases,
                    total,
                );
                for (a, b) in acc.iter_mut().zip(&image) {
                    *a ^= b;
                }
            }
            assert!(acc.iter().all(|&b| b == 0), "d o d != 0 at s = {s}, gen {g}");
        }
    }
}

//! Minimal free resolutions over a finite bidegree window.
//!
//! The construction is the standard degreewise one. Stage 0 picks minimal
//! generators of the realized module by completing the span of the
//! positive-degree action images in each degree. At stage s >= 1 the kernel
//! of the previous differential is known in every internal degree, so the
//! part of it already hit by lower-degree stage-s generators equals the sum
//! of algebra-generator translates of lower-degree kernels; completing that
//! span adds one new free generator per missing kernel dimension.
//!
//! Because each degree consults only previous-stage kernels, internal
//! degrees within one stage are independent and run in parallel; results
//! are collected in degree order, so the outcome is identical to a serial
//! run. Minimality is automatic: a kernel vector with a unit coefficient on
//! a degree-t generator would make that generator's differential dependent
//! on the older image, contradicting how it was chosen.

use rayon::prelude::*;

use crate::chart::ExtChart;
use crate::fp_linear::{kernel_from_reduction, row_reduce, FpMatrix, FpVector, RowSpan};
use crate::module::{FreeElement, FreeGrading, GradedModulePresentation, ModuleError, RealizedModule};
use crate::prime::Prime;
use crate::steenrod::{AdmissibleMonomial, Generator, SteenrodAlgebra};

/// A minimal free resolution of a presented module, complete for
/// homological degree s <= s_max and internal degree t <= t_max.
#[derive(Debug)]
pub struct MinimalResolution {
    module_name: String,
    p: Prime,
    s_max: u32,
    t_max: u32,
    realized: RealizedModule,
    /// Generator internal degrees per stage, ascending within each stage.
    gen_degrees: Vec<Vec<u32>>,
    /// Differential of each stage-s generator as an element of stage s-1;
    /// stage 0 has no entries here.
    diffs: Vec<Vec<FreeElement>>,
    /// Augmentation images of the stage-0 generators in module coordinates.
    aug: Vec<FpVector>,
    /// ranks[s][t]: F_p rank of the degree-t piece of d_s (d_0 = augmentation).
    ranks: Vec<Vec<usize>>,
    /// kernel_dims[s][t]: nullity of the same map.
    kernel_dims: Vec<Vec<usize>>,
}

/// One deviation from d o d = 0, reported by generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionViolation {
    pub s: u32,
    pub generator: usize,
}

/// One failed rank identity `dim ker d_s = rank d_{s+1}` at a bidegree, or a
/// failed surjectivity `rank d_0 = dim M_t` (reported with s = 0 and
/// `image_rank` the augmentation rank).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessViolation {
    pub s: u32,
    pub t: u32,
    pub kernel_dim: usize,
    pub image_rank: usize,
}

/// A differential entry outside the augmentation ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityViolation {
    pub s: u32,
    pub generator: usize,
    pub target: usize,
}

enum Target<'a> {
    Module(&'a RealizedModule),
    Free(&'a FreeGrading),
}

impl Target<'_> {
    fn dim(&self, alg: &SteenrodAlgebra, t: u32) -> usize {
        match self {
            Target::Module(m) => m.dimension(t),
            Target::Free(fg) => fg.dim(alg, t),
        }
    }

    fn act(&self, alg: &SteenrodAlgebra, mono: &AdmissibleMonomial, d: u32, v: &FpVector) -> FpVector {
        match self {
            Target::Module(m) => m.act_monomial(mono, d, v),
            Target::Free(fg) => fg.act_monomial(alg, mono, d, v),
        }
    }
}

/// The degree-t matrix of a map from a free module into the target, given
/// the images of the free generators. Columns follow the free-module basis
/// layout; rows are target coordinates.
fn assemble_degree_matrix(
    alg: &SteenrodAlgebra,
    src: &FreeGrading,
    images: &[FpVector],
    target: &Target<'_>,
    t: u32,
) -> FpMatrix {
    let p = alg.prime();
    let (offsets, cols) = src.layout(alg, t);
    let rows = target.dim(alg, t);
    let mut entries = Vec::new();
    for (j, &gd) in src.gen_degrees().iter().enumerate() {
        if gd > t {
            continue;
        }
        let mono_deg = t - gd;
        for idx in 0..alg.dimension(mono_deg) {
            let mono = alg.monomial_at(mono_deg, idx as u32);
            let image = target.act(alg, &mono, gd, &images[j]);
            let col = offsets[j] + idx;
            for &(r, v) in image.entries() {
                entries.push((r, col, v));
            }
        }
    }
    FpMatrix::from_entries(p, rows, cols, entries)
}

/// Computes the minimal free resolution of the presented module over the
/// window (s_max, t_max). A window deeper than the presentation's validity
/// is rejected.
pub fn minimal_resolution(
    pres: &GradedModulePresentation,
    s_max: u32,
    t_max: u32,
) -> Result<MinimalResolution, ModuleError> {
    if t_max > pres.t_max() {
        return Err(ModuleError::WindowExceeded { requested: t_max, t_max: pres.t_max() });
    }
    let p = pres.prime();
    let alg = SteenrodAlgebra::for_prime(p);
    let realized = RealizedModule::from_presentation(pres)?;

    // Pre-extend the memoized algebra levels serially so parallel workers
    // only read.
    alg.dimension(t_max);

    // Stage 0: complete the span of positive-degree action images to the
    // whole of each graded piece; the added basis vectors are the minimal
    // generators.
    let stage0: Vec<Vec<FpVector>> = (0..=t_max)
        .into_par_iter()
        .map(|t| {
            let dim = realized.dimension(t);
            let mut span = RowSpan::new(p, dim);
            for g in Generator::up_to_degree(p, t) {
                let src = t - g.degree(p);
                let mat = realized
                    .gen_action(g, src)
                    .expect("action target inside window");
                let cols = mat.transpose();
                for c in 0..cols.row_count() {
                    span.insert(cols.row(c));
                }
            }
            let mut new_gens = Vec::new();
            for k in 0..dim {
                let e = FpVector::from_entries(p, dim, vec![(k, 1)]);
                if span.insert(&e) {
                    new_gens.push(e);
                }
            }
            new_gens
        })
        .collect();

    let mut gen_degrees: Vec<Vec<u32>> = Vec::with_capacity(s_max as usize + 1);
    let mut diffs: Vec<Vec<FreeElement>> = Vec::with_capacity(s_max as usize + 1);
    let mut ranks: Vec<Vec<usize>> = Vec::new();
    let mut kernel_dims: Vec<Vec<usize>> = Vec::new();

    let mut degrees0 = Vec::new();
    let mut aug = Vec::new();
    for (t, gens) in stage0.into_iter().enumerate() {
        for v in gens {
            degrees0.push(t as u32);
            aug.push(v);
        }
    }
    gen_degrees.push(degrees0);
    diffs.push(Vec::new());

    // Kernels of the current differential per internal degree; replaced at
    // each stage.
    let mut kernels: Vec<Vec<FpVector>> = Vec::new();
    {
        let fg0 = FreeGrading::new(gen_degrees[0].clone());
        let target = Target::Module(&realized);
        let per_t: Vec<(usize, Vec<FpVector>)> = (0..=t_max)
            .into_par_iter()
            .map(|t| {
                let mat = assemble_degree_matrix(&alg, &fg0, &aug, &target, t);
                let rr = row_reduce(&mat);
                let ker = kernel_from_reduction(&rr);
                (rr.rank, ker)
            })
            .collect();
        let mut rank_row = Vec::with_capacity(per_t.len());
        let mut kdim_row = Vec::with_capacity(per_t.len());
        for (rank, ker) in per_t {
            rank_row.push(rank);
            kdim_row.push(ker.len());
            kernels.push(ker);
        }
        ranks.push(rank_row);
        kernel_dims.push(kdim_row);
    }

    for _s in 1..=s_max {
        let fg_prev = FreeGrading::new(gen_degrees.last().unwrap().clone());

        // Phase 1: new generators per degree. The span already hit in
        // degree t is the sum of generator translates of lower-degree
        // kernels of the previous differential.
        let per_t: Vec<Vec<FpVector>> = (0..=t_max)
            .into_par_iter()
            .map(|t| {
                let fdim = fg_prev.dim(&alg, t);
                let mut span = RowSpan::new(p, fdim);
                for g in Generator::up_to_degree(p, t) {
                    let src = t - g.degree(p);
                    for v in &kernels[src as usize] {
                        span.insert(&fg_prev.act_generator(&alg, g, src, v));
                    }
                }
                let mut new_gens = Vec::new();
                for v in &kernels[t as usize] {
                    if span.insert(v) {
                        new_gens.push(v.clone());
                    }
                }
                new_gens
            })
            .collect();

        let mut degrees_s = Vec::new();
        let mut images_s = Vec::new();
        let mut diffs_s = Vec::new();
        for (t, gens) in per_t.into_iter().enumerate() {
            for v in gens {
                degrees_s.push(t as u32);
                diffs_s.push(fg_prev.element_of(&alg, t as u32, &v));
                images_s.push(v);
            }
        }
        gen_degrees.push(degrees_s);
        diffs.push(diffs_s);

        // Phase 2: the new differential's degreewise ranks and kernels.
        let fg_s = FreeGrading::new(gen_degrees.last().unwrap().clone());
        let target = Target::Free(&fg_prev);
        let per_t: Vec<(usize, Vec<FpVector>)> = (0..=t_max)
            .into_par_iter()
            .map(|t| {
                let mat = assemble_degree_matrix(&alg, &fg_s, &images_s, &target, t);
                let rr = row_reduce(&mat);
                let ker = kernel_from_reduction(&rr);
                (rr.rank, ker)
            })
            .collect();
        let mut rank_row = Vec::with_capacity(per_t.len());
        let mut kdim_row = Vec::with_capacity(per_t.len());
        let mut next_kernels = Vec::with_capacity(per_t.len());
        for (rank, ker) in per_t {
            rank_row.push(rank);
            kdim_row.push(ker.len());
            next_kernels.push(ker);
        }
        ranks.push(rank_row);
        kernel_dims.push(kdim_row);
        kernels = next_kernels;
    }

    Ok(MinimalResolution {
        module_name: pres.name().to_string(),
        p,
        s_max,
        t_max,
        realized,
        gen_degrees,
        diffs,
        aug,
        ranks,
        kernel_dims,
    })
}

impl MinimalResolution {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn module_name(&self) -> &str {
        &self.module_name
    }

    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    /// Internal degrees of the stage-s free generators, ascending.
    pub fn generator_degrees(&self, s: u32) -> &[u32] {
        &self.gen_degrees[s as usize]
    }

    /// Differentials of the stage-s generators (s >= 1) as elements of the
    /// stage s-1 free module.
    pub fn differentials(&self, s: u32) -> &[FreeElement] {
        &self.diffs[s as usize]
    }

    /// Augmentation images of the stage-0 generators in module coordinates.
    pub fn augmentation(&self) -> &[FpVector] {
        &self.aug
    }

    pub fn dimension(&self, s: u32, t: u32) -> u32 {
        if s > self.s_max {
            return 0;
        }
        self.gen_degrees[s as usize].iter().filter(|&&d| d == t).count() as u32
    }

    /// The bigraded generator-count table.
    pub fn ext_chart(&self) -> ExtChart {
        let mut entries = Vec::new();
        for (s, degs) in self.gen_degrees.iter().enumerate() {
            let mut run: Option<(u32, u32)> = None;
            for &t in degs {
                match &mut run {
                    Some((rt, n)) if *rt == t => *n += 1,
                    _ => {
                        if let Some((rt, n)) = run.take() {
                            entries.push((s as u32, rt, n));
                        }
                        run = Some((t, 1));
                    }
                }
            }
            if let Some((rt, n)) = run {
                entries.push((s as u32, rt, n));
            }
        }
        ExtChart::new(self.p, self.module_name.clone(), self.s_max, self.t_max, entries)
            .expect("resolution generators lie inside the window")
    }

    /// Recomposes consecutive differentials through Adem normalization and
    /// reports any generator whose composite is nonzero.
    pub fn verify_d_squared(&self) -> Vec<CompositionViolation> {
        let alg = SteenrodAlgebra::for_prime(self.p);
        let mut violations = Vec::new();
        for s in 1..=self.s_max {
            let cur = &self.diffs[s as usize];
            for (j, elem) in cur.iter().enumerate() {
                let zero = if s == 1 {
                    self.compose_with_augmentation(elem).is_zero()
                } else {
                    compose_free(&alg, elem, &self.diffs[(s - 1) as usize]).is_zero()
                };
                if !zero {
                    violations.push(CompositionViolation { s, generator: j });
                }
            }
        }
        violations
    }

    fn compose_with_augmentation(&self, elem: &FreeElement) -> FpVector {
        let p = self.p;
        let degrees0 = &self.gen_degrees[0];
        let degree = elem
            .degree(degrees0)
            .expect("differential entries are homogeneous");
        let mut acc = FpVector::zero(self.realized.dimension(degree));
        for (i, coef) in elem.terms() {
            for (mono, c) in coef.terms() {
                let image = self.realized.act_monomial(mono, degrees0[*i], &self.aug[*i]);
                let scaled: Vec<(usize, u32)> = image
                    .entries()
                    .iter()
                    .map(|&(k, v)| (k, p.mul(v, *c)))
                    .collect();
                let mut entries: Vec<(usize, u32)> = acc.entries().to_vec();
                entries.extend(scaled);
                acc = FpVector::from_entries(p, acc.len(), entries);
            }
        }
        acc
    }

    /// Checks the degreewise rank identities: the augmentation is
    /// surjective, and `dim ker d_s = rank d_{s+1}` for every s < s_max.
    pub fn verify_exactness(&self) -> Vec<ExactnessViolation> {
        let mut violations = Vec::new();
        for t in 0..=self.t_max {
            let want = self.realized.dimension(t);
            let got = self.ranks[0][t as usize];
            if got != want {
                violations.push(ExactnessViolation { s: 0, t, kernel_dim: want, image_rank: got });
            }
        }
        for s in 0..self.s_max {
            for t in 0..=self.t_max {
                let kernel_dim = self.kernel_dims[s as usize][t as usize];
                let image_rank = self.ranks[(s + 1) as usize][t as usize];
                if kernel_dim != image_rank {
                    violations.push(ExactnessViolation { s, t, kernel_dim, image_rank });
                }
            }
        }
        violations
    }

    /// Checks every differential entry lies in the augmentation ideal.
    pub fn verify_minimality(&self) -> Vec<MinimalityViolation> {
        let mut violations = Vec::new();
        for s in 1..=self.s_max {
            for (j, elem) in self.diffs[s as usize].iter().enumerate() {
                for (i, coef) in elem.terms() {
                    if coef.degree() == 0 && !coef.is_zero() {
                        violations.push(MinimalityViolation { s, generator: j, target: *i });
                    }
                }
            }
        }
        violations
    }
}

/// Applies a stage map to a free element: substitutes each generator by its
/// differential and Adem-normalizes.
fn compose_free(
    alg: &SteenrodAlgebra,
    elem: &FreeElement,
    prev_diffs: &[FreeElement],
) -> FreeElement {
    let mut terms = Vec::new();
    for (i, coef) in elem.terms() {
        for (k, inner) in prev_diffs[*i].terms() {
            terms.push((*k, alg.product(coef, inner)));
        }
    }
    FreeElement::new(terms)
}

/// Convenience: resolve a built-in module and return its chart.
pub fn ext_chart_of(
    pres: &GradedModulePresentation,
    s_max: u32,
    t_max: u32,
) -> Result<ExtChart, ModuleError> {
    Ok(minimal_resolution(pres, s_max, t_max)?.ext_chart())
}

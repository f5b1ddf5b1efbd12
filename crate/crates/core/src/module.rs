//! Finitely presented graded modules over the mod-p Steenrod algebra.
//!
//! A presentation lists generator degrees and homogeneous relations, valid
//! through a stated degree window. Realizing a presentation produces, per
//! degree, an F_p basis of the module together with matrices for the action
//! of every algebra generator; the resolution machinery consumes only this
//! realized form.
//!
//! Three modules are built in:
//!
//! - `sphere`: F_p concentrated in degree 0 (every positive-degree operation
//!   acts by zero);
//! - `hz`: the quotient of the algebra by the left ideal on Q₀ (Sq¹ at
//!   p = 2, the Bockstein at odd p), i.e. the mod-p cohomology of the
//!   integral Eilenberg-MacLane spectrum;
//! - `tau1`: the desuspended augmentation kernel of `hz`, i.e. the
//!   cohomology of the 1-connective cover of the sphere. Its presentation
//!   is derived mechanically from the realized `hz`, never hand-coded.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fp_linear::{kernel_basis, FpMatrix, FpVector, RowSpan};
use crate::prime::Prime;
use crate::steenrod::{AdmissibleMonomial, Generator, SteenrodAlgebra, SteenrodElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("relation {index} is not homogeneous")]
    InhomogeneousRelation { index: usize },
    #[error("relation {index} references generator {generator}, but only {count} exist")]
    UnknownGenerator { index: usize, generator: usize, count: usize },
    #[error("relation {index} uses prime {found}, presentation is over prime {expected}")]
    PrimeMismatch { index: usize, expected: u32, found: u32 },
    #[error("degree {degree} exceeds the presentation window t <= {t_max}")]
    DegreeOutsideWindow { degree: u32, t_max: u32 },
    #[error("requested window t <= {requested} exceeds presentation validity t <= {t_max}")]
    WindowExceeded { requested: u32, t_max: u32 },
}

/// A homogeneous element of a free module on indexed generators: a sum of
/// Steenrod-algebra coefficients applied to generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeElement {
    terms: Vec<(usize, SteenrodElement)>,
}

impl FreeElement {
    /// Sorts by generator index and drops zero coefficients. Duplicate
    /// indices are combined.
    pub fn new(terms: Vec<(usize, SteenrodElement)>) -> Self {
        let mut terms: Vec<(usize, SteenrodElement)> =
            terms.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        terms.sort_by_key(|&(i, _)| i);
        let mut merged: Vec<(usize, SteenrodElement)> = Vec::with_capacity(terms.len());
        for (i, e) in terms {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&e),
                _ => merged.push((i, e)),
            }
        }
        merged.retain(|(_, e)| !e.is_zero());
        FreeElement { terms: merged }
    }

    pub fn zero() -> Self {
        FreeElement { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(usize, SteenrodElement)] {
        &self.terms
    }

    /// Total degree with respect to the given generator degrees, when the
    /// element is homogeneous; `None` otherwise (or for the zero element).
    pub fn degree(&self, gen_degrees: &[u32]) -> Option<u32> {
        let mut deg = None;
        for (i, e) in &self.terms {
            let d = gen_degrees.get(*i)? + e.degree();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, e)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({e}) g{i}")?;
        }
        Ok(())
    }
}

/// A finite presentation of a graded module, complete through `t <= t_max`.
#[derive(Debug, Clone)]
pub struct GradedModulePresentation {
    name: String,
    p: Prime,
    gen_degrees: Vec<u32>,
    relations: Vec<FreeElement>,
    t_max: u32,
}

impl GradedModulePresentation {
    pub fn new(
        name: impl Into<String>,
        p: Prime,
        gen_degrees: Vec<u32>,
        relations: Vec<FreeElement>,
        t_max: u32,
    ) -> Result<Self, ModuleError> {
        for &d in &gen_degrees {
            if d > t_max {
                return Err(ModuleError::DegreeOutsideWindow { degree: d, t_max });
            }
        }
        for (index, rel) in relations.iter().enumerate() {
            for (g, e) in rel.terms() {
                if *g >= gen_degrees.len() {
                    return Err(ModuleError::UnknownGenerator {
                        index,
                        generator: *g,
                        count: gen_degrees.len(),
                    });
                }
                if e.prime() != p {
                    return Err(ModuleError::PrimeMismatch {
                        index,
                        expected: p.get(),
                        found: e.prime().get(),
                    });
                }
            }
            match rel.degree(&gen_degrees) {
                None if !rel.is_zero() => {
                    return Err(ModuleError::InhomogeneousRelation { index })
                }
                Some(d) if d > t_max => {
                    return Err(ModuleError::DegreeOutsideWindow { degree: d, t_max })
                }
                _ => {}
            }
        }
        Ok(GradedModulePresentation {
            name: name.into(),
            p,
            gen_degrees,
            relations,
            t_max,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn generator_degrees(&self) -> &[u32] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }
}

/// Tags for the built-in modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinModule {
    Sphere,
    Hz,
    Tau1,
}

impl BuiltinModule {
    pub const ALL: [BuiltinModule; 3] = [BuiltinModule::Sphere, BuiltinModule::Hz, BuiltinModule::Tau1];

    pub fn tag(self) -> &'static str {
        match self {
            BuiltinModule::Sphere => "sphere",
            BuiltinModule::Hz => "hz",
            BuiltinModule::Tau1 => "tau1",
        }
    }
}

impl fmt::Display for BuiltinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown module tag {0:?}; expected one of sphere, hz, tau1")]
pub struct UnknownModuleTag(pub String);

impl FromStr for BuiltinModule {
    type Err = UnknownModuleTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinModule::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| UnknownModuleTag(s.to_string()))
    }
}

fn single_generator_relation(p: Prime, g: Generator) -> FreeElement {
    let mono = AdmissibleMonomial::new(p, vec![g]).expect("a single generator is admissible");
    FreeElement::new(vec![(0, SteenrodElement::single(p, mono, 1))])
}

/// Builds the presentation of a built-in module, complete through `t_max`.
pub fn present_module(p: Prime, tag: BuiltinModule, t_max: u32) -> GradedModulePresentation {
    match tag {
        BuiltinModule::Sphere => {
            // One generator killed by every algebra generator: presents F_p
            // through the window.
            let relations = Generator::up_to_degree(p, t_max)
                .into_iter()
                .map(|g| single_generator_relation(p, g))
                .collect();
            GradedModulePresentation::new("sphere", p, vec![0], relations, t_max)
                .expect("sphere presentation is valid by construction")
        }
        BuiltinModule::Hz => {
            let q0 = if p.is_two() { Generator::Sq(1) } else { Generator::Bockstein };
            let relations = if t_max >= 1 { vec![single_generator_relation(p, q0)] } else { Vec::new() };
            GradedModulePresentation::new("hz", p, vec![0], relations, t_max)
                .expect("hz presentation is valid by construction")
        }
        BuiltinModule::Tau1 => {
            let hz = present_module(p, BuiltinModule::Hz, t_max + 1);
            let realized = RealizedModule::from_presentation(&hz)
                .expect("hz presentation realizes within its own window");
            let shifted = realized.desuspend_positive_part();
            derive_presentation("tau1", &shifted)
        }
    }
}

/// Bookkeeping for the graded pieces of a free module on generators of the
/// given degrees: each degree-t piece has one basis column per pair
/// (generator, admissible monomial of complementary degree).
#[derive(Debug, Clone)]
pub(crate) struct FreeGrading {
    gen_degrees: Vec<u32>,
}

impl FreeGrading {
    pub(crate) fn new(gen_degrees: Vec<u32>) -> Self {
        FreeGrading { gen_degrees }
    }

    pub(crate) fn gen_degrees(&self) -> &[u32] {
        &self.gen_degrees
    }

    /// Block offsets and total dimension in degree `t`.
    pub(crate) fn layout(&self, alg: &SteenrodAlgebra, t: u32) -> (Vec<usize>, usize) {
        let mut offsets = Vec::with_capacity(self.gen_degrees.len());
        let mut total = 0usize;
        for &gd in &self.gen_degrees {
            offsets.push(total);
            if gd <= t {
                total += alg.dimension(t - gd);
            }
        }
        (offsets, total)
    }

    pub(crate) fn dim(&self, alg: &SteenrodAlgebra, t: u32) -> usize {
        self.layout(alg, t).1
    }

    /// Maps a column index back to its (generator, monomial index) pair.
    fn decompose(&self, alg: &SteenrodAlgebra, t: u32, col: usize) -> (usize, u32) {
        let (offsets, total) = self.layout(alg, t);
        debug_assert!(col < total);
        for j in (0..self.gen_degrees.len()).rev() {
            if self.gen_degrees[j] <= t && col >= offsets[j] {
                return (j, (col - offsets[j]) as u32);
            }
        }
        unreachable!("column {col} has no owning generator block");
    }

    pub(crate) fn vector_of(
        &self,
        alg: &SteenrodAlgebra,
        t: u32,
        elem: &FreeElement,
    ) -> FpVector {
        let (offsets, total) = self.layout(alg, t);
        let mut entries = Vec::new();
        for (j, e) in elem.terms() {
            debug_assert_eq!(self.gen_degrees[*j] + e.degree(), t, "inhomogeneous term");
            let d = e.degree();
            for (idx, c) in alg.element_to_indexed(e) {
                debug_assert_eq!(alg.monomial_at(d, idx).degree(alg.prime()), d);
                entries.push((offsets[*j] + idx as usize, c));
            }
        }
        FpVector::from_entries(alg.prime(), total, entries)
    }

    pub(crate) fn element_of(&self, alg: &SteenrodAlgebra, t: u32, v: &FpVector) -> FreeElement {
        let mut per_gen: HashMap<usize, Vec<(u32, u32)>> = HashMap::new();
        for &(col, c) in v.entries() {
            let (j, idx) = self.decompose(alg, t, col);
            per_gen.entry(j).or_default().push((idx, c));
        }
        let terms = per_gen
            .into_iter()
            .map(|(j, mut indexed)| {
                indexed.sort_unstable_by_key(|&(i, _)| i);
                let d = t - self.gen_degrees[j];
                (j, alg.indexed_to_element(d, &indexed))
            })
            .collect();
        FreeElement::new(terms)
    }

    /// Left action of an algebra generator, mapping degree `t` to
    /// `t + |g|` componentwise in each generator block.
    pub(crate) fn act_generator(
        &self,
        alg: &SteenrodAlgebra,
        g: Generator,
        t: u32,
        v: &FpVector,
    ) -> FpVector {
        let p = alg.prime();
        let out_t = t + g.degree(p);
        let (offsets_in, _) = self.layout(alg, t);
        let (offsets_out, total_out) = self.layout(alg, out_t);
        let mut entries = Vec::new();
        for &(col, c) in v.entries() {
            let (j, idx) = self.decompose(alg, t, col);
            debug_assert!(offsets_in[j] <= col);
            let d = t - self.gen_degrees[j];
            let prod = alg.gen_mult(g, d, idx);
            for &(out_idx, c2) in prod.iter() {
                entries.push((offsets_out[j] + out_idx as usize, p.mul(c, c2)));
            }
        }
        FpVector::from_entries(p, total_out, entries)
    }

    /// Left action of an admissible monomial (tokens applied right to left).
    pub(crate) fn act_monomial(
        &self,
        alg: &SteenrodAlgebra,
        m: &AdmissibleMonomial,
        t: u32,
        v: &FpVector,
    ) -> FpVector {
        let mut cur = v.clone();
        let mut cur_t = t;
        for &g in m.tokens().iter().rev() {
            cur = self.act_generator(alg, g, cur_t, &cur);
            cur_t += g.degree(alg.prime());
        }
        cur
    }
}

/// A presentation realized degreewise: per-degree F_p dimensions plus
/// matrices for the action of each algebra generator on the chosen bases.
#[derive(Debug)]
pub struct RealizedModule {
    name: String,
    p: Prime,
    t_max: u32,
    dims: Vec<usize>,
    /// `actions[&g][d]`: matrix from degree d to degree d + |g|, present
    /// whenever d + |g| <= t_max.
    actions: HashMap<Generator, Vec<FpMatrix>>,
}

impl RealizedModule {
    pub fn from_presentation(pres: &GradedModulePresentation) -> Result<Self, ModuleError> {
        let p = pres.prime();
        let alg = SteenrodAlgebra::for_prime(p);
        let t_max = pres.t_max();
        let fg = FreeGrading::new(pres.generator_degrees().to_vec());

        // Relation spans per degree: the degree-d relation space is spanned
        // by the explicit relations in degree d together with every algebra
        // generator applied to the relation space one block lower.
        let mut rel_rows: Vec<Vec<FpVector>> = Vec::with_capacity(t_max as usize + 1);
        let mut levels: Vec<(RowSpan, Vec<usize>)> = Vec::with_capacity(t_max as usize + 1);
        let mut dims = Vec::with_capacity(t_max as usize + 1);
        for d in 0..=t_max {
            let (_, fdim) = fg.layout(&alg, d);
            let mut span = RowSpan::new(p, fdim);
            for rel in pres.relations() {
                if rel.degree(pres.generator_degrees()) == Some(d) {
                    span.insert(&fg.vector_of(&alg, d, rel));
                }
            }
            for g in Generator::up_to_degree(p, d) {
                let src = d - g.degree(p);
                for row in &rel_rows[src as usize] {
                    span.insert(&fg.act_generator(&alg, g, src, row));
                }
            }
            rel_rows.push(span_rows(&span));
            let pivots = span.pivot_cols();
            let basis_cols: Vec<usize> = (0..fdim).filter(|c| !pivots.contains(c)).collect();
            dims.push(basis_cols.len());
            levels.push((span, basis_cols));
        }

        // Generator action matrices on the quotient bases.
        let mut actions: HashMap<Generator, Vec<FpMatrix>> = HashMap::new();
        for g in Generator::up_to_degree(p, t_max) {
            let gd = g.degree(p);
            let mut mats = Vec::new();
            for d in 0..=(t_max - gd) {
                let (_, src_cols) = &levels[d as usize];
                let (dst_span, dst_cols) = &levels[(d + gd) as usize];
                let col_pos: HashMap<usize, usize> =
                    dst_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                let src_fdim = fg.dim(&alg, d);
                let mut entries = Vec::new();
                for (k, &col) in src_cols.iter().enumerate() {
                    let e = FpVector::from_entries(p, src_fdim, vec![(col, 1)]);
                    let image = fg.act_generator(&alg, g, d, &e);
                    let reduced = dst_span.reduce(&image);
                    for &(c, v) in reduced.entries() {
                        let row = *col_pos
                            .get(&c)
                            .expect("reduced vectors are supported on quotient basis columns");
                        entries.push((row, k, v));
                    }
                }
                mats.push(FpMatrix::from_entries(p, dst_cols.len(), src_cols.len(), entries));
            }
            actions.insert(g, mats);
        }

        Ok(RealizedModule {
            name: pres.name().to_string(),
            p,
            t_max,
            dims,
            actions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    pub fn dimension(&self, d: u32) -> usize {
        if d <= self.t_max {
            self.dims[d as usize]
        } else {
            0
        }
    }

    /// Action matrix of a generator from degree `d`, when the target degree
    /// is still inside the window.
    pub fn gen_action(&self, g: Generator, d: u32) -> Option<&FpMatrix> {
        let mats = self.actions.get(&g)?;
        mats.get(d as usize)
    }

    /// Applies an admissible monomial to a degree-`d` coordinate vector,
    /// folding generator matrices right to left.
    pub fn act_monomial(&self, m: &AdmissibleMonomial, d: u32, v: &FpVector) -> FpVector {
        let mut cur = v.clone();
        let mut cur_d = d;
        for &g in m.tokens().iter().rev() {
            let mat = self
                .gen_action(g, cur_d)
                .expect("monomial action stays inside the realized window");
            cur = mat.apply(&cur).expect("coordinate lengths agree");
            cur_d += g.degree(self.p);
        }
        cur
    }

    /// The desuspension of the positive-degree part: degree d of the result
    /// is degree d + 1 of this module, with the same action. This is the
    /// augmentation-kernel shift used to build `tau1` from `hz`.
    pub fn desuspend_positive_part(&self) -> RealizedModule {
        assert!(self.t_max >= 1, "cannot desuspend an empty window");
        let t_max = self.t_max - 1;
        let dims = self.dims[1..].to_vec();
        let mut actions: HashMap<Generator, Vec<FpMatrix>> = HashMap::new();
        for (g, mats) in &self.actions {
            let gd = g.degree(self.p);
            if gd > t_max {
                continue;
            }
            // Source degree d of the shift is source degree d + 1 here.
            let shifted: Vec<FpMatrix> = (0..=(t_max - gd))
                .map(|d| mats[(d + 1) as usize].clone())
                .collect();
            actions.insert(*g, shifted);
        }
        RealizedModule {
            name: format!("{}-shifted", self.name),
            p: self.p,
            t_max,
            dims,
            actions,
        }
    }
}

fn span_rows(span: &RowSpan) -> Vec<FpVector> {
    span.rows()
}

/// Computes a minimal presentation of a realized module: minimal generators
/// degree by degree, then minimal relations among them, both complete
/// through the realized window.
pub fn derive_presentation(name: &str, m: &RealizedModule) -> GradedModulePresentation {
    let p = m.prime();
    let alg = SteenrodAlgebra::for_prime(p);
    let t_max = m.t_max();

    // Minimal generators: complete the span of the positive-degree action
    // images to all of each graded piece.
    let mut gen_degrees: Vec<u32> = Vec::new();
    let mut gen_vectors: Vec<FpVector> = Vec::new();
    for d in 0..=t_max {
        let dim = m.dimension(d);
        let mut span = RowSpan::new(p, dim);
        for g in Generator::up_to_degree(p, d) {
            let src = d - g.degree(p);
            let mat = m.gen_action(g, src).expect("window covers degree d");
            for c in 0..mat.col_count() {
                let e = FpVector::from_entries(p, mat.col_count(), vec![(c, 1)]);
                span.insert(&mat.apply(&e).expect("coordinate lengths agree"));
            }
        }
        for k in 0..dim {
            let e = FpVector::from_entries(p, dim, vec![(k, 1)]);
            if span.insert(&e) {
                gen_degrees.push(d);
                gen_vectors.push(e);
            }
        }
    }

    // Minimal relations: kernel of the surjection from the free module on
    // the chosen generators, completed degree by degree against the action
    // of the algebra on lower-degree kernels.
    let fg = FreeGrading::new(gen_degrees.clone());
    let mut kernel_rows: Vec<Vec<FpVector>> = Vec::with_capacity(t_max as usize + 1);
    let mut relations: Vec<FreeElement> = Vec::new();
    for d in 0..=t_max {
        let (offsets, fdim) = fg.layout(&alg, d);
        let mut entries = Vec::new();
        for (j, &gdeg) in gen_degrees.iter().enumerate() {
            if gdeg > d {
                continue;
            }
            let mono_deg = d - gdeg;
            for idx in 0..alg.dimension(mono_deg) {
                let mono = alg.monomial_at(mono_deg, idx as u32);
                let image = m.act_monomial(&mono, gdeg, &gen_vectors[j]);
                let col = offsets[j] + idx;
                for &(r, v) in image.entries() {
                    entries.push((r, col, v));
                }
            }
        }
        let phi = FpMatrix::from_entries(p, m.dimension(d), fdim, entries);
        let kernel = kernel_basis(&phi);
        let mut span = RowSpan::new(p, fdim);
        for g in Generator::up_to_degree(p, d) {
            let src = d - g.degree(p);
            for row in &kernel_rows[src as usize] {
                span.insert(&fg.act_generator(&alg, g, src, row));
            }
        }
        for v in &kernel {
            if span.insert(v) {
                relations.push(fg.element_of(&alg, d, v));
            }
        }
        kernel_rows.push(kernel);
    }

    GradedModulePresentation::new(name, p, gen_degrees, relations, t_max)
        .expect("derived presentations are valid by construction")
}

/// Convenience: realize a built-in module directly.
pub fn realize_builtin(
    p: Prime,
    tag: BuiltinModule,
    t_max: u32,
) -> Result<RealizedModule, ModuleError> {
    RealizedModule::from_presentation(&present_module(p, tag, t_max))
}

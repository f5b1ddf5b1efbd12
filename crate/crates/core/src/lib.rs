//! Ext charts over the mod-p Steenrod algebra, and the torsion-exponent
//! bounds for truncated sphere spectra that such charts certify.
//!
//! The crate is organized bottom-up:
//!
//! - [`prime`]: small modular arithmetic (Lucas binomials, inverses,
//!   valuations) over a validated prime modulus.
//! - [`steenrod`]: the mod-p Steenrod algebra in the admissible basis, with
//!   memoized Adem straightening.
//! - [`fp_linear`]: exact sparse linear algebra over F_p with bit-packed
//!   working rows at p = 2.
//! - [`module`]: finitely presented graded modules over the Steenrod algebra
//!   and the built-in examples (the sphere, integral Eilenberg-MacLane
//!   homology, and its first Postnikov-type quotient).
//! - [`resolution`]: minimal free resolutions computed degreewise, and the
//!   Ext charts they produce.
//! - [`chart`]: the bigraded dimension tables, vanishing-region checks, and
//!   comparisons between charts.
//! - [`bounds`]: closed-form torsion-exponent bounds and the derivation of
//!   exponent bounds from vanishing lines.
//! - [`witnesses`]: homology-side lower-bound witnesses showing the upper
//!   bounds are close to sharp.

pub mod bounds;
pub mod chart;
pub mod fp_linear;
pub mod module;
pub mod prime;
pub mod resolution;
pub mod steenrod;
pub mod witnesses;

pub use bounds::{
    arlettaz_bound, closed_form_bound, cofiber_combine, equivariant_bound, equivariant_lcm_form,
    exponent_bound_from_vanishing, format_factored, hurewicz_bounds_from_cert,
    interval_product_bound, k_invariant_bound, smash_combine, truncate_cert, truncated_sphere_lower,
    truncated_sphere_upper, vanishing_function_from_chart, BoundsError, CertKind,
    ClosedFormBound, ExponentCertificate, GroupFixedPointData, HurewiczSide, SubgroupRecord,
    VanishingBoundOutcome, VanishingFunction, VanishingRow,
};
pub use chart::{
    in_vanishing_strip, vanishing_strip_bound, verify_dimension_shift, verify_vanishing,
    ChartError, ExtChart, ShiftReport, ShiftViolation,
};
pub use fp_linear::{kernel_basis, row_reduce, solve, FpMatrix, FpVector, LinearError, RowReduction, RowSpan};
pub use module::{
    derive_presentation, present_module, realize_builtin, BuiltinModule, FreeElement,
    GradedModulePresentation, ModuleError, RealizedModule, UnknownModuleTag,
};
pub use prime::{primes_up_to, Prime, PrimeError};
pub use resolution::{ext_chart_of, minimal_resolution, MinimalResolution};
pub use steenrod::{
    adem_normalize, algebra_dimension, basis_in_degree, AdmissibleMonomial, Generator,
    SteenrodAlgebra, SteenrodElement,
};
pub use witnesses::{
    bsigma_homology, bsigma_homology_table, consistency_sweep, lower_bound_witness, rp_homology,
    rp_homology_table, CoefficientRing, ConsistencyReport, ConsistencyViolation, GroupDescriptor,
    HomologyTable, WitnessError, WitnessRecord,
};

//! Command implementations behind the CLI surface.
//!
//! Every command returns its stdout report or a typed error. Errors map to
//! the process exit codes: bad usage 2, violated hypotheses 3, everything
//! else that goes wrong 1. File outputs are written atomically (temp file in
//! the target directory, then rename).

use crate::chart_file;
use crate::group_file;
use crate::svg;
use exponent_core::{
    closed_form_bound, equivariant_bound, equivariant_lcm_form, ext_chart_of, format_factored,
    hurewicz_bounds_from_cert, lower_bound_witness, present_module, truncated_sphere_upper,
    verify_dimension_shift, verify_vanishing, BoundsError, BuiltinModule, CertKind,
    ClosedFormBound, ExponentCertificate, ExtChart, Prime, WitnessError,
};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CommandError {
    /// Rejected arguments or unreadable/malformed input files: exit 2.
    #[error("{0}")]
    Args(String),
    /// A stated hypothesis of the computation fails on the input: exit 3.
    #[error("{0}")]
    Hypothesis(String),
    /// Computation or output failure, including failed verifications: exit 1.
    #[error("{0}")]
    Internal(String),
}

impl CommandError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CommandError::Internal(_) => 1,
            CommandError::Args(_) => 2,
            CommandError::Hypothesis(_) => 3,
        }
    }
}

fn from_bounds_error(e: BoundsError) -> CommandError {
    match e {
        BoundsError::FixedDimensionCollision { .. } => CommandError::Hypothesis(e.to_string()),
        BoundsError::InvalidDegree { .. }
        | BoundsError::InvalidConnectivity { .. }
        | BoundsError::EmptyInterval
        | BoundsError::InvalidGroupOrder
        | BoundsError::ShortExponentList { .. }
        | BoundsError::InvalidWeylOrder { .. }
        | BoundsError::EmptyGroupData => CommandError::Args(e.to_string()),
        BoundsError::PrimeMismatch { .. } | BoundsError::NotUpper { .. } => {
            CommandError::Internal(e.to_string())
        }
    }
}

fn parse_prime(p: u32) -> Result<Prime, CommandError> {
    Prime::new(p).map_err(|e| CommandError::Args(e.to_string()))
}

fn require_positive_window(max_s: u32, max_t: u32) -> Result<(), CommandError> {
    if max_s == 0 || max_t == 0 {
        return Err(CommandError::Args(format!(
            "window must be positive in both directions, got s <= {max_s}, t <= {max_t}"
        )));
    }
    Ok(())
}

/// Write via a temp file in the same directory so readers never observe a
/// half-written file.
pub fn atomic_write(path: &Path, contents: &str) -> io::Result<()> {
    let name = path.file_name().ok_or_else(|| {
        io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name")
    })?;
    let tmp = path.with_file_name(format!("{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

fn compute_chart(
    p: Prime,
    module: BuiltinModule,
    max_s: u32,
    max_t: u32,
) -> Result<ExtChart, CommandError> {
    let pres = present_module(p, module, max_t);
    ext_chart_of(&pres, max_s, max_t).map_err(|e| CommandError::Internal(e.to_string()))
}

/// Compute a chart and write it to `out`, or return the chart file text
/// itself when no output path is given.
pub fn cmd_ext(
    prime: u32,
    module: &str,
    max_s: u32,
    max_t: u32,
    out: Option<&Path>,
) -> Result<String, CommandError> {
    let p = parse_prime(prime)?;
    let module: BuiltinModule = module
        .parse()
        .map_err(|e: exponent_core::UnknownModuleTag| CommandError::Args(e.to_string()))?;
    require_positive_window(max_s, max_t)?;
    let chart = compute_chart(p, module, max_s, max_t)?;
    let text = chart_file::render_chart(&chart);
    match out {
        Some(path) => {
            atomic_write(path, &text).map_err(|e| {
                CommandError::Internal(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(format!(
                "wrote {} chart at p = {} (s <= {}, t <= {}, total dimension {}) to {}\n",
                module,
                p.get(),
                max_s,
                max_t,
                chart.total_dimension(),
                path.display()
            ))
        }
        None => Ok(text),
    }
}

fn strip_description(p: Prime) -> String {
    if p.is_two() {
        "0 < s < t < 3s - 3".to_string()
    } else {
        format!("0 < s < t < {}s - 2", 2 * p.get() - 1)
    }
}

/// Compute the sphere chart and check its proven-empty region really is
/// empty.
pub fn cmd_verify_vanishing(prime: u32, max_s: u32, max_t: u32) -> Result<String, CommandError> {
    let p = parse_prime(prime)?;
    require_positive_window(max_s, max_t)?;
    let chart = compute_chart(p, BuiltinModule::Sphere, max_s, max_t)?;
    let violations = verify_vanishing(&chart);
    if violations.is_empty() {
        Ok(format!(
            "sphere chart at p = {} on s <= {}, t <= {}: region {} is empty\n",
            p.get(),
            max_s,
            max_t,
            strip_description(p)
        ))
    } else {
        let mut msg = format!(
            "sphere chart at p = {} on s <= {}, t <= {}: {} entries inside {}\n",
            p.get(),
            max_s,
            max_t,
            violations.len(),
            strip_description(p)
        );
        for (s, t, dim) in violations {
            writeln!(msg, "  s = {s}, t = {t}, dim = {dim}").unwrap();
        }
        Err(CommandError::Internal(msg))
    }
}

/// Check that the cover chart is the sphere chart shifted by one in both
/// gradings, with an empty diagonal, over the common window.
pub fn cmd_verify_dimshift(prime: u32, max_s: u32, max_t: u32) -> Result<String, CommandError> {
    let p = parse_prime(prime)?;
    require_positive_window(max_s, max_t)?;
    let sphere = compute_chart(p, BuiltinModule::Sphere, max_s + 1, max_t + 1)?;
    let cover = compute_chart(p, BuiltinModule::Tau1, max_s, max_t)?;
    let report = verify_dimension_shift(&sphere, &cover)
        .map_err(|e| CommandError::Internal(e.to_string()))?;
    if report.is_verified() {
        Ok(format!(
            "cover chart matches the shifted sphere chart at p = {}: {} bidegrees checked on s <= {}, t <= {}, 0 discrepancies\n",
            p.get(),
            report.checked,
            report.s_window,
            report.t_window
        ))
    } else {
        let mut msg = format!(
            "cover chart deviates from the shifted sphere chart at p = {}: {} discrepancies\n",
            p.get(),
            report.violations.len()
        );
        for v in &report.violations {
            writeln!(
                msg,
                "  s = {}, t = {}: dim = {}, expected {}",
                v.s, v.t, v.actual, v.expected
            )
            .unwrap();
        }
        Err(CommandError::Internal(msg))
    }
}

fn bound_row(p: Prime, n: u32) -> Result<[u32; 5], CommandError> {
    let value = |kind| {
        closed_form_bound(kind, p, n)
            .map(|c| c.value)
            .map_err(from_bounds_error)
    };
    Ok([
        value(ClosedFormBound::MainLower)?,
        value(ClosedFormBound::MainUpper)?,
        value(ClosedFormBound::HurewiczKernel)?,
        value(ClosedFormBound::HurewiczCokernel)?,
        value(ClosedFormBound::KInvariant)?,
    ])
}

const BOUND_NAMES: [&str; 5] = [
    "main-lower",
    "main-upper",
    "hurewicz-kernel",
    "hurewicz-cokernel",
    "k-invariant",
];

/// Print every closed-form bound at one degree, or a table of them.
pub fn cmd_bounds(
    prime: u32,
    n: Option<u32>,
    table: Option<u32>,
) -> Result<String, CommandError> {
    let p = parse_prime(prime)?;
    match (n, table) {
        (_, Some(n_max)) => {
            if n_max == 0 {
                return Err(CommandError::Args("table height must be at least 1".into()));
            }
            let mut out = format!("p = {}\nn {}\n", p.get(), BOUND_NAMES.join(" "));
            for n in 1..=n_max {
                let row = bound_row(p, n)?;
                writeln!(
                    out,
                    "{n} {} {} {} {} {}",
                    row[0], row[1], row[2], row[3], row[4]
                )
                .unwrap();
            }
            Ok(out)
        }
        (Some(n), None) => {
            let row = bound_row(p, n)?;
            let mut out = format!("p = {}, n = {n}\n", p.get());
            for (name, value) in BOUND_NAMES.iter().zip(row) {
                writeln!(out, "{name} {value}").unwrap();
            }
            Ok(out)
        }
        (None, None) => Err(CommandError::Args(
            "either --n or --table is required".into(),
        )),
    }
}

/// Kernel and cokernel bounds for the degree-n Hurewicz map, via the
/// truncation certificates at n and n - 1.
pub fn cmd_hurewicz(prime: u32, n: u32) -> Result<String, CommandError> {
    let p = parse_prime(prime)?;
    if n == 0 {
        return Err(CommandError::Args("degree must be at least 1".into()));
    }
    let kernel_cert =
        closed_form_bound(ClosedFormBound::MainUpper, p, n).map_err(from_bounds_error)?;
    let cokernel_cert = if n >= 2 {
        closed_form_bound(ClosedFormBound::MainUpper, p, n - 1).map_err(from_bounds_error)?
    } else {
        // The empty truncation is a point; its exponent is zero.
        ExponentCertificate {
            p,
            kind: CertKind::Upper,
            value: 0,
            subject: "tau[1,0] S^0".to_string(),
            provenance: "empty truncation".to_string(),
        }
    };
    let (kernel, cokernel) =
        hurewicz_bounds_from_cert(&kernel_cert, &cokernel_cert).map_err(from_bounds_error)?;
    Ok(format!(
        "p = {}, n = {n}\nkernel bound {} via {}\ncokernel bound {} via {}\n",
        p.get(),
        kernel.value,
        kernel_cert.subject,
        cokernel.value,
        cokernel_cert.subject
    ))
}

/// Evaluate the equivariant bound for group data read from a file.
pub fn cmd_equivariant(group_path: &Path, n: u32, prime: u32) -> Result<String, CommandError> {
    let p = parse_prime(prime)?;
    if n == 0 {
        return Err(CommandError::Args("degree must be at least 1".into()));
    }
    let text = fs::read_to_string(group_path).map_err(|e| {
        CommandError::Args(format!("cannot read {}: {e}", group_path.display()))
    })?;
    let group =
        group_file::parse_group_file(&text).map_err(|e| CommandError::Args(e.to_string()))?;
    let cert = |m: u32| {
        closed_form_bound(ClosedFormBound::MainUpper, p, m)
            .expect("contributing windows have positive degree")
    };
    let bound = equivariant_bound(&group, n, p, cert).map_err(from_bounds_error)?;
    let factors = equivariant_lcm_form(&group, n).map_err(from_bounds_error)?;
    Ok(format!(
        "group {}, n = {n}, p = {}\np-exponent bound {} [{}]\ninteger lcm-form bound {}\n",
        group.label,
        p.get(),
        bound.value,
        bound.provenance,
        format_factored(&factors)
    ))
}

/// List the lower-bound witnesses up to a degree cap and check each against
/// the closed-form upper bound.
pub fn cmd_witnesses(prime: u32, n_max: u32) -> Result<String, CommandError> {
    let p = parse_prime(prime)?;
    if n_max == 0 {
        return Err(CommandError::Args("degree cap must be at least 1".into()));
    }
    let report = exponent_core::consistency_sweep(p, n_max);
    let mut out = format!("witnesses at p = {} with degree <= {n_max}\n", p.get());
    for parameter in 1..=report.checked {
        let w = lower_bound_witness(p, parameter).map_err(|e: WitnessError| {
            CommandError::Internal(e.to_string())
        })?;
        writeln!(
            out,
            "parameter {parameter}: degree {}, lower {}, upper {}, K-order exponent {}, cells {}..{} [{}]",
            w.degree,
            w.lower.value,
            truncated_sphere_upper(p, w.degree),
            w.k_order_exponent,
            w.cell_window.0,
            w.cell_window.1,
            w.citation
        )
        .unwrap();
    }
    if report.is_consistent() {
        writeln!(out, "all {} witnesses sit below the upper bound", report.checked).unwrap();
        Ok(out)
    } else {
        for v in &report.violations {
            writeln!(
                out,
                "violation at parameter {}: degree {}, lower {} > upper {}",
                v.parameter, v.degree, v.lower, v.upper
            )
            .unwrap();
        }
        Err(CommandError::Internal(out))
    }
}

/// Render a chart file to a static SVG plot.
pub fn cmd_render_svg(chart_path: &Path, out: &Path) -> Result<String, CommandError> {
    let text = fs::read_to_string(chart_path).map_err(|e| {
        CommandError::Args(format!("cannot read {}: {e}", chart_path.display()))
    })?;
    let chart = chart_file::parse_chart(&text).map_err(|e| CommandError::Args(e.to_string()))?;
    let svg = svg::render_svg(&chart);
    atomic_write(out, &svg)
        .map_err(|e| CommandError::Internal(format!("cannot write {}: {e}", out.display())))?;
    Ok(format!(
        "rendered {} chart ({} dots) to {}\n",
        chart.module_name(),
        chart.total_dimension(),
        out.display()
    ))
}

//! Command-line front end: argument parsing, thread-pool setup, exit codes.

use clap::{Parser, Subcommand};
use exponent_toolkit::commands::{self, CommandError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "exponent-toolkit",
    version,
    about = "Ext charts over the mod-p Steenrod algebra and torsion-exponent bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an Ext chart over a window and write or print the chart file.
    Ext {
        #[arg(long)]
        prime: u32,
        /// One of: sphere, hz, tau1.
        #[arg(long)]
        module: String,
        /// Largest homological degree s.
        #[arg(long)]
        max_s: u32,
        /// Largest internal degree t.
        #[arg(long)]
        max_t: u32,
        /// Output file; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the sphere chart and check its vanishing region is empty.
    VerifyVanishing {
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        max_s: u32,
        #[arg(long)]
        max_t: u32,
    },
    /// Check the cover chart is the sphere chart shifted by one in s and t.
    VerifyDimshift {
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        max_s: u32,
        #[arg(long)]
        max_t: u32,
    },
    /// Print the closed-form exponent bounds at one degree or as a table.
    Bounds {
        #[arg(long)]
        prime: u32,
        /// Degree of interest.
        #[arg(long)]
        n: Option<u32>,
        /// Print rows for every degree up to this cap instead.
        #[arg(long)]
        table: Option<u32>,
    },
    /// Exponent bounds for the kernel and cokernel of the Hurewicz map.
    Hurewicz {
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        n: u32,
    },
    /// Evaluate the fixed-point exponent bound for group data from a file.
    Equivariant {
        /// File with one `label weyl_order fixed_dim` record per subgroup.
        #[arg(long)]
        group_file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        prime: u32,
    },
    /// List lower-bound witnesses and check them against the upper bound.
    Witnesses {
        #[arg(long)]
        prime: u32,
        /// Largest witness degree to include.
        #[arg(long)]
        n: u32,
    },
    /// Render a chart file to a static SVG plot.
    RenderSvg {
        /// Chart file produced by `ext`.
        chart: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Honor EXPONENT_TOOLKIT_THREADS if set; fall back to all cores on nonsense
/// values instead of failing.
fn configure_threads() {
    let Ok(raw) = std::env::var("EXPONENT_TOOLKIT_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(threads) if threads >= 1 => {
            // A second initialization attempt is harmless; keep the first pool.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
        _ => eprintln!(
            "warning: ignoring invalid EXPONENT_TOOLKIT_THREADS value {raw:?}; using all cores"
        ),
    }
}

fn run(command: Command) -> Result<String, CommandError> {
    match command {
        Command::Ext {
            prime,
            module,
            max_s,
            max_t,
            out,
        } => commands::cmd_ext(prime, &module, max_s, max_t, out.as_deref()),
        Command::VerifyVanishing {
            prime,
            max_s,
            max_t,
        } => commands::cmd_verify_vanishing(prime, max_s, max_t),
        Command::VerifyDimshift {
            prime,
            max_s,
            max_t,
        } => commands::cmd_verify_dimshift(prime, max_s, max_t),
        Command::Bounds { prime, n, table } => commands::cmd_bounds(prime, n, table),
        Command::Hurewicz { prime, n } => commands::cmd_hurewicz(prime, n),
        Command::Equivariant {
            group_file,
            n,
            prime,
        } => commands::cmd_equivariant(&group_file, n, prime),
        Command::Witnesses { prime, n } => commands::cmd_witnesses(prime, n),
        Command::RenderSvg { chart, out } => commands::cmd_render_svg(&chart, &out),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

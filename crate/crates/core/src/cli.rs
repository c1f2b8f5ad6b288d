//! Command-line surface: `layout`, `verify`, `bench` and `generate`.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchConfig};
use crate::io::{
    emit_layout_json, emit_report, emit_tree_json, generate_random_tree, parse_tree, read_layout, render_svg,
    write_file, RandomTreeSpec, RenderStyle, WeightDistribution,
};
use crate::layout::{compute_layout, Algorithm};
use crate::verifier::{verify, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "bounded-treemap",
    version,
    about = "Treemaps with bounded aspect ratio"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Convex,
    Ortho,
    Single,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Algorithm {
        match a {
            Algo::Convex => Algorithm::Convex,
            Algo::Ortho => Algorithm::Ortho,
            Algo::Single => Algorithm::Single,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Weights {
    LogUniform,
    Uniform,
    HugeChild,
}

#[derive(clap::Args, Debug)]
struct TreeArgs {
    /// Leaves per tree.
    #[arg(long, default_value_t = 100)]
    leaves: usize,
    #[arg(long, default_value_t = 12)]
    max_depth: usize,
    #[arg(long, default_value_t = 6)]
    max_children: usize,
    #[arg(long, value_enum, default_value_t = Weights::LogUniform)]
    weights: Weights,
    /// Weight share of the heavy child for `huge-child`.
    #[arg(long, default_value_t = 0.9)]
    share: f64,
}

impl TreeArgs {
    fn spec(&self) -> RandomTreeSpec {
        RandomTreeSpec {
            max_depth: self.max_depth,
            max_children: self.max_children,
            leaf_count: self.leaves,
            weights: match self.weights {
                Weights::LogUniform => WeightDistribution::LogUniform { min: 1e-4, max: 1.0 },
                Weights::Uniform => WeightDistribution::Uniform,
                Weights::HugeChild => WeightDistribution::HugeChild { share: self.share },
            },
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lay out a hierarchy, verify it, and write SVG, report and layout files.
    Layout {
        #[arg(long, value_enum)]
        algo: Algo,
        /// Hierarchy file (.json nested, or .csv with path,weight rows).
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Layout record file for a later `verify`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a layout file against its hierarchy.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        layout: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Lay out and verify seeded random trees; prints a JSON report.
    Bench {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a seeded random hierarchy as JSON.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn summary_line(rep: &VerificationReport) -> String {
    format!(
        "{}: {} regions, {} violations, max area residual {:.3e}, max tiling residual {:.3e}",
        if rep.pass { "PASS" } else { "FAIL" },
        rep.regions.len(),
        rep.violation_count(),
        rep.max_area_residual,
        rep.max_tiling_residual
    )
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => write_file(p, text).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, String> {
    let code = |rep: &VerificationReport| if rep.pass { EXIT_PASS } else { EXIT_FAIL };
    match cmd {
        Command::Layout {
            algo,
            input,
            svg,
            report,
            output,
        } => {
            let t = parse_tree(&input).map_err(|e| e.to_string())?;
            let (layout, _) = compute_layout(&t, algo.into()).map_err(|e| e.to_string())?;
            let rep = verify(&t, &layout, algo.into()).map_err(|e| e.to_string())?;
            if let Some(p) = &svg {
                write_file(p, &render_svg(&t, &layout, &RenderStyle::default()))
                    .map_err(|e| e.to_string())?;
            }
            if let Some(p) = &report {
                write_file(p, &emit_report(&rep)).map_err(|e| e.to_string())?;
            }
            if let Some(p) = &output {
                write_file(p, &emit_layout_json(&t, &layout)).map_err(|e| e.to_string())?;
            }
            writeln!(out, "{}", summary_line(&rep)).map_err(|e| e.to_string())?;
            Ok(code(&rep))
        }
        Command::Verify {
            input,
            layout,
            report,
        } => {
            let t = parse_tree(&input).map_err(|e| e.to_string())?;
            let l = read_layout(&layout, &t).map_err(|e| e.to_string())?;
            let rep = match verify(&t, &l, l.algorithm) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(out, "FAIL: {e}").map_err(|e| e.to_string())?;
                    return Ok(EXIT_FAIL);
                }
            };
            if let Some(p) = &report {
                write_file(p, &emit_report(&rep)).map_err(|e| e.to_string())?;
            }
            writeln!(out, "{}", summary_line(&rep)).map_err(|e| e.to_string())?;
            Ok(code(&rep))
        }
        Command::Bench {
            algo,
            trials,
            seed,
            tree,
            output,
        } => {
            let config = BenchConfig {
                algorithm: algo.into(),
                trials,
                seed,
                spec: tree.spec(),
            };
            let rep = run_bench(&config).map_err(|e| e.to_string())?;
            emit(out, output.as_ref(), &(emit_report(&rep) + "\n"))?;
            Ok(if rep.summary.passed == rep.summary.trials {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
        Command::Generate { seed, tree, output } => {
            let t = generate_random_tree(seed, &tree.spec()).map_err(|e| e.to_string())?;
            emit(out, output.as_ref(), &(emit_tree_json(&t) + "\n"))?;
            Ok(EXIT_PASS)
        }
    }
}

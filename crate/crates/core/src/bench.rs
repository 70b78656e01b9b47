//! Benchmark sweeps over generated affine-fractional instances.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::io::format_real;
use crate::{
    generate_instances, normal_subgradient_solve, AffineFractionalInstance, GeneratorConfig,
    Result, SolveStatus, SolverConfig, TraceRetention, Variant,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub count: usize,
    pub seed: u64,
    pub solver: SolverConfig<f64>,
    pub require_paramonotone: bool,
    /// Solve instances on the rayon pool; aggregation order is unchanged.
    pub parallel: bool,
}

impl BenchConfig {
    pub fn new(sizes: Vec<usize>, count: usize, seed: u64, variant: Variant) -> Self {
        Self {
            sizes,
            count,
            seed,
            solver: SolverConfig::new(variant),
            require_paramonotone: false,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub n: usize,
    pub n_prob: usize,
    pub n_success: usize,
    pub mean_time_seconds: f64,
    /// Mean judged residual (clamped at zero) over instances that produced one.
    pub mean_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub n: usize,
    pub index: usize,
    pub success: bool,
    pub residual: Option<f64>,
    /// Iterate the residual was judged at.
    pub x: Vec<f64>,
    pub status: Option<SolveStatus>,
    pub iterations: usize,
    pub elapsed_seconds: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub variant: Variant,
    pub scale: f64,
    pub seed: u64,
    pub rows: Vec<BenchmarkRow>,
    pub outcomes: Vec<InstanceOutcome>,
}

fn solve_one(
    inst: &AffineFractionalInstance<f64>,
    n: usize,
    index: usize,
    cfg: &SolverConfig<f64>,
) -> InstanceOutcome {
    match normal_subgradient_solve(inst, inst.feasible_box(), cfg) {
        Ok(rep) => InstanceOutcome {
            n,
            index,
            success: rep.is_success(cfg.tol_success),
            residual: rep.judged_residual(),
            x: rep.judged_x().to_f64_vec(),
            status: Some(rep.status),
            iterations: rep.iterations,
            elapsed_seconds: rep.elapsed_seconds,
            error: None,
        },
        Err(e) => InstanceOutcome {
            n,
            index,
            success: false,
            residual: None,
            x: Vec::new(),
            status: None,
            iterations: 0,
            elapsed_seconds: 0.0,
            error: Some(e.to_string()),
        },
    }
}

/// Runs every size in ascending order. Size `i` (after sorting) draws its
/// instances with seed `seed + i`; all runs start at the box center.
/// Failed solves count as unsuccessful and never abort the sweep.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchmarkReport> {
    if config.sizes.is_empty() {
        return Err(crate::Error::Config("no sizes given".into()));
    }
    if config.count == 0 {
        return Err(crate::Error::Config("count must be at least 1".into()));
    }
    config.solver.validate()?;
    let mut sizes = config.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();

    let mut solver = config.solver.clone();
    solver.retention = TraceRetention::None;
    solver.start = None;

    let mut rows = Vec::with_capacity(sizes.len());
    let mut outcomes = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        let mut gen = GeneratorConfig::new(n, config.count, config.seed.wrapping_add(i as u64));
        gen.require_paramonotone = config.require_paramonotone;
        let instances = generate_instances::<f64>(&gen)?;
        let batch: Vec<InstanceOutcome> = if config.parallel {
            instances
                .par_iter()
                .enumerate()
                .map(|(j, inst)| solve_one(inst, n, j, &solver))
                .collect()
        } else {
            instances
                .iter()
                .enumerate()
                .map(|(j, inst)| solve_one(inst, n, j, &solver))
                .collect()
        };
        rows.push(aggregate(n, &batch));
        outcomes.extend(batch);
    }
    Ok(BenchmarkReport {
        variant: config.solver.variant,
        scale: config.solver.schedule.scale(),
        seed: config.seed,
        rows,
        outcomes,
    })
}

/// Row statistics for one size.
pub fn aggregate(n: usize, batch: &[InstanceOutcome]) -> BenchmarkRow {
    let n_prob = batch.len();
    let n_success = batch.iter().filter(|o| o.success).count();
    let mean_time_seconds = if n_prob == 0 {
        0.0
    } else {
        batch.iter().map(|o| o.elapsed_seconds).sum::<f64>() / n_prob as f64
    };
    let errors: Vec<f64> = batch.iter().filter_map(|o| o.residual).map(|r| r.max(0.0)).collect();
    let mean_error = if errors.is_empty() {
        f64::NAN
    } else {
        errors.iter().sum::<f64>() / errors.len() as f64
    };
    BenchmarkRow {
        n,
        n_prob,
        n_success,
        mean_time_seconds,
        mean_error,
    }
}

pub fn format_table(report: &BenchmarkReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Algorithm ({}) with alpha_k = {}/(k+1), seed {}",
        report.variant, report.scale, report.seed
    );
    let _ = writeln!(
        s,
        "{:>5} {:>8} {:>14} {:>16} {:>12}",
        "n", "N. prob.", "N. succ. prob.", "CPU-times(s)", "Error"
    );
    for r in &report.rows {
        let _ = writeln!(
            s,
            "{:>5} {:>8} {:>14} {:>16.6} {:>12.6}",
            r.n, r.n_prob, r.n_success, r.mean_time_seconds, r.mean_error
        );
    }
    s
}

pub const BENCH_HEADER: &str = "n,n_prob,n_success,mean_time_seconds,mean_error";

pub fn write_bench_csv(report: &BenchmarkReport, path: impl AsRef<Path>) -> Result<()> {
    let mut s = String::from(BENCH_HEADER);
    s.push('\n');
    for r in &report.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.n,
            r.n_prob,
            r.n_success,
            format_real(r.mean_time_seconds),
            format_real(r.mean_error)
        );
    }
    fs::write(path, s)?;
    Ok(())
}

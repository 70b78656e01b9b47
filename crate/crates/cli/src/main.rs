//! `quasiep`: solve, benchmark, check and generate affine-fractional
//! equilibrium instances.
//!
//! Exit codes: 0 success, 1 solve or convergence failure, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quasiep::bench::{format_table, write_bench_csv};
use quasiep::io::{parse_instance_file, write_instance_file, write_trace_csv};
use quasiep::monotonicity::DEFAULT_TOL as PARAMONOTONE_TOL;
use quasiep::{
    check_paramonotone, generate_instances, normal_subgradient_solve, run_benchmark, BenchConfig,
    Config64, FractionalInstance, GeneratorConfig, Variant,
};

#[derive(Parser)]
#[command(name = "quasiep", version, about = "Normal-subgradient solver for quasiconvex equilibrium problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Ng1,
    Ng2,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Ng1 => Variant::Ng1,
            VariantArg::Ng2 => Variant::Ng2,
        }
    }
}

#[derive(clap::Args)]
struct SolveOpts {
    #[arg(long, value_enum, default_value = "ng2")]
    variant: VariantArg,
    /// Step scale s in alpha_k = s/(k+1)
    #[arg(long, default_value_t = 100.0)]
    scale: f64,
    #[arg(long, default_value_t = 2000)]
    max_iter: usize,
}

impl SolveOpts {
    fn config(&self) -> Result<Config64, quasiep::Error> {
        let mut cfg = Config64::new(self.variant.into()).with_scale(self.scale)?;
        cfg.max_iter = self.max_iter;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
        /// Write the per-iteration trace as CSV
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Evaluate the residual at every NG1 iterate as well
        #[arg(long)]
        record_residuals: bool,
    },
    /// Benchmark sweep over generated instances
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "5,10,20")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        opts: SolveOpts,
        /// Also write the table as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        require_paramonotone: bool,
        /// Solve instances concurrently
        #[arg(long)]
        parallel: bool,
    },
    /// Paramonotonicity report for an instance file
    Check {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = PARAMONOTONE_TOL)]
        tol: f64,
    },
    /// Generate instance files
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        require_paramonotone: bool,
    },
}

enum Failure {
    Solve(String),
    Input(String),
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn load(path: &PathBuf) -> Result<FractionalInstance, Failure> {
    parse_instance_file(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            instance,
            opts,
            trace,
            record_residuals,
        } => {
            let inst = load(&instance)?;
            let mut cfg = opts.config().map_err(input)?;
            cfg.record_residuals = record_residuals;
            let report = normal_subgradient_solve(&inst, inst.feasible_box(), &cfg)
                .map_err(|e| Failure::Solve(e.to_string()))?;
            if let Some(path) = trace {
                write_trace_csv(&report, &path).map_err(input)?;
            }
            let success = report.is_success(cfg.tol_success);
            let summary = serde_json::json!({
                "variant": report.variant,
                "status": report.status,
                "iterations": report.iterations,
                "x_final": report.x_final,
                "final_residual": report.final_residual,
                "best_residual": report.best_residual,
                "success": success,
                "elapsed_seconds": report.elapsed_seconds,
            });
            println!("{}", serde_json::to_string_pretty(&summary).map_err(input)?);
            if success {
                Ok(())
            } else {
                Err(Failure::Solve(format!(
                    "residual {:?} not below {}",
                    report.judged_residual(),
                    cfg.tol_success
                )))
            }
        }
        Command::Bench {
            sizes,
            count,
            seed,
            opts,
            csv,
            require_paramonotone,
            parallel,
        } => {
            let mut cfg = BenchConfig::new(sizes, count, seed, opts.variant.into());
            cfg.solver = opts.config().map_err(input)?;
            cfg.require_paramonotone = require_paramonotone;
            cfg.parallel = parallel;
            let report = run_benchmark(&cfg).map_err(input)?;
            print!("{}", format_table(&report));
            for o in report.outcomes.iter().filter(|o| o.error.is_some()) {
                eprintln!("n={} #{}: {}", o.n, o.index, o.error.as_deref().unwrap_or(""));
            }
            if let Some(path) = csv {
                write_bench_csv(&report, &path).map_err(input)?;
            }
            Ok(())
        }
        Command::Check { instance, tol } => {
            let inst = load(&instance)?;
            let report = check_paramonotone(&inst, tol).map_err(input)?;
            println!("{}", serde_json::to_string_pretty(&report).map_err(input)?);
            Ok(())
        }
        Command::Gen {
            n,
            count,
            seed,
            out,
            require_paramonotone,
        } => {
            let mut cfg = GeneratorConfig::new(n, count, seed);
            cfg.require_paramonotone = require_paramonotone;
            let instances = generate_instances::<f64>(&cfg).map_err(input)?;
            std::fs::create_dir_all(&out).map_err(input)?;
            for (i, inst) in instances.iter().enumerate() {
                let path = out.join(format!("instance_n{n}_{i:04}.json"));
                write_instance_file(inst, &path).map_err(input)?;
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Solve(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

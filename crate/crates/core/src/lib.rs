//! Normal-subgradient projection method for equilibrium problems
//!
//! Find `x* ∈ C` such that `f(x*, y) >= 0` for every `y ∈ C`, where the
//! bifunction `f(x, ·)` is only required to be quasiconvex. Each iteration
//! steps against a unit normal (Greenberg–Pierskalla) subgradient of
//! `f(x^k, ·)` at `x^k` and projects back onto `C`.
//!
//! The crate ships:
//! - dense linear algebra helpers ([`linalg`]),
//! - box and ball feasible sets ([`sets`]),
//! - closed-form oracles for affine-fractional generalized variational
//!   inequalities and affine variational inequalities ([`oracle`]),
//! - an exact best-response oracle for linear-fractional objectives over a
//!   box via Dinkelbach iteration ([`fractional`]),
//! - the solver in its two variants plus trace audits ([`solver`]),
//! - the paramonotonicity certificate ([`monotonicity`]),
//! - a reproducible instance generator ([`generator`]),
//! - benchmark sweeps and file formats ([`bench`], [`io`]).
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod fractional;
pub mod generator;
pub mod io;
pub mod linalg;
pub mod monotonicity;
pub mod oracle;
pub mod scalar;
pub mod sets;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use bench::{run_benchmark, BenchConfig, BenchmarkReport, BenchmarkRow, InstanceOutcome};
pub use fractional::{
    best_response_residual, dinkelbach_minimize, grid_bruteforce_minimize,
    minimize_linear_over_box, DinkelbachOutcome, FractionalObjective,
};
pub use generator::{generate_instances, GeneratorConfig, Xoshiro256StarStar};
pub use linalg::{numeric_rank, singular_values, symmetric_eigenvalues, Matrix, Vector};
pub use monotonicity::{check_paramonotone, compute_a_hat, ParamonotonicityReport};
pub use oracle::{AffineFractionalInstance, AffineVIInstance, BestResponse, EquilibriumOracle};
pub use sets::{BallSet, BoxSet, FeasibleSet};
pub use solver::{
    fejer_audit, lemma4_audit, normal_subgradient_solve, IterationRecord, SolveReport,
    SolveStatus, SolverConfig, StepSchedule, TraceRetention, Variant,
};

/// Dense `f64` vector.
pub type Vec64 = Vector<f64>;
/// Dense row-major `f64` matrix.
pub type Mat64 = Matrix<f64>;
/// `f64` box set.
pub type Box64 = BoxSet<f64>;
/// `f64` affine-fractional GVI instance.
pub type FractionalInstance = AffineFractionalInstance<f64>;
/// `f64` affine VI instance.
pub type VIInstance = AffineVIInstance<f64>;
/// `f64` solver configuration.
pub type Config64 = SolverConfig<f64>;
/// `f64` solve report.
pub type Report64 = SolveReport<f64>;

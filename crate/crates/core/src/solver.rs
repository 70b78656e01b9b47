//! Normal-subgradient projection method.
//!
//! At iterate `x^k ∈ C` take `g^k` in the star subdifferential of
//! `f(x^k, ·)` at `x^k`. A zero `g^k` certifies a solution; otherwise
//! `g^k` is normalized and `x^{k+1} = P_C(x^k − α_k g^k)`. A fixed point
//! `x^{k+1} = x^k` is also a solution.
//!
//! Two variants share this loop:
//! - [`Variant::Ng1`] stops when `‖x^{k+1} − x^k‖ < tol_step`;
//! - [`Variant::Ng2`] evaluates the best-response residual
//!   `−min_{y ∈ C} f(x^k, y)` before each step and stops when it drops
//!   below `tol_residual`.

use std::collections::VecDeque;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::{EquilibriumOracle, Error, FeasibleSet, Result, Scalar, Vector};

/// Slack used by [`lemma4_audit`].
pub const LEMMA4_SLACK: f64 = 1e-12;
/// Slack used by [`fejer_audit`].
pub const FEJER_SLACK: f64 = 1e-10;

/// `α_k = scale / (k + 1)`: positive, not summable, square summable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepSchedule<T> {
    scale: T,
}

impl<T: Scalar> StepSchedule<T> {
    pub fn harmonic(scale: T) -> Result<Self> {
        if !(scale > T::zero()) || !scale.is_finite() {
            return Err(Error::Config(format!("step scale must be positive, got {scale}")));
        }
        Ok(Self { scale })
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn step_alpha(&self, k: usize) -> T {
        self.scale / T::lit((k + 1) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Step-size stopping rule only.
    Ng1,
    /// Best-response residual checked at every iterate.
    Ng2,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Ng1 => "NG1",
            Variant::Ng2 => "NG2",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ng1" => Ok(Variant::Ng1),
            "ng2" => Ok(Variant::Ng2),
            other => Err(Error::Config(format!("unknown variant `{other}`"))),
        }
    }
}

/// How many iteration records a report keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceRetention {
    Full,
    LastN(usize),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig<T> {
    pub variant: Variant,
    pub schedule: StepSchedule<T>,
    pub max_iter: usize,
    /// NG1: stop when `‖x^{k+1} − x^k‖ < tol_step`.
    pub tol_step: T,
    /// NG2: stop when the residual drops below this.
    pub tol_residual: T,
    /// A run counts as successful when some evaluated residual is below this.
    pub tol_success: T,
    /// `‖g‖ <= tol_zero_grad` is treated as `g = 0`.
    pub tol_zero_grad: T,
    pub retention: TraceRetention,
    /// Evaluate the residual at every NG1 iterate too (for error traces).
    pub record_residuals: bool,
    /// Defaults to the set's center; projected onto the set either way.
    pub start: Option<Vector<T>>,
}

impl<T: Scalar> SolverConfig<T> {
    /// Stopping rules and tolerances of the reference experiments:
    /// `α_k = 100/(k+1)`, 2000 iterations, `1e-4` step, `1e-3` residual,
    /// `1e-1` success.
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            schedule: StepSchedule { scale: T::lit(100.0) },
            max_iter: 2000,
            tol_step: T::lit(1e-4),
            tol_residual: T::lit(1e-3),
            tol_success: T::lit(1e-1),
            tol_zero_grad: T::lit(1e-12),
            retention: TraceRetention::Full,
            record_residuals: false,
            start: None,
        }
    }

    pub fn with_scale(mut self, scale: T) -> Result<Self> {
        self.schedule = StepSchedule::harmonic(scale)?;
        Ok(self)
    }

    pub fn with_start(mut self, start: Vector<T>) -> Self {
        self.start = Some(start);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        for (name, tol) in [
            ("tol_step", self.tol_step),
            ("tol_residual", self.tol_residual),
            ("tol_success", self.tol_success),
            ("tol_zero_grad", self.tol_zero_grad),
        ] {
            if !(tol > T::zero()) {
                return Err(Error::Config(format!("{name} must be positive, got {tol}")));
            }
        }
        if !(self.schedule.scale > T::zero()) {
            return Err(Error::Config("step scale must be positive".into()));
        }
        Ok(())
    }
}

/// One pass of the main loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord<T> {
    pub k: usize,
    pub x: Vector<T>,
    pub g_raw_norm: T,
    /// Unit subgradient; the zero vector when the loop stopped before stepping.
    pub g_unit: Vector<T>,
    pub alpha: T,
    /// Successor iterate (`x` itself when no step was taken).
    pub x_next: Vector<T>,
    pub step_norm: T,
    pub residual: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    SolvedByZeroGradient,
    SolvedByFixedPoint,
    StepBelowTol,
    ResidualBelowTol,
    MaxIterReached,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport<T> {
    pub status: SolveStatus,
    pub variant: Variant,
    pub x_final: Vector<T>,
    /// Iteration indices visited (`k_final + 1`).
    pub iterations: usize,
    pub trace: Vec<IterationRecord<T>>,
    /// Residual at `x_final` when the oracle supports best responses.
    pub final_residual: Option<T>,
    /// Smallest residual evaluated during the run and where it occurred.
    pub best_residual: Option<T>,
    pub best_x: Option<Vector<T>>,
    pub elapsed_seconds: f64,
}

impl<T: Scalar> SolveReport<T> {
    /// Residual used to judge the run: the best one seen for NG2, the final
    /// one for NG1.
    pub fn judged_residual(&self) -> Option<T> {
        match self.variant {
            Variant::Ng2 => self.best_residual.or(self.final_residual),
            Variant::Ng1 => self.final_residual,
        }
    }

    /// Iterate the judged residual belongs to.
    pub fn judged_x(&self) -> &Vector<T> {
        match (self.variant, &self.best_x) {
            (Variant::Ng2, Some(x)) => x,
            _ => &self.x_final,
        }
    }

    pub fn is_success(&self, tol_success: T) -> bool {
        self.judged_residual().is_some_and(|r| r < tol_success)
    }
}

struct Trace<T> {
    retention: TraceRetention,
    records: VecDeque<IterationRecord<T>>,
}

impl<T> Trace<T> {
    fn push(&mut self, rec: IterationRecord<T>) {
        match self.retention {
            TraceRetention::None => {}
            TraceRetention::Full => self.records.push_back(rec),
            TraceRetention::LastN(n) => {
                if n == 0 {
                    return;
                }
                if self.records.len() == n {
                    self.records.pop_front();
                }
                self.records.push_back(rec);
            }
        }
    }
}

fn at_iterate<T: Scalar>(k: usize, x: &Vector<T>) -> impl FnOnce(Error) -> Error + '_ {
    move |e| Error::AtIterate {
        k,
        x: x.to_f64_vec(),
        source: Box::new(e),
    }
}

fn residual_of<T: Scalar, O: EquilibriumOracle<T> + ?Sized>(
    oracle: &O,
    x: &Vector<T>,
    k: usize,
) -> Result<T> {
    match oracle.best_response(x) {
        Some(br) => Ok(br.map_err(at_iterate(k, x))?.residual()),
        None => Err(Error::Config("oracle has no best response".into())),
    }
}

/// Runs the normal-subgradient method from `config.start` (or the set center).
pub fn normal_subgradient_solve<T, O, S>(
    oracle: &O,
    set: &S,
    config: &SolverConfig<T>,
) -> Result<SolveReport<T>>
where
    T: Scalar,
    O: EquilibriumOracle<T> + ?Sized,
    S: FeasibleSet<T> + ?Sized,
{
    config.validate()?;
    if oracle.dim() != set.dim() {
        return Err(Error::Dimension {
            context: "oracle vs feasible set",
            expected: set.dim(),
            got: oracle.dim(),
        });
    }
    let ng2 = config.variant == Variant::Ng2;
    if ng2 && !oracle.supports_best_response() {
        return Err(Error::Config("NG2 requires an oracle with a best response".into()));
    }
    let track_residuals = ng2 || config.record_residuals;

    let started = Instant::now();
    let start = match &config.start {
        Some(s) => s.clone(),
        None => set.center(),
    };
    let mut x = set.project(&start)?;
    let mut trace = Trace {
        retention: config.retention,
        records: VecDeque::new(),
    };
    let mut best: Option<(T, Vector<T>)> = None;
    let mut note_best = |r: T, x: &Vector<T>| {
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, x.clone()));
        }
    };

    let n = set.dim();
    let mut status = SolveStatus::MaxIterReached;
    let mut final_residual = None;
    let mut iterations = config.max_iter;

    for k in 0..config.max_iter {
        let alpha = config.schedule.step_alpha(k);
        let residual = if track_residuals {
            let r = residual_of(oracle, &x, k)?;
            note_best(r, &x);
            Some(r)
        } else {
            None
        };
        let stop_record = |g_raw_norm: T, residual: Option<T>, x: &Vector<T>| IterationRecord {
            k,
            x: x.clone(),
            g_raw_norm,
            g_unit: Vector::zeros(n),
            alpha,
            x_next: x.clone(),
            step_norm: T::zero(),
            residual,
        };

        let g = oracle.diagonal_subgradient(&x).map_err(at_iterate(k, &x))?;
        let g_norm = g.norm();
        if !g_norm.is_finite() {
            return Err(at_iterate(k, &x)(Error::Domain("non-finite subgradient".into())));
        }
        if ng2 && residual.is_some_and(|r| r < config.tol_residual) {
            trace.push(stop_record(g_norm, residual, &x));
            status = SolveStatus::ResidualBelowTol;
            final_residual = residual;
            iterations = k + 1;
            break;
        }
        if g_norm <= config.tol_zero_grad {
            trace.push(stop_record(g_norm, residual, &x));
            status = SolveStatus::SolvedByZeroGradient;
            final_residual = residual;
            iterations = k + 1;
            break;
        }
        let g_unit = g.scale(T::one() / g_norm);
        let x_next = set.project(&x.axpy(-alpha, &g_unit))?;
        let step_norm = x_next.dist(&x);
        let fixed = x_next == x;
        trace.push(IterationRecord {
            k,
            x: x.clone(),
            g_raw_norm: g_norm,
            g_unit,
            alpha,
            x_next: x_next.clone(),
            step_norm,
            residual,
        });
        if fixed {
            status = SolveStatus::SolvedByFixedPoint;
            final_residual = residual;
            iterations = k + 1;
            break;
        }
        x = x_next;
        if config.variant == Variant::Ng1 && step_norm < config.tol_step {
            status = SolveStatus::StepBelowTol;
            iterations = k + 1;
            break;
        }
    }

    if final_residual.is_none() && oracle.supports_best_response() {
        let r = residual_of(oracle, &x, iterations)?;
        if track_residuals {
            note_best(r, &x);
        }
        final_residual = Some(r);
    }

    let elapsed_seconds = started.elapsed().as_secs_f64();
    let (best_residual, best_x) = match best {
        Some((r, bx)) => (Some(r), Some(bx)),
        None => (None, None),
    };
    Ok(SolveReport {
        status,
        variant: config.variant,
        x_final: x,
        iterations,
        trace: trace.records.into(),
        final_residual,
        best_residual,
        best_x,
        elapsed_seconds,
    })
}

/// Checks `‖x^{k+1} − x^k‖ <= α_k` on every record.
pub fn lemma4_audit<T: Scalar>(trace: &[IterationRecord<T>]) -> bool {
    let slack = T::lit(LEMMA4_SLACK);
    trace.iter().all(|r| r.step_norm <= r.alpha + slack)
}

/// Checks `‖x^{k+1} − z‖² <= ‖x^k − z‖² + 2α_k⟨g^k, z − x^k⟩ + 2α_k²` on
/// every record, `g^k` the unit subgradient.
pub fn fejer_audit<T: Scalar>(trace: &[IterationRecord<T>], z: &Vector<T>) -> Result<bool> {
    let slack = T::lit(FEJER_SLACK);
    let two = T::lit(2.0);
    for r in trace {
        z.check_dim(r.x.len(), "Fejér anchor")?;
        let lhs = r.x_next.sub(z).norm_sq();
        let rhs = r.x.sub(z).norm_sq()
            + two * r.alpha * r.g_unit.dot(&z.sub(&r.x))
            + two * r.alpha * r.alpha;
        if lhs > rhs + slack {
            return Ok(false);
        }
    }
    Ok(true)
}

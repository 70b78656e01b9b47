//! Linear-fractional minimization over a box.
//!
//! The best response `min_{y ∈ C} f(x, y)` of an affine-fractional instance
//! is a linear-fractional program. Dinkelbach's parametric iteration solves
//! it exactly here because each inner problem (a linear function over a box)
//! is minimized in closed form at a vertex.

use crate::{AffineFractionalInstance, BoxSet, Error, FeasibleSet, Result, Scalar, Vector};

/// Default Dinkelbach stopping tolerance for `f64`.
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100;

/// Default tolerance for scalar type `T`, floored near its machine epsilon.
pub fn default_tol<T: Scalar>() -> T {
    T::lit(DEFAULT_TOL).max(T::epsilon() * T::lit(64.0))
}

/// `y ↦ (pᵀy + q) / (cᵀy + d)`
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalObjective<T> {
    p: Vector<T>,
    q: T,
    c: Vector<T>,
    d: T,
}

impl<T: Scalar> FractionalObjective<T> {
    pub fn new(p: Vector<T>, q: T, c: Vector<T>, d: T) -> Self {
        Self { p, q, c, d }
    }

    pub fn p(&self) -> &Vector<T> {
        &self.p
    }
    pub fn q(&self) -> T {
        self.q
    }
    pub fn c(&self) -> &Vector<T> {
        &self.c
    }
    pub fn d(&self) -> T {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    pub fn numerator(&self, y: &Vector<T>) -> T {
        self.p.dot(y) + self.q
    }

    pub fn denominator(&self, y: &Vector<T>) -> T {
        self.c.dot(y) + self.d
    }

    pub fn eval(&self, y: &Vector<T>) -> T {
        self.numerator(y) / self.denominator(y)
    }

    fn check_over(&self, feasible: &BoxSet<T>) -> Result<()> {
        if self.c.len() != self.p.len() {
            return Err(Error::Dimension {
                context: "fractional objective c",
                expected: self.p.len(),
                got: self.c.len(),
            });
        }
        if feasible.dim() != self.dim() {
            return Err(Error::Dimension {
                context: "fractional objective box",
                expected: self.dim(),
                got: feasible.dim(),
            });
        }
        let min_den = feasible.min_affine(&self.c, self.d);
        if !(min_den > T::zero()) {
            return Err(Error::Domain(format!(
                "denominator reaches {min_den} <= 0 on the box"
            )));
        }
        Ok(())
    }
}

/// Vertex minimizing `wᵀy` over the box; zero weights pick the lower bound.
pub fn minimize_linear_over_box<T: Scalar>(w: &Vector<T>, feasible: &BoxSet<T>) -> (Vector<T>, T) {
    let y: Vec<T> = w
        .iter()
        .enumerate()
        .map(|(i, &wi)| if wi < T::zero() { feasible.hi()[i] } else { feasible.lo()[i] })
        .collect();
    let y = Vector::from_raw(y);
    let val = w.dot(&y);
    (y, val)
}

/// Result of a Dinkelbach run.
#[derive(Debug, Clone, PartialEq)]
pub struct DinkelbachOutcome<T> {
    pub y: Vector<T>,
    pub value: T,
    pub iterations: usize,
    /// Ratio parameter at every iteration, starting from the box center value.
    pub alphas: Vec<T>,
    /// `F(α) = min_y a(y) − α b(y)` at the final parameter.
    pub final_gap: T,
}

/// Minimizes a linear-fractional objective over a box.
///
/// Starting from `α₀ = obj(center)`, each step minimizes
/// `(p − αc)ᵀy + (q − αd)` over the box and resets `α = obj(y)`; it stops
/// once that minimum `F(α)` satisfies `|F(α)| <= tol · max(1, |α|·(cᵀy + d))`.
pub fn dinkelbach_minimize<T: Scalar>(
    obj: &FractionalObjective<T>,
    feasible: &BoxSet<T>,
    tol: T,
    max_iter: usize,
) -> Result<DinkelbachOutcome<T>> {
    if !(tol > T::zero()) {
        return Err(Error::Config(format!("Dinkelbach tolerance must be positive, got {tol}")));
    }
    obj.check_over(feasible)?;

    let mut alpha = obj.eval(&feasible.center());
    let mut alphas = vec![alpha];
    let mut last = feasible.center();
    for it in 1..=max_iter {
        let w = obj.p.axpy(-alpha, &obj.c);
        let (y, lin) = minimize_linear_over_box(&w, feasible);
        let gap = lin + (obj.q - alpha * obj.d);
        let den = obj.denominator(&y);
        if gap.abs() <= tol * T::one().max(alpha.abs() * den) {
            let value = obj.eval(&y);
            return Ok(DinkelbachOutcome {
                y,
                value,
                iterations: it,
                alphas,
                final_gap: gap,
            });
        }
        alpha = obj.eval(&y);
        alphas.push(alpha);
        last = y;
    }
    Err(Error::NoConvergence {
        method: "Dinkelbach",
        iterations: max_iter,
        last: last.to_f64_vec(),
    })
}

/// Exhaustive search over a uniform grid (both endpoints included) in up to
/// three dimensions. Ties keep the first grid point in lexicographic order.
pub fn grid_bruteforce_minimize<T: Scalar>(
    obj: &FractionalObjective<T>,
    feasible: &BoxSet<T>,
    points_per_axis: usize,
) -> Result<(Vector<T>, T)> {
    let n = obj.dim();
    if n > 3 {
        return Err(Error::Config(format!("grid search limited to dimension 3, got {n}")));
    }
    if points_per_axis < 2 {
        return Err(Error::Config("grid needs at least 2 points per axis".into()));
    }
    obj.check_over(feasible)?;

    let steps = T::lit((points_per_axis - 1) as f64);
    let coord = |axis: usize, i: usize| -> T {
        let (lo, hi) = (feasible.lo()[axis], feasible.hi()[axis]);
        if i + 1 == points_per_axis {
            hi
        } else {
            lo + (hi - lo) * T::lit(i as f64) / steps
        }
    };

    let total = points_per_axis.pow(n as u32);
    let mut best: Option<(Vector<T>, T)> = None;
    let mut idx = vec![0usize; n];
    for _ in 0..total {
        let y = Vector::from_raw((0..n).map(|a| coord(a, idx[a])).collect());
        let val = obj.eval(&y);
        if best.as_ref().is_none_or(|(_, b)| val < *b) {
            best = Some((y, val));
        }
        // odometer, last axis fastest
        for a in (0..n).rev() {
            idx[a] += 1;
            if idx[a] < points_per_axis {
                break;
            }
            idx[a] = 0;
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// `(argmin_{y ∈ C} f(x, y), −min_{y ∈ C} f(x, y))` for an affine-fractional instance.
pub fn best_response_residual<T: Scalar>(
    inst: &AffineFractionalInstance<T>,
    x: &Vector<T>,
    tol: T,
) -> Result<(Vector<T>, T)> {
    let obj = inst.objective_at(x)?;
    if !(obj.denominator(x) > T::zero()) {
        return Err(Error::Domain("denominator at x is not positive".into()));
    }
    let out = dinkelbach_minimize(&obj, inst.feasible_box(), tol, DEFAULT_MAX_ITER)?;
    Ok((out.y, obj.eval(x) - out.value))
}

//! Equilibrium oracles: bifunction values, diagonal normal subgradients and
//! best responses for the closed-form instance families.

use serde::{Deserialize, Serialize};

use crate::fractional::{self, FractionalObjective};
use crate::{BoxSet, Error, FeasibleSet, Matrix, Result, Scalar, Vector};

/// Minimizer of `f(x, ·)` over the oracle's feasible set.
#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse<T> {
    pub y: Vector<T>,
    /// `min_{y ∈ C} f(x, y)`; never positive since `y = x` is feasible.
    pub min_value: T,
}

impl<T: Scalar> BestResponse<T> {
    /// `-min_{y ∈ C} f(x, y)`; zero certifies that `x` solves the problem.
    pub fn residual(&self) -> T {
        -self.min_value
    }
}

/// Bifunction `f` with `f(x, x) = 0`, quasiconvex in its second argument.
pub trait EquilibriumOracle<T: Scalar> {
    fn dim(&self) -> usize;

    fn value(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T>;

    /// Some `g` in the star subdifferential of `f(x, ·)` at `x`:
    /// `⟨g, y - x⟩ < 0` whenever `f(x, y) < 0`. Not normalized.
    fn diagonal_subgradient(&self, x: &Vector<T>) -> Result<Vector<T>>;

    /// Exact `argmin_{y ∈ C} f(x, y)` when the family supports it.
    fn best_response(&self, _x: &Vector<T>) -> Option<Result<BestResponse<T>>> {
        None
    }

    fn supports_best_response(&self) -> bool {
        false
    }
}

/// Affine-fractional generalized variational inequality
///
/// `f(x, y) = ⟨Ax + b, (A₁y + b₁)/(cᵀy + d) − (A₁x + b₁)/(cᵀx + d)⟩`
/// over a box on which `cᵀy + d > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineFractionalInstance<T> {
    a: Matrix<T>,
    b: Vector<T>,
    a1: Matrix<T>,
    b1: Vector<T>,
    c: Vector<T>,
    d: T,
    feasible: BoxSet<T>,
}

fn check_square<T: Scalar>(m: &Matrix<T>, n: usize, field: &'static str) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::Field {
            field,
            message: format!("expected {n}x{n} matrix, got {}x{}", m.rows(), m.cols()),
        });
    }
    Ok(())
}

fn check_len<T: Scalar>(v: &Vector<T>, n: usize, field: &'static str) -> Result<()> {
    if v.len() != n {
        return Err(Error::Field {
            field,
            message: format!("expected length {n}, got {}", v.len()),
        });
    }
    Ok(())
}

impl<T: Scalar> AffineFractionalInstance<T> {
    /// Validates dimensions and that `cᵀy + d > 0` on the whole box
    /// (checked at the minimizing vertex).
    pub fn new(
        a: Matrix<T>,
        b: Vector<T>,
        a1: Matrix<T>,
        b1: Vector<T>,
        c: Vector<T>,
        d: T,
        feasible: BoxSet<T>,
    ) -> Result<Self> {
        let n = b.len();
        check_square(&a, n, "A")?;
        check_square(&a1, n, "A1")?;
        check_len(&b1, n, "b1")?;
        check_len(&c, n, "c")?;
        if feasible.dim() != n {
            return Err(Error::Field {
                field: "box",
                message: format!("expected dimension {n}, got {}", feasible.dim()),
            });
        }
        if !d.is_finite() {
            return Err(Error::Field {
                field: "d",
                message: "must be finite".into(),
            });
        }
        let min_den = feasible.min_affine(&c, d);
        if !(min_den > T::zero()) {
            return Err(Error::Field {
                field: "c",
                message: format!("denominator cᵀy + d reaches {min_den} <= 0 on the box"),
            });
        }
        Ok(Self {
            a,
            b,
            a1,
            b1,
            c,
            d,
            feasible,
        })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }
    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }
    pub fn b(&self) -> &Vector<T> {
        &self.b
    }
    pub fn a1(&self) -> &Matrix<T> {
        &self.a1
    }
    pub fn b1(&self) -> &Vector<T> {
        &self.b1
    }
    pub fn c(&self) -> &Vector<T> {
        &self.c
    }
    pub fn d(&self) -> T {
        self.d
    }
    pub fn feasible_box(&self) -> &BoxSet<T> {
        &self.feasible
    }

    /// Same instance with `A` replaced.
    pub fn with_a(&self, a: Matrix<T>) -> Result<Self> {
        let mut out = self.clone();
        check_square(&a, self.n(), "A")?;
        out.a = a;
        Ok(out)
    }

    fn denominator(&self, y: &Vector<T>, which: &str) -> Result<T> {
        let den = self.c.dot(y) + self.d;
        if !(den > T::zero()) {
            return Err(Error::Domain(format!(
                "denominator cᵀ{which} + d = {den} is not positive"
            )));
        }
        Ok(den)
    }

    /// `x ↦ (pᵀy + q)/(cᵀy + d)` with `p = A₁ᵀ(Ax+b)`, `q = b₁ᵀ(Ax+b)`;
    /// `f(x, y) = φ_x(y) − φ_x(x)`.
    pub fn objective_at(&self, x: &Vector<T>) -> Result<FractionalObjective<T>> {
        x.check_dim(self.n(), "fractional objective point")?;
        let u = self.a.matvec(x).add(&self.b);
        let p = self.a1.matvec_transposed(&u);
        let q = self.b1.dot(&u);
        Ok(FractionalObjective::new(p, q, self.c.clone(), self.d))
    }
}

impl<T: Scalar> EquilibriumOracle<T> for AffineFractionalInstance<T> {
    fn dim(&self) -> usize {
        self.n()
    }

    fn value(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        x.check_dim(self.n(), "bifunction x")?;
        y.check_dim(self.n(), "bifunction y")?;
        let den_x = self.denominator(x, "x")?;
        let den_y = self.denominator(y, "y")?;
        let u = self.a.matvec(x).add(&self.b);
        let vy = self.a1.matvec(y).add(&self.b1).scale(T::one() / den_y);
        let vx = self.a1.matvec(x).add(&self.b1).scale(T::one() / den_x);
        Ok(u.dot(&vy.sub(&vx)))
    }

    /// Gradient of the affine map `y ↦ a(y) − α b(y)` at `x` with
    /// `α = φ_x(x)`; it lies in the normal cone of the sublevel set.
    fn diagonal_subgradient(&self, x: &Vector<T>) -> Result<Vector<T>> {
        x.check_dim(self.n(), "subgradient point")?;
        let den = self.denominator(x, "x")?;
        let obj = self.objective_at(x)?;
        let alpha = (obj.p().dot(x) + obj.q()) / den;
        Ok(obj.p().axpy(-alpha, &self.c))
    }

    fn best_response(&self, x: &Vector<T>) -> Option<Result<BestResponse<T>>> {
        Some(
            fractional::best_response_residual(
                self,
                x,
                fractional::default_tol::<T>(),
            )
            .map(|(y, residual)| BestResponse {
                y,
                min_value: -residual,
            }),
        )
    }

    fn supports_best_response(&self) -> bool {
        true
    }
}

/// Affine variational inequality `F(x) = Mx + r`, `f(x, y) = ⟨F(x), y − x⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineVIInstance<T> {
    m: Matrix<T>,
    r: Vector<T>,
    feasible: BoxSet<T>,
}

impl<T: Scalar> AffineVIInstance<T> {
    pub fn new(m: Matrix<T>, r: Vector<T>, feasible: BoxSet<T>) -> Result<Self> {
        let n = r.len();
        check_square(&m, n, "M")?;
        if feasible.dim() != n {
            return Err(Error::Field {
                field: "box",
                message: format!("expected dimension {n}, got {}", feasible.dim()),
            });
        }
        Ok(Self { m, r, feasible })
    }

    pub fn m(&self) -> &Matrix<T> {
        &self.m
    }
    pub fn r(&self) -> &Vector<T> {
        &self.r
    }
    pub fn feasible_box(&self) -> &BoxSet<T> {
        &self.feasible
    }

    /// `F(x) = Mx + r`
    pub fn operator(&self, x: &Vector<T>) -> Vector<T> {
        self.m.matvec(x).add(&self.r)
    }
}

impl<T: Scalar> EquilibriumOracle<T> for AffineVIInstance<T> {
    fn dim(&self) -> usize {
        self.r.len()
    }

    fn value(&self, x: &Vector<T>, y: &Vector<T>) -> Result<T> {
        x.check_dim(self.dim(), "bifunction x")?;
        y.check_dim(self.dim(), "bifunction y")?;
        Ok(self.operator(x).dot(&y.sub(x)))
    }

    fn diagonal_subgradient(&self, x: &Vector<T>) -> Result<Vector<T>> {
        x.check_dim(self.dim(), "subgradient point")?;
        Ok(self.operator(x))
    }

    fn best_response(&self, x: &Vector<T>) -> Option<Result<BestResponse<T>>> {
        if let Err(e) = x.check_dim(self.dim(), "best response point") {
            return Some(Err(e));
        }
        let fx = self.operator(x);
        let (y, val) = fractional::minimize_linear_over_box(&fx, &self.feasible);
        Some(Ok(BestResponse {
            y,
            min_value: val - fx.dot(x),
        }))
    }

    fn supports_best_response(&self) -> bool {
        true
    }
}

//! Paramonotonicity certificate for affine-fractional instances.
//!
//! With `Â = (dA₁ᵀ − cb₁ᵀ)A`, the bifunction is paramonotone iff the
//! symmetric part `Â₁ = ½(Â + Âᵀ)` is positive semidefinite and
//! `rank(Â₁) <= rank(Â)`.

use serde::{Deserialize, Serialize};

use crate::{
    numeric_rank, singular_values, symmetric_eigenvalues, AffineFractionalInstance, Error, Matrix,
    Result, Scalar, Vector,
};

pub const DEFAULT_TOL: f64 = 1e-8;

fn jacobi_tol<T: Scalar>() -> T {
    T::lit(1e-14).max(T::epsilon() * T::lit(16.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamonotonicityReport<T> {
    pub a_hat: Matrix<T>,
    pub a_hat_sym: Matrix<T>,
    /// Spectrum of `a_hat_sym`, ascending.
    pub eigenvalues: Vector<T>,
    pub min_eigenvalue: T,
    pub rank_sym: usize,
    pub rank_a_hat: usize,
    /// Absolute PSD slack: relative tolerance times `max(1, ‖Â‖_F)`.
    pub tol: T,
    pub verdict: bool,
}

/// `(d·A₁ᵀ − c·b₁ᵀ)·A`
pub fn compute_a_hat<T: Scalar>(inst: &AffineFractionalInstance<T>) -> Matrix<T> {
    let left = inst
        .a1()
        .transpose()
        .scale(inst.d())
        .sub(&Matrix::outer(inst.c(), inst.b1()))
        .expect("n x n operands");
    left.matmul(inst.a()).expect("n x n operands")
}

/// Runs the PSD and rank tests on a given `Â`. `rel_tol` scales with
/// `max(1, ‖Â‖_F)` for the PSD slack and with `max(1, σ_max)` for ranks.
pub fn paramonotone_report<T: Scalar>(a_hat: Matrix<T>, rel_tol: T) -> Result<ParamonotonicityReport<T>> {
    if !(rel_tol > T::zero()) {
        return Err(Error::Config(format!("tolerance must be positive, got {rel_tol}")));
    }
    let a_hat_sym = a_hat.symmetric_part()?;
    let eigenvalues = symmetric_eigenvalues(&a_hat_sym, jacobi_tol())?;
    let min_eigenvalue = eigenvalues.iter().copied().fold(T::infinity(), T::min);
    let rank_sym = numeric_rank(&singular_values(&a_hat_sym, jacobi_tol())?, rel_tol)?;
    let rank_a_hat = numeric_rank(&singular_values(&a_hat, jacobi_tol())?, rel_tol)?;
    let tol = rel_tol * a_hat.frobenius_norm().max(T::one());
    let verdict = min_eigenvalue >= -tol && rank_sym <= rank_a_hat;
    Ok(ParamonotonicityReport {
        a_hat,
        a_hat_sym,
        eigenvalues,
        min_eigenvalue,
        rank_sym,
        rank_a_hat,
        tol,
        verdict,
    })
}

pub fn check_paramonotone<T: Scalar>(
    inst: &AffineFractionalInstance<T>,
    rel_tol: T,
) -> Result<ParamonotonicityReport<T>> {
    paramonotone_report(compute_a_hat(inst), rel_tol)
}

//! Closed convex feasible sets with exact Euclidean projections.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar, Vector};

/// A nonempty closed convex set `C` with its metric projection `P_C`.
pub trait FeasibleSet<T: Scalar> {
    fn dim(&self) -> usize;

    /// Euclidean projection of `x` onto the set.
    fn project(&self, x: &Vector<T>) -> Result<Vector<T>>;

    /// Membership with every defining inequality relaxed by `tol`.
    fn contains(&self, x: &Vector<T>, tol: T) -> Result<bool>;

    /// A canonical interior point, used as the default start.
    fn center(&self) -> Vector<T>;
}

/// Axis-aligned box `{x : lo <= x <= hi}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxSet<T> {
    lo: Vector<T>,
    hi: Vector<T>,
}

impl<T: Scalar> BoxSet<T> {
    pub fn new(lo: Vector<T>, hi: Vector<T>) -> Result<Self> {
        hi.check_dim(lo.len(), "box upper bound")?;
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] > hi[i]) {
            return Err(Error::InvalidSet(format!(
                "lo[{i}] = {} exceeds hi[{i}] = {}",
                lo[i], hi[i]
            )));
        }
        Ok(Self { lo, hi })
    }

    /// The cube `[low, high]^n`.
    pub fn cube(n: usize, low: T, high: T) -> Result<Self> {
        Self::new(Vector::new(vec![low; n])?, Vector::new(vec![high; n])?)
    }

    pub fn lo(&self) -> &Vector<T> {
        &self.lo
    }

    pub fn hi(&self) -> &Vector<T> {
        &self.hi
    }

    /// Minimum of `wᵀy + offset` over the box, attained at the sign-selected vertex.
    pub(crate) fn min_affine(&self, w: &Vector<T>, offset: T) -> T {
        w.iter()
            .enumerate()
            .map(|(i, &wi)| if wi < T::zero() { wi * self.hi[i] } else { wi * self.lo[i] })
            .fold(offset, |acc, t| acc + t)
    }
}

impl<T: Scalar> FeasibleSet<T> for BoxSet<T> {
    fn dim(&self) -> usize {
        self.lo.len()
    }

    fn project(&self, x: &Vector<T>) -> Result<Vector<T>> {
        x.check_dim(self.dim(), "box projection")?;
        Ok(Vector::from_raw(
            x.iter()
                .enumerate()
                .map(|(i, &xi)| xi.max(self.lo[i]).min(self.hi[i]))
                .collect(),
        ))
    }

    fn contains(&self, x: &Vector<T>, tol: T) -> Result<bool> {
        x.check_dim(self.dim(), "box membership")?;
        Ok(x
            .iter()
            .enumerate()
            .all(|(i, &xi)| xi >= self.lo[i] - tol && xi <= self.hi[i] + tol))
    }

    fn center(&self) -> Vector<T> {
        self.lo.add(&self.hi).scale(T::lit(0.5))
    }
}

/// Closed Euclidean ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallSet<T> {
    center: Vector<T>,
    radius: T,
}

impl<T: Scalar> BallSet<T> {
    pub fn new(center: Vector<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::InvalidSet(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn radius(&self) -> T {
        self.radius
    }
}

impl<T: Scalar> FeasibleSet<T> for BallSet<T> {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn project(&self, x: &Vector<T>) -> Result<Vector<T>> {
        x.check_dim(self.dim(), "ball projection")?;
        let offset = x.sub(&self.center);
        let dist = offset.norm();
        if dist <= self.radius {
            // covers x == center
            return Ok(x.clone());
        }
        // Shrink past round-off so the result projects onto itself exactly.
        let mut s = self.radius / dist;
        loop {
            let p = self.center.axpy(s, &offset);
            if p.dist(&self.center) <= self.radius {
                return Ok(p);
            }
            s = s * (T::one() - T::epsilon());
        }
    }

    fn contains(&self, x: &Vector<T>, tol: T) -> Result<bool> {
        x.check_dim(self.dim(), "ball membership")?;
        Ok(x.dist(&self.center) <= self.radius + tol)
    }

    fn center(&self) -> Vector<T> {
        self.center.clone()
    }
}

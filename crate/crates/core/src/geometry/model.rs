use serde::Serialize;

use crate::jet::Real;

/// `Q^4(c)` as a quadric `<x, x> = 1/c` in flat 5-space (Lorentzian, with
/// the last coordinate timelike, when `c < 0`), or flat 4-space for `c = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceFormModel {
    pub c: f64,
    pub signature: Vec<f64>,
}

impl SpaceFormModel {
    pub fn new(c: f64) -> Self {
        let signature = if c > 0.0 {
            vec![1.0; 5]
        } else if c < 0.0 {
            vec![1.0, 1.0, 1.0, 1.0, -1.0]
        } else {
            vec![1.0; 4]
        };
        Self { c, signature }
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.signature.iter().zip(a).zip(b).map(|((g, x), y)| g * x * y).sum()
    }

    pub fn inner_t<T: Real>(&self, a: &[T], b: &[T]) -> T {
        self.signature.iter().zip(a).zip(b).fold(T::cst(0.0), |acc, ((g, x), y)| acc + (*x * *y).scale(*g))
    }

    /// `| <x, x> - 1/c |`, or `0` in the flat model.
    pub fn quadric_residual(&self, x: &[f64]) -> f64 {
        if self.c == 0.0 {
            0.0
        } else {
            (self.inner(x, x) - 1.0 / self.c).abs()
        }
    }

    /// The (upper sheet of the) model contains `x` up to `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim() && self.quadric_residual(x) <= tol && (self.c >= 0.0 || x[4] > 0.0)
    }
}

//! Second-order forward-mode differentiation.
//!
//! A [`Jet`] carries a value together with its gradient and Hessian with
//! respect to `N` independent variables. Charts are written once, generic
//! over [`Real`], and evaluated either on plain `f64` or on jets.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar operations a chart needs.
pub trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    fn value(&self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    /// `f(self)` for a univariate `f` known only through `f, f', f''` at
    /// `self.value()`.
    fn lift(self, f: [f64; 3]) -> Self;

    fn scale(self, k: f64) -> Self {
        self * Self::cst(k)
    }
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn lift(self, f: [f64; 3]) -> Self {
        f[0]
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    pub v: f64,
    pub g: [f64; N],
    pub h: [[f64; N]; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        Self { v, g: [0.0; N], h: [[0.0; N]; N] }
    }

    /// The `i`-th independent variable at value `v`.
    pub fn var(v: f64, i: usize) -> Self {
        let mut j = Self::constant(v);
        j.g[i] = 1.0;
        j
    }

    /// Chain rule for a univariate function with derivatives `f0, f1, f2`.
    fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut out = Self::constant(f0);
        for i in 0..N {
            out.g[i] = f1 * self.g[i];
            for j in 0..N {
                out.h[i][j] = f2 * self.g[i] * self.g[j] + f1 * self.h[i][j];
            }
        }
        out
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.v += o.v;
        for i in 0..N {
            self.g[i] += o.g[i];
            for j in 0..N {
                self.h[i][j] += o.h[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(mut self) -> Self {
        self.v = -self.v;
        for i in 0..N {
            self.g[i] = -self.g[i];
            for j in 0..N {
                self.h[i][j] = -self.h[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::constant(self.v * o.v);
        for i in 0..N {
            out.g[i] = self.g[i] * o.v + self.v * o.g[i];
            for j in 0..N {
                out.h[i][j] = self.h[i][j] * o.v + self.g[i] * o.g[j] + self.g[j] * o.g[i] + self.v * o.h[i][j];
            }
        }
        out
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let r = 1.0 / o.v;
        self * o.chain(r, -r * r, 2.0 * r * r * r)
    }
}

impl<const N: usize> Real for Jet<N> {
    fn cst(v: f64) -> Self {
        Self::constant(v)
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }
    fn sinh(self) -> Self {
        self.chain(self.v.sinh(), self.v.cosh(), self.v.sinh())
    }
    fn cosh(self) -> Self {
        self.chain(self.v.cosh(), self.v.sinh(), self.v.cosh())
    }
    fn lift(self, f: [f64; 3]) -> Self {
        self.chain(f[0], f[1], f[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f<T: Real>(x: T, y: T) -> T {
        x * x.sin() / (T::cst(2.0) + y.cosh()) + (x * y).sqrt()
    }

    #[test]
    fn matches_central_differences() {
        let (x0, y0) = (0.7, 1.3);
        let j = f(Jet::<2>::var(x0, 0), Jet::<2>::var(y0, 1));
        let h = 1e-4;
        let fx = (f(x0 + h, y0) - f(x0 - h, y0)) / (2.0 * h);
        let fy = (f(x0, y0 + h) - f(x0, y0 - h)) / (2.0 * h);
        let fxy = (f(x0 + h, y0 + h) - f(x0 + h, y0 - h) - f(x0 - h, y0 + h) + f(x0 - h, y0 - h)) / (4.0 * h * h);
        let fxx = (f(x0 + h, y0) - 2.0 * f(x0, y0) + f(x0 - h, y0)) / (h * h);
        assert!((j.v - f(x0, y0)).abs() < 1e-15);
        assert!((j.g[0] - fx).abs() < 1e-7);
        assert!((j.g[1] - fy).abs() < 1e-7);
        assert!((j.h[0][1] - fxy).abs() < 1e-5);
        assert!((j.h[1][0] - fxy).abs() < 1e-5);
        assert!((j.h[0][0] - fxx).abs() < 1e-5);
    }

    #[test]
    fn lift_is_composition() {
        // lift with (sin, cos, -sin) must agree with sin itself.
        let x = Jet::<1>::var(0.4, 0) * Jet::<1>::var(0.4, 0);
        let a = x.sin();
        let b = x.lift([x.v.sin(), x.v.cos(), -x.v.sin()]);
        assert_eq!(a, b);
    }

    proptest::proptest! {
        #[test]
        fn pythagorean_identities_have_zero_derivatives(x in -3.0f64..3.0, y in -3.0f64..3.0) {
            let u = Jet::<2>::var(x, 0) * Jet::<2>::var(y, 1);
            let one = Jet::<2>::constant(1.0);
            let a = u.sin() * u.sin() + u.cos() * u.cos() - one;
            let b = u.cosh() * u.cosh() - u.sinh() * u.sinh() - one;
            for j in [a, b] {
                proptest::prop_assert!(j.v.abs() < 1e-12 * (1.0 + u.v.cosh().powi(2)));
                for i in 0..2 {
                    proptest::prop_assert!(j.g[i].abs() < 1e-9 * (1.0 + u.v.cosh().powi(2)) * (1.0 + x.abs() + y.abs()));
                }
            }
        }

        #[test]
        fn product_and_quotient_match_closed_form(x in 0.1f64..3.0, y in 0.1f64..3.0) {
            // q = x^2 y / (1 + y), with hand-derived gradient and Hessian.
            let (jx, jy) = (Jet::<2>::var(x, 0), Jet::<2>::var(y, 1));
            let q = jx * jx * jy / (Jet::constant(1.0) + jy);
            let d = 1.0 + y;
            let g = [2.0 * x * y / d, x * x / (d * d)];
            let h = [[2.0 * y / d, 2.0 * x / (d * d)], [2.0 * x / (d * d), -2.0 * x * x / (d * d * d)]];
            proptest::prop_assert!((q.v - x * x * y / d).abs() < 1e-12 * (1.0 + q.v.abs()));
            for i in 0..2 {
                proptest::prop_assert!((q.g[i] - g[i]).abs() < 1e-12 * (1.0 + g[i].abs()));
                for j in 0..2 {
                    proptest::prop_assert!((q.h[i][j] - h[i][j]).abs() < 1e-12 * (1.0 + h[i][j].abs()));
                }
            }
        }

        #[test]
        fn hessian_is_symmetric_and_sqrt_inverts_square(x in 0.2f64..2.0, y in 0.2f64..2.0) {
            let (jx, jy) = (Jet::<2>::var(x, 0), Jet::<2>::var(y, 1));
            let w = (jx * jy.sin() + jy * jx.cosh()).sqrt();
            proptest::prop_assert!((w.h[0][1] - w.h[1][0]).abs() < 1e-12 * (1.0 + w.h[0][1].abs()));
            let back = w * w - (jx * jy.sin() + jy * jx.cosh());
            proptest::prop_assert!(back.g.iter().all(|v| v.abs() < 1e-12 * (1.0 + w.v * w.v)));
            proptest::prop_assert!(back.h.iter().flatten().all(|v| v.abs() < 1e-11 * (1.0 + w.v * w.v)));
        }
    }
}

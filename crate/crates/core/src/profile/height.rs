//! Height functions of profile curves: rδ-catenaries by fixed-step
//! integration and c-helices in closed form.

use serde::Serialize;

use super::ProfileError;

/// Smallest `|x|` (or rotation radius) tolerated before a curve is cut.
pub const DEFAULT_FLOOR: f64 = 1e-6;

/// Parameters of `x x'' + 3 r x^2 + 2 x'^2 - 2 delta = 0`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct CatenaryParams {
    pub r: f64,
    pub delta: i8,
    pub x0: f64,
    pub dx0: f64,
}

impl CatenaryParams {
    pub fn new(r: f64, delta: i8, x0: f64, dx0: f64) -> Result<Self, ProfileError> {
        if !matches!(delta, -1..=1) {
            return Err(ProfileError::BadDelta(delta));
        }
        Ok(Self { r, delta, x0, dx0 })
    }

    /// `x''` from the equation; undefined at `x = 0`.
    pub fn accel(&self, x: f64, dx: f64) -> f64 {
        (2.0 * self.delta as f64 - 2.0 * dx * dx - 3.0 * self.r * x * x) / x
    }

    pub fn residual(&self, x: f64, dx: f64, ddx: f64) -> f64 {
        x * ddx + 3.0 * self.r * x * x + 2.0 * dx * dx - 2.0 * self.delta as f64
    }
}

/// Why a curve stops before the requested end of its interval.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Truncation {
    /// The height came within the floor of zero.
    HeightFloor { s: f64 },
    /// The unit-speed radicand went negative: the curve leaves the band
    /// where it can live in the target surface.
    RadicandNegative { s: f64 },
    /// The rotation radius came within the floor of zero.
    AxisCollision { s: f64 },
}

impl Truncation {
    pub fn at(&self) -> f64 {
        match *self {
            Truncation::HeightFloor { s } | Truncation::RadicandNegative { s } | Truncation::AxisCollision { s } => s,
        }
    }
}

/// Samples of `x`, `x'`, `x''` on a uniform grid `s_i = s0 + i step`.
#[derive(Clone, Debug, Serialize)]
pub struct HeightFunction {
    pub s0: f64,
    pub step: f64,
    pub x: Vec<f64>,
    pub dx: Vec<f64>,
    pub ddx: Vec<f64>,
    pub truncated: Option<Truncation>,
}

impl HeightFunction {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn s(&self, i: usize) -> f64 {
        self.s0 + i as f64 * self.step
    }

    pub fn s_end(&self) -> f64 {
        self.s(self.len().saturating_sub(1))
    }

    /// `(x, x', x'')` at any `s` in range, by quintic Hermite interpolation
    /// of the samples (exact at the nodes).
    pub fn at(&self, s: f64) -> [f64; 3] {
        let (i, t) = self.locate(s);
        quintic([self.x[i], self.dx[i], self.ddx[i]], [self.x[i + 1], self.dx[i + 1], self.ddx[i + 1]], self.step, t)
    }

    /// Interval index and local coordinate in `[0, 1]`.
    pub(crate) fn locate(&self, s: f64) -> (usize, f64) {
        let n = self.len();
        assert!(n >= 2, "need two samples to interpolate");
        let u = ((s - self.s0) / self.step).clamp(0.0, (n - 1) as f64);
        let i = (u.floor() as usize).min(n - 2);
        (i, u - i as f64)
    }

    /// Largest ODE residual at interior nodes with `x''` estimated from
    /// the `x'` samples by the five-point stencil, so the measure is
    /// independent of the stored `x''`.
    pub fn ode_residual(&self, p: &CatenaryParams) -> f64 {
        let h = self.step;
        (2..self.len().saturating_sub(2))
            .map(|i| {
                let d = &self.dx;
                let ddx = (-d[i + 2] + 8.0 * d[i + 1] - 8.0 * d[i - 1] + d[i - 2]) / (12.0 * h);
                p.residual(self.x[i], self.dx[i], ddx).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Quintic Hermite interpolation on one interval of length `h`; returns
/// value and first two derivatives at local coordinate `t`.
pub(crate) fn quintic(a: [f64; 3], b: [f64; 3], h: f64, t: f64) -> [f64; 3] {
    let (f0, d0, c0) = (a[0], a[1] * h, a[2] * h * h);
    let (f1, d1, c1) = (b[0], b[1] * h, b[2] * h * h);
    let df = f1 - f0;
    let k = [
        f0,
        d0,
        c0 / 2.0,
        10.0 * df - 6.0 * d0 - 4.0 * d1 - (3.0 * c0 - c1) / 2.0,
        -15.0 * df + 8.0 * d0 + 7.0 * d1 + (3.0 * c0 - 2.0 * c1) / 2.0,
        6.0 * df - 3.0 * d0 - 3.0 * d1 - (c0 - c1) / 2.0,
    ];
    let mut p = [0.0; 3];
    for &kn in k.iter().rev() {
        p[2] = p[2] * t + p[1] * 2.0;
        p[1] = p[1] * t + p[0];
        p[0] = p[0] * t + kn;
    }
    [p[0], p[1] / h, p[2] / (h * h)]
}

/// Classical fourth-order Runge-Kutta on the first-order system
/// `(x, x')' = (x', accel(x, x'))`. Stops with a flag when `|x|` drops
/// below `floor`.
pub fn integrate_catenary(
    p: &CatenaryParams,
    interval: (f64, f64),
    step: f64,
    floor: f64,
) -> Result<HeightFunction, ProfileError> {
    if !(step > 0.0) {
        return Err(ProfileError::BadStep(step));
    }
    if p.x0 == 0.0 {
        return Err(ProfileError::SingularStart);
    }
    if !(interval.1 > interval.0) {
        return Err(ProfileError::BadInterval(interval.0, interval.1));
    }
    let n = ((interval.1 - interval.0) / step).round() as usize;
    let mut out = HeightFunction {
        s0: interval.0,
        step,
        x: Vec::with_capacity(n + 1),
        dx: Vec::with_capacity(n + 1),
        ddx: Vec::with_capacity(n + 1),
        truncated: None,
    };
    let f = |y: [f64; 2]| [y[1], p.accel(y[0], y[1])];
    let mut y = [p.x0, p.dx0];
    for i in 0..=n {
        if y[0].abs() < floor || !y[0].is_finite() || !y[1].is_finite() {
            out.truncated = Some(Truncation::HeightFloor { s: out.s(i) });
            break;
        }
        out.x.push(y[0]);
        out.dx.push(y[1]);
        out.ddx.push(p.accel(y[0], y[1]));
        if i == n {
            break;
        }
        let h = step;
        let k1 = f(y);
        let k2 = f([y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = f([y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = f([y[0] + h * k3[0], y[1] + h * k3[1]]);
        for j in 0..2 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
    }
    Ok(out)
}

/// Closed-form solution of `x'' + c x = 0`: `a cos(sqrt(c) s) + b sin(sqrt(c) s)`
/// for `c > 0`, `a + b s` for `c = 0`, `a cosh + b sinh` for `c < 0`.
pub fn helix_height(c: f64, a: f64, b: f64, interval: (f64, f64), step: f64) -> Result<HeightFunction, ProfileError> {
    if !(step > 0.0) {
        return Err(ProfileError::BadStep(step));
    }
    if !(interval.1 > interval.0) {
        return Err(ProfileError::BadInterval(interval.0, interval.1));
    }
    let n = ((interval.1 - interval.0) / step).round() as usize;
    let mut out = HeightFunction { s0: interval.0, step, x: vec![], dx: vec![], ddx: vec![], truncated: None };
    for i in 0..=n {
        let [x, dx] = helix_at(c, a, b, out.s(i));
        out.x.push(x);
        out.dx.push(dx);
        out.ddx.push(-c * x);
    }
    Ok(out)
}

/// `(x, x')` of the helix height at `s`.
pub fn helix_at(c: f64, a: f64, b: f64, s: f64) -> [f64; 2] {
    if c > 0.0 {
        let w = c.sqrt();
        let (sn, cs) = (w * s).sin_cos();
        [a * cs + b * sn, w * (-a * sn + b * cs)]
    } else if c < 0.0 {
        let w = (-c).sqrt();
        let (sh, ch) = ((w * s).sinh(), (w * s).cosh());
        [a * ch + b * sh, w * (a * sh + b * ch)]
    } else {
        [a + b * s, b]
    }
}

/// Step-halving comparison of [`integrate_catenary`].
#[derive(Clone, Debug, Serialize)]
pub struct Convergence {
    pub steps: Vec<f64>,
    /// `max |x_h - x_{h/2}|` over common nodes, one entry per step but the
    /// last.
    pub differences: Vec<f64>,
    /// `log2` of successive difference ratios.
    pub orders: Vec<f64>,
}

/// Integrates at `step, step/2, ..., step/2^(levels-1)` and reports the
/// observed order of the differences between consecutive levels.
pub fn richardson(
    p: &CatenaryParams,
    interval: (f64, f64),
    step: f64,
    levels: usize,
) -> Result<Convergence, ProfileError> {
    let mut runs = Vec::new();
    let mut h = step;
    for _ in 0..levels.max(2) {
        runs.push(integrate_catenary(p, interval, h, DEFAULT_FLOOR)?);
        h /= 2.0;
    }
    let mut differences = Vec::new();
    for w in runs.windows(2) {
        let (coarse, fine) = (&w[0], &w[1]);
        let n = coarse.len().min(fine.len().div_ceil(2));
        let d = (0..n).map(|i| (coarse.x[i] - fine.x[2 * i]).abs()).fold(0.0, f64::max);
        differences.push(d);
    }
    let orders = differences.windows(2).map(|d| (d[0] / d[1]).log2()).collect();
    Ok(Convergence { steps: runs.iter().map(|r| r.step).collect(), differences, orders })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn linear_solution() {
        let p = CatenaryParams::new(0.0, 1, 1.0, 1.0).unwrap();
        let h = integrate_catenary(&p, (0.0, 2.0), 1e-2, DEFAULT_FLOOR).unwrap();
        for i in 0..h.len() {
            assert!(close(h.x[i], 1.0 + h.s(i), 1e-12));
        }
    }

    #[test]
    fn cube_root_solution() {
        let p = CatenaryParams::new(0.0, 0, 1.0, 1.0 / 3.0).unwrap();
        let h = integrate_catenary(&p, (0.0, 1.0), 1e-3, DEFAULT_FLOOR).unwrap();
        for i in 0..h.len() {
            assert!(close(h.x[i], (1.0 + h.s(i)).cbrt(), 1e-11));
        }
    }

    #[test]
    fn residual_on_the_grid() {
        let p = CatenaryParams::new(1.0, 1, 0.5, 0.0).unwrap();
        let h = integrate_catenary(&p, (0.0, 1.0), 1e-3, DEFAULT_FLOOR).unwrap();
        assert!(h.truncated.is_none());
        assert!(h.ode_residual(&p) <= 1e-8, "{}", h.ode_residual(&p));
    }

    #[test]
    fn fourth_order_under_halving() {
        let p = CatenaryParams::new(1.0, 1, 0.5, 0.0).unwrap();
        let c = richardson(&p, (0.0, 1.0), 0.1, 4).unwrap();
        for o in &c.orders {
            assert!((3.7..4.3).contains(o), "{c:?}");
        }
    }

    #[test]
    fn errors() {
        let p = CatenaryParams::new(1.0, 1, 0.0, 1.0).unwrap();
        assert!(matches!(integrate_catenary(&p, (0.0, 1.0), 1e-3, DEFAULT_FLOOR), Err(ProfileError::SingularStart)));
        let p = CatenaryParams::new(1.0, 1, 1.0, 0.0).unwrap();
        assert!(matches!(integrate_catenary(&p, (0.0, 1.0), 0.0, DEFAULT_FLOOR), Err(ProfileError::BadStep(_))));
        assert!(CatenaryParams::new(1.0, 2, 1.0, 0.0).is_err());
    }

    #[test]
    fn floor_truncates() {
        // x'' = -2 x'^2 / x with x' = -1 drives x to zero.
        let p = CatenaryParams::new(0.0, 0, 1.0, -1.0).unwrap();
        let h = integrate_catenary(&p, (0.0, 2.0), 1e-3, 1e-2).unwrap();
        let t = h.truncated.expect("hits the floor");
        assert!(t.at() < 1.0 / 3.0 + 1e-2);
    }

    #[test]
    fn helices() {
        let h = helix_height(1.0, 1.0, 0.0, (0.0, 1.0), 0.1).unwrap();
        assert!(close(h.x[5], 0.5f64.cos(), 1e-15));
        let h = helix_height(0.0, 2.0, 3.0, (0.0, 1.0), 0.1).unwrap();
        assert!(close(h.x[10], 5.0, 1e-12));
        let h = helix_height(-1.0, 0.0, 1.0, (0.0, 1.0), 0.1).unwrap();
        for i in 0..h.len() {
            assert!(close(h.x[i], h.s(i).sinh(), 1e-14));
            assert!(close(h.ddx[i] - h.x[i], 0.0, 1e-15));
        }
    }

    #[test]
    fn interpolation_is_exact_at_nodes_and_accurate_between() {
        let h = helix_height(1.0, 1.0, 0.0, (0.0, 1.0), 0.05).unwrap();
        let at = h.at(h.s(7));
        assert!(close(at[0], h.x[7], 1e-15) && close(at[1], h.dx[7], 1e-14));
        let s = 0.3137;
        let at = h.at(s);
        assert!(close(at[0], s.cos(), 1e-11));
        assert!(close(at[1], -s.sin(), 1e-9));
        assert!(close(at[2], -s.cos(), 1e-6));
    }
}

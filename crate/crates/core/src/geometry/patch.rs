//! Charts `(u0, u1, u2) -> Q^4(c)` of the two hypersurface families and
//! their partial derivatives.

use std::f64::consts::PI;

use serde::Serialize;

use super::{GeometryError, SpaceFormModel};
use crate::jet::{Jet, Real};
use crate::profile::ProfileCurve;

/// How chart partials are obtained.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivatives {
    /// Exact second-order forward mode.
    Forward,
    /// Second-order central differences with step `h`.
    Central { h: f64 },
}

/// A 2-surface chart in the unit 3-sphere of flat 4-space.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeBase {
    /// Totally geodesic 2-sphere `x4 = 0`.
    GreatSphere,
    /// Minimal flat torus `(cos u, sin u, cos v, sin v) / sqrt 2`.
    CliffordTorus,
}

impl ConeBase {
    pub fn chart<T: Real>(&self, u: T, v: T) -> [T; 4] {
        match self {
            ConeBase::GreatSphere => [u.cos(), u.sin() * v.cos(), u.sin() * v.sin(), T::cst(0.0)],
            ConeBase::CliffordTorus => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                [u.cos().scale(r), u.sin().scale(r), v.cos().scale(r), v.sin().scale(r)]
            }
        }
    }

    /// Sampling box in `(u, v)`, away from chart singularities.
    pub fn sample_box(&self) -> [(f64, f64); 2] {
        match self {
            ConeBase::GreatSphere => [(0.2, PI - 0.2), (0.0, 1.8 * PI)],
            ConeBase::CliffordTorus => [(0.0, 1.8 * PI), (0.0, 1.8 * PI)],
        }
    }
}

/// Orbit of a profile `b(s)` in `Q^2(c)`: the first profile coordinate is
/// spun around by the unit 2-sphere chart,
/// `F(s, t1, t2) = (b1 Phi(t1, t2), b2, b3)`.
#[derive(Clone, Debug, Serialize)]
pub struct RotationPatch {
    pub profile: ProfileCurve,
}

/// `G(t, u, v) = exp_x(t xi(x))` for `x` on a base surface in an umbilical
/// `Q^3(cbar)` of `Q^4(c)` and `xi` the unit normal of `Q^3(cbar)`.
#[derive(Clone, Debug, Serialize)]
pub struct ConePatch {
    pub cbar: f64,
    pub base: ConeBase,
    /// Radius of the 3-sphere `Q^3(cbar)`.
    pub rho: f64,
    /// Offset of `Q^3(cbar)` along the last axis (`c != 0`).
    pub offset: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Chart {
    Rotation(RotationPatch),
    Cone(ConePatch),
}

#[derive(Clone, Debug, Serialize)]
pub struct HypersurfacePatch {
    pub model: SpaceFormModel,
    pub chart: Chart,
    /// Sampling box in chart coordinates.
    pub domain: [(f64, f64); 3],
}

/// Chart value with first and second partials at one point.
#[derive(Clone, Debug)]
pub struct Partials {
    pub point: Vec<f64>,
    pub first: [Vec<f64>; 3],
    pub second: [[Vec<f64>; 3]; 3],
}

/// Rotation hypersurface of a profile that lives in `Q^2(c)`, `c` the
/// model curvature.
pub fn rotation_hypersurface(profile: ProfileCurve, model: SpaceFormModel) -> Result<HypersurfacePatch, GeometryError> {
    if profile.k != model.c {
        return Err(GeometryError::CurvatureMismatch { profile: profile.k, model: model.c });
    }
    if let Some((i, x)) = profile.height.x.iter().enumerate().find(|(_, x)| **x <= 0.0) {
        return Err(GeometryError::NonPositiveRadius { s: profile.s(i), radius: *x });
    }
    let (a, b) = profile.s_range();
    Ok(HypersurfacePatch {
        model,
        chart: Chart::Rotation(RotationPatch { profile }),
        domain: [(a, b), (0.2, PI - 0.2), (0.0, 1.8 * PI)],
    })
}

/// Generalized cone over `base`, scaled into the umbilical 3-sphere
/// `Q^3(cbar)` of `Q^4(c)`, for ruling parameters in `t_range`.
pub fn generalized_cone(
    base: ConeBase,
    cbar: f64,
    model: SpaceFormModel,
    t_range: (f64, f64),
) -> Result<HypersurfacePatch, GeometryError> {
    let c = model.c;
    if cbar < c {
        return Err(GeometryError::CbarBelowC { cbar, c });
    }
    if cbar <= 0.0 {
        return Err(GeometryError::Unsupported("cone bases need a spherical Q^3(cbar)"));
    }
    let offset = if c > 0.0 {
        (1.0 / c - 1.0 / cbar).max(0.0).sqrt()
    } else if c < 0.0 {
        (1.0 / cbar - 1.0 / c).sqrt()
    } else {
        0.0
    };
    let [bu, bv] = base.sample_box();
    Ok(HypersurfacePatch {
        model,
        chart: Chart::Cone(ConePatch { cbar, base, rho: 1.0 / cbar.sqrt(), offset }),
        domain: [t_range, bu, bv],
    })
}

impl HypersurfacePatch {
    pub fn eval<T: Real>(&self, u: [T; 3]) -> Vec<T> {
        match &self.chart {
            Chart::Rotation(r) => {
                let [b, db, ddb] = r.profile.local(u[0].value());
                let beta: [T; 3] = std::array::from_fn(|j| u[0].lift([b[j], db[j], ddb[j]]));
                let (t1, t2) = (u[1], u[2]);
                let mut out =
                    vec![beta[0] * t1.cos(), beta[0] * t1.sin() * t2.cos(), beta[0] * t1.sin() * t2.sin(), beta[1]];
                if self.model.c != 0.0 {
                    out.push(beta[2]);
                }
                out
            }
            Chart::Cone(k) => self.cone(k, u),
        }
    }

    fn cone<T: Real>(&self, k: &ConePatch, u: [T; 3]) -> Vec<T> {
        let c = self.model.c;
        let g = k.base.chart(u[1], u[2]);
        let t = u[0];
        if c == 0.0 {
            // Radial geodesics off a round 3-sphere about the origin.
            return g.iter().map(|gi| gi.scale(k.rho) + t * *gi).collect();
        }
        let mut x: Vec<T> = g.iter().map(|gi| gi.scale(k.rho)).collect();
        x.push(T::cst(k.offset));
        // xi = (a - c <a, x> a) / |.| with a the last axis; <a, x> is the
        // constant sig * offset on the slice.
        let sig = self.model.signature[4];
        let ax = sig * k.offset;
        let mut xi: Vec<T> = x.iter().map(|xi| xi.scale(-c * ax)).collect();
        xi[4] = xi[4] + T::cst(1.0);
        let norm = (sig - c * ax * ax).sqrt();
        let w = c.abs().sqrt();
        let (p, q) = if c > 0.0 {
            let a = t.scale(w);
            (a.cos(), a.sin().scale(1.0 / (w * norm)))
        } else {
            let a = t.scale(w);
            (a.cosh(), a.sinh().scale(1.0 / (w * norm)))
        };
        x.iter().zip(&xi).map(|(xa, na)| p * *xa + q * *na).collect()
    }

    pub fn point(&self, u: [f64; 3]) -> Vec<f64> {
        self.eval(u)
    }

    pub fn partials(&self, u: [f64; 3], d: Derivatives) -> Partials {
        match d {
            Derivatives::Forward => {
                let j = self.eval(std::array::from_fn::<Jet<3>, 3, _>(|i| Jet::var(u[i], i)));
                Partials {
                    point: j.iter().map(|x| x.v).collect(),
                    first: std::array::from_fn(|i| j.iter().map(|x| x.g[i]).collect()),
                    second: std::array::from_fn(|i| std::array::from_fn(|k| j.iter().map(|x| x.h[i][k]).collect())),
                }
            }
            Derivatives::Central { h } => {
                let at = |d: [f64; 3]| self.eval([u[0] + d[0], u[1] + d[1], u[2] + d[2]]);
                let e = |i: usize, a: f64| {
                    let mut d = [0.0; 3];
                    d[i] = a;
                    d
                };
                let f0 = at([0.0; 3]);
                let n = f0.len();
                let plus: [Vec<f64>; 3] = std::array::from_fn(|i| at(e(i, h)));
                let minus: [Vec<f64>; 3] = std::array::from_fn(|i| at(e(i, -h)));
                let first = std::array::from_fn(|i| (0..n).map(|a| (plus[i][a] - minus[i][a]) / (2.0 * h)).collect());
                let second = std::array::from_fn(|i| {
                    std::array::from_fn(|k| {
                        if i == k {
                            (0..n).map(|a| (plus[i][a] - 2.0 * f0[a] + minus[i][a]) / (h * h)).collect()
                        } else {
                            let mut d = [[0.0; 3]; 4];
                            for (m, (si, sk)) in
                                [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)].into_iter().enumerate()
                            {
                                d[m][i] = si * h;
                                d[m][k] = sk * h;
                            }
                            let v: Vec<Vec<f64>> = d.iter().map(|dd| at(*dd)).collect();
                            (0..n).map(|a| (v[0][a] - v[1][a] - v[2][a] + v[3][a]) / (4.0 * h * h)).collect()
                        }
                    })
                });
                Partials { point: f0, first, second }
            }
        }
    }

    /// Chart coordinates of grid sample `(i, j, k)`: `ns` strictly interior
    /// points in the first coordinate, endpoints included in the others.
    pub fn sample(&self, grid: [usize; 3], idx: [usize; 3]) -> [f64; 3] {
        let [(a, b), (c, d), (e, f)] = self.domain;
        let lin = |lo: f64, hi: f64, n: usize, k: usize| {
            if n == 1 {
                (lo + hi) / 2.0
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        };
        [
            a + (b - a) * (idx[0] + 1) as f64 / (grid[0] + 1) as f64,
            lin(c, d, grid[1], idx[1]),
            lin(e, f, grid[2], idx[2]),
        ]
    }
}

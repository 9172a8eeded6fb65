//! Unit-speed profile curves on `Q^2(k)` with a prescribed height function.
//!
//! For `k > 0` the surface is the sphere `<b, b> = 1/k` in Euclidean 3-space
//! and the curve is `(x, w cos t, w sin t)` with `w = sqrt(1/k - x^2)`. For
//! `k < 0` it is the hyperboloid in Lorentz 3-space (last coordinate
//! timelike) and the curve is `(x, w sinh t, w cosh t)` with
//! `w = sqrt(x^2 - 1/k)`. For `k = 0` it is the plane graph `(x, t, 0)`.
//! In all three cases `t` is found by quadrature of the unit-speed
//! condition.

use serde::Serialize;

use super::ProfileError;
use super::{quintic, HeightFunction, Truncation};
use crate::jet::{Jet, Real};

type J = Jet<1>;

/// Radicands within this distance of zero count as zero (the curve runs
/// along the boundary of the admissible band, as the great circles do).
const RADICAND_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct ProfileCurve {
    pub k: f64,
    /// 0 for the Euclidean ambient space, 1 for the Lorentzian one.
    pub eps0: u8,
    /// The height function, cut to the admissible part.
    pub height: HeightFunction,
    pub angle: Vec<[f64; 3]>,
    pub points: Vec<[f64; 3]>,
    pub tangents: Vec<[f64; 3]>,
    pub truncated: Option<Truncation>,
}

fn jet(f: [f64; 3]) -> J {
    Jet { v: f[0], g: [f[1]], h: [[f[2]]] }
}

fn parts(j: J) -> [f64; 3] {
    [j.v, j.g[0], j.h[0][0]]
}

impl ProfileCurve {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn s(&self, i: usize) -> f64 {
        self.height.s(i)
    }

    pub fn s_range(&self) -> (f64, f64) {
        (self.height.s0, self.height.s_end())
    }

    /// Signature of the ambient 3-space.
    pub fn signature(&self) -> [f64; 3] {
        if self.eps0 == 1 {
            [1.0, 1.0, -1.0]
        } else {
            [1.0, 1.0, 1.0]
        }
    }

    pub fn inner(&self, a: &[f64; 3], b: &[f64; 3]) -> f64 {
        let g = self.signature();
        (0..3).map(|i| g[i] * a[i] * b[i]).sum()
    }

    fn embed(&self, x: J, t: J) -> [J; 3] {
        let k = self.k;
        if k > 0.0 {
            let w = (J::cst(1.0 / k) - x * x).sqrt();
            [x, w * t.cos(), w * t.sin()]
        } else if k < 0.0 {
            let w = (x * x - J::cst(1.0 / k)).sqrt();
            [x, w * t.sinh(), w * t.cosh()]
        } else {
            [x, t, J::cst(0.0)]
        }
    }

    /// `(b, b', b'')` at any `s` in range: the height and the angle are
    /// interpolated with quintic Hermite polynomials, exact at the nodes.
    pub fn local(&self, s: f64) -> [[f64; 3]; 3] {
        let (i, t) = self.height.locate(s);
        let h = self.height.step;
        let x = self.height.at(s);
        let th = quintic(self.angle[i], self.angle[i + 1], h, t);
        let b = self.embed(jet(x), jet(th));
        let p = b.map(parts);
        [[p[0][0], p[1][0], p[2][0]], [p[0][1], p[1][1], p[2][1]], [p[0][2], p[1][2], p[2][2]]]
    }

    /// `max | <b, b> - 1/k |` over the samples (`0` for the flat case).
    pub fn quadric_residual(&self) -> f64 {
        if self.k == 0.0 {
            return self.points.iter().map(|p| p[2].abs()).fold(0.0, f64::max);
        }
        self.points.iter().map(|p| (self.inner(p, p) - 1.0 / self.k).abs()).fold(0.0, f64::max)
    }

    /// `max | <b', b'> - 1 |` over the samples.
    pub fn unit_speed_residual(&self) -> f64 {
        self.tangents.iter().map(|t| (self.inner(t, t) - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Columns `s, gamma_v, gamma_v_prime, beta1, beta2, beta3`.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["s", "gamma_v", "gamma_v_prime", "beta1", "beta2", "beta3"])?;
        for i in 0..self.len() {
            let p = self.points[i];
            out.serialize((self.s(i), self.height.x[i], self.height.dx[i], p[0], p[1], p[2]))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Rows of a profile CSV as written by [`ProfileCurve::write_csv`].
pub fn read_csv<R: std::io::Read>(r: R) -> csv::Result<Vec<[f64; 6]>> {
    let mut rd = csv::Reader::from_reader(r);
    rd.deserialize::<(f64, f64, f64, f64, f64, f64)>()
        .map(|row| row.map(|(a, b, c, d, e, f)| [a, b, c, d, e, f]))
        .collect()
}

/// Angle rate `t'` and its derivative from the height jet, or `None` when
/// the radicand is negative. The second element flags a zero rotation
/// radius.
fn angle_rate(k: f64, x: J, floor: f64) -> Result<[f64; 2], Truncation> {
    let (w, sign) = if k > 0.0 {
        let w2 = J::cst(1.0 / k) - x * x;
        if w2.v < floor * floor {
            return Err(Truncation::AxisCollision { s: 0.0 });
        }
        (w2.sqrt(), -1.0)
    } else if k < 0.0 {
        ((x * x - J::cst(1.0 / k)).sqrt(), 1.0)
    } else {
        (J::cst(1.0), 0.0)
    };
    let [dx, ddx] = [x.g[0], x.h[0][0]];
    let [ww, dw, ddw] = parts(w);
    let rad = 1.0 - dx * dx + sign * dw * dw;
    if rad < -RADICAND_TOL {
        return Err(Truncation::RadicandNegative { s: 0.0 });
    }
    if rad <= RADICAND_TOL {
        return Ok([0.0, 0.0]);
    }
    let drad = -2.0 * dx * ddx + sign * 2.0 * dw * ddw;
    let t1 = rad.sqrt() / ww;
    let t2 = (drad - 2.0 * t1 * t1 * ww * dw) / (2.0 * t1 * ww * ww);
    Ok([t1, t2])
}

fn with_s(t: Truncation, s: f64) -> Truncation {
    match t {
        Truncation::HeightFloor { .. } => Truncation::HeightFloor { s },
        Truncation::RadicandNegative { .. } => Truncation::RadicandNegative { s },
        Truncation::AxisCollision { .. } => Truncation::AxisCollision { s },
    }
}

/// Builds the unit-speed curve on `Q^2(k)` whose first coordinate is the
/// given height. The angle is integrated with the derivative-corrected
/// trapezoidal rule (fourth order). The curve is cut, with a flag, where
/// it would leave the admissible band or hit the rotation axis.
pub fn reconstruct_on_spaceform(h: &HeightFunction, k: f64, floor: f64) -> Result<ProfileCurve, ProfileError> {
    if h.len() < 2 {
        return Err(ProfileError::TooShort(h.len()));
    }
    let mut angle: Vec<[f64; 3]> = Vec::with_capacity(h.len());
    let mut truncated = h.truncated;
    for i in 0..h.len() {
        let x = jet([h.x[i], h.dx[i], h.ddx[i]]);
        match angle_rate(k, x, floor) {
            Ok([t1, t2]) => {
                let t0 = match angle.last() {
                    None => 0.0,
                    Some(p) => {
                        let st = h.step;
                        p[0] + st / 2.0 * (p[1] + t1) - st * st / 12.0 * (t2 - p[2])
                    }
                };
                angle.push([t0, t1, t2]);
            }
            Err(t) => {
                truncated = Some(with_s(t, h.s(i)));
                break;
            }
        }
    }
    let n = angle.len();
    if n < 2 {
        return Err(ProfileError::Inadmissible { k, s: h.s0 });
    }
    let height = HeightFunction {
        s0: h.s0,
        step: h.step,
        x: h.x[..n].to_vec(),
        dx: h.dx[..n].to_vec(),
        ddx: h.ddx[..n].to_vec(),
        truncated,
    };
    let mut curve = ProfileCurve {
        k,
        eps0: u8::from(k < 0.0),
        height,
        angle,
        points: Vec::with_capacity(n),
        tangents: Vec::with_capacity(n),
        truncated,
    };
    for i in 0..n {
        let x = jet([curve.height.x[i], curve.height.dx[i], curve.height.ddx[i]]);
        let b = curve.embed(x, jet(curve.angle[i])).map(parts);
        curve.points.push([b[0][0], b[1][0], b[2][0]]);
        curve.tangents.push([b[0][1], b[1][1], b[2][1]]);
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::super::height::{helix_height, integrate_catenary, CatenaryParams, DEFAULT_FLOOR};
    use super::*;

    fn constant(a: f64, n: usize, step: f64) -> HeightFunction {
        HeightFunction { s0: 0.0, step, x: vec![a; n], dx: vec![0.0; n], ddx: vec![0.0; n], truncated: None }
    }

    #[test]
    fn circle_of_latitude() {
        let c = reconstruct_on_spaceform(&constant(0.6, 200, 1e-2), 1.0, DEFAULT_FLOOR).unwrap();
        assert!(c.truncated.is_none());
        assert!(c.unit_speed_residual() <= 1e-10);
        assert!(c.quadric_residual() <= 1e-12);
        // Angle rate 1/w with w = 0.8.
        assert!((c.angle[10][1] - 1.25).abs() < 1e-14);
    }

    #[test]
    fn great_circle_through_the_axis() {
        let h = helix_height(1.0, 0.0, 1.0, (0.0, std::f64::consts::FRAC_PI_2 - 0.01), 1e-3).unwrap();
        let c = reconstruct_on_spaceform(&h, 1.0, DEFAULT_FLOOR).unwrap();
        assert!(c.quadric_residual() <= 1e-10);
        for (i, p) in c.points.iter().enumerate() {
            let w = (p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!((w - c.s(i).cos()).abs() < 1e-10);
            assert_eq!(c.angle[i][0], 0.0);
        }
    }

    #[test]
    fn flat_graph() {
        let n = 101;
        let step = 1e-2;
        let r = 0.5f64.sqrt();
        let h = HeightFunction {
            s0: 0.0,
            step,
            x: (0..n).map(|i| i as f64 * step * r).collect(),
            dx: vec![r; n],
            ddx: vec![0.0; n],
            truncated: None,
        };
        let c = reconstruct_on_spaceform(&h, 0.0, DEFAULT_FLOOR).unwrap();
        assert!(c.unit_speed_residual() <= 1e-10);
        assert!(c.points.iter().zip(&h.x).all(|(p, x)| p[0] == *x));
    }

    #[test]
    fn catenary_on_sphere_and_plane() {
        let p = CatenaryParams::new(1.0, 1, 0.5, 0.0).unwrap();
        let h = integrate_catenary(&p, (0.0, 1.0), 1e-3, DEFAULT_FLOOR).unwrap();
        for k in [1.0, 0.0, -1.0] {
            let c = reconstruct_on_spaceform(&h, k, DEFAULT_FLOOR).unwrap();
            assert!(c.truncated.is_none(), "k = {k}");
            assert!(c.unit_speed_residual() <= 1e-8, "k = {k}: {}", c.unit_speed_residual());
            assert!(c.quadric_residual() <= 1e-10, "k = {k}");
            let [b, db, _] = c.local(0.3712);
            assert!((c.inner(&db, &db) - 1.0).abs() < 1e-8);
            assert!(k == 0.0 || (c.inner(&b, &b) - 1.0 / k).abs() < 1e-12);
        }
    }

    #[test]
    fn inadmissible_band_truncates() {
        // Steep height on a sphere of large curvature leaves the band.
        let h = helix_height(0.0, 0.1, 0.9, (0.0, 1.0), 1e-3).unwrap();
        let c = reconstruct_on_spaceform(&h, 4.0, DEFAULT_FLOOR).unwrap();
        assert!(matches!(c.truncated, Some(Truncation::RadicandNegative { .. })), "{:?}", c.truncated);
    }

    #[test]
    fn csv_round_trip() {
        let c = reconstruct_on_spaceform(&constant(0.6, 20, 1e-1), 1.0, DEFAULT_FLOOR).unwrap();
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let rows = read_csv(&buf[..]).unwrap();
        assert_eq!(rows.len(), 20);
        assert_eq!(rows[3][3], c.points[3][0]);
        assert_eq!(rows[3][5], c.points[3][2]);
    }
}

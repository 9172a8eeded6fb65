//! Grid checks of a pair of isometric hypersurfaces `f` in `Q^4(c)` and
//! `f~` in `Q^4(ct)`.

use rayon::prelude::*;
use serde::Serialize;

use super::forms::{fundamental_forms, gauss_residual, principal_curvatures, PrincipalData};
use super::{Derivatives, GeometryError, HypersurfacePatch};

/// Samples per chart coordinate.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid(pub [usize; 3]);

impl Grid {
    pub fn new(n: [usize; 3]) -> Result<Self, GeometryError> {
        if n.iter().any(|k| *k < 2) {
            return Err(GeometryError::DegenerateGrid(n));
        }
        Ok(Self(n))
    }

    pub fn len(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, n: usize) -> [usize; 3] {
        let [_, b, c] = self.0;
        [n / (b * c), (n / c) % b, n % c]
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self([20, 10, 10])
    }
}

/// Which family the pair belongs to, fixing the relations checked.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// `f` totally geodesic, `f~` umbilic with `mu^2 = c - ct`.
    Umbilic,
    /// `f` minimal with a double principal curvature; both are rotation
    /// hypersurfaces over one height function.
    Catenary,
    /// `f` a cone (zero curvature along the rulings), `f~` a helix rotation
    /// hypersurface with `c - ct = mu mu3`. Metrics are not compared.
    ConeHelix,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub metric: f64,
    pub relation: f64,
    pub gauss: f64,
    /// Relative gap under which two principal curvatures count as equal.
    pub rel_gap: f64,
}

impl Tolerances {
    pub fn for_kind(kind: PairKind) -> Self {
        match kind {
            PairKind::Umbilic => Self { metric: 1e-8, relation: 1e-6, gauss: 1e-4, rel_gap: 1e-4 },
            PairKind::Catenary => Self { metric: 1e-6, relation: 1e-5, gauss: 1e-4, rel_gap: 1e-4 },
            PairKind::ConeHelix => Self { metric: 1e-6, relation: 1e-5, gauss: 1e-4, rel_gap: 1e-4 },
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct PairSettings {
    pub grid: Grid,
    pub derivatives: Derivatives,
    /// Step of the finite differences of the metric in the Gauss check.
    pub gauss_step: f64,
    pub tol: Tolerances,
}

impl PairSettings {
    pub fn new(kind: PairKind) -> Self {
        Self {
            grid: Grid::default(),
            derivatives: Derivatives::Forward,
            gauss_step: 1e-4,
            tol: Tolerances::for_kind(kind),
        }
    }
}

/// Everything measured at one grid sample.
#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub index: [usize; 3],
    pub u: [f64; 3],
    pub ut: [f64; 3],
    pub lambda: [f64; 3],
    pub mu: [f64; 3],
    /// Relative deviation of the two first fundamental forms.
    pub metric_deviation: Option<f64>,
    /// `|II(d0, d0)| / I_00` of `f`: normal curvature along the first
    /// coordinate line.
    pub first_line_curvature: f64,
    pub gauss_f: f64,
    pub gauss_ft: f64,
    /// One value per check, in the order of [`DualPairReport::checks`].
    pub residuals: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub max: f64,
    pub tol: f64,
    pub pass: bool,
    /// Grid index of the worst sample.
    pub worst: [usize; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct DualPairReport {
    pub kind: PairKind,
    pub c: f64,
    pub ct: f64,
    pub settings: PairSettings,
    pub checks: Vec<Check>,
    pub samples: Vec<SampleRecord>,
}

impl DualPairReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check_names(kind: PairKind) -> &'static [&'static str] {
    match kind {
        PairKind::Umbilic => {
            &["metric_deviation", "lambda_max_abs", "mu_spread", "mu_squared_gap", "gauss_f", "gauss_ft"]
        }
        PairKind::Catenary => &[
            "metric_deviation",
            "lambda_sum",
            "lambda3_plus_2lambda",
            "mu1_minus_mu2",
            "mu_relation",
            "gauss_f",
            "gauss_ft",
        ],
        PairKind::ConeHelix => {
            &["ruling_curvature", "lambda_sum", "mu1_minus_mu2", "helix_relation", "gauss_f", "gauss_ft"]
        }
    }
}

fn metric_deviation(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> f64 {
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            num = num.max((a[i][j] - b[i][j]).abs());
            den = den.max(a[i][j].abs());
        }
    }
    num / den
}

fn residuals(
    kind: PairKind,
    c: f64,
    ct: f64,
    r: &SampleRecord,
    lam: &PrincipalData,
    mu: &PrincipalData,
    gap: f64,
) -> Vec<f64> {
    let l = lam.multiplicity(gap);
    let m = mu.multiplicity(gap);
    let d = c - ct;
    match kind {
        PairKind::Umbilic => vec![
            r.metric_deviation.unwrap_or(0.0),
            lam.lambda.iter().fold(0.0f64, |a, x| a.max(x.abs())),
            mu.lambda[2] - mu.lambda[0],
            (mu.h_mean * mu.h_mean - d).abs(),
            r.gauss_f,
            r.gauss_ft,
        ],
        PairKind::Catenary => vec![
            r.metric_deviation.unwrap_or(0.0),
            lam.h_sum.abs(),
            (l.simple + 2.0 * l.double).abs(),
            m.gap,
            (2.0 * m.double + m.simple - 3.0 * d / m.double).abs(),
            r.gauss_f,
            r.gauss_ft,
        ],
        PairKind::ConeHelix => {
            vec![r.first_line_curvature, lam.h_sum.abs(), m.gap, (d - m.double * m.simple).abs(), r.gauss_f, r.gauss_ft]
        }
    }
}

/// Evaluates both patches on the same index grid (each over its own
/// sampling box) and reduces the relations of `kind` to worst cases.
pub fn check_dual_pair(
    f: &HypersurfacePatch,
    ft: &HypersurfacePatch,
    kind: PairKind,
    settings: &PairSettings,
) -> Result<DualPairReport, GeometryError> {
    let grid = settings.grid;
    let (c, ct) = (f.model.c, ft.model.c);
    let d = settings.derivatives;
    let samples: Vec<SampleRecord> = (0..grid.len())
        .into_par_iter()
        .map(|n| {
            let index = grid.index(n);
            let u = f.sample(grid.0, index);
            let ut = ft.sample(grid.0, index);
            let ff = fundamental_forms(f, u, d)?;
            let fft = fundamental_forms(ft, ut, d)?;
            let lam = principal_curvatures(&ff)?;
            let mu = principal_curvatures(&fft)?;
            let mut r = SampleRecord {
                index,
                u,
                ut,
                lambda: lam.lambda,
                mu: mu.lambda,
                metric_deviation: (kind != PairKind::ConeHelix).then(|| metric_deviation(&ff.first, &fft.first)),
                first_line_curvature: ff.second[0][0].abs() / ff.first[0][0],
                gauss_f: gauss_residual(f, u, d, settings.gauss_step)?,
                gauss_ft: gauss_residual(ft, ut, d, settings.gauss_step)?,
                residuals: Vec::new(),
            };
            r.residuals = residuals(kind, c, ct, &r, &lam, &mu, settings.tol.rel_gap);
            Ok(r)
        })
        .collect::<Result<_, GeometryError>>()?;
    let tol = settings.tol;
    let checks = check_names(kind)
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let (worst, max) = samples
                .iter()
                .map(|s| (s.index, s.residuals[k]))
                .fold(([0; 3], f64::NEG_INFINITY), |a, b| if b.1 > a.1 || b.1.is_nan() { b } else { a });
            let t = match *name {
                "metric_deviation" => tol.metric,
                "gauss_f" | "gauss_ft" => tol.gauss,
                "ruling_curvature" => 1e-8,
                _ => tol.relation,
            };
            Check { name: name.to_string(), max, tol: t, pass: max <= t, worst }
        })
        .collect();
    Ok(DualPairReport { kind, c, ct, settings: *settings, checks, samples })
}

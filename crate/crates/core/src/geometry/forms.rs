//! First and second fundamental forms, principal curvatures and the
//! intrinsic curvature check.

use nalgebra::{DMatrix, Matrix3, SymmetricEigen};
use serde::Serialize;

use super::{Derivatives, GeometryError, HypersurfacePatch};

pub type Sym3 = [[f64; 3]; 3];

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalForms {
    pub first: Sym3,
    pub second: Sym3,
    pub normal: Vec<f64>,
    pub point: Vec<f64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct PrincipalData {
    /// Ascending.
    pub lambda: [f64; 3],
    /// `lambda1 + lambda2 + lambda3`.
    pub h_sum: f64,
    pub h_mean: f64,
}

/// The closest pair of principal curvatures and the remaining one.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Multiplicity {
    /// Mean of the closest pair.
    pub double: f64,
    pub simple: f64,
    pub gap: f64,
    /// `gap` over the largest `|lambda|` (zero when all vanish).
    pub rel_gap: f64,
    pub is_double: bool,
}

impl PrincipalData {
    pub fn multiplicity(&self, threshold: f64) -> Multiplicity {
        let l = self.lambda;
        let (pair, simple) = if l[1] - l[0] <= l[2] - l[1] { ((l[0], l[1]), l[2]) } else { ((l[1], l[2]), l[0]) };
        let scale = l.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let gap = pair.1 - pair.0;
        let rel_gap = if scale > 0.0 { gap / scale } else { 0.0 };
        Multiplicity { double: (pair.0 + pair.1) / 2.0, simple, gap, rel_gap, is_double: rel_gap < threshold }
    }
}

/// Generalized cross product: the vector `N` with `<N, v> = 0` for every
/// row `v` (in the metric `diag(sig)`), from the cofactors of the rows.
fn orthogonal_complement(rows: &[&[f64]], sig: &[f64]) -> Vec<f64> {
    let d = sig.len();
    (0..d)
        .map(|k| {
            let minor = DMatrix::from_fn(d - 1, d - 1, |r, c| rows[r][if c < k { c } else { c + 1 }]);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sig[k] * sign * minor.determinant()
        })
        .collect()
}

/// `I`, `II` and the unit normal at chart coordinates `u`.
pub fn fundamental_forms(
    patch: &HypersurfacePatch,
    u: [f64; 3],
    d: Derivatives,
) -> Result<FundamentalForms, GeometryError> {
    let p = patch.partials(u, d);
    let m = &patch.model;
    let first: Sym3 = std::array::from_fn(|i| std::array::from_fn(|j| m.inner(&p.first[i], &p.first[j])));
    let gram = Matrix3::from_fn(|i, j| first[i][j]);
    let scale = ((0..3).map(|i| first[i][i]).sum::<f64>() / 3.0).powi(3);
    if !(gram.determinant() > 1e-14 * scale) {
        return Err(GeometryError::NotImmersion { u });
    }
    let mut rows: Vec<&[f64]> = p.first.iter().map(|v| v.as_slice()).collect();
    if m.c != 0.0 {
        rows.push(&p.point);
    }
    let mut normal = orthogonal_complement(&rows, &m.signature);
    let nn = m.inner(&normal, &normal);
    if !(nn > 0.0) {
        return Err(GeometryError::NotImmersion { u });
    }
    let nn = nn.sqrt();
    normal.iter_mut().for_each(|x| *x /= nn);
    let second = std::array::from_fn(|i| std::array::from_fn(|j| m.inner(&p.second[i][j], &normal)));
    Ok(FundamentalForms { first, second, normal, point: p.point })
}

/// Eigenvalues of `I^{-1} II` through `L^{-1} II L^{-T}` with `I = L L^T`.
/// Sorted ascending; ties keep the order the eigen-solver returns them in.
pub fn principal_curvatures(ff: &FundamentalForms) -> Result<PrincipalData, GeometryError> {
    let i = Matrix3::from_fn(|a, b| ff.first[a][b]);
    let ii = Matrix3::from_fn(|a, b| ff.second[a][b]);
    let chol = i.cholesky().ok_or(GeometryError::NotPositiveDefinite)?;
    let linv = chol.l().try_inverse().ok_or(GeometryError::NotPositiveDefinite)?;
    let mut m = linv * ii * linv.transpose();
    m = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(m).eigenvalues;
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|a, b| eig[*a].total_cmp(&eig[*b]).then(a.cmp(b)));
    let lambda = idx.map(|k| eig[k]);
    let h_sum = lambda.iter().sum::<f64>();
    Ok(PrincipalData { lambda, h_sum, h_mean: h_sum / 3.0 })
}

fn metric(patch: &HypersurfacePatch, u: [f64; 3], d: Derivatives) -> Sym3 {
    let p = patch.partials(u, d);
    std::array::from_fn(|i| std::array::from_fn(|j| patch.model.inner(&p.first[i], &p.first[j])))
}

/// Sectional curvatures `K_01, K_02, K_12` of the induced metric, from the
/// metric alone by central differences of step `h` (second order).
pub fn sectional_curvatures(patch: &HypersurfacePatch, u: [f64; 3], d: Derivatives, h: f64) -> [f64; 3] {
    let shift = |a: usize, sa: f64, b: usize, sb: f64| {
        let mut v = u;
        v[a] += sa * h;
        v[b] += sb * h;
        metric(patch, v, d)
    };
    let g = metric(patch, u, d);
    let mut dg = [[[0.0; 3]; 3]; 3]; // dg[a][i][j] = d_a g_ij
    let mut ddg = [[[[0.0; 3]; 3]; 3]; 3]; // ddg[a][b][i][j]
    let plus: [Sym3; 3] = std::array::from_fn(|a| shift(a, 1.0, a, 0.0));
    let minus: [Sym3; 3] = std::array::from_fn(|a| shift(a, -1.0, a, 0.0));
    for a in 0..3 {
        for b in a..3 {
            let mixed = if a == b {
                None
            } else {
                Some([shift(a, 1.0, b, 1.0), shift(a, 1.0, b, -1.0), shift(a, -1.0, b, 1.0), shift(a, -1.0, b, -1.0)])
            };
            for i in 0..3 {
                for j in 0..3 {
                    let v = match &mixed {
                        None => (plus[a][i][j] - 2.0 * g[i][j] + minus[a][i][j]) / (h * h),
                        Some(m) => (m[0][i][j] - m[1][i][j] - m[2][i][j] + m[3][i][j]) / (4.0 * h * h),
                    };
                    ddg[a][b][i][j] = v;
                    ddg[b][a][i][j] = v;
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                dg[a][i][j] = (plus[a][i][j] - minus[a][i][j]) / (2.0 * h);
            }
        }
    }
    let ginv = Matrix3::from_fn(|i, j| g[i][j]).try_inverse().unwrap_or_else(Matrix3::zeros);
    // Gamma^m_ij
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for m in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                gamma[m][i][j] = (0..3).map(|k| ginv[(m, k)] * 0.5 * (dg[i][j][k] + dg[j][i][k] - dg[k][i][j])).sum();
            }
        }
    }
    // R_ijkl = 1/2 (g_il,jk + g_jk,il - g_ik,jl - g_jl,ik)
    //        + g_mn (Gamma^m_jk Gamma^n_il - Gamma^m_jl Gamma^n_ik),
    // normalized so that K_ij = R_ijij / (g_ii g_jj - g_ij^2).
    let riem = |i: usize, j: usize, k: usize, l: usize| {
        let mut r = 0.5 * (ddg[j][k][i][l] + ddg[i][l][j][k] - ddg[j][l][i][k] - ddg[i][k][j][l]);
        for m in 0..3 {
            for n in 0..3 {
                r += g[m][n] * (gamma[m][j][k] * gamma[n][i][l] - gamma[m][j][l] * gamma[n][i][k]);
            }
        }
        r
    };
    [(0, 1), (0, 2), (1, 2)].map(|(i, j)| riem(i, j, i, j) / (g[i][i] * g[j][j] - g[i][j] * g[i][j]))
}

/// Extrinsic prediction `c + (II_ii II_jj - II_ij^2) / (I_ii I_jj - I_ij^2)`
/// of the coordinate-plane sectional curvatures.
pub fn gauss_prediction(ff: &FundamentalForms, c: f64) -> [f64; 3] {
    let (i, ii) = (&ff.first, &ff.second);
    [(0, 1), (0, 2), (1, 2)]
        .map(|(a, b)| c + (ii[a][a] * ii[b][b] - ii[a][b] * ii[a][b]) / (i[a][a] * i[b][b] - i[a][b] * i[a][b]))
}

/// Largest `|K_ij - c - II-term| / max(1, |c + II-term|)` over the three
/// coordinate planes.
pub fn gauss_residual(patch: &HypersurfacePatch, u: [f64; 3], d: Derivatives, h: f64) -> Result<f64, GeometryError> {
    let ff = fundamental_forms(patch, u, d)?;
    let k = sectional_curvatures(patch, u, d, h);
    let p = gauss_prediction(&ff, patch.model.c);
    Ok((0..3).map(|a| (k[a] - p[a]).abs() / p[a].abs().max(1.0)).fold(0.0, f64::max))
}

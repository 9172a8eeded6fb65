//! Ready-made pairs `(f, f~)` for the three families.

use serde::Serialize;

use super::{
    generalized_cone, rotation_hypersurface, ConeBase, GeometryError, HypersurfacePatch, PairKind, SpaceFormModel,
};
use crate::profile::{
    helix_height, integrate_catenary, reconstruct_on_spaceform, CatenaryParams, HeightFunction, ProfileCurve,
    Truncation, DEFAULT_FLOOR,
};

#[derive(Clone, Debug, Serialize)]
pub struct PairBuild {
    pub kind: PairKind,
    pub f: HypersurfacePatch,
    pub ft: HypersurfacePatch,
    /// Profile of `f` (absent for cones) and of `f~`.
    pub profile_f: Option<ProfileCurve>,
    pub profile_ft: ProfileCurve,
}

/// Reconstructs `h` on `Q^2(k)`; a negative radicand anywhere is an
/// obstruction, other cuts only shorten the curve.
fn admissible(h: &HeightFunction, k: f64, who: &str) -> Result<ProfileCurve, GeometryError> {
    let curve = reconstruct_on_spaceform(h, k, DEFAULT_FLOOR).map_err(|e| GeometryError::Obstruction {
        reason: format!("{who}: the height function does not fit on Q^2({k}): {e}"),
    })?;
    if let Some(Truncation::RadicandNegative { s }) = curve.truncated {
        return Err(GeometryError::Obstruction {
            reason: format!("{who}: unit-speed radicand 1 - x'^2 - k x^2 turns negative on Q^2({k}) at s = {s:.6}"),
        });
    }
    Ok(curve)
}

fn share_first_range(f: &mut HypersurfacePatch, ft: &mut HypersurfacePatch) -> Result<(), GeometryError> {
    let a = f.domain[0].0.max(ft.domain[0].0);
    let b = f.domain[0].1.min(ft.domain[0].1);
    if !(b > a) {
        return Err(GeometryError::EmptyDomain);
    }
    f.domain[0] = (a, b);
    ft.domain[0] = (a, b);
    Ok(())
}

fn distinct(c: f64, ct: f64) -> Result<(), GeometryError> {
    if c == ct {
        return Err(GeometryError::Obstruction { reason: "c and ct must differ".into() });
    }
    Ok(())
}

/// Totally geodesic `f` in `Q^4(c)` (profile a geodesic through the axis)
/// and its umbilic partner in `Q^4(ct)`.
pub fn umbilic_pair(c: f64, ct: f64, interval: (f64, f64), step: f64) -> Result<PairBuild, GeometryError> {
    distinct(c, ct)?;
    let b = if c == 0.0 { 1.0 } else { 1.0 / c.abs().sqrt() };
    let h = helix_height(c, 0.0, b, interval, step)?;
    let pf = admissible(&h, c, "f")?;
    let pft = admissible(&h, ct, "f~")?;
    let mut f = rotation_hypersurface(pf.clone(), SpaceFormModel::new(c))?;
    let mut ft = rotation_hypersurface(pft.clone(), SpaceFormModel::new(ct))?;
    share_first_range(&mut f, &mut ft)?;
    Ok(PairBuild { kind: PairKind::Umbilic, f, ft, profile_f: Some(pf), profile_ft: pft })
}

/// Rotation hypersurfaces over one catenary height function, in `Q^4(c)`
/// and `Q^4(ct)`.
pub fn catenary_pair(
    c: f64,
    ct: f64,
    p: &CatenaryParams,
    interval: (f64, f64),
    step: f64,
) -> Result<PairBuild, GeometryError> {
    distinct(c, ct)?;
    let h = integrate_catenary(p, interval, step, DEFAULT_FLOOR)?;
    let pf = admissible(&h, c, "f")?;
    let pft = admissible(&h, ct, "f~")?;
    let mut f = rotation_hypersurface(pf.clone(), SpaceFormModel::new(c))?;
    let mut ft = rotation_hypersurface(pft.clone(), SpaceFormModel::new(ct))?;
    share_first_range(&mut f, &mut ft)?;
    Ok(PairBuild { kind: PairKind::Catenary, f, ft, profile_f: Some(pf), profile_ft: pft })
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct ConeHelixParams {
    pub cbar: f64,
    pub base: ConeBase,
    pub t_range: (f64, f64),
    /// Helix height `a cos(sqrt(c) s) + b sin(sqrt(c) s)` (hyperbolic or
    /// affine analogues for `c <= 0`).
    pub a: f64,
    pub b: f64,
}

/// Generalized cone in `Q^4(c)` and a helix rotation hypersurface in
/// `Q^4(ct)`. A null principal curvature forces `c - ct = lambda^2 + mu^2`,
/// so `c <= ct` is refused up front.
pub fn cone_helix_pair(
    c: f64,
    ct: f64,
    q: &ConeHelixParams,
    interval: (f64, f64),
    step: f64,
) -> Result<PairBuild, GeometryError> {
    if c <= ct {
        return Err(GeometryError::Obstruction {
            reason: format!(
                "a null principal curvature needs c > ct (c - ct = lambda1^2 + mu^2), got c = {c}, ct = {ct}"
            ),
        });
    }
    let f = generalized_cone(q.base, q.cbar, SpaceFormModel::new(c), q.t_range)?;
    let h = helix_height(c, q.a, q.b, interval, step)?;
    let pft = admissible(&h, ct, "f~")?;
    let ft = rotation_hypersurface(pft.clone(), SpaceFormModel::new(ct))?;
    Ok(PairBuild { kind: PairKind::ConeHelix, f, ft, profile_f: None, profile_ft: pft })
}

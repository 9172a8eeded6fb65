//! Hypersurfaces of the space forms `Q^4(c)`: charts, fundamental forms,
//! principal curvatures and checks of isometric pairs.

mod construct;
mod forms;
mod mesh;
mod model;
mod pair;
mod patch;

pub use construct::{catenary_pair, cone_helix_pair, umbilic_pair, ConeHelixParams, PairBuild};
pub use forms::{
    fundamental_forms, gauss_prediction, gauss_residual, principal_curvatures, sectional_curvatures, FundamentalForms,
    Multiplicity, PrincipalData, Sym3,
};
pub use mesh::write_obj;
pub use model::SpaceFormModel;
pub use pair::{check_dual_pair, Check, DualPairReport, Grid, PairKind, PairSettings, SampleRecord, Tolerances};
pub use patch::{
    generalized_cone, rotation_hypersurface, Chart, ConeBase, ConePatch, Derivatives, HypersurfacePatch, Partials,
    RotationPatch,
};

use crate::profile::ProfileError;

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("profile lives on Q^2({profile}) but the model is Q^4({model})")]
    CurvatureMismatch { profile: f64, model: f64 },
    #[error("rotation radius {radius} is not positive at s = {s}")]
    NonPositiveRadius { s: f64, radius: f64 },
    #[error("cbar = {cbar} is below c = {c}")]
    CbarBelowC { cbar: f64, c: f64 },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("the chart is not an immersion at {u:?} (degenerate Gram matrix or focal point)")]
    NotImmersion { u: [f64; 3] },
    #[error("first fundamental form is not positive definite")]
    NotPositiveDefinite,
    #[error("every grid dimension needs at least two samples, got {0:?}")]
    DegenerateGrid([usize; 3]),
    #[error("the two patches have no common parameter range")]
    EmptyDomain,
    #[error("obstruction: {reason}")]
    Obstruction { reason: String },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

#[cfg(test)]
mod tests;

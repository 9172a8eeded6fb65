//! Profile curves of rotation hypersurfaces: height functions and their
//! unit-speed reconstruction on two-dimensional space forms.

mod curve;
mod height;

pub use curve::{read_csv, reconstruct_on_spaceform, ProfileCurve};
use height::quintic;
pub use height::{
    helix_at, helix_height, integrate_catenary, richardson, CatenaryParams, Convergence, HeightFunction, Truncation,
    DEFAULT_FLOOR,
};

#[derive(Debug, thiserror::Error)]
pub enum ProfileError {
    #[error("delta must be -1, 0 or 1, got {0}")]
    BadDelta(i8),
    #[error("step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("the equation is singular at x = 0")]
    SingularStart,
    #[error("empty or reversed interval [{0}, {1}]")]
    BadInterval(f64, f64),
    #[error("need at least two samples, got {0}")]
    TooShort(usize),
    #[error("the curve cannot start on Q^2({k}) at s = {s}")]
    Inadmissible { k: f64, s: f64 },
}

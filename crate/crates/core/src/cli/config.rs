//! Flat `key = value` run configuration.
//!
//! Values come from the schema defaults, then an optional config file, then
//! command-line flags, later sources winning. Unknown keys are rejected. The
//! effective configuration is echoed into every report and its hash names
//! the run directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::geometry::{ConeBase, Derivatives, Grid, PairKind, Tolerances};

/// `(key, default, description)`. An empty default means "derived from
/// other keys", as described.
pub const SCHEMA: &[(&str, &str, &str)] = &[
    ("c", "1", "curvature of the space form of f"),
    ("ctilde", "0", "curvature of the space form of the partner f~"),
    ("k", "", "curvature used by build-catenary (default: c)"),
    ("r", "1", "catenary parameter r"),
    ("delta", "1", "catenary parameter delta (-1, 0 or 1)"),
    ("x0", "0.5", "initial height of the catenary"),
    ("dx0", "0", "initial slope of the catenary"),
    ("s_min", "0", "start of the profile parameter interval"),
    ("s_max", "1", "end of the profile parameter interval"),
    ("step", "0.001", "fixed ODE / sampling step"),
    ("levels", "6", "step halvings in the convergence table"),
    ("coarse_step", "0.1", "first step of the convergence table"),
    ("grid", "20x10x10", "samples per chart coordinate"),
    ("mode", "catenary", "pair family: umbilic, catenary or cone"),
    ("cbar", "", "curvature of the umbilical Q^3 carrying the cone base (default: c if c > 0, else 1)"),
    ("base", "clifford", "cone base surface: clifford or great-sphere"),
    ("t_min", "0.05", "start of the cone ruling parameter"),
    ("t_max", "1", "end of the cone ruling parameter"),
    ("helix_a", "0.5", "helix height coefficient a"),
    ("helix_b", "0", "helix height coefficient b"),
    ("tol", "", "relation tolerance (default: per family)"),
    ("tol_metric", "", "first fundamental form tolerance (default: per family)"),
    ("tol_gauss", "0.0001", "relative Gauss-equation tolerance"),
    ("rel_gap", "0.0001", "relative gap under which principal curvatures are equal"),
    ("derivatives", "forward", "chart partials: forward or central"),
    ("fd_step", "0.0001", "step of central-difference partials"),
    ("gauss_step", "0.0001", "step of the metric differences in the Gauss check"),
    ("obj_slice", "0", "value of the third chart coordinate for OBJ slices"),
    ("obj_size", "40x20", "OBJ mesh resolution"),
    ("projection", "0,1,3", "ambient coordinates kept in OBJ output"),
    ("filter", "*", "certificate name glob for verify"),
    ("seed", "", "seed of the random evaluation points (default: the engine's)"),
    ("fixtures", "", "directory of appendix fixtures (default: embedded copies)"),
    ("out", "runs", "root of the run directories"),
];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("bad value `{value}` for `{key}`: {why}")]
    Value { key: String, value: String, why: String },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Grid(#[from] crate::geometry::GeometryError),
}

/// Raw effective values, keyed and ordered by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigMap(pub BTreeMap<String, String>);

impl ConfigMap {
    pub fn defaults() -> Self {
        Self(SCHEMA.iter().map(|(k, v, _)| (k.to_string(), v.to_string())).collect())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if !SCHEMA.iter().any(|(k, _, _)| *k == key) {
            return Err(ConfigError::UnknownKey(key.to_string()));
        }
        self.0.insert(key.to_string(), value.trim().to_string());
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| ConfigError::Syntax { line: n + 1, text: raw.to_string() })?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        self.apply_text(&text)
    }

    /// Canonical `key = value` text, one line per key.
    pub fn echo(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// First twelve hex digits of the SHA-256 of the subcommand and echo.
    pub fn hash(&self, command: &str) -> String {
        let digest = Sha256::digest(format!("{command}\n{}", self.echo()).as_bytes());
        hex::encode(digest)[..12].to_string()
    }

    fn raw(&self, key: &str) -> &str {
        self.0.get(key).map(String::as_str).unwrap_or("")
    }

    fn bad(&self, key: &str, why: impl Into<String>) -> ConfigError {
        ConfigError::Value { key: key.to_string(), value: self.raw(key).to_string(), why: why.into() }
    }

    fn f64(&self, key: &str) -> Result<f64, ConfigError> {
        let v: f64 = self.raw(key).parse().map_err(|_| self.bad(key, "not a number"))?;
        if !v.is_finite() {
            return Err(self.bad(key, "not finite"));
        }
        Ok(v)
    }

    fn opt_f64(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        if self.raw(key).is_empty() {
            Ok(None)
        } else {
            self.f64(key).map(Some)
        }
    }

    fn positive(&self, key: &str) -> Result<f64, ConfigError> {
        let v = self.f64(key)?;
        if v <= 0.0 {
            return Err(self.bad(key, "must be positive"));
        }
        Ok(v)
    }

    fn usize_list<const N: usize>(&self, key: &str, sep: char) -> Result<[usize; N], ConfigError> {
        let parts: Vec<usize> = self
            .raw(key)
            .split(sep)
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| self.bad(key, "expected non-negative integers"))?;
        parts.try_into().map_err(|_| self.bad(key, format!("expected {N} values separated by `{sep}`")))
    }
}

/// Typed view of a [`ConfigMap`].
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub map: ConfigMap,
    pub c: f64,
    pub ct: f64,
    pub k: f64,
    pub r: f64,
    pub delta: i8,
    pub x0: f64,
    pub dx0: f64,
    pub interval: (f64, f64),
    pub step: f64,
    pub levels: usize,
    pub coarse_step: f64,
    pub grid: Grid,
    pub mode: PairKind,
    pub cbar: f64,
    pub base: ConeBase,
    pub t_range: (f64, f64),
    pub helix: (f64, f64),
    pub tol: Tolerances,
    pub derivatives: Derivatives,
    pub gauss_step: f64,
    pub obj_slice: f64,
    pub obj_size: [usize; 2],
    pub projection: [usize; 3],
    pub filter: String,
    pub seed: Option<u64>,
    pub fixtures: Option<PathBuf>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn from_map(map: ConfigMap) -> Result<Self, ConfigError> {
        let m = &map;
        let c = m.f64("c")?;
        let ct = m.f64("ctilde")?;
        let delta = match m.raw("delta") {
            "-1" => -1,
            "0" => 0,
            "1" => 1,
            _ => return Err(m.bad("delta", "must be -1, 0 or 1")),
        };
        let interval = (m.f64("s_min")?, m.f64("s_max")?);
        if interval.1 <= interval.0 {
            return Err(m.bad("s_max", "must exceed s_min"));
        }
        let t_range = (m.f64("t_min")?, m.f64("t_max")?);
        if t_range.1 <= t_range.0 {
            return Err(m.bad("t_max", "must exceed t_min"));
        }
        let mode = match m.raw("mode") {
            "umbilic" => PairKind::Umbilic,
            "catenary" => PairKind::Catenary,
            "cone" => PairKind::ConeHelix,
            _ => return Err(m.bad("mode", "expected umbilic, catenary or cone")),
        };
        let base = match m.raw("base") {
            "clifford" => ConeBase::CliffordTorus,
            "great-sphere" => ConeBase::GreatSphere,
            _ => return Err(m.bad("base", "expected clifford or great-sphere")),
        };
        let mut tol = Tolerances::for_kind(mode);
        if let Some(t) = m.opt_f64("tol")? {
            tol.relation = t;
        }
        if let Some(t) = m.opt_f64("tol_metric")? {
            tol.metric = t;
        }
        tol.gauss = m.positive("tol_gauss")?;
        tol.rel_gap = m.positive("rel_gap")?;
        let derivatives = match m.raw("derivatives") {
            "forward" => Derivatives::Forward,
            "central" => Derivatives::Central { h: m.positive("fd_step")? },
            _ => return Err(m.bad("derivatives", "expected forward or central")),
        };
        let projection = m.usize_list::<3>("projection", ',')?;
        if projection.iter().any(|p| *p > 4) {
            return Err(m.bad("projection", "coordinates are numbered 0 to 4"));
        }
        let obj_size = m.usize_list::<2>("obj_size", 'x')?;
        if obj_size.iter().any(|n| *n < 2) {
            return Err(m.bad("obj_size", "need at least 2x2 vertices"));
        }
        let levels = m
            .raw("levels")
            .parse::<usize>()
            .ok()
            .filter(|l| *l >= 2)
            .ok_or_else(|| m.bad("levels", "an integer >= 2"))?;
        let seed = match m.raw("seed") {
            "" => None,
            s => Some(s.parse::<u64>().map_err(|_| m.bad("seed", "expected an unsigned integer"))?),
        };
        Ok(Self {
            c,
            ct,
            k: m.opt_f64("k")?.unwrap_or(c),
            r: m.f64("r")?,
            delta,
            x0: m.f64("x0")?,
            dx0: m.f64("dx0")?,
            interval,
            step: m.positive("step")?,
            levels,
            coarse_step: m.positive("coarse_step")?,
            grid: Grid::new(m.usize_list::<3>("grid", 'x')?)?,
            mode,
            cbar: m.opt_f64("cbar")?.unwrap_or(if c > 0.0 { c } else { 1.0 }),
            base,
            t_range,
            helix: (m.f64("helix_a")?, m.f64("helix_b")?),
            tol,
            derivatives,
            gauss_step: m.positive("gauss_step")?,
            obj_slice: m.f64("obj_slice")?,
            obj_size,
            projection,
            filter: m.raw("filter").to_string(),
            seed,
            fixtures: Some(m.raw("fixtures")).filter(|s| !s.is_empty()).map(PathBuf::from),
            out: PathBuf::from(m.raw("out")),
            map,
        })
    }

    pub fn run_dir(&self, command: &str) -> PathBuf {
        self.out.join(format!("{command}-{}", self.map.hash(command)))
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::RunConfig;
use super::{CliError, Exit};
use crate::geometry::{
    catenary_pair, check_dual_pair, cone_helix_pair, fundamental_forms, principal_curvatures, rotation_hypersurface,
    umbilic_pair, write_obj, ConeHelixParams, GeometryError, HypersurfacePatch, PairBuild, PairKind, PairSettings,
    SpaceFormModel,
};
use crate::profile::{
    integrate_catenary, reconstruct_on_spaceform, richardson, CatenaryParams, Truncation, DEFAULT_FLOOR,
};
use crate::verify::appendix::AppendixBank;
use crate::verify::context::Context;
use crate::verify::engine::DEFAULT_SEED;
use crate::verify::run::{run_all, select};
use crate::verify::symbols::Symbols;

#[derive(Serialize)]
struct Environment {
    package: &'static str,
    version: &'static str,
    os: &'static str,
    arch: &'static str,
}

const ENV: Environment = Environment {
    package: env!("CARGO_PKG_NAME"),
    version: env!("CARGO_PKG_VERSION"),
    os: std::env::consts::OS,
    arch: std::env::consts::ARCH,
};

/// Phase timings, written next to (never into) the report.
#[derive(Default)]
struct Timings(Vec<(String, f64)>);

impl Timings {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.0.push((name.to_string(), t.elapsed().as_secs_f64()));
        out
    }
}

struct Run {
    command: &'static str,
    dir: PathBuf,
    cfg: RunConfig,
    timings: Timings,
}

impl Run {
    fn new(command: &'static str, cfg: RunConfig) -> Result<Self, CliError> {
        let dir = cfg.run_dir(command);
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        write(&dir.join("config.txt"), cfg.map.echo())?;
        Ok(Self { command, dir, cfg, timings: Timings::default() })
    }

    fn report(&self, status: &str, result: impl Serialize) -> Result<(), CliError> {
        let doc = json!({
            "command": self.command,
            "status": status,
            "config": self.cfg.map.0,
            "environment": ENV,
            "result": result,
        });
        write(&self.dir.join("report.json"), serde_json::to_string_pretty(&doc).expect("report serializes") + "\n")
    }

    fn finish(&self) -> Result<(), CliError> {
        let t: BTreeMap<&str, f64> = self.timings.0.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        write(&self.dir.join("timings.json"), serde_json::to_string_pretty(&t).expect("timings serialize") + "\n")?;
        println!("run directory: {}", self.dir.display());
        Ok(())
    }

    /// Records `e` as the outcome of the run before passing it on.
    fn failed(&self, e: CliError) -> CliError {
        let _ = self.report("error", json!({ "error": e.to_string() }));
        let _ = self.finish();
        e
    }

    fn obstruction(&self, reason: &str) -> Result<Exit, CliError> {
        eprintln!("obstruction: {reason}");
        self.report("obstruction", json!({ "reason": reason }))?;
        self.finish()?;
        Ok(Exit::Obstruction)
    }
}

fn write(path: &Path, text: impl AsRef<[u8]>) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn create(path: &Path) -> Result<fs::File, CliError> {
    fs::File::create(path).map_err(|e| CliError::io(path, e))
}

pub fn verify(cfg: RunConfig) -> Result<Exit, CliError> {
    let names = select(&cfg.filter).map_err(|e| CliError::Config(format!("bad filter `{}`: {e}", cfg.filter)))?;
    let ctx = match &cfg.fixtures {
        None => Context::embedded(),
        Some(dir) => {
            let sym = Symbols::new();
            Context::new(AppendixBank::from_dir(&sym, dir).map_err(|e| CliError::Config(e.to_string()))?)
        }
    };
    let mut run = Run::new("verify", cfg)?;
    if names.is_empty() {
        eprintln!("warning: filter `{}` matches no certificate", run.cfg.filter);
    }
    let seed = run.cfg.seed.unwrap_or(DEFAULT_SEED);
    let filter = run.cfg.filter.clone();
    let report =
        run.timings.time("run_all", || run_all(&ctx, &filter, seed)).map_err(|e| CliError::Config(e.to_string()))?;
    for c in &report.certificates {
        run.timings.0.push((format!("certificate.{}", c.name), c.elapsed.as_secs_f64()));
    }
    print!("{}", report.summary_table());
    let ok = report.all_passed();
    run.report(if ok { "pass" } else { "fail" }, &report)?;
    run.finish()?;
    Ok(if ok { Exit::Success } else { Exit::Failure })
}

#[derive(Serialize)]
struct ConvergenceRow {
    step: f64,
    /// `max |x_h - x_{h/2}|` at common nodes (absent on the last row).
    solution_difference: Option<f64>,
    /// Catenary equation residual with `x''` from a five-point stencil.
    ode_residual: f64,
    /// Largest `|lambda1 + lambda2 + lambda3|` of the rotation hypersurface on
    /// the grid, between integration nodes.
    lambda_sum: f64,
}

#[derive(Serialize)]
struct ConvergenceTable {
    rows: Vec<ConvergenceRow>,
    /// `log2` of successive ratios, one entry per pair of rows.
    solution_order: Vec<f64>,
    ode_residual_order: Vec<f64>,
    lambda_sum_order: Vec<f64>,
}

fn orders(v: &[f64]) -> Vec<f64> {
    v.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

fn max_lambda_sum(patch: &HypersurfacePatch, cfg: &RunConfig) -> Result<(f64, f64), GeometryError> {
    let grid = cfg.grid;
    let mut sum = 0.0f64;
    let mut mult = 0.0f64;
    for n in 0..grid.len() {
        let u = patch.sample(grid.0, grid.index(n));
        let p = principal_curvatures(&fundamental_forms(patch, u, cfg.derivatives)?)?;
        let m = p.multiplicity(cfg.tol.rel_gap);
        sum = sum.max(p.h_sum.abs());
        mult = mult.max((m.simple + 2.0 * m.double).abs());
    }
    Ok((sum, mult))
}

fn catenary_patch(p: &CatenaryParams, k: f64, cfg: &RunConfig, step: f64) -> Result<HypersurfacePatch, GeometryError> {
    let h = integrate_catenary(p, cfg.interval, step, DEFAULT_FLOOR)?;
    let curve = reconstruct_on_spaceform(&h, k, DEFAULT_FLOOR)?;
    if let Some(Truncation::RadicandNegative { s }) = curve.truncated {
        return Err(GeometryError::Obstruction {
            reason: format!("the catenary height leaves the admissible band of Q^2({k}) at s = {s:.6}"),
        });
    }
    rotation_hypersurface(curve, SpaceFormModel::new(k))
}

fn convergence(p: &CatenaryParams, k: f64, cfg: &RunConfig) -> Result<ConvergenceTable, GeometryError> {
    let rich = richardson(p, cfg.interval, cfg.coarse_step, cfg.levels)?;
    let mut rows = Vec::new();
    for (i, step) in rich.steps.iter().enumerate() {
        let h = integrate_catenary(p, cfg.interval, *step, DEFAULT_FLOOR)?;
        let patch = catenary_patch(p, k, cfg, *step)?;
        rows.push(ConvergenceRow {
            step: *step,
            solution_difference: rich.differences.get(i).copied(),
            ode_residual: h.ode_residual(p),
            lambda_sum: max_lambda_sum(&patch, cfg)?.0,
        });
    }
    let col = |f: &dyn Fn(&ConvergenceRow) -> f64| orders(&rows.iter().map(f).collect::<Vec<_>>());
    Ok(ConvergenceTable {
        solution_order: rich.orders.clone(),
        ode_residual_order: col(&|r| r.ode_residual),
        lambda_sum_order: col(&|r| r.lambda_sum),
        rows,
    })
}

fn obj(run: &Run, patch: &HypersurfacePatch, name: &str) -> Result<(), CliError> {
    let path = run.dir.join(format!("{name}.obj"));
    let cfg = &run.cfg;
    let proj = cfg.projection;
    let dim = patch.model.dim();
    if proj.iter().any(|p| *p >= dim) {
        return Err(CliError::Config(format!(
            "projection {proj:?} does not fit the {dim}-dimensional model of {name}"
        )));
    }
    write_obj(patch, name, cfg.obj_size, cfg.obj_slice, proj, create(&path)?).map_err(|e| CliError::io(&path, e))
}

fn csv(run: &Run, curve: &crate::profile::ProfileCurve, name: &str) -> Result<(), CliError> {
    let path = run.dir.join(format!("{name}.csv"));
    curve.write_csv(create(&path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn build_catenary(cfg: RunConfig) -> Result<Exit, CliError> {
    let p = CatenaryParams::new(cfg.r, cfg.delta, cfg.x0, cfg.dx0).map_err(|e| CliError::Config(e.to_string()))?;
    let mut run = Run::new("build-catenary", cfg)?;
    build_catenary_in(&mut run, &p).map_err(|e| run.failed(e))
}

fn build_catenary_in(run: &mut Run, p: &CatenaryParams) -> Result<Exit, CliError> {
    let p = *p;
    let k = run.cfg.k;
    let step = run.cfg.step;
    let patch = match run.timings.time("construct", || catenary_patch(&p, k, &run.cfg, step)) {
        Err(GeometryError::Obstruction { reason }) => return run.obstruction(&reason),
        r => r?,
    };
    let (lambda_sum, multiplicity) = run.timings.time("curvatures", || max_lambda_sum(&patch, &run.cfg))?;
    let table = run.timings.time("convergence", || convergence(&p, k, &run.cfg))?;
    let tol = run.cfg.tol.relation;
    let ok = lambda_sum <= tol && multiplicity <= tol;
    let crate::geometry::Chart::Rotation(rot) = &patch.chart else { unreachable!("catenary patches are rotations") };
    let curve = &rot.profile;
    csv(run, curve, "profile")?;
    obj(run, &patch, "f")?;
    run.report(
        if ok { "pass" } else { "fail" },
        json!({
            "params": p,
            "k": k,
            "profile": {
                "samples": curve.len(),
                "s_range": curve.s_range(),
                "truncated": curve.truncated,
                "unit_speed_residual": curve.unit_speed_residual(),
                "quadric_residual": curve.quadric_residual(),
                "ode_residual": curve.height.ode_residual(&p),
            },
            "checks": [
                { "name": "lambda_sum", "max": lambda_sum, "tol": tol, "pass": lambda_sum <= tol },
                { "name": "lambda3_plus_2lambda", "max": multiplicity, "tol": tol, "pass": multiplicity <= tol },
            ],
            "convergence": table,
        }),
    )?;
    println!("max |sum lambda| = {lambda_sum:.3e}, max |lambda3 + 2 lambda| = {multiplicity:.3e}");
    run.finish()?;
    Ok(if ok { Exit::Success } else { Exit::Failure })
}

/// Constructs the pair selected by `cfg.mode` from the typed configuration.
pub fn build_pair(cfg: &RunConfig) -> Result<PairBuild, GeometryError> {
    match cfg.mode {
        PairKind::Umbilic => umbilic_pair(cfg.c, cfg.ct, cfg.interval, cfg.step),
        PairKind::Catenary => {
            let p = CatenaryParams::new(cfg.r, cfg.delta, cfg.x0, cfg.dx0)?;
            catenary_pair(cfg.c, cfg.ct, &p, cfg.interval, cfg.step)
        }
        PairKind::ConeHelix => {
            let q = ConeHelixParams {
                cbar: cfg.cbar,
                base: cfg.base,
                t_range: cfg.t_range,
                a: cfg.helix.0,
                b: cfg.helix.1,
            };
            cone_helix_pair(cfg.c, cfg.ct, &q, cfg.interval, cfg.step)
        }
    }
}

/// `check-pair` and, with `meshes`, `build-pair`.
pub fn pair(cfg: RunConfig, meshes: bool) -> Result<Exit, CliError> {
    if cfg.mode == PairKind::Catenary {
        CatenaryParams::new(cfg.r, cfg.delta, cfg.x0, cfg.dx0).map_err(|e| CliError::Config(e.to_string()))?;
    }
    let mut run = Run::new(if meshes { "build-pair" } else { "check-pair" }, cfg)?;
    pair_in(&mut run, meshes).map_err(|e| run.failed(e))
}

fn pair_in(run: &mut Run, meshes: bool) -> Result<Exit, CliError> {
    let b = match run.timings.time("construct", || build_pair(&run.cfg)) {
        Err(GeometryError::Obstruction { reason }) => return run.obstruction(&reason),
        r => r?,
    };
    let settings = PairSettings {
        grid: run.cfg.grid,
        derivatives: run.cfg.derivatives,
        gauss_step: run.cfg.gauss_step,
        tol: run.cfg.tol,
    };
    let report = run.timings.time("check", || check_dual_pair(&b.f, &b.ft, b.kind, &settings))?;
    let table = if b.kind == PairKind::Catenary {
        let p = CatenaryParams::new(run.cfg.r, run.cfg.delta, run.cfg.x0, run.cfg.dx0).map_err(GeometryError::from)?;
        let c = run.cfg.c;
        Some(run.timings.time("convergence", || convergence(&p, c, &run.cfg))?)
    } else {
        None
    };
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    let samples = json!({ "checks": names, "samples": report.samples });
    write(&run.dir.join("samples.json"), serde_json::to_string(&samples).expect("samples serialize") + "\n")?;
    if meshes {
        obj(run, &b.f, "f")?;
        obj(run, &b.ft, "f_tilde")?;
        if let Some(pf) = &b.profile_f {
            csv(run, pf, "profile_f")?;
        }
        csv(run, &b.profile_ft, "profile_f_tilde")?;
    }
    let ok = report.pass();
    for c in &report.checks {
        println!("{:<22} max {:>10.3e}  tol {:>8.1e}  {}", c.name, c.max, c.tol, if c.pass { "pass" } else { "FAIL" });
    }
    run.report(
        if ok { "pass" } else { "fail" },
        json!({
            "kind": report.kind,
            "c": report.c,
            "ct": report.ct,
            "settings": report.settings,
            "checks": report.checks,
            "truncated": { "f": b.profile_f.as_ref().and_then(|p| p.truncated), "f_tilde": b.profile_ft.truncated },
            "domains": { "f": b.f.domain, "f_tilde": b.ft.domain },
            "convergence": table,
        }),
    )?;
    run.finish()?;
    Ok(if ok { Exit::Success } else { Exit::Failure })
}

const EXPECTED: [&str; 3] = ["samples.json", "report.json", "timings.json"];

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn num(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

/// Turns the artifacts of a run directory into CSV files under `export/`.
pub fn export(dir: &Path) -> Result<Exit, CliError> {
    let present: Vec<&str> = EXPECTED.iter().copied().filter(|f| dir.join(f).is_file()).collect();
    if present.is_empty() {
        return Err(CliError::Config(format!(
            "no run artifacts in {}: expected at least one of {}",
            dir.display(),
            EXPECTED.join(", ")
        )));
    }
    let out = dir.join("export");
    fs::create_dir_all(&out).map_err(|e| CliError::io(&out, e))?;
    let mut written = Vec::new();
    if present.contains(&"samples.json") {
        let v = read_json(&dir.join("samples.json"))?;
        let checks: Vec<String> =
            v["checks"].as_array().into_iter().flatten().map(|c| c.as_str().unwrap_or("").to_string()).collect();
        let mut w = ::csv::Writer::from_path(out.join("residuals.csv")).map_err(|e| CliError::Io(e.to_string()))?;
        let mut header: Vec<String> = [
            "i",
            "j",
            "k",
            "u0",
            "u1",
            "u2",
            "ut0",
            "ut1",
            "ut2",
            "lambda1",
            "lambda2",
            "lambda3",
            "mu1",
            "mu2",
            "mu3",
            "metric_deviation",
            "gauss_f",
            "gauss_ft",
        ]
        .map(String::from)
        .to_vec();
        header.extend(checks.iter().map(|c| format!("residual_{c}")));
        w.write_record(&header).map_err(|e| CliError::Io(e.to_string()))?;
        for s in v["samples"].as_array().into_iter().flatten() {
            let mut row = Vec::new();
            for key in ["index", "u", "ut", "lambda", "mu"] {
                row.extend(s[key].as_array().into_iter().flatten().map(num));
            }
            for key in ["metric_deviation", "gauss_f", "gauss_ft"] {
                row.push(num(&s[key]));
            }
            row.extend(s["residuals"].as_array().into_iter().flatten().map(num));
            w.write_record(&row).map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
        written.push("residuals.csv");
    }
    if present.contains(&"report.json") {
        let v = read_json(&dir.join("report.json"))?;
        let rows = &v["result"]["convergence"]["rows"];
        if let Some(rows) = rows.as_array() {
            let mut text = String::from("step,solution_difference,ode_residual,lambda_sum\n");
            for r in rows {
                text += &format!(
                    "{},{},{},{}\n",
                    num(&r["step"]),
                    num(&r["solution_difference"]),
                    num(&r["ode_residual"]),
                    num(&r["lambda_sum"])
                );
            }
            write(&out.join("convergence.csv"), text)?;
            written.push("convergence.csv");
        }
    }
    if present.contains(&"timings.json") {
        let v = read_json(&dir.join("timings.json"))?;
        let mut text = String::from("phase,seconds\n");
        for (k, s) in v.as_object().into_iter().flatten() {
            text += &format!("{k},{}\n", num(s));
        }
        write(&out.join("timings.csv"), text)?;
        written.push("timings.csv");
    }
    println!("wrote {} to {}", written.join(", "), out.display());
    Ok(Exit::Success)
}

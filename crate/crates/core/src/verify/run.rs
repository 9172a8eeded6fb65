//! Running a selection of certificates and reporting the results.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{catalog, Space};
use super::constraints::Variety;
use super::context::Context;
use super::engine::{Engine, IdentityCertificate, Status, DEFAULT_SEED, EVAL_POINTS};

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub eval_points: usize,
    pub filter: String,
    pub certificates: Vec<IdentityCertificate>,
    pub passed: usize,
    pub failed: usize,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCertificate> {
        self.certificates.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table, one row per certificate.
    pub fn summary_table(&self) -> String {
        let w = self.certificates.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut out = String::new();
        let _ = writeln!(out, "{:<w$}  {:<17}  {:<10}  {:>8}  {:>8}", "name", "status", "relation", "terms", "reduced");
        for c in &self.certificates {
            let rel = serde_json::to_value(c.relation).ok();
            let rel = rel.as_ref().and_then(|v| v.as_str()).unwrap_or("?");
            let _ = writeln!(
                out,
                "{:<w$}  {:<17}  {:<10}  {:>8}  {:>8}",
                c.name,
                c.status.label(),
                rel,
                c.residual_terms,
                c.reduced_terms
            );
        }
        let _ = writeln!(out, "{} passed, {} failed", self.passed, self.failed);
        out
    }

    /// `name,seconds` per certificate. Kept apart from the report so the
    /// report stays reproducible.
    pub fn timings_csv(&self) -> String {
        let mut out = String::from("name,seconds\n");
        for c in &self.certificates {
            let _ = writeln!(out, "{},{:.6}", c.name, c.elapsed.as_secs_f64());
        }
        out
    }
}

/// Names of every certificate matching `filter` (a glob; `*` selects all).
pub fn select(filter: &str) -> Result<Vec<String>, glob::PatternError> {
    let pat = glob::Pattern::new(filter)?;
    Ok(catalog().into_iter().map(|e| e.name).filter(|n| pat.matches(n)).collect())
}

/// Runs every certificate whose name matches `filter`, in parallel; the
/// result is sorted by name regardless of scheduling.
pub fn run_all(ctx: &Context, filter: &str, seed: u64) -> Result<VerificationReport, glob::PatternError> {
    let pat = glob::Pattern::new(filter)?;
    let entries: Vec<_> = catalog().into_iter().filter(|e| pat.matches(&e.name)).collect();
    let mut certificates: Vec<IdentityCertificate> = entries
        .par_iter()
        .map(|e| {
            let space: &dyn Variety = match e.space {
                Space::Holonomic => &ctx.cs,
                Space::Curvatures => &ctx.lemma,
            };
            let claim = e.build(ctx);
            Engine::new(space, seed).certify(&claim)
        })
        .collect();
    certificates.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = certificates.iter().filter(|c| c.status.passed()).count();
    Ok(VerificationReport {
        seed,
        eval_points: EVAL_POINTS,
        filter: filter.to_string(),
        failed: certificates.len() - passed,
        passed,
        certificates,
    })
}

/// `run_all` with the default seed.
pub fn run_default(ctx: &Context, filter: &str) -> Result<VerificationReport, glob::PatternError> {
    run_all(ctx, filter, DEFAULT_SEED)
}

/// Whether any certificate shows the numeric and symbolic routes disagreeing.
pub fn has_divergence(report: &VerificationReport) -> bool {
    report.certificates.iter().any(|c| matches!(c.status, Status::EngineDivergence { .. }))
}

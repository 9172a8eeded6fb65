//! Certificate engine: every claim is checked twice, by exact evaluation
//! at random points of the relevant variety and by symbolic reduction to a
//! normal form. A disagreement between the two routes is an engine fault.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::constraints::{Relation, Variety};
use crate::algebra::linalg::{det_poly, det_scalar, det_with};
use crate::algebra::{det, ExactScalar, MultiPoly, RationalExpr, Registry};

/// Default seed for the evaluation pre-check.
pub const DEFAULT_SEED: u64 = 20_240_917;
/// Number of random points every claim is evaluated at.
pub const EVAL_POINTS: usize = 20;

/// One side of a claimed identity.
#[derive(Clone, Debug)]
pub enum Term {
    Expr(RationalExpr),
    /// Determinant of a square matrix; evaluated entrywise on the numeric
    /// route, expanded on the symbolic route.
    Det(Vec<Vec<RationalExpr>>),
    /// Determinant of a polynomial matrix, expanded by fraction-free
    /// elimination (for matrices too large for cofactor expansion).
    PolyDet(Vec<Vec<MultiPoly>>),
    /// `factor * term`.
    Scaled(RationalExpr, Box<Term>),
}

impl Term {
    pub fn expand(&self) -> RationalExpr {
        match self {
            Term::Expr(e) => e.clone(),
            Term::Det(m) => det(m),
            Term::PolyDet(m) => RationalExpr::from_poly(det_poly(m)),
            Term::Scaled(f, t) => f * &t.expand(),
        }
    }

    /// Like [`Term::expand`], but reducing modulo `rel` after every ring
    /// operation so determinants of large entries stay tractable.
    pub fn expand_on(&self, space: &dyn Variety, rel: Relation) -> RationalExpr {
        let red = |e: &RationalExpr| space.reduce(e, rel);
        match self {
            Term::Expr(e) => red(e),
            Term::Det(m) => {
                let m: Vec<Vec<RationalExpr>> = m.iter().map(|row| row.iter().map(red).collect()).collect();
                det_with(&m, &red)
            }
            Term::PolyDet(_) => red(&self.expand()),
            Term::Scaled(f, t) => red(&(&red(f) * &t.expand_on(space, rel))),
        }
    }

    pub fn eval(&self, pt: &[ExactScalar]) -> Option<ExactScalar> {
        match self {
            Term::Expr(e) => e.eval(pt),
            Term::Det(m) => {
                let mut vals = Vec::with_capacity(m.len());
                for row in m {
                    let mut r = Vec::with_capacity(row.len());
                    for e in row {
                        r.push(e.eval(pt)?);
                    }
                    vals.push(r);
                }
                Some(det_scalar(&vals))
            }
            Term::PolyDet(m) => {
                let vals: Vec<Vec<ExactScalar>> =
                    m.iter().map(|row| row.iter().map(|e| e.eval(pt)).collect()).collect();
                Some(det_scalar(&vals))
            }
            Term::Scaled(f, t) => Some(f.eval(pt)? * t.eval(pt)?),
        }
    }
}

impl From<RationalExpr> for Term {
    fn from(e: RationalExpr) -> Self {
        Term::Expr(e)
    }
}

/// A named identity `lhs = rhs` modulo `relation`.
#[derive(Clone, Debug)]
pub struct Claim {
    pub name: String,
    pub statement: String,
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
    /// Extra findings reported alongside the verdict (discovered
    /// prefactors, recorded assumptions).
    pub notes: Vec<String>,
    /// A failure established before any algebra ran (bad fixture, checksum
    /// mismatch). The claim is still evaluated so the report shows both.
    pub precondition_failure: Option<String>,
    /// An expression that must not vanish at a stored point (nonvanishing
    /// witnesses for resultants and independence claims).
    pub nonzero_at: Option<(Vec<ExactScalar>, RationalExpr)>,
}

impl Claim {
    pub fn new(
        name: impl Into<String>,
        statement: impl Into<String>,
        lhs: Term,
        rhs: Term,
        relation: Relation,
    ) -> Self {
        Self {
            name: name.into(),
            statement: statement.into(),
            lhs,
            rhs,
            relation,
            notes: Vec::new(),
            precondition_failure: None,
            nonzero_at: None,
        }
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn precondition(mut self, why: Option<String>) -> Self {
        if self.precondition_failure.is_none() {
            self.precondition_failure = why;
        }
        self
    }

    pub fn nonzero_at(mut self, point: Vec<ExactScalar>, expr: RationalExpr) -> Self {
        self.nonzero_at = Some((point, expr));
        self
    }

    /// A claim that could not be formed at all.
    pub fn broken(name: impl Into<String>, statement: impl Into<String>, why: impl Into<String>) -> Self {
        let mut c = Self::new(
            name,
            statement,
            Term::Expr(RationalExpr::zero()),
            Term::Expr(RationalExpr::zero()),
            Relation::Exact,
        );
        c.precondition_failure = Some(why.into());
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    ProvedEqual,
    /// The identity fails; `point` lists the generator values where the
    /// residual is nonzero.
    Counterexample {
        point: Vec<(String, String)>,
        residual: String,
    },
    /// A precondition failed (unparsable fixture, checksum mismatch).
    Invalid {
        reason: String,
    },
    /// The numeric and symbolic routes disagree. Never expected; signals an
    /// engine bug.
    EngineDivergence {
        detail: String,
    },
}

impl Status {
    pub fn passed(&self) -> bool {
        matches!(self, Status::ProvedEqual)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::ProvedEqual => "proved-equal",
            Status::Counterexample { .. } => "counterexample",
            Status::Invalid { .. } => "invalid",
            Status::EngineDivergence { .. } => "engine-divergence",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCertificate {
    pub name: String,
    pub statement: String,
    pub relation: Relation,
    pub status: Status,
    /// Points at which the numeric pre-check was run.
    pub eval_points: usize,
    pub eval_passed: bool,
    pub symbolic_passed: bool,
    /// Terms in the residual numerator before and after reduction.
    pub residual_terms: usize,
    pub reduced_terms: usize,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Checks claims against a constraint set.
pub struct Engine<'a> {
    pub space: &'a dyn Variety,
    pub seed: u64,
    pub points: usize,
}

impl<'a> Engine<'a> {
    pub fn new(space: &'a dyn Variety, seed: u64) -> Self {
        Self { space, seed, points: EVAL_POINTS }
    }

    fn seed_for(&self, name: &str) -> u64 {
        // Per-claim stream so results do not depend on scheduling order.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in name.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^ self.seed
    }

    pub fn certify(&self, claim: &Claim) -> IdentityCertificate {
        let start = Instant::now();
        let mut cert = IdentityCertificate {
            name: claim.name.clone(),
            statement: claim.statement.clone(),
            relation: claim.relation,
            status: Status::ProvedEqual,
            eval_points: 0,
            eval_passed: false,
            symbolic_passed: false,
            residual_terms: 0,
            reduced_terms: 0,
            notes: claim.notes.clone(),
            elapsed: Duration::ZERO,
        };

        // Numeric route.
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed_for(&claim.name));
        let mut witness: Option<(Vec<ExactScalar>, ExactScalar)> = None;
        let mut attempts = 0;
        while cert.eval_points < self.points && attempts < self.points * 20 {
            attempts += 1;
            let pt = self.space.sample(&mut rng, claim.relation);
            let (Some(l), Some(r)) = (claim.lhs.eval(&pt), claim.rhs.eval(&pt)) else {
                continue;
            };
            cert.eval_points += 1;
            let d = l - r;
            if !d.is_zero() && witness.is_none() {
                witness = Some((pt, d));
            }
        }
        cert.eval_passed = witness.is_none() && cert.eval_points == self.points;

        // Symbolic route.
        let residual =
            &claim.lhs.expand_on(self.space, claim.relation) - &claim.rhs.expand_on(self.space, claim.relation);
        cert.residual_terms = residual.numerator().len();
        let symbolic = match self.space.vanishes(&residual, claim.relation) {
            Ok(z) => {
                cert.reduced_terms = self.space.normal_form(residual.numerator(), claim.relation).len();
                Ok(z)
            }
            Err(e) => Err(e),
        };
        cert.symbolic_passed = matches!(symbolic, Ok(true));

        let witness_failure = claim.nonzero_at.as_ref().and_then(|(pt, e)| match e.eval(pt) {
            Some(v) if !v.is_zero() => None,
            Some(_) => Some("witness expression vanishes at the stored point".to_string()),
            None => Some("witness point is a pole".to_string()),
        });
        cert.status = match (claim.precondition_failure.as_ref().or(witness_failure.as_ref()), symbolic) {
            (Some(why), _) => Status::Invalid { reason: why.clone() },
            (None, Err(e)) => Status::Invalid { reason: e },
            (None, Ok(sym_zero)) => {
                if cert.eval_points < self.points {
                    Status::Invalid {
                        reason: format!(
                            "only {} of {} evaluation points avoided the poles",
                            cert.eval_points, self.points
                        ),
                    }
                } else if sym_zero && witness.is_none() {
                    Status::ProvedEqual
                } else if let (false, Some((pt, d))) = (sym_zero, witness.as_ref()) {
                    Status::Counterexample { point: label_point(self.space.registry(), pt), residual: d.to_string() }
                } else if sym_zero {
                    Status::EngineDivergence { detail: "symbolic residual vanishes but an evaluation does not".into() }
                } else {
                    Status::EngineDivergence {
                        detail: "all evaluations vanish but the symbolic residual does not".into(),
                    }
                }
            }
        };
        cert.elapsed = start.elapsed();
        cert
    }
}

fn label_point(reg: &Registry, pt: &[ExactScalar]) -> Vec<(String, String)> {
    reg.vars().map(|v| (reg.name(v).to_string(), pt[v.index()].to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::constraints::ConstraintSet;
    use crate::verify::symbols::Symbols;

    #[test]
    fn true_and_false_claims() {
        let cs = ConstraintSet::new(Symbols::new());
        let eng = Engine::new(&cs, 1);
        let s = &cs.sym;
        let lhs = s.parse("v1^2 + v3^2");
        let ok = Claim::new("unit", "", lhs.clone().into(), s.parse("1 + v2^2").into(), Relation::Unit);
        assert_eq!(eng.certify(&ok).status, Status::ProvedEqual);
        let bad = Claim::new("not exact", "", lhs.into(), s.parse("1 + v2^2").into(), Relation::Exact);
        let c = eng.certify(&bad);
        assert!(matches!(c.status, Status::Counterexample { .. }), "{:?}", c.status);
    }

    #[test]
    fn determinant_terms() {
        let cs = ConstraintSet::new(Symbols::new());
        let eng = Engine::new(&cs, 1);
        let s = &cs.sym;
        let m = vec![vec![s.parse("v1"), s.parse("1/v2")], vec![s.parse("v2^2"), s.parse("v3")]];
        let claim = Claim::new("det", "", Term::Det(m), s.parse("v1*v3 - v2").into(), Relation::Exact);
        let c = eng.certify(&claim);
        assert!(c.status.passed());
        assert!(c.eval_passed && c.symbolic_passed);
    }
}

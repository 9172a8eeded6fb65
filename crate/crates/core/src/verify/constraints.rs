//! Side relations and sampling of points on the varieties they cut out.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::symbols::{Symbols, DELTA};
use crate::algebra::{ExactScalar, MultiPoly, RationalExpr, Registry};

/// Which side relations an identity is asserted modulo.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Plain identity of rational functions.
    Exact,
    /// Modulo the unit relation, eliminating `v3^2`.
    Unit,
    /// Modulo the unit relation, eliminating `v1^2`.
    UnitV1,
    /// Modulo the `V1^2` relation and the unit relation.
    UnitTheta,
}

impl Relation {
    pub fn describe(self) -> &'static str {
        match self {
            Relation::Exact => "exact",
            Relation::Unit => "v3^2 -> 1 - v1^2 + v2^2",
            Relation::UnitV1 => "v1^2 -> 1 + v2^2 - v3^2",
            Relation::UnitTheta => "V1^2 -> (ct - c) v1^2 (v2^2 + v3^2)^2 / Theta, then v3^2 -> 1 - v1^2 + v2^2",
        }
    }
}

/// The algebraic constraints on `(v, V)`: signature `(1, -1, 1)`, the unit
/// relation `sum delta_i v_i^2 = 1`, and the `V1^2` relation that follows
/// from `sum delta_i V_i^2 = c - ct` once `V2`, `V3` are eliminated. That
/// sum equals `-V1^2 Theta / (v1^2 (v2^2 + v3^2)^2)` on the unit variety,
/// so the elimination is `V1^2 = (ct - c) v1^2 (v2^2 + v3^2)^2 / Theta`.
#[derive(Clone, Debug)]
pub struct ConstraintSet {
    pub sym: Symbols,
    pub signature: [i64; 3],
    unit_v3: MultiPoly,
    unit_v1: MultiPoly,
    theta: MultiPoly,
    theta_num: MultiPoly,
}

impl ConstraintSet {
    pub fn new(sym: Symbols) -> Self {
        let unit_v3 = sym.unit_rhs_v3();
        let unit_v1 = sym.unit_rhs_v1();
        let theta = sym.theta();
        let theta_num = sym.parse_poly("(ct - c)*v1^2*(v2^2 + v3^2)^2");
        Self { sym, signature: DELTA, unit_v3, unit_v1, theta, theta_num }
    }

    /// `V1^2 Theta - (ct - c) v1^2 (v2^2 + v3^2)^2`.
    pub fn theta_residual(&self) -> MultiPoly {
        let v1sq = MultiPoly::var(self.sym.big_v1).pow(2);
        &(&v1sq * &self.theta) - &self.theta_num
    }

    /// Rewrites `V1^(2k+e)` as `N^k Theta^(K-k) V1^e` where `V1^2 = N/Theta`
    /// and `K` is the largest `k` present; the result equals
    /// `Theta^K * p` on the variety.
    pub fn reduce_theta(&self, p: &MultiPoly) -> MultiPoly {
        let v = self.sym.big_v1;
        if p.degree_in(v) < 2 {
            return p.clone();
        }
        let coeffs = p.coefficients_in(v);
        let kmax = (coeffs.len() - 1) / 2;
        let mut npow = vec![MultiPoly::one()];
        let mut tpow = vec![MultiPoly::one()];
        for k in 1..=kmax {
            npow.push(&npow[k - 1] * &self.theta_num);
            tpow.push(&tpow[k - 1] * &self.theta);
        }
        let mut out = MultiPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = e / 2;
            let mut t = c * &npow[k];
            t = &t * &tpow[kmax - k];
            if e % 2 == 1 {
                t = &t * &MultiPoly::var(v);
            }
            out = &out + &t;
        }
        out
    }

    /// Normal form of a polynomial modulo the chosen relations. A polynomial
    /// vanishes on the variety iff its normal form is the zero polynomial.
    pub fn normal_form(&self, p: &MultiPoly, rel: Relation) -> MultiPoly {
        match rel {
            Relation::Exact => p.clone(),
            Relation::Unit => p.reduce_square(self.sym.v[2], &self.unit_v3),
            Relation::UnitV1 => p.reduce_square(self.sym.v[0], &self.unit_v1),
            Relation::UnitTheta => self.reduce_theta(p).reduce_square(self.sym.v[2], &self.unit_v3),
        }
    }

    pub fn vanishes(&self, r: &RationalExpr, rel: Relation) -> Result<bool, String> {
        Variety::vanishes(self, r, rel)
    }

    /// Random point on the variety of `rel`; coordinates not fixed by the
    /// relation are rationals with numerator and denominator drawn from
    /// `1..=97`.
    pub fn sample_point(&self, rng: &mut ChaCha8Rng, rel: Relation) -> Vec<ExactScalar> {
        loop {
            let mut pt: Vec<ExactScalar> = (0..self.sym.reg.len()).map(|_| random_rational(rng)).collect();
            if rel == Relation::Exact {
                return pt;
            }
            // Rational parametrization of x^2 + z^2 = 1 + y^2 through the
            // point (1, y, y): slope m along the x-z line.
            let y = random_rational(rng);
            let m = random_rational(rng);
            let one = ExactScalar::one();
            let two = &one + &one;
            let u = -(&two * (&one + &y * &m)) / (&one + &m * &m);
            let x = &one + &u;
            let z = &y + &m * &u;
            if x.is_zero() || y.is_zero() || z.is_zero() {
                continue;
            }
            pt[self.sym.v[0].index()] = x;
            pt[self.sym.v[1].index()] = y;
            pt[self.sym.v[2].index()] = z;
            if rel == Relation::UnitTheta {
                let theta = self.theta.eval(&pt);
                let v1 = &pt[self.sym.v[0].index()];
                let s = &pt[self.sym.v[1].index()] * &pt[self.sym.v[1].index()]
                    + &pt[self.sym.v[2].index()] * &pt[self.sym.v[2].index()];
                if theta.is_zero() {
                    continue;
                }
                let big = &pt[self.sym.big_v1.index()];
                let shift = big * big * &theta / (v1 * v1 * &s * &s);
                pt[self.sym.ct.index()] = &pt[self.sym.c.index()] + shift;
            }
            return pt;
        }
    }
}

impl Variety for ConstraintSet {
    fn registry(&self) -> &Registry {
        &self.sym.reg
    }

    fn reduce(&self, r: &RationalExpr, rel: Relation) -> RationalExpr {
        if rel == Relation::Exact || r.is_zero() {
            return r.clone();
        }
        // Denominator factors only get the unit reduction; a factor that
        // vanishes on the variety is kept so `vanishes` can report it.
        let unit = if rel == Relation::UnitV1 { Relation::UnitV1 } else { Relation::Unit };
        let mut den: Vec<(MultiPoly, u32)> = r
            .den_factors()
            .iter()
            .map(|(f, e)| {
                let g = self.normal_form(f, unit);
                (if g.is_zero() { f.clone() } else { g }, *e)
            })
            .collect();
        if rel == Relation::UnitTheta {
            // The V1^2 reduction returns Theta^K times the input.
            let k = r.numerator().degree_in(self.sym.big_v1) / 2;
            if k > 0 {
                den.push((self.theta.clone(), k as u32));
            }
        }
        let num = self.normal_form(r.numerator(), rel);
        RationalExpr::from_factored(num, &den).unwrap_or_else(|_| r.clone())
    }

    fn sample(&self, rng: &mut ChaCha8Rng, rel: Relation) -> Vec<ExactScalar> {
        self.sample_point(rng, rel)
    }

    fn normal_form(&self, p: &MultiPoly, rel: Relation) -> MultiPoly {
        ConstraintSet::normal_form(self, p, rel)
    }
}

/// Where claims live: a registry, a sampler for random points and a normal
/// form deciding vanishing.
pub trait Variety: Sync {
    fn registry(&self) -> &Registry;
    fn sample(&self, rng: &mut ChaCha8Rng, rel: Relation) -> Vec<ExactScalar>;
    fn normal_form(&self, p: &MultiPoly, rel: Relation) -> MultiPoly;

    /// An expression that agrees with `r` on the variety but is reduced as
    /// far as the relations allow. Used to keep intermediate results small;
    /// never needed for correctness.
    fn reduce(&self, r: &RationalExpr, _rel: Relation) -> RationalExpr {
        r.clone()
    }

    /// Whether `r` vanishes on the variety. Errors if a denominator factor
    /// vanishes identically there (the expression is then undefined).
    fn vanishes(&self, r: &RationalExpr, rel: Relation) -> Result<bool, String> {
        for (f, _) in r.den_factors() {
            if self.normal_form(f, rel).is_zero() {
                return Err(format!("denominator factor with {} terms vanishes modulo {}", f.len(), rel.describe()));
            }
        }
        Ok(self.normal_form(r.numerator(), rel).is_zero())
    }
}

/// Affine space over a registry with no relations; only `Relation::Exact`
/// claims make sense here.
#[derive(Clone, Debug)]
pub struct FreeSpace {
    pub reg: Registry,
}

impl Variety for FreeSpace {
    fn registry(&self) -> &Registry {
        &self.reg
    }

    fn sample(&self, rng: &mut ChaCha8Rng, rel: Relation) -> Vec<ExactScalar> {
        assert_eq!(rel, Relation::Exact, "free space has no side relations");
        (0..self.reg.len()).map(|_| random_rational(rng)).collect()
    }

    fn normal_form(&self, p: &MultiPoly, _rel: Relation) -> MultiPoly {
        p.clone()
    }
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> ExactScalar {
    let n: i64 = rng.gen_range(1..=97);
    let d: i64 = rng.gen_range(1..=97);
    crate::algebra::scalar::frac(n, d)
}

//! Principal-curvature relations forced by the Gauss equations of the two
//! immersions, `c + lam_i lam_j = ct + mu_i mu_j`.

use super::{entry, Entry, Space};
use crate::algebra::RationalExpr;
use crate::verify::constraints::Relation;
use crate::verify::context::Context;
use crate::verify::engine::Claim;

const L: Space = Space::Curvatures;
const SIGNS: &str = "both sign factors in the Gauss equation of the pair are taken as +1";

/// `c + x - ct - y` for the Gauss equation `c + x = ct + y`.
fn gauss(ctx: &Context, x: &str, y: &str) -> RationalExpr {
    ctx.lemma_parse(&format!("c + ({x}) - ct - ({y})"))
}

fn sub(ctx: &Context, e: &RationalExpr, bindings: &[(&str, &str)]) -> RationalExpr {
    let b: Vec<_> = bindings.iter().map(|(v, t)| (ctx.lemma.reg.var(v), ctx.lemma_parse(t))).collect();
    e.substitute(&b).expect("bindings are not recursive")
}

fn claim(ctx: &Context, name: &str, statement: &str, lhs: RationalExpr, rhs: &str) -> Claim {
    Claim::new(name, statement, lhs.into(), ctx.lemma_parse(rhs).into(), Relation::Exact).note(SIGNS)
}

pub(super) fn register(out: &mut Vec<Entry>) {
    // Double principal curvature lam = lam1 = lam2.
    out.push(entry("curvature.a.mu3_split", L, |ctx, name| {
        let c2 = gauss(ctx, "lam*lam3", "mu1*mu3");
        let c3 = gauss(ctx, "lam*lam3", "mu2*mu3");
        claim(
            ctx,
            name,
            "subtracting the (2,3) from the (1,3) equation leaves -mu3 (mu1 - mu2)",
            &c2 - &c3,
            "-mu3*(mu1 - mu2)",
        )
    }));
    out.push(entry("curvature.a.minimality_substituted", L, |ctx, name| {
        let c2 = gauss(ctx, "lam*lam3", "mu1*mu3");
        let e = sub(ctx, &c2, &[("lam3", "-2*lam"), ("mu1", "mu")]);
        claim(
            ctx,
            name,
            "with lam3 = -2 lam and mu1 = mu the (1,3) equation reads c - ct - 2 lam^2 - mu mu3",
            e,
            "c - ct - 2*lam^2 - mu*mu3",
        )
    }));
    out.push(entry("curvature.a.first_equation", L, |ctx, name| {
        let c1 = gauss(ctx, "lam^2", "mu1*mu2");
        let e = sub(ctx, &c1, &[("mu1", "mu"), ("mu2", "mu")]);
        claim(
            ctx,
            name,
            "with mu1 = mu2 = mu the (1,2) equation reads c - ct + lam^2 - mu^2",
            e,
            "c - ct + lam^2 - mu^2",
        )
    }));
    out.push(entry("curvature.a.mu3_formula", L, |ctx, name| {
        let c2 = gauss(ctx, "lam*lam3", "mu1*mu3");
        let e = sub(ctx, &c2, &[("lam3", "-2*lam"), ("mu1", "mu")]);
        // Replace lam^2 by mu^2 - (c - ct), from the first equation.
        let lam = ctx.lemma.reg.var("lam");
        let lam2 = ctx.lemma_parse("mu^2 - (c - ct)");
        let mut eliminated = RationalExpr::zero();
        for (d, coef) in e.numerator().coefficients_in(lam).into_iter().enumerate() {
            let mut t = &RationalExpr::from_poly(coef) * &lam2.pow(d as u32 / 2);
            if d % 2 == 1 {
                t = &t * &RationalExpr::var(lam);
            }
            eliminated = &eliminated + &t;
        }
        claim(
            ctx,
            name,
            "eliminating lam^2 gives -mu (mu3 - (3 (c - ct) / mu - 2 mu)), so mu3 = 3 (c - ct) / mu - 2 mu",
            eliminated,
            "-mu*(mu3 - (3*(c - ct)/mu - 2*mu))",
        )
    }));
    out.push(entry("curvature.a.mu_nonzero", L, |ctx, name| {
        let e = ctx.lemma_parse("3*(c - ct) - 2*mu^2 - mu*mu3");
        let at0 = sub(ctx, &e, &[("mu", "0")]);
        claim(
            ctx,
            name,
            "at mu = 0 the eliminated equation reduces to 3 (c - ct), nonzero since c != ct",
            at0,
            "3*(c - ct)",
        )
    }));
    out.push(entry("curvature.a.cartan", L, |ctx, name| {
        let e = ctx.lemma_parse("(c + lam*lam3)/(lam - lam3)");
        let e = sub(ctx, &e, &[("lam3", "-2*lam")]);
        claim(
            ctx,
            name,
            "the isoparametric sum for the double curvature at lam3 = -2 lam is (c - 2 lam^2) / (3 lam)",
            e,
            "(c - 2*lam^2)/(3*lam)",
        )
    }));
    // A vanishing principal curvature lam3 = 0, lam2 = -lam1.
    out.push(entry("curvature.b.mu3_split", L, |ctx, name| {
        let d2 = gauss(ctx, "0", "mu1*mu3");
        let d3 = gauss(ctx, "0", "mu2*mu3");
        claim(
            ctx,
            name,
            "subtracting the (2,3) from the (1,3) equation leaves -mu3 (mu1 - mu2)",
            &d2 - &d3,
            "-mu3*(mu1 - mu2)",
        )
    }));
    out.push(entry("curvature.b.first_equation", L, |ctx, name| {
        let d1 = gauss(ctx, "-lam1^2", "mu1*mu2");
        let e = sub(ctx, &d1, &[("mu1", "mu"), ("mu2", "mu")]);
        claim(
            ctx,
            name,
            "with mu1 = mu2 = mu the (1,2) equation reads c - ct - lam1^2 - mu^2",
            e,
            "c - ct - lam1^2 - mu^2",
        )
    }));
    out.push(entry("curvature.b.second_equation", L, |ctx, name| {
        let d2 = gauss(ctx, "0", "mu1*mu3");
        let e = sub(ctx, &d2, &[("mu1", "mu")]);
        claim(ctx, name, "with mu1 = mu the (1,3) equation reads c - ct - mu mu3", e, "c - ct - mu*mu3")
    }));
    out.push(entry("curvature.b.mu3_zero", L, |ctx, name| {
        let d2 = gauss(ctx, "0", "mu1*mu3");
        let e = sub(ctx, &d2, &[("mu3", "0")]);
        claim(ctx, name, "at mu3 = 0 the (1,3) equation reads c - ct, contradicting c != ct", e, "c - ct")
    }));
}

//! Elimination of `V2`, `V3`, the `V1^2` relation, consistency of the
//! reduced derivation rules with the holonomic system, and the linear
//! system for the `d alpha_i / du_i`.

use super::{entry, Entry, Space};
use crate::algebra::{det, RationalExpr};
use crate::verify::constraints::Relation;
use crate::verify::context::Context;
use crate::verify::engine::{Claim, Term};

const H: Space = Space::Holonomic;

fn ix(i: usize) -> usize {
    i + 1
}

/// `v_i (delta_j v_j^2 - delta_k v_k^2) V_j + v_j (delta_i v_i^2 - delta_k v_k^2) V_i`
/// with free `V`.
fn pair_equation(ctx: &Context, i: usize, j: usize) -> RationalExpr {
    let s = &ctx.sym;
    let k = 3 - i - j;
    let sq = |m: usize| &s.delta(m) * &s.vi(m).pow(2);
    let a = &(&s.vi(i) * &(&sq(j) - &sq(k))) * &s.free_big_v(j);
    let b = &(&s.vi(j) * &(&sq(i) - &sq(k))) * &s.free_big_v(i);
    &a + &b
}

/// `V2`, `V3` by Cramer's rule from the `(1,2)` and `(1,3)` equations.
fn cramer_v(ctx: &Context) -> [RationalExpr; 2] {
    let s = &ctx.sym;
    let (w2, w3) = (s.free_v[1], s.free_v[2]);
    let eqs = [pair_equation(ctx, 0, 1), pair_equation(ctx, 0, 2)];
    let zero = RationalExpr::zero();
    let coef = |e: &RationalExpr, w| e.derivative(w);
    let rhs: Vec<RationalExpr> =
        eqs.iter().map(|e| -e.substitute(&[(w2, zero.clone()), (w3, zero.clone())]).unwrap()).collect();
    let m = vec![vec![coef(&eqs[0], w2), coef(&eqs[0], w3)], vec![coef(&eqs[1], w2), coef(&eqs[1], w3)]];
    let d = det(&m);
    let m2 = vec![vec![rhs[0].clone(), m[0][1].clone()], vec![rhs[1].clone(), m[1][1].clone()]];
    let m3 = vec![vec![m[0][0].clone(), rhs[0].clone()], vec![m[1][0].clone(), rhs[1].clone()]];
    [&det(&m2) / &d, &det(&m3) / &d]
}

fn elimination(out: &mut Vec<Entry>) {
    for (idx, label) in [(0usize, "V2"), (1, "V3")] {
        out.push(entry(format!("elim.{label}"), H, move |ctx, name| {
            let solved = cramer_v(ctx)[idx].clone();
            Claim::new(
                name,
                format!("{label} solved from the pair equations equals its closed form in V1"),
                solved.into(),
                ctx.sym.big_v(idx + 1).into(),
                Relation::Exact,
            )
        }));
    }
    out.push(entry("elim.third_equation", H, |ctx, name| {
        let s = &ctx.sym;
        let e = pair_equation(ctx, 1, 2).substitute(&[(s.free_v[1], s.big_v(1)), (s.free_v[2], s.big_v(2))]).unwrap();
        Claim::new(
            name,
            "the (2,3) pair equation holds for the solved V2, V3",
            e.into(),
            RationalExpr::zero().into(),
            Relation::Exact,
        )
    }));
    out.push(entry("elim.minimality", H, |ctx, name| {
        let s = &ctx.sym;
        let mut acc = RationalExpr::zero();
        for i in 0..3 {
            acc = &acc + &(&s.big_v(i) / &s.vi(i));
        }
        Claim::new(name, "sum V_i / v_i = 0", acc.into(), RationalExpr::zero().into(), Relation::Exact)
    }));
    out.push(entry("elim.orthogonality", H, |ctx, name| {
        let s = &ctx.sym;
        let mut acc = RationalExpr::zero();
        for i in 0..3 {
            acc = &acc + &(&(&s.delta(i) * &s.vi(i)) * &s.big_v(i));
        }
        Claim::new(name, "sum delta_i v_i V_i = 0", acc.into(), RationalExpr::zero().into(), Relation::Exact)
    }));
    out.push(entry("elim.v1_equals_v3", H, |ctx, name| {
        let s = &ctx.sym;
        let e = s.big_v(1).substitute(&[(s.v[2], s.vi(0))]).unwrap();
        Claim::new(name, "V2 vanishes when v1 = v3", e.into(), RationalExpr::zero().into(), Relation::Exact)
    }));
    out.push(entry("theta.relation", H, |ctx, name| {
        let s = &ctx.sym;
        let mut lhs = RationalExpr::zero();
        for i in 0..3 {
            lhs = &lhs + &(&s.delta(i) * &s.big_v(i).pow(2));
        }
        let rhs = s.parse("-V1^2*Theta/(v1^2*(v2^2 + v3^2)^2)");
        Claim::new(name, "sum delta_i V_i^2 = -V1^2 Theta / (v1^2 (v2^2 + v3^2)^2)", lhs.into(), rhs.into(), Relation::Unit)
            .note("the commonly printed form of this relation has the opposite sign; the V1^2 elimination uses the sign certified here")
    }));
}

fn holonomic(out: &mut Vec<Entry>) {
    let pairs: Vec<(usize, usize)> =
        (0..3).flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    for &(i, j) in &pairs {
        out.push(entry(format!("holonomic.i.{}{}", ix(i), ix(j)), H, move |ctx, name| {
            let s = &ctx.sym;
            let lhs = ctx.d(&s.vi(i), j);
            let rhs = &ctx.h(j, i) * &s.vi(j);
            Claim::new(
                name,
                format!("d v{} / du{} = h{}{} v{}", ix(i), ix(j), ix(j), ix(i), ix(j)),
                lhs.into(),
                rhs.into(),
                Relation::Exact,
            )
        }));
    }
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        out.push(entry(format!("holonomic.ii.{}{}", ix(i), ix(j)), H, move |ctx, name| {
            let s = &ctx.sym;
            let k = 3 - i - j;
            let lhs = &(&(&(&ctx.d(&ctx.h(i, j), i) + &ctx.d(&ctx.h(j, i), j)) + &(&ctx.h(k, i) * &ctx.h(k, j)))
                + &(&s.big_v(i) * &s.big_v(j)))
                + &(&(&s.cc() * &s.vi(i)) * &s.vi(j));
            Claim::new(
                name,
                format!("Gauss equation for the pair ({}, {})", ix(i), ix(j)),
                lhs.into(),
                RationalExpr::zero().into(),
                Relation::Unit,
            )
        }));
    }
    for &(i, k) in &pairs {
        let j = 3 - i - k;
        out.push(entry(format!("holonomic.iii.{}{}{}", ix(i), ix(j), ix(k)), H, move |ctx, name| {
            let lhs = ctx.d(&ctx.h(i, k), j);
            let rhs = &ctx.h(i, j) * &ctx.h(j, k);
            Claim::new(
                name,
                format!("d h{}{} / du{} = h{}{} h{}{}", ix(i), ix(k), ix(j), ix(i), ix(j), ix(j), ix(k)),
                lhs.into(),
                rhs.into(),
                Relation::Unit,
            )
        }));
    }
    for &(i, j) in &pairs {
        out.push(entry(format!("holonomic.iv.{}{}", ix(i), ix(j)), H, move |ctx, name| {
            let s = &ctx.sym;
            let lhs = ctx.d(&s.big_v(i), j);
            let rhs = &ctx.h(j, i) * &s.big_v(j);
            Claim::new(
                name,
                format!("d V{} / du{} = h{}{} V{}", ix(i), ix(j), ix(j), ix(i), ix(j)),
                lhs.into(),
                rhs.into(),
                Relation::Unit,
            )
        }));
    }
    for (group, use_big) in [("v", false), ("vi", true)] {
        for i in 0..3 {
            out.push(entry(format!("holonomic.{group}.{}", ix(i)), H, move |ctx, name| {
                let s = &ctx.sym;
                let x = |m: usize| if use_big { s.big_v(m) } else { s.vi(m) };
                let mut lhs = &s.delta(i) * &ctx.d(&x(i), i);
                for m in (0..3).filter(|&m| m != i) {
                    lhs = &lhs + &(&(&s.delta(m) * &ctx.h(i, m)) * &x(m));
                }
                let what = if use_big { "V" } else { "v" };
                Claim::new(
                    name,
                    format!("derivative along u{} of sum delta_m {what}_m^2 (divided by 2 {what}_{})", ix(i), ix(i)),
                    lhs.into(),
                    RationalExpr::zero().into(),
                    if use_big { Relation::UnitTheta } else { Relation::Exact },
                )
            }));
        }
    }
}

fn invariance(out: &mut Vec<Entry>) {
    for j in 0..3 {
        out.push(entry(format!("invariance.unit_u{}", ix(j)), H, move |ctx, name| {
            let r = RationalExpr::from_poly(ctx.sym.unit_relation());
            Claim::new(
                name,
                format!("d/du{} of v1^2 - v2^2 + v3^2 - 1 is zero", ix(j)),
                ctx.d(&r, j).into(),
                RationalExpr::zero().into(),
                Relation::Exact,
            )
        }));
        out.push(entry(format!("invariance.theta_u{}", ix(j)), H, move |ctx, name| {
            let r = RationalExpr::from_poly(ctx.cs.theta_residual());
            Claim::new(
                name,
                format!("d/du{} of V1^2 Theta - (ct - c) v1^2 (v2^2 + v3^2)^2 vanishes on the variety", ix(j)),
                ctx.d(&r, j).into(),
                RationalExpr::zero().into(),
                Relation::UnitTheta,
            )
        }));
    }
}

/// Coefficient matrix of the linear system for `(d alpha_1/du_1, d alpha_2/du_2, d alpha_3/du_3)`.
fn linear_matrix(ctx: &Context) -> Vec<Vec<RationalExpr>> {
    let s = &ctx.sym;
    let vp = |m: usize| &s.vi(m) * &s.phi(m);
    let z = RationalExpr::zero;
    vec![vec![vp(1), vp(0), z()], vec![vp(2), z(), vp(0)], vec![z(), vp(2), vp(1)]]
}

const LINEAR_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn linear_system(out: &mut Vec<Entry>) {
    out.push(entry("linear.det", H, |ctx, name| {
        Claim::new(
            name,
            "determinant of the linear system equals -2 v1 v2 v3 phi1 phi2 phi3",
            Term::Det(linear_matrix(ctx)),
            ctx.sym.parse("-2*v1*v2*v3*phi1*phi2*phi3").into(),
            Relation::Exact,
        )
    }));
    for (row, (i, j)) in LINEAR_PAIRS.into_iter().enumerate() {
        out.push(entry(format!("linear.eq{}", row + 1), H, move |ctx, name| {
            let s = &ctx.sym;
            let lhs = &(&(&s.vi(j) * &s.phi(j)) * ctx.sys.rule(s.a[i], i))
                + &(&(&s.vi(i) * &s.phi(i)) * ctx.sys.rule(s.a[j], j));
            Claim::new(
                name,
                format!("the d alpha / du rules solve the Gauss equation for the pair ({}, {})", ix(i), ix(j)),
                lhs.into(),
                ctx.gauss_rhs(i, j).into(),
                Relation::Unit,
            )
        }));
    }
    for i in 0..3 {
        out.push(entry(format!("linear.cramer_a{}", ix(i)), H, move |ctx, name| {
            let s = &ctx.sym;
            let m = linear_matrix(ctx);
            let b: Vec<RationalExpr> = LINEAR_PAIRS.iter().map(|&(p, q)| ctx.gauss_rhs(p, q)).collect();
            let mut mi = m.clone();
            for r in 0..3 {
                mi[r][i] = b[r].clone();
            }
            let sol = &det(&mi) / &det(&m);
            Claim::new(
                name,
                format!("Cramer's rule on the linear system gives the d alpha{} / du{} rule", ix(i), ix(i)),
                sol.into(),
                ctx.sys.rule(s.a[i], i).clone().into(),
                Relation::Unit,
            )
        }));
    }
}

pub(super) fn register(out: &mut Vec<Entry>) {
    elimination(out);
    holonomic(out);
    invariance(out);
    linear_system(out);
}

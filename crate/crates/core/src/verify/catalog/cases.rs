//! The four cases of the vanishing pattern of `(alpha1, alpha2, alpha3)`
//! and the resultant certificates behind the finiteness arguments.

use super::{entry, Entry, Space};
use crate::algebra::{resultant::sylvester_matrix, scalar, ExactScalar, MultiPoly, RationalExpr};
use crate::verify::constraints::Relation;
use crate::verify::context::Context;
use crate::verify::engine::{Claim, Term};

const H: Space = Space::Holonomic;

/// `2 v_j v_k phi_j phi_k` times the `alpha`-free part of the `d alpha_i/du_i`
/// rule, with `V2`, `V3` free.
fn case_a_equation(ctx: &Context, i: usize) -> RationalExpr {
    let s = &ctx.sym;
    let zero = RationalExpr::zero();
    let r = ctx
        .free_sys
        .rule(s.a[i], i)
        .substitute(&[(s.a[0], zero.clone()), (s.a[1], zero.clone()), (s.a[2], zero)])
        .unwrap();
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let f = &(&(&s.vi(j) * &s.vi(k)) * &s.phi(j)) * &s.phi(k);
    &(&RationalExpr::int(2) * &f) * &r
}

fn case_a(out: &mut Vec<Entry>) {
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        out.push(entry(format!("case_a.sum{}{}", i + 1, j + 1), H, move |ctx, name| {
            let s = &ctx.sym;
            let k = 3 - i - j;
            let lhs = -&(&case_a_equation(ctx, i) + &case_a_equation(ctx, j));
            let w = |m: usize| s.free_big_v(m);
            let rhs = &(&(&RationalExpr::int(2) * &s.phi(k)) * &s.vi(k))
                * &(&(&w(i) * &w(j)) + &(&(&s.cc() * &s.vi(i)) * &s.vi(j)));
            Claim::new(
                name,
                format!(
                    "minus the sum of the alpha-free equations {} and {} equals 2 phi{k1} v{k1} (V{i1} V{j1} + c v{i1} v{j1})",
                    i + 1,
                    j + 1,
                    k1 = k + 1,
                    i1 = i + 1,
                    j1 = j + 1
                ),
                lhs.into(),
                rhs.into(),
                Relation::Exact,
            )
            .note("V2 and V3 are free generators here")
        }));
    }
    out.push(entry("case_a.planted_zero", H, |ctx, name| {
        let s = &ctx.sym;
        let zero = RationalExpr::zero();
        let sum = &case_a_equation(ctx, 0) + &case_a_equation(ctx, 1);
        let e = sum.substitute(&[(s.c, zero.clone()), (s.big_v1, zero)]).unwrap();
        Claim::new(
            name,
            "the sum of equations 1 and 2 vanishes at c = 0, V1 = 0",
            e.into(),
            RationalExpr::zero().into(),
            Relation::Exact,
        )
    }));
}

fn g(ctx: &Context, k: usize, l: usize) -> RationalExpr {
    ctx.compat()[k].g[l].clone()
}

fn case_b_prefactor(ctx: &Context) -> RationalExpr {
    ctx.sym.parse("36*phi1^3*phi2*phi3*v1^6*V1^2*Theta^2")
}

fn case_b_cofactor(ctx: &Context) -> RationalExpr {
    ctx.sym.parse("(-1 + 3*v1^2)*(1 + 3*v2^2)*(-1 + 3*v3^2)*(v1^2 + v2^2)*(v1^2 - v3^2)*(v2^2 + v3^2)^4*P")
}

fn case_b_matrix(ctx: &Context) -> Vec<Vec<RationalExpr>> {
    (0..3).map(|k| vec![&g(ctx, k, 3) + &g(ctx, k, 4), g(ctx, k, 1), g(ctx, k, 2)]).collect()
}

fn case_b(out: &mut Vec<Entry>) {
    out.push(entry("case_b.det_zero", H, |ctx, name| {
        let m: Vec<Vec<RationalExpr>> = (0..3).map(|k| (0..3).map(|l| g(ctx, k, l)).collect()).collect();
        Claim::new(
            name,
            "the alpha^2 coefficient matrix of F1, F2, F3 is singular",
            Term::Det(m),
            RationalExpr::zero().into(),
            Relation::Unit,
        )
    }));
    out.push(entry("case_b.det_a", H, |ctx, name| {
        Claim::new(
            name,
            "det[F_k4 + F_k5, F_k2, F_k3] equals the transcribed a",
            Term::Det(case_b_matrix(ctx)),
            ctx.fixture("a").into(),
            Relation::Unit,
        )
        .precondition(ctx.fixture_defect("a"))
    }));
    out.push(entry("case_b.quotient", H, |ctx, name| {
        let lhs = Term::Scaled(
            case_b_prefactor(ctx).recip().expect("prefactor is nonzero"),
            Box::new(Term::Det(case_b_matrix(ctx))),
        );
        Claim::new(
            name,
            "det[F_k4 + F_k5, F_k2, F_k3] divided by 36 phi1^3 phi2 phi3 v1^6 V1^2 Theta^2 \
             is (-1 + 3v1^2)(1 + 3v2^2)(-1 + 3v3^2)(v1^2 + v2^2)(v1^2 - v3^2)(v2^2 + v3^2)^4 P",
            lhs,
            case_b_cofactor(ctx).into(),
            Relation::Unit,
        )
        .precondition(ctx.fixture_defect("P"))
    }));
    out.push(entry("case_b.minor_theta", H, |ctx, name| {
        let s = &ctx.sym;
        Claim::new(
            name,
            "v1^2 phi1 - v2^2 phi2 + v3^2 phi3 = Theta",
            s.parse("v1^2*phi1 - v2^2*phi2 + v3^2*phi3").into(),
            RationalExpr::from_poly(s.theta()).into(),
            Relation::Unit,
        )
    }));
}

fn case_c_rows(ctx: &Context) -> [[RationalExpr; 3]; 3] {
    let r = ctx.rows();
    [r.case_c.clone(), r.case_c_tilde.clone(), [g(ctx, 2, 2), g(ctx, 2, 3), g(ctx, 2, 4)]]
}

fn case_c(out: &mut Vec<Entry>) {
    out.push(entry("case_c.det3", H, |ctx, name| {
        let rows = case_c_rows(ctx);
        let m: Vec<Vec<RationalExpr>> = rows.iter().map(|r| r.to_vec()).collect();
        let rhs = &ctx.sym.parse("2*c*v1*v2*(1 + 3*v2^2)*(1 - 3*v1^2)*(v1^2 + v2^2)^2*V1^2") * &ctx.fixture("P1");
        Claim::new(
            name,
            "det[[A, B, C], [At, Bt, Ct], [F33, F34, F35]] = 2c v1 v2 (1 + 3v2^2)(1 - 3v1^2)(v1^2 + v2^2)^2 V1^2 P1",
            Term::Det(m),
            rhs.into(),
            Relation::UnitV1,
        )
        .note("the printed factor (1 - v1^2) is a misprint for (1 - 3 v1^2)")
        .precondition(ctx.fixture_defect("P1"))
    }));
    out.push(entry("case_c.det2_first", H, |ctx, name| {
        let [r0, r1, _] = case_c_rows(ctx);
        let m = vec![vec![r0[0].clone(), &r0[1] + &r0[2]], vec![r1[0].clone(), &r1[1] + &r1[2]]];
        let s = &ctx.sym;
        let inner = &(&s.e(s.big_v1).pow(2) * &ctx.fixture("P2")) - &s.parse("c*v1^2*(-1 + 9*v3^2)*(v2^2 + v3^2)^2");
        let rhs = &s.parse("v2*(v1^2 + v2^2)/(v1*(v2^2 + v3^2)^2*phi3)") * &inner;
        Claim::new(
            name,
            "det[[A, B + C], [At, Bt + Ct]] = v2 (v1^2 + v2^2) / (v1 (v2^2 + v3^2)^2 phi3) (V1^2 P2 - c v1^2 (-1 + 9v3^2)(v2^2 + v3^2)^2)",
            Term::Det(m),
            rhs.into(),
            Relation::UnitV1,
        )
        .precondition(ctx.fixture_defect("P2"))
    }));
    out.push(entry("case_c.det2_second", H, |ctx, name| {
        let [r0, _, r2] = case_c_rows(ctx);
        let m = vec![vec![r0[0].clone(), &r0[1] + &r0[2]], vec![r2[0].clone(), &r2[1] + &r2[2]]];
        let s = &ctx.sym;
        let inner =
            &(&s.e(s.big_v1).pow(2) * &ctx.fixture("P3")) + &(&s.parse("c*v1^2*(v2^2 + v3^2)^2") * &ctx.fixture("P4"));
        let rhs = -&(&s.parse("v1*(v1^2 + v2^2)*phi1") * &inner);
        Claim::new(
            name,
            "det[[A, B + C], [F33, F34 + F35]] = -v1 (v1^2 + v2^2) phi1 (V1^2 P3 + c v1^2 (v2^2 + v3^2)^2 P4)",
            Term::Det(m),
            rhs.into(),
            Relation::UnitV1,
        )
        .precondition(ctx.fixture_defect("P3"))
        .precondition(ctx.fixture_defect("P4"))
    }));
    out.push(entry("case_c.dP1_u3", H, |ctx, name| {
        let s = &ctx.sym;
        let statement = "d P1 / du3 at alpha1 = alpha2 = 0 is a nonzero multiple of the transcribed P1_u3";
        let zero = RationalExpr::zero();
        let e = ctx.d(&ctx.fixture("P1"), 2).substitute(&[(s.a[0], zero.clone()), (s.a[1], zero)]).unwrap();
        let target = ctx.fixture("P1_u3");
        let (Some(ep), Some(tp)) = (e.as_polynomial(), target.as_polynomial()) else {
            return Claim::broken(name, statement, "expected polynomial inputs");
        };
        let n = ctx.cs.normal_form(ep, Relation::UnitV1);
        let t = ctx.cs.normal_form(tp, Relation::UnitV1);
        match n.div_exact(&t) {
            Some(q) => {
                let note = format!("discovered prefactor: {}", q.to_text(&s.reg));
                Claim::new(
                    name,
                    statement,
                    e.clone().into(),
                    (&RationalExpr::from_poly(q) * &target).into(),
                    Relation::UnitV1,
                )
                .note(note)
                .precondition(ctx.fixture_defect("P1"))
                .precondition(ctx.fixture_defect("P1_u3"))
            }
            None => Claim::broken(name, statement, "P1_u3 does not divide the derivative"),
        }
    }));
}

/// Stored golden resultants, regenerated by the ignored test
/// `write_golden_resultants`.
pub(crate) const GOLDEN: [(&str, &str, &str, &str); 2] = [
    ("P2_P3", "P2", "P3", include_str!("../../../fixtures/golden/resultant_P2_P3.txt")),
    ("P1_P1_u3", "P1", "P1_u3", include_str!("../../../fixtures/golden/resultant_P1_P1_u3.txt")),
];

/// Point (in `v2`) where the stored resultants must not vanish.
fn witness_point(ctx: &Context) -> Vec<ExactScalar> {
    let mut pt = vec![scalar::int(0); ctx.sym.reg.len()];
    pt[ctx.sym.v[1].index()] = scalar::frac(1, 2);
    pt
}

pub(crate) fn resultant_of(ctx: &Context, p: &str, q: &str) -> Option<Vec<Vec<MultiPoly>>> {
    let a = ctx.fixture(p);
    let b = ctx.fixture(q);
    let (a, b) = (a.as_polynomial()?, b.as_polynomial()?);
    let v3 = ctx.sym.v[2];
    if a.degree_in(v3) == 0 || b.degree_in(v3) == 0 {
        return None;
    }
    Some(sylvester_matrix(a, b, v3))
}

fn resultants(out: &mut Vec<Entry>) {
    for (label, p, q, golden) in GOLDEN {
        out.push(entry(format!("resultant.{label}"), H, move |ctx, name| {
            let statement = format!("the resultant in v3 of {p} and {q} is the stored nonzero polynomial in v2");
            let Some(m) = resultant_of(ctx, p, q) else {
                return Claim::broken(
                    name,
                    statement,
                    format!("{p} or {q} is not a polynomial of positive degree in v3"),
                );
            };
            let stored = match ctx.sym.parser().parse(golden) {
                Ok(e) => e,
                Err(e) => return Claim::broken(name, statement, format!("stored resultant does not parse: {e}")),
            };
            Claim::new(name, statement, stored.clone().into(), Term::PolyDet(m), Relation::Exact)
                .nonzero_at(witness_point(ctx), stored)
                .precondition(ctx.fixture_defect(p))
                .precondition(ctx.fixture_defect(q))
        }));
    }
}

fn kappa(ctx: &Context) -> RationalExpr {
    ctx.sym.parse("6*v1^5*(v1^2 - 1)^2*(3*v1^2 - 1)^2*(v1^2 - 2*v2^2 - 1)^4/Theta")
}

/// The case-d determinant. The constant column of the first row is the
/// full constant term of the rule, `V` part plus `c` part.
fn case_d_matrix(ctx: &Context) -> Vec<Vec<RationalExpr>> {
    let r = &ctx.rows().case_d;
    vec![
        vec![r[0].clone(), r[1].clone(), &r[2] + &r[3]],
        vec![g(ctx, 1, 1), g(ctx, 1, 2), &g(ctx, 1, 3) + &g(ctx, 1, 4)],
        vec![g(ctx, 2, 1), g(ctx, 2, 2), &g(ctx, 2, 3) + &g(ctx, 2, 4)],
    ]
}

fn r12(ctx: &Context) -> (RationalExpr, RationalExpr) {
    (ctx.fixture("R1"), ctx.fixture("R2"))
}

fn case_d(out: &mut Vec<Entry>) {
    out.push(entry("case_d", H, |ctx, name| {
        let s = &ctx.sym;
        let (r1, r2) = r12(ctx);
        let rhs = &kappa(ctx) * &(&(&s.cc() * &r1) - &(&s.cct() * &r2));
        Claim::new(
            name,
            "det[[A, B, C], [F22, F23, F24 + F25], [F32, F33, F34 + F35]] equals kappa (c R1 - ct R2)",
            Term::Det(case_d_matrix(ctx)),
            rhs.into(),
            Relation::UnitTheta,
        )
        .note("kappa = 6 v1^5 (v1^2 - 1)^2 (3v1^2 - 1)^2 (v1^2 - 2v2^2 - 1)^4 / Theta, nonzero on the open set")
        .note("C includes the c part c v1 (phi1 - phi2 - phi3) / (2 phi2 phi3), which the printed C omits")
        .precondition(ctx.fixture_defect("R1"))
        .precondition(ctx.fixture_defect("R2"))
    }));
    out.push(entry("case_d.independence", H, |ctx, name| {
        let s = &ctx.sym;
        let (r1, r2) = r12(ctx);
        let at = |v1: i64, v2: i64| {
            let mut pt = vec![scalar::int(0); s.reg.len()];
            pt[s.v[0].index()] = scalar::int(v1);
            pt[s.v[1].index()] = scalar::int(v2);
            pt[s.v[2].index()] = scalar::int(0);
            pt
        };
        // After the unit reduction R1, R2 are polynomials in v1, v2.
        let reduce = |r: &RationalExpr| RationalExpr::from_poly(ctx.cs.normal_form(r.numerator(), Relation::Unit));
        let (r1, r2) = (reduce(&r1), reduce(&r2));
        let p = at(2, 3);
        let (a, b) = (r1.eval(&p).unwrap(), r2.eval(&p).unwrap());
        let w = &(&RationalExpr::constant(a.clone()) * &r2) - &(&RationalExpr::constant(b.clone()) * &r1);
        let m = vec![vec![RationalExpr::constant(a), RationalExpr::constant(b)], vec![r1.clone(), r2.clone()]];
        Claim::new(
            name,
            "R1 and R2 are linearly independent: det[[R1(p), R2(p)], [R1, R2]] is nonzero at a second point",
            Term::Det(m),
            w.clone().into(),
            Relation::Exact,
        )
        .nonzero_at(at(3, 5), w)
        .precondition(ctx.fixture_defect("R1"))
        .precondition(ctx.fixture_defect("R2"))
    }));
}

pub(super) fn register(out: &mut Vec<Entry>) {
    case_a(out);
    case_b(out);
    case_c(out);
    resultants(out);
    case_d(out);
}

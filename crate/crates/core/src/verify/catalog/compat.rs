//! Compatibility conditions of the `alpha` rules and the transcribed
//! appendix entities compared against their derivations.

use super::{entry, Entry, Space};
use crate::algebra::RationalExpr;
use crate::verify::constraints::Relation;
use crate::verify::context::Context;
use crate::verify::engine::Claim;

const H: Space = Space::Holonomic;

/// `G0 a1^2 + G1 a2^2 + G2 a3^2 + G3 + G4` for compatibility condition `k`.
pub(crate) fn assembled(ctx: &Context, k: usize) -> RationalExpr {
    let s = &ctx.sym;
    let g = &ctx.compat()[k].g;
    let mut acc = &g[3] + &g[4];
    for l in 0..3 {
        acc = &acc + &(&g[l] * &s.ai(l).pow(2));
    }
    acc
}

const MIXED: [&str; 3] = [
    "d/du1 (d alpha2/du2) - d/du2 (d alpha2/du1)",
    "d/du2 (d alpha1/du1) - d/du1 (d alpha1/du2)",
    "d/du3 (d alpha1/du1) - d/du1 (d alpha1/du3)",
];

fn compat(out: &mut Vec<Entry>) {
    for k in 0..3 {
        out.push(entry(format!("compat.F{}", k + 1), H, move |ctx, name| {
            let c = &ctx.compat()[k];
            let rhs = &(&c.pre * &ctx.sym.ai(k)) * &assembled(ctx, k);
            let mut claim = Claim::new(
                name,
                format!(
                    "{} = prefactor * alpha{} * F{}, F{} quadratic in alpha without mixed terms",
                    MIXED[k],
                    k + 1,
                    k + 1,
                    k + 1
                ),
                c.diff.clone().into(),
                rhs.into(),
                Relation::Unit,
            );
            if !c.remainder.is_zero() {
                claim = claim.note(format!(
                    "{} numerator terms fit neither alpha_{} times a pure square nor the V1^2 and c parts",
                    c.remainder.numerator().len(),
                    k + 1
                ));
            }
            claim
        }));
    }
}

fn fixture_claim(
    ctx: &Context,
    name: &str,
    fixture: &str,
    statement: String,
    derived: RationalExpr,
    rel: Relation,
) -> Claim {
    Claim::new(name, statement, ctx.fixture(fixture).into(), derived.into(), rel)
        .precondition(ctx.fixture_defect(fixture))
}

fn fixtures(out: &mut Vec<Entry>) {
    const PART: [&str; 5] =
        ["alpha1^2 coefficient", "alpha2^2 coefficient", "alpha3^2 coefficient", "V1^2 part", "c part"];
    for k in 0..3 {
        for l in 0..5 {
            let fx = format!("F{}{}", k + 1, l + 1);
            out.push(entry(format!("fixture.{fx}"), H, move |ctx, name| {
                fixture_claim(
                    ctx,
                    name,
                    &fx,
                    format!("transcribed {fx} equals the {} of the derived F{}", PART[l], k + 1),
                    ctx.compat()[k].g[l].clone(),
                    Relation::Unit,
                )
            }));
        }
    }
    for (row, (i, j)) in [(0usize, 1usize), (0, 2), (1, 2)].into_iter().enumerate() {
        let fx = format!("b{}", row + 1);
        out.push(entry(format!("fixture.{fx}"), H, move |ctx, name| {
            let s = &ctx.sym;
            let cvv = &(&s.cc() * &s.vi(i)) * &s.vi(j);
            let derived = -&(&ctx.gauss_rhs(i, j) + &cvv);
            fixture_claim(
                ctx,
                name,
                &fx,
                format!("transcribed {fx} equals minus the Gauss right-hand side minus c v{} v{}", i + 1, j + 1),
                derived,
                Relation::Unit,
            )
            .note(format!(
                "the printed {fx} is not the right-hand side of the linear system: that is -({fx}) - c v{} v{}",
                i + 1,
                j + 1
            ))
        }));
    }
    out.push(entry("fixture.Theta", H, |ctx, name| {
        fixture_claim(
            ctx,
            name,
            "Theta",
            "transcribed Theta equals the V1^2 coefficient of sum delta_i V_i^2 scaled by v1^2 (v2^2 + v3^2)^2".into(),
            RationalExpr::from_poly(ctx.sym.theta()),
            Relation::Exact,
        )
    }));
    const ROWS_C: [(&str, usize, usize); 6] = [
        ("caseC_A", 0, 0),
        ("caseC_B", 0, 1),
        ("caseC_C", 0, 2),
        ("caseC_At", 1, 0),
        ("caseC_Bt", 1, 1),
        ("caseC_Ct", 1, 2),
    ];
    for (fx, row, col) in ROWS_C {
        out.push(entry(format!("fixture.{fx}"), H, move |ctx, name| {
            let rows = ctx.rows();
            let src = if row == 0 { &rows.case_c } else { &rows.case_c_tilde };
            fixture_claim(
                ctx,
                name,
                fx,
                format!(
                    "transcribed {fx} equals the {} of the d alpha{}/du{} rule at alpha1 = alpha2 = 0",
                    ["alpha3^2 coefficient", "V part", "c part"][col],
                    row + 1,
                    row + 1
                ),
                src[col].clone(),
                Relation::Unit,
            )
        }));
    }
    for (fx, col, what) in [("caseD_A", 0, "alpha2^2 coefficient"), ("caseD_B", 1, "alpha3^2 coefficient")] {
        out.push(entry(format!("fixture.{fx}"), H, move |ctx, name| {
            fixture_claim(
                ctx,
                name,
                fx,
                format!("transcribed {fx} equals the {what} of the d alpha1/du1 rule at alpha1 = 0"),
                ctx.rows().case_d[col].clone(),
                Relation::Unit,
            )
        }));
    }
    out.push(entry("fixture.caseD_C", H, |ctx, name| {
        fixture_claim(
            ctx,
            name,
            "caseD_C",
            "transcribed caseD_C equals the V part of the constant term of the d alpha1/du1 rule at alpha1 = 0".into(),
            ctx.rows().case_d[2].clone(),
            Relation::Unit,
        )
        .note("the printed constant term omits the c part c v1 (phi1 - phi2 - phi3) / (2 phi2 phi3)")
    }));
    for fx in ["P", "P1", "P2", "P3", "P4", "P1_u3", "R1", "R2", "a"] {
        out.push(entry(format!("fixture.{fx}"), H, move |ctx, name| {
            let v = ctx.fixture(fx);
            fixture_claim(
                ctx,
                name,
                fx,
                format!("transcribed {fx} parses and matches its recorded checksum; its content is certified by the case certificates"),
                v,
                Relation::Exact,
            )
        }));
    }
}

pub(super) fn register(out: &mut Vec<Entry>) {
    compat(out);
    fixtures(out);
}

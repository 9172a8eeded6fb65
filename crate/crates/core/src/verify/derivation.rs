//! The reduced holonomic system: derivatives of `v_i`, `alpha_i` and `V_1`
//! along each coordinate direction `u_j`, with `V_2`, `V_3` eliminated.

use std::collections::HashMap;

use super::symbols::{third, Symbols, DELTA};
use crate::algebra::{RationalExpr, VarId};

#[derive(Clone, Debug)]
pub struct DerivationSystem {
    rules: HashMap<(VarId, usize), RationalExpr>,
    dynamic: [VarId; 7],
}

impl DerivationSystem {
    pub fn new(sym: &Symbols) -> Self {
        Self::build(sym, sym.parser())
    }

    /// The same rules with `V2`, `V3` read as free generators. Those have no
    /// rules of their own, so `apply` treats them as constants; use this
    /// system only to read off rule coefficients.
    pub fn with_free_v(sym: &Symbols) -> Self {
        Self::build(sym, sym.free_parser())
    }

    fn build(sym: &Symbols, parser: crate::algebra::Parser<'_>) -> Self {
        let mut rules = HashMap::new();
        let mut add = |g: VarId, j: usize, template: String| {
            let e = parser.parse(&template).unwrap_or_else(|err| panic!("rule template `{template}`: {err}"));
            rules.insert((g, j), e);
        };
        let d = |i: usize| format!("({})", DELTA[i]);

        for i in 0..3 {
            for j in 0..3 {
                let (n, m) = (i + 1, j + 1);
                if i != j {
                    add(sym.v[i], j, format!("v{m}*v{n}*phi{n}*a{m}"));
                } else {
                    let (jj, kk) = others(i);
                    let (dj, dk, di) = (d(jj), d(kk), d(i));
                    let (p, q) = (jj + 1, kk + 1);
                    add(sym.v[i], i, format!("-{di}*({dj}*v{p}^2*phi{p} + {dk}*v{q}^2*phi{q})*a{n}"));
                }
            }
        }

        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let kk = third(i, j);
                    let (n, m, q, dk) = (i + 1, j + 1, kk + 1, d(kk));
                    add(sym.a[i], j, format!("v{m}*(phi{m} - 5*phi{q} - 8*{dk}*v{q}^2 + 4)*a{n}*a{m}"));
                }
            }
        }

        for i in 0..3 {
            let (j, kk) = others(i);
            let (n, m, q) = (i + 1, j + 1, kk + 1);
            let (di, dj, dk) = (d(i), d(j), d(kk));
            let big = |x: usize| if x == 0 { "V1".to_string() } else { format!("V{}", x + 1) };
            let (bn, bm, bq) = (big(i), big(j), big(kk));
            add(
                sym.a[i],
                i,
                format!(
                    "v{n}*phi{n}/(2*phi{m})*(-8*{di}*v{n}^2 + 8*{dk}*v{q}^2 - 5*phi{n} - phi{m} + 5*phi{q})*a{m}^2 \
                     + v{n}*phi{n}/(2*phi{q})*(-8*{di}*v{n}^2 + 8*{dj}*v{m}^2 - 5*phi{n} + 5*phi{m} - phi{q})*a{q}^2 \
                     - v{n}/2*(-8*{di}*v{n}^2 - phi{n} + 5*phi{m} + 5*phi{q})*a{n}^2 \
                     + c*v{n}*(phi{n} - phi{m} - phi{q})/(2*phi{m}*phi{q}) \
                     - (-v{n}*phi{n}*{bm}*{bq} + v{m}*phi{m}*{bn}*{bq} + v{q}*phi{q}*{bn}*{bm})/(2*v{m}*v{q}*phi{m}*phi{q})"
                ),
            );
        }

        add(sym.big_v1, 0, "-(V1/v1)*(2*v1^4 - 3*v1^6 - v3^2 + v1^2*v3^2 + v3^4)*a1".to_string());
        for i in 1..3 {
            let j = 3 - i;
            let (n, m, di, dj) = (i + 1, j + 1, d(i), d(j));
            add(sym.big_v1, i, format!("-{di}*v{n}*phi1/(v{n}^2 + v{m}^2)*(v1^2 - {dj}*v{m}^2)*V1*a{n}"));
        }
        Self { rules, dynamic: sym.dynamic() }
    }

    pub fn rule(&self, g: VarId, j: usize) -> &RationalExpr {
        &self.rules[&(g, j)]
    }

    /// Total derivative of `expr` along `u_j`; generators without a rule
    /// (`c`, `ct`) are constants.
    pub fn apply(&self, expr: &RationalExpr, j: usize) -> RationalExpr {
        let mut acc = RationalExpr::zero();
        for g in self.dynamic {
            if !expr.depends_on(g) {
                continue;
            }
            let t = &expr.derivative(g) * self.rule(g, j);
            acc = &acc + &t;
        }
        acc
    }

    /// `d/du_a (d/du_b expr) - d/du_b (d/du_a expr)`.
    pub fn commutator(&self, expr: &RationalExpr, a: usize, b: usize) -> RationalExpr {
        let ab = self.apply(&self.apply(expr, b), a);
        let ba = self.apply(&self.apply(expr, a), b);
        &ab - &ba
    }

    pub fn dynamic(&self) -> &[VarId; 7] {
        &self.dynamic
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::constraints::{ConstraintSet, Relation};

    #[test]
    fn rules_are_closed_over_generators() {
        let sym = Symbols::new();
        let sys = DerivationSystem::new(&sym);
        for g in sym.dynamic() {
            for j in 0..3 {
                let r = sys.rule(g, j);
                assert!(!r.depends_on(sym.free_v[1]));
                assert!(!r.depends_on(sym.free_v[2]));
                assert!(!r.depends_on(sym.ct));
            }
        }
    }

    #[test]
    fn unit_relation_is_preserved_exactly() {
        let sym = Symbols::new();
        let sys = DerivationSystem::new(&sym);
        let unit = RationalExpr::from_poly(sym.unit_relation());
        for j in 0..3 {
            assert!(sys.apply(&unit, j).is_zero());
        }
    }

    #[test]
    fn constants_are_inert() {
        let sym = Symbols::new();
        let sys = DerivationSystem::new(&sym);
        let e = &sym.cc() * &sym.cct();
        assert!(sys.apply(&e, 1).is_zero());
        let cs = ConstraintSet::new(sym);
        assert!(cs.vanishes(&sys.apply(&e, 0), Relation::Exact).unwrap());
    }
}

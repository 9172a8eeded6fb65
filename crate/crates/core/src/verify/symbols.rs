//! Generators and the named expressions built from them.

use crate::algebra::{MultiPoly, Parser, RationalExpr, Registry, VarId};

/// Signature `(delta_1, delta_2, delta_3)`.
pub const DELTA: [i64; 3] = [1, -1, 1];

/// The generator set of the holonomic-system certificates plus two free
/// generators `V2`, `V3` used only where those quantities must stay
/// independent of `V1`.
#[derive(Clone, Debug)]
pub struct Symbols {
    pub reg: Registry,
    pub v: [VarId; 3],
    pub big_v1: VarId,
    pub a: [VarId; 3],
    pub c: VarId,
    pub ct: VarId,
    pub free_v: [VarId; 3],
}

impl Symbols {
    pub fn new() -> Self {
        let mut reg = Registry::standard();
        let w2 = reg.register("V2").expect("room for V2");
        let w3 = reg.register("V3").expect("room for V3");
        let v = [reg.var("v1"), reg.var("v2"), reg.var("v3")];
        let big_v1 = reg.var("V1");
        Self {
            v,
            big_v1,
            a: [reg.var("a1"), reg.var("a2"), reg.var("a3")],
            c: reg.var("c"),
            ct: reg.var("ct"),
            free_v: [big_v1, w2, w3],
            reg,
        }
    }

    /// Generators carrying a derivation rule, in rule order.
    pub fn dynamic(&self) -> [VarId; 7] {
        [self.v[0], self.v[1], self.v[2], self.big_v1, self.a[0], self.a[1], self.a[2]]
    }

    pub fn e(&self, v: VarId) -> RationalExpr {
        RationalExpr::var(v)
    }

    pub fn vi(&self, i: usize) -> RationalExpr {
        RationalExpr::var(self.v[i])
    }

    pub fn ai(&self, i: usize) -> RationalExpr {
        RationalExpr::var(self.a[i])
    }

    pub fn cc(&self) -> RationalExpr {
        RationalExpr::var(self.c)
    }

    pub fn cct(&self) -> RationalExpr {
        RationalExpr::var(self.ct)
    }

    pub fn delta(&self, i: usize) -> RationalExpr {
        RationalExpr::int(DELTA[i])
    }

    pub fn vi_poly(&self, i: usize) -> MultiPoly {
        MultiPoly::var(self.v[i])
    }

    /// `phi_i = (delta_i - v_i^2)(delta_i - 3 v_i^2)`.
    pub fn phi_poly(&self, i: usize) -> MultiPoly {
        let d = MultiPoly::int(DELTA[i]);
        let s = self.vi_poly(i).pow(2);
        (&d - &s) * (&d - &s.scale(&crate::algebra::scalar::int(3)))
    }

    pub fn phi(&self, i: usize) -> RationalExpr {
        RationalExpr::from_poly(self.phi_poly(i))
    }

    /// `V_i` with `V_2`, `V_3` expressed through `V_1`.
    pub fn big_v(&self, i: usize) -> RationalExpr {
        let (v1, v2, v3) = (self.vi(0), self.vi(1), self.vi(2));
        let big_v1 = self.e(self.big_v1);
        let s23 = &(&v2 * &v2) + &(&v3 * &v3);
        let den = &v1 * &s23;
        match i {
            0 => big_v1,
            1 => {
                let num = &(&v2 * &(&(&v1 * &v1) - &(&v3 * &v3))) * &big_v1;
                &num / &den
            }
            2 => {
                let num = &(&v3 * &(&(&v1 * &v1) + &(&v2 * &v2))) * &big_v1;
                -(&num / &den)
            }
            _ => panic!("index out of range"),
        }
    }

    /// Free generator standing for `V_i` (no relation to `V_1`).
    pub fn free_big_v(&self, i: usize) -> RationalExpr {
        RationalExpr::var(self.free_v[i])
    }

    /// `Theta(v1, v2)`.
    pub fn theta(&self) -> MultiPoly {
        self.parse_poly("-v1^2 + v1^4 + v2^2 - 10*v1^2*v2^2 + 9*v1^4*v2^2 + v2^4 - 9*v1^2*v2^4")
    }

    /// The quartic `P(v1, v2)` of the nonexistence argument when all three
    /// `alpha_i` are nonzero.
    pub fn p_poly(&self) -> MultiPoly {
        self.parse_poly("4 - 15*v1^2 + 15*v1^4 + 15*v2^2 - 30*v1^2*v2^2 + 15*v1^4*v2^2 + 15*v2^4 - 15*v1^2*v2^4")
    }

    /// `v3^2` in terms of `v1`, `v2` from the unit relation.
    pub fn unit_rhs_v3(&self) -> MultiPoly {
        self.parse_poly("1 - v1^2 + v2^2")
    }

    /// `v1^2` in terms of `v2`, `v3` from the unit relation.
    pub fn unit_rhs_v1(&self) -> MultiPoly {
        self.parse_poly("1 + v2^2 - v3^2")
    }

    /// `v1^2 - v2^2 + v3^2 - 1`.
    pub fn unit_relation(&self) -> MultiPoly {
        self.parse_poly("v1^2 - v2^2 + v3^2 - 1")
    }

    /// Parser knowing `phi1..phi3`, `Theta`, `P`, and `V2`, `V3` as the
    /// expressions in `V1` (these shadow the free generators of the same
    /// name).
    pub fn parser(&self) -> Parser<'_> {
        let mut p = Parser::new(&self.reg);
        for i in 0..3 {
            p.define(&format!("phi{}", i + 1), self.phi(i));
        }
        p.define("V2", self.big_v(1));
        p.define("V3", self.big_v(2));
        p.define("Theta", RationalExpr::from_poly(self.theta()));
        p.define("P", RationalExpr::from_poly(self.p_poly()));
        p
    }

    /// Parser where `V2`, `V3` are the free generators.
    pub fn free_parser(&self) -> Parser<'_> {
        let mut p = Parser::new(&self.reg);
        for i in 0..3 {
            p.define(&format!("phi{}", i + 1), self.phi(i));
        }
        p
    }

    pub fn parse(&self, text: &str) -> RationalExpr {
        self.parser().parse(text).unwrap_or_else(|e| panic!("built-in expression `{text}` failed to parse: {e}"))
    }

    pub fn parse_poly(&self, text: &str) -> MultiPoly {
        Parser::new(&self.reg)
            .parse_poly(text)
            .unwrap_or_else(|e| panic!("built-in polynomial `{text}` failed to parse: {e}"))
    }
}

impl Default for Symbols {
    fn default() -> Self {
        Self::new()
    }
}

/// Index of the third element of `{0, 1, 2}` given two distinct ones.
pub fn third(i: usize, j: usize) -> usize {
    3 - i - j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{frac, int};

    #[test]
    fn phi_values() {
        let s = Symbols::new();
        let mut pt = vec![int(0); s.reg.len()];
        pt[0] = int(2);
        pt[1] = int(3);
        pt[2] = int(5);
        assert_eq!(s.phi_poly(0).eval(&pt), int(33));
        assert_eq!(s.phi_poly(1).eval(&pt), int(280));
        assert_eq!(s.phi_poly(2).eval(&pt), int(1776));
    }

    #[test]
    fn theta_values() {
        let s = Symbols::new();
        let mut pt = vec![int(0); s.reg.len()];
        pt[0] = int(1);
        assert_eq!(s.theta().eval(&pt), int(0));
        pt[0] = int(0);
        pt[1] = int(1);
        assert_eq!(s.theta().eval(&pt), int(2));
    }

    #[test]
    fn v2_at_sample_point() {
        let s = Symbols::new();
        let mut pt = vec![int(0); s.reg.len()];
        pt[0] = int(2);
        pt[1] = int(1);
        pt[2] = int(1);
        pt[3] = int(1);
        assert_eq!(s.big_v(1).eval(&pt).unwrap(), frac(3, 4));
    }

    #[test]
    fn v2_vanishes_when_v1_equals_v3() {
        let s = Symbols::new();
        let sub = s.big_v(1).substitute(&[(s.v[2], s.vi(0))]).unwrap();
        assert!(sub.is_zero());
    }
}

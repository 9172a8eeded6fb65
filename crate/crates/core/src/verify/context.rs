//! Shared state for building claims: generators, relations, the derivation
//! system, the loaded appendix and lazily derived quantities.

use std::sync::OnceLock;

use super::appendix::AppendixBank;
use super::constraints::{ConstraintSet, FreeSpace, Relation};
use super::derivation::DerivationSystem;
use super::symbols::Symbols;
use crate::algebra::{MultiPoly, Parser, RationalExpr, Registry, VarId};

/// Generators of the principal-curvature case analysis: `lam` is the double
/// principal curvature, `lam1` the first one when the third vanishes.
pub const LEMMA_GENERATORS: [&str; 9] = ["lam", "lam3", "lam1", "mu", "mu1", "mu2", "mu3", "c", "ct"];

/// Components of one compatibility condition: the mixed-partial difference
/// `diff`, its prefactor, and `G[l]` such that
/// `diff = pre * alpha_k * (G0 a1^2 + G1 a2^2 + G2 a3^2 + G3 + G4)` with `G3`
/// the `V1^2` part and `G4` the `c` part. Terms fitting none of these land in
/// `remainder`.
#[derive(Clone, Debug)]
pub struct Compat {
    pub diff: RationalExpr,
    pub pre: RationalExpr,
    pub g: [RationalExpr; 5],
    pub remainder: RationalExpr,
}

/// Case-c and case-d coefficient rows read off the `d alpha_i / du_i` rules.
#[derive(Clone, Debug)]
pub struct RuleRows {
    /// `(A, B, C)` of case c: `alpha_3^2` coefficient, `V` part and `c` part
    /// of the `alpha_1` rule with `alpha_1 = alpha_2 = 0`.
    pub case_c: [RationalExpr; 3],
    /// Same for the `alpha_2` rule along `u_2`.
    pub case_c_tilde: [RationalExpr; 3],
    /// `(A, B, C_V, C_c)` of case d from the `alpha_1` rule with
    /// `alpha_1 = 0`: the `alpha_2^2`, `alpha_3^2` coefficients and the two
    /// parts of the constant term.
    pub case_d: [RationalExpr; 4],
}

pub struct Context {
    pub sym: Symbols,
    pub cs: ConstraintSet,
    pub sys: DerivationSystem,
    /// The same rules with `V2`, `V3` kept as free generators.
    pub free_sys: DerivationSystem,
    pub bank: AppendixBank,
    /// Free space over `LEMMA_GENERATORS`.
    pub lemma: FreeSpace,
    compat: OnceLock<[Compat; 3]>,
    rows: OnceLock<RuleRows>,
}

impl Context {
    pub fn new(bank: AppendixBank) -> Self {
        let sym = Symbols::new();
        Self {
            cs: ConstraintSet::new(sym.clone()),
            sys: DerivationSystem::new(&sym),
            free_sys: DerivationSystem::with_free_v(&sym),
            bank,
            lemma: FreeSpace {
                reg: Registry::with_names(&LEMMA_GENERATORS).expect("static generator names are unique"),
            },
            sym,
            compat: OnceLock::new(),
            rows: OnceLock::new(),
        }
    }

    pub fn embedded() -> Self {
        let sym = Symbols::new();
        Self::new(AppendixBank::embedded(&sym))
    }

    pub fn fixture(&self, name: &str) -> RationalExpr {
        self.bank.value(name)
    }

    pub fn fixture_defect(&self, name: &str) -> Option<String> {
        self.bank.get(name).defect()
    }

    pub fn lemma_parse(&self, text: &str) -> RationalExpr {
        Parser::new(&self.lemma.reg)
            .parse(text)
            .unwrap_or_else(|e| panic!("built-in expression `{text}` failed to parse: {e}"))
    }

    /// Total derivative along `u_{j+1}`.
    pub fn d(&self, e: &RationalExpr, j: usize) -> RationalExpr {
        self.sys.apply(e, j)
    }

    /// `h_ij = alpha_i v_j phi_j`.
    pub fn h(&self, i: usize, j: usize) -> RationalExpr {
        &(&self.sym.ai(i) * &self.sym.vi(j)) * &self.sym.phi(j)
    }

    /// The right-hand side of the linear system for `d alpha_i / du_i`
    /// derived from the Gauss equation for the pair `(i, j)`:
    /// `-(alpha_i D_i(v_j phi_j) + alpha_j D_j(v_i phi_i) + h_ki h_kj + V_i V_j + c v_i v_j)`.
    pub fn gauss_rhs(&self, i: usize, j: usize) -> RationalExpr {
        let s = &self.sym;
        let k = 3 - i - j;
        let vphi = |m: usize| &s.vi(m) * &s.phi(m);
        let t1 = &s.ai(i) * &self.d(&vphi(j), i);
        let t2 = &s.ai(j) * &self.d(&vphi(i), j);
        let t3 = &self.h(k, i) * &self.h(k, j);
        let t4 = &s.big_v(i) * &s.big_v(j);
        let t5 = &(&s.cc() * &s.vi(i)) * &s.vi(j);
        -(&(&(&(&t1 + &t2) + &t3) + &t4) + &t5)
    }

    pub fn compat(&self) -> &[Compat; 3] {
        self.compat.get_or_init(|| {
            // F1 from the alpha_2 rules, F2 and F3 from the alpha_1 rules.
            let s = &self.sym;
            let spec: [(usize, usize, usize, &str); 3] = [
                (1, 1, 0, "-2*v2/(v1*(v2^2 + v3^2)*phi1^2*phi3)"),
                (0, 0, 1, "2*v2/(v1*(v2^2 + v3^2)^2*phi2^2*phi3)"),
                (0, 0, 2, "2*v3/(v1*(v2^2 + v3^2)^2*phi2*phi3^2)"),
            ];
            let build = |k: usize| {
                let (g, a, b, pre) = spec[k];
                // d/du_b (d alpha_g/du_a) - d/du_a (d alpha_g/du_b)
                let diff = &self.d(self.sys.rule(s.a[g], a), b) - &self.d(self.sys.rule(s.a[g], b), a);
                let diff = if k == 0 { -diff } else { diff };
                self.split_compat(diff, s.parse(pre), k)
            };
            [build(0), build(1), build(2)]
        })
    }

    fn split_compat(&self, diff: RationalExpr, pre: RationalExpr, k: usize) -> Compat {
        let s = &self.sym;
        let num = self.cs.normal_form(diff.numerator(), Relation::Unit);
        let ak = s.a[k];
        let mut parts: [Vec<_>; 5] = Default::default();
        let mut rest = Vec::new();
        for (m, c) in num.terms() {
            if m.exp(ak) == 0 {
                rest.push((*m, c.clone()));
                continue;
            }
            let q = m.with_exp(ak, m.exp(ak) - 1);
            let ae = [q.exp(s.a[0]), q.exp(s.a[1]), q.exp(s.a[2])];
            let slot = match ae {
                [2, 0, 0] => Some(0),
                [0, 2, 0] => Some(1),
                [0, 0, 2] => Some(2),
                [0, 0, 0] => match (q.exp(s.big_v1), q.exp(s.c)) {
                    (2, 0) => Some(3),
                    (0, 1) => Some(4),
                    _ => None,
                },
                _ => None,
            };
            match slot {
                Some(l) => {
                    let q = if l < 3 { q.with_exp(s.a[l], 0) } else { q };
                    parts[l].push((q, c.clone()));
                }
                None => rest.push((*m, c.clone())),
            }
        }
        let inv = pre.recip().expect("prefactor is nonzero");
        let den = diff.den_factors();
        let g = parts.map(|terms| {
            let e = RationalExpr::from_factored(MultiPoly::from_terms(terms), den).expect("nonzero denominator");
            &e * &inv
        });
        let remainder = RationalExpr::from_factored(MultiPoly::from_terms(rest), den).expect("nonzero denominator");
        Compat { diff, pre, g, remainder }
    }

    pub fn rows(&self) -> &RuleRows {
        self.rows.get_or_init(|| {
            let s = &self.sym;
            let zero = RationalExpr::zero();
            let a1 = self.sys.rule(s.a[0], 0).substitute(&[(s.a[0], zero.clone()), (s.a[1], zero.clone())]).unwrap();
            let a2 = self.sys.rule(s.a[1], 1).substitute(&[(s.a[0], zero.clone()), (s.a[1], zero.clone())]).unwrap();
            let d1 = self.sys.rule(s.a[0], 0).substitute(&[(s.a[0], zero)]).unwrap();
            let c_row = |e: &RationalExpr| {
                let (mut sq, v, c) = split_rule(e, &[s.a[2]], s);
                [sq.remove(0), v, c]
            };
            let (mut sq, v, c) = split_rule(&d1, &[s.a[1], s.a[2]], s);
            let b = sq.remove(1);
            RuleRows { case_c: c_row(&a1), case_c_tilde: c_row(&a2), case_d: [sq.remove(0), b, v, c] }
        })
    }
}

/// Splits a rule into the coefficients of `x^2` for each `x` in `squares`,
/// its `V1`-dependent part and its `c` part. Panics on any other term: the
/// rules are known to have exactly this shape.
fn split_rule(e: &RationalExpr, squares: &[VarId], s: &Symbols) -> (Vec<RationalExpr>, RationalExpr, RationalExpr) {
    let mut sq: Vec<Vec<_>> = vec![Vec::new(); squares.len()];
    let (mut v, mut c) = (Vec::new(), Vec::new());
    'terms: for (m, coef) in e.numerator().terms() {
        for (idx, x) in squares.iter().enumerate() {
            if m.exp(*x) == 2 {
                sq[idx].push((m.with_exp(*x, 0), coef.clone()));
                continue 'terms;
            }
        }
        assert!(s.a.iter().all(|a| m.exp(*a) == 0), "rule has an unexpected alpha term");
        if m.exp(s.big_v1) > 0 {
            v.push((*m, coef.clone()));
        } else {
            assert!(m.exp(s.c) > 0, "rule has a term with neither V1 nor c");
            c.push((*m, coef.clone()));
        }
    }
    let mk = |t: Vec<_>| RationalExpr::from_factored(MultiPoly::from_terms(t), e.den_factors()).unwrap();
    (sq.into_iter().map(mk).collect(), mk(v), mk(c))
}

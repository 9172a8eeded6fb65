//! Quotients of polynomials with a factored denominator.
//!
//! The denominator is kept as a product of normalized factors (primitive,
//! positive leading coefficient, no monomial content except single-variable
//! factors). Scalars always live in the numerator. Keeping the factors apart
//! makes sums and derivatives cheap: a common denominator is a per-factor
//! maximum of exponents instead of a product of expanded polynomials.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly};
use super::registry::{VarId, MAX_VARS};
use super::scalar::ExactScalar;
use super::AlgebraError;

#[derive(Clone, Debug, Default)]
pub struct RationalExpr {
    num: MultiPoly,
    den: Vec<(MultiPoly, u32)>,
}

/// Factors `p = s * prod(f_i^e_i)` over an existing basis: each returned
/// factor is normalized; `s` is the leftover scalar.
fn split_factor(basis: &[(MultiPoly, u32)], p: &MultiPoly) -> (ExactScalar, Vec<(MultiPoly, u32)>) {
    let (s, m, mut q) = p.normalize();
    let mut out = Vec::new();
    for i in 0..MAX_VARS {
        let e = m.0[i];
        if e > 0 {
            out.push((MultiPoly::var(VarId(i as u8)), e as u32));
        }
    }
    let mut scale = s;
    'outer: loop {
        if q.is_constant() {
            // A primitive constant is 1; anything else was absorbed in `s`.
            break;
        }
        for (g, _) in basis.iter() {
            if g.len() > 1 && g != &q && g.total_degree() < q.total_degree() {
                if let Some(r) = q.div_exact(g) {
                    out.push((g.clone(), 1));
                    let (s2, m2, r2) = r.normalize();
                    debug_assert!(m2.is_one());
                    scale *= s2;
                    q = r2;
                    continue 'outer;
                }
            }
        }
        out.push((q, 1));
        break;
    }
    (scale, out)
}

fn cmp_poly(a: &MultiPoly, b: &MultiPoly) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.terms().len().cmp(&b.terms().len()))
        .then_with(|| a.terms().cmp(b.terms()))
}

/// Adds `f^e` (f already normalized) to a factor list.
fn bump(den: &mut Vec<(MultiPoly, u32)>, f: MultiPoly, e: u32) {
    if e == 0 {
        return;
    }
    for (g, eg) in den.iter_mut() {
        if *g == f {
            *eg += e;
            return;
        }
    }
    den.push((f, e));
}

fn sort_den(den: &mut Vec<(MultiPoly, u32)>) {
    den.retain(|(_, e)| *e > 0);
    den.sort_by(|a, b| cmp_poly(&a.0, &b.0));
}

impl RationalExpr {
    pub fn zero() -> Self {
        Self { num: MultiPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(MultiPoly::int(n))
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self { num: p, den: Vec::new() }
    }

    /// `num / den`; fails if `den` is the zero polynomial.
    pub fn from_ratio(num: MultiPoly, den: &MultiPoly) -> Result<Self, AlgebraError> {
        Ok(&Self::from_poly(num) * &Self::from_poly(den.clone()).recip()?)
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    /// Denominator factors with multiplicities, in a deterministic order.
    pub fn den_factors(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    /// Expanded denominator polynomial.
    pub fn denominator(&self) -> MultiPoly {
        self.den.iter().fold(MultiPoly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn depends_on(&self, v: VarId) -> bool {
        self.num.depends_on(v) || self.den.iter().any(|(f, _)| f.depends_on(v))
    }

    pub fn term_count(&self) -> usize {
        self.num.len() + self.den.iter().map(|(f, _)| f.len()).sum::<usize>()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplicative inverse; the numerator becomes new denominator factors.
    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (s, factors) = split_factor(&[], &self.num);
        let mut den = Vec::new();
        for (f, e) in factors {
            bump(&mut den, f, e);
        }
        sort_den(&mut den);
        let num = self.denominator().scale(&(ExactScalar::one() / s));
        Ok(Self { num, den })
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.iter().map(|(f, k)| (f.clone(), k * e)).collect() }
    }

    /// Integer power, negative exponents invert.
    pub fn powi(&self, e: i32) -> Result<Self, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.recip()?.pow(e.unsigned_abs()))
        }
    }

    /// Formal partial derivative (quotient rule over the factored
    /// denominator).
    pub fn derivative(&self, x: VarId) -> Self {
        let dep: Vec<usize> = (0..self.den.len()).filter(|&i| self.den[i].0.depends_on(x)).collect();
        if dep.is_empty() {
            return Self { num: self.num.derivative(x), den: self.den.clone() };
        }
        let prod_dep = dep.iter().fold(MultiPoly::one(), |acc, &i| &acc * &self.den[i].0);
        let mut num = &self.num.derivative(x) * &prod_dep;
        if !self.num.is_zero() {
            let mut sum = MultiPoly::zero();
            for &i in &dep {
                let (f, e) = &self.den[i];
                let mut t = f.derivative(x).scale(&ExactScalar::from_integer((*e).into()));
                for &j in &dep {
                    if j != i {
                        t = &t * &self.den[j].0;
                    }
                }
                sum = &sum + &t;
            }
            num = &num - &(&self.num * &sum);
        }
        let mut den = self.den.clone();
        for &i in &dep {
            den[i].1 += 1;
        }
        Self { num, den }
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn reduce(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if num.is_zero() {
            return Self::zero();
        }
        for (f, e) in den.iter_mut() {
            while *e > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        sort_den(&mut den);
        Self { num, den }
    }

    /// Exact evaluation; `None` when the denominator vanishes at `point`.
    pub fn eval(&self, point: &[ExactScalar]) -> Option<ExactScalar> {
        let mut d = ExactScalar::one();
        for (f, e) in &self.den {
            let fv = f.eval(point);
            if fv.is_zero() {
                return None;
            }
            d *= num_traits::pow(fv, *e as usize);
        }
        Some(self.num.eval(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut d = 1.0;
        for (f, e) in &self.den {
            d *= f.eval_f64(point).powi(*e as i32);
        }
        self.num.eval_f64(point) / d
    }

    /// Simultaneous substitution of generators by rational expressions.
    pub fn substitute(&self, bindings: &[(VarId, RationalExpr)]) -> Result<Self, AlgebraError> {
        for (i, (v, _)) in bindings.iter().enumerate() {
            if bindings[..i].iter().any(|(w, _)| w == v) {
                return Err(AlgebraError::RecursiveBinding(format!("#{}", v.0)));
            }
        }
        for (v, rhs) in bindings {
            if rhs.den.iter().any(|(f, _)| f.is_zero()) {
                return Err(AlgebraError::DivisionByZero);
            }
            // A binding that mentions its own variable would need a second
            // pass to mean anything, which is exactly what we refuse.
            if rhs.depends_on(*v) && rhs.num != MultiPoly::var(*v) {
                return Err(AlgebraError::RecursiveBinding(format!("#{}", v.0)));
            }
        }
        let top = subst_poly(&self.num, bindings);
        let mut out = top;
        for (f, e) in &self.den {
            let sf = subst_poly(f, bindings);
            out = &out * &sf.recip()?.pow(*e);
        }
        Ok(out)
    }

    /// Exact structural equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }

    /// Puts `self` and `other` over a common factored denominator and returns
    /// `(num_self, num_other, den)`.
    fn common(&self, other: &Self) -> (MultiPoly, MultiPoly, Vec<(MultiPoly, u32)>) {
        // Express other's factors over self's basis.
        let mut basis: Vec<(MultiPoly, u32)> = self.den.clone();
        let base_len = basis.len();
        let mut other_exps: Vec<u32> = vec![0; base_len];
        let mut scale_other = ExactScalar::one();
        for (g, e) in &other.den {
            let (s, parts) = split_factor(&basis, g);
            scale_other *= num_traits::pow(s, *e as usize);
            for (f, k) in parts {
                match basis.iter().position(|(b, _)| *b == f) {
                    Some(i) => {
                        if i >= other_exps.len() {
                            other_exps.resize(i + 1, 0);
                        }
                        other_exps[i] += k * e;
                    }
                    None => {
                        basis.push((f, 0));
                        other_exps.push(k * e);
                    }
                }
            }
        }
        other_exps.resize(basis.len(), 0);
        let self_exps: Vec<u32> = (0..basis.len()).map(|i| if i < base_len { self.den[i].1 } else { 0 }).collect();
        let mut mult_self = MultiPoly::one();
        let mut mult_other = MultiPoly::one();
        let mut den = Vec::with_capacity(basis.len());
        for (i, (f, _)) in basis.into_iter().enumerate() {
            let (a, b) = (self_exps[i], other_exps[i]);
            let m = a.max(b);
            if m > a {
                mult_self = &mult_self * &f.pow(m - a);
            }
            if m > b {
                mult_other = &mult_other * &f.pow(m - b);
            }
            den.push((f, m));
        }
        sort_den(&mut den);
        let ns = &self.num * &mult_self;
        let no = (&other.num * &mult_other).scale(&(ExactScalar::one() / scale_other));
        (ns, no, den)
    }

    pub fn map_numerator<F: FnOnce(&MultiPoly) -> MultiPoly>(&self, f: F) -> Self {
        Self { num: f(&self.num), den: self.den.clone() }
    }

    /// Builds an expression from a numerator and an already-factored
    /// denominator (factors are renormalized).
    pub fn from_factored(num: MultiPoly, den: &[(MultiPoly, u32)]) -> Result<Self, AlgebraError> {
        let mut out = Self::from_poly(num);
        for (f, e) in den {
            out = &out * &Self::from_poly(f.clone()).recip()?.pow(*e);
        }
        Ok(out)
    }

    /// Monomial exponent vector sum over the numerator, used by callers that
    /// need the degree structure of a polynomial numerator.
    pub fn numerator_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.num.terms().iter().map(|(m, _)| m)
    }
}

fn subst_poly(p: &MultiPoly, bindings: &[(VarId, RationalExpr)]) -> RationalExpr {
    // Common denominator: prod over bound v of den(rhs_v)^deg_v(p).
    let bound: Vec<(VarId, &RationalExpr, u16)> =
        bindings.iter().map(|(v, r)| (*v, r, p.degree_in(*v))).filter(|(_, _, d)| *d > 0).collect();
    if bound.is_empty() {
        return RationalExpr::from_poly(p.clone());
    }
    let mut num_pows: Vec<Vec<MultiPoly>> = Vec::new();
    let mut den_pows: Vec<Vec<MultiPoly>> = Vec::new();
    for (_, r, d) in &bound {
        let n = r.numerator();
        let dd = r.denominator();
        let mut np = vec![MultiPoly::one()];
        let mut dp = vec![MultiPoly::one()];
        for k in 1..=*d as usize {
            np.push(&np[k - 1] * n);
            dp.push(&dp[k - 1] * &dd);
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut acc = MultiPoly::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut t = MultiPoly::one();
        for (bi, (v, _, d)) in bound.iter().enumerate() {
            let e = m.exp(*v) as usize;
            rest.0[v.index()] = 0;
            t = &t * &num_pows[bi][e];
            t = &t * &den_pows[bi][*d as usize - e];
        }
        acc = &acc + &t.mul_monomial(&rest).scale(c);
    }
    let mut den = Vec::new();
    for (_, r, d) in &bound {
        for (f, e) in &r.den {
            bump(&mut den, f.clone(), e * *d as u32);
        }
    }
    sort_den(&mut den);
    RationalExpr { num: acc, den }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for RationalExpr {}

impl From<MultiPoly> for RationalExpr {
    fn from(p: MultiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RationalExpr> for &RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (a, b, den) = self.common(rhs);
        RationalExpr { num: &a + &b, den }
    }
}

impl Sub<&RationalExpr> for &RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: &RationalExpr) -> RationalExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, den) = self.common(rhs);
        RationalExpr { num: &a - &b, den }
    }
}

impl Mul<&RationalExpr> for &RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        if self.is_zero() || rhs.is_zero() {
            return RationalExpr::zero();
        }
        let mut scale = ExactScalar::one();
        let mut basis: Vec<(MultiPoly, u32)> = self.den.clone();
        for (g, e) in &rhs.den {
            let (s, parts) = split_factor(&basis, g);
            scale *= num_traits::pow(s, *e as usize);
            for (f, k) in parts {
                bump(&mut basis, f, k * e);
            }
        }
        sort_den(&mut basis);
        let num = (&self.num * &rhs.num).scale(&(ExactScalar::one() / scale));
        RationalExpr { num, den: basis }
    }
}

impl Div<&RationalExpr> for &RationalExpr {
    type Output = RationalExpr;
    /// Panics on division by zero; use [`RationalExpr::recip`] to handle it.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalExpr) -> RationalExpr {
        self * &rhs.recip().expect("division by the zero rational expression")
    }
}

impl Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        RationalExpr { num: -self.num, den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RationalExpr> for RationalExpr {
            type Output = RationalExpr;
            fn $f(self, rhs: RationalExpr) -> RationalExpr {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RationalExpr> for RationalExpr {
            type Output = RationalExpr;
            fn $f(self, rhs: &RationalExpr) -> RationalExpr {
                (&self).$f(rhs)
            }
        }
        impl $tr<RationalExpr> for &RationalExpr {
            type Output = RationalExpr;
            fn $f(self, rhs: RationalExpr) -> RationalExpr {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

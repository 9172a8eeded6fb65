//! Dense-exponent multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::registry::{VarId, MAX_VARS};
use super::scalar::{self, ExactScalar};
use super::AlgebraError;

/// Exponent vector, one slot per registry generator.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(v: VarId, e: u16) -> Self {
        let mut m = Self::ONE;
        m.0[v.index()] = e;
        m
    }

    #[inline]
    pub fn exp(&self, v: VarId) -> u16 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_add(other.0[i]).expect("exponent overflow in monomial product");
        }
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = other.0[i] - self.0[i];
        }
        Monomial(out)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].min(other.0[i]);
        }
        Monomial(out)
    }

    pub fn with_exp(mut self, v: VarId, e: u16) -> Monomial {
        self.0[v.index()] = e;
        self
    }
}

/// Graded order: total degree first, ties broken by comparing exponents from
/// the last registered generator down to the first (smaller exponent of a
/// later generator sorts first). So `v1^2 < v1*v2 < v2^2`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms sorted ascending in monomial order; no zero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, ExactScalar)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(Monomial::ONE, c)] }
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(scalar::int(n))
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(Monomial::var(v, 1), ExactScalar::one())
    }

    pub fn monomial(m: Monomial, c: ExactScalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, ExactScalar)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, ExactScalar> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(ExactScalar::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, ExactScalar>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        Self { terms }
    }

    pub fn terms(&self) -> &[(Monomial, ExactScalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.as_slice() {
            [] => Some(ExactScalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Largest term in monomial order.
    pub fn leading(&self) -> Option<&(Monomial, ExactScalar)> {
        self.terms.last()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => ExactScalar::zero(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn depends_on(&self, v: VarId) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    /// Generators occurring with positive exponent.
    pub fn support(&self) -> Vec<VarId> {
        (0..MAX_VARS).map(|i| VarId(i as u8)).filter(|&v| self.depends_on(v)).collect()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // Multiplying by a monomial preserves the term order.
        Self { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: VarId) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            terms.push((m.with_exp(v, e - 1), c * scalar::int(e as i64)));
        }
        // Lowering one exponent can reorder terms.
        Self::from_terms(terms)
    }

    /// Evaluates at a point given as one scalar per generator index. Missing
    /// trailing coordinates are treated as an error by panicking, since the
    /// point must cover every generator in use.
    pub fn eval(&self, point: &[ExactScalar]) -> ExactScalar {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.terms.is_empty() {
            return ExactScalar::zero();
        }
        // Integer arithmetic over the common denominator: with x_i = n_i/d_i
        // and D_i the degree in x_i, each term is
        // c n^e d^(D - e) / prod d^D. No gcd per operation.
        let mut deg = [0u16; MAX_VARS];
        let mut lcm = BigInt::one();
        for (m, c) in &self.terms {
            for (d, &e) in deg.iter_mut().zip(m.0.iter()) {
                *d = (*d).max(e);
            }
            if !c.denom().is_one() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let mut npow: Vec<Vec<BigInt>> = vec![Vec::new(); MAX_VARS];
        let mut dpow: Vec<Vec<BigInt>> = vec![Vec::new(); MAX_VARS];
        let mut total_den = lcm.clone();
        for i in 0..MAX_VARS {
            if deg[i] == 0 {
                continue;
            }
            let (n, d) = (point[i].numer(), point[i].denom());
            let mut np = vec![BigInt::one()];
            let mut dp = vec![BigInt::one()];
            for k in 1..=deg[i] as usize {
                np.push(&np[k - 1] * n);
                dp.push(&dp[k - 1] * d);
            }
            total_den *= &dp[deg[i] as usize];
            npow[i] = np;
            dpow[i] = dp;
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = if c.denom().is_one() { c.numer() * &lcm } else { c.numer() * (&lcm / c.denom()) };
            for i in 0..MAX_VARS {
                if deg[i] == 0 {
                    continue;
                }
                let e = m.0[i] as usize;
                if e > 0 {
                    t *= &npow[i][e];
                }
                let rest = deg[i] as usize - e;
                if rest > 0 {
                    t *= &dpow[i][rest];
                }
            }
            acc += t;
        }
        ExactScalar::new(acc, total_den)
    }

    /// Evaluates at a floating-point point.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = scalar::to_f64(c);
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        t *= point[i].powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Coefficients `[c_0, c_1, ...]` with `self = sum c_k v^k`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, ExactScalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.with_exp(v, 0), c.clone()));
        }
        buckets.into_iter().map(MultiPoly::from_terms).collect()
    }

    /// Inverse of [`MultiPoly::coefficients_in`].
    pub fn from_coefficients(v: VarId, coeffs: &[MultiPoly]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                debug_assert_eq!(m.exp(v), 0);
                terms.push((m.with_exp(v, k as u16), a.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Replaces `v` by the polynomial `q`.
    pub fn substitute(&self, v: VarId, q: &MultiPoly) -> Self {
        let coeffs = self.coefficients_in(v);
        // Horner scheme in v.
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Rewrites every `v^(2k+e)` (e in {0,1}) as `rhs^k * v^e`.
    pub fn reduce_square(&self, v: VarId, rhs: &MultiPoly) -> Self {
        if self.degree_in(v) < 2 {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        // Horner in rhs, separately for even and odd powers of v.
        let mut even = MultiPoly::zero();
        let mut odd = MultiPoly::zero();
        let max_k = coeffs.len() / 2;
        for k in (0..=max_k).rev() {
            even = &even * rhs;
            odd = &odd * rhs;
            if let Some(c) = coeffs.get(2 * k) {
                even = &even + c;
            }
            if let Some(c) = coeffs.get(2 * k + 1) {
                odd = &odd + c;
            }
        }
        &even + &odd.mul_monomial(&Monomial::var(v, 1))
    }

    /// Rational content: the positive scalar `g` such that `self / g` has
    /// coprime integer coefficients.
    pub fn content(&self) -> ExactScalar {
        scalar::content(self.terms.iter().map(|(_, c)| c))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |g, (m, _)| g.gcd(m))
    }

    /// Splits `self = s * m * p` with `s` a scalar, `m` a monomial, and `p`
    /// primitive with integer coefficients and positive leading coefficient.
    pub fn normalize(&self) -> (ExactScalar, Monomial, MultiPoly) {
        if self.is_zero() {
            return (ExactScalar::zero(), Monomial::ONE, MultiPoly::zero());
        }
        let m = self.monomial_content();
        let mut s = self.content();
        if self.leading().unwrap().1.is_negative() {
            s = -s;
        }
        let inv = ExactScalar::one() / &s;
        let terms = self.terms.iter().map(|(t, c)| (m.quotient_of(t), c * &inv)).collect();
        (s, m, MultiPoly { terms })
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading()?;
        let dm = *dm;
        let dc_inv = ExactScalar::one() / dc;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient_of(rm);
            let qc = rc * &dc_inv;
            rem = &rem - &d.mul_monomial(&qm).scale(&qc);
            quotient.push((qm, qc));
        }
        Some(MultiPoly::from_terms(quotient))
    }

    pub fn map_coefficients<F: Fn(&ExactScalar) -> ExactScalar>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Checked constructor for exponent growth; raising with overflow panics
    /// inside `Monomial::mul`, so callers that take untrusted exponents should
    /// validate with this first.
    pub fn checked_pow(&self, e: u32) -> Result<Self, AlgebraError> {
        let max = self.terms.iter().flat_map(|(m, _)| m.0).max().unwrap_or(0) as u64;
        if max * e as u64 > u16::MAX as u64 {
            return Err(AlgebraError::ExponentOverflow);
        }
        Ok(self.pow(e))
    }
}

fn merge(a: &[(Monomial, ExactScalar)], b: &[(Monomial, ExactScalar)], negate_b: bool) -> MultiPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    MultiPoly { terms: out }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, ExactScalar> =
            HashMap::with_capacity(self.len().saturating_mul(rhs.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly::from_map(acc)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        *self = &*self - rhs;
    }
}

//! Rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type ExactScalar = BigRational;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Gcd of numerators over lcm of denominators; the largest rational `g`
/// such that every input divided by `g` is an integer. Zero for an empty
/// or all-zero input.
pub fn content<'a, I>(coeffs: I) -> ExactScalar
where
    I: IntoIterator<Item = &'a ExactScalar>,
{
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    if g.is_zero() {
        return ExactScalar::zero();
    }
    BigRational::new(g, l)
}

/// Lossy conversion for numerical diagnostics only.
pub fn to_f64(x: &ExactScalar) -> f64 {
    use num_traits::ToPrimitive;
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Shift both parts down until they fit.
            let bits = x.numer().bits().max(x.denom().bits()) as i64 - 1000;
            let shift = bits.max(0) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            if d == 0.0 {
                if n.is_sign_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

pub fn is_negative(x: &ExactScalar) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_zero() {
        let z = frac(0, 7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn lowest_terms() {
        let x = frac(6, -4);
        assert_eq!(x, frac(-3, 2));
        assert!(x.denom() > &BigInt::zero());
    }

    #[test]
    fn content_of_mixed() {
        let cs = [frac(6, 5), frac(-9, 10), int(0)];
        assert_eq!(content(cs.iter()), frac(3, 10));
    }

    #[test]
    fn huge_to_f64() {
        let big = BigRational::new(BigInt::from(3) << 2000u32, BigInt::from(2) << 2000u32);
        assert!((to_f64(&big) - 1.5).abs() < 1e-12);
    }
}

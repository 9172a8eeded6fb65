//! Sylvester resultants.

use super::linalg::det_poly;
use super::poly::MultiPoly;
use super::registry::VarId;
use super::AlgebraError;

/// Sylvester matrix of `p` and `q` with respect to `x`; rows hold the
/// coefficients from the highest power of `x` down.
pub fn sylvester_matrix(p: &MultiPoly, q: &MultiPoly, x: VarId) -> Vec<Vec<MultiPoly>> {
    let pc = p.coefficients_in(x);
    let qc = q.coefficients_in(x);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![MultiPoly::zero(); size];
        for (k, c) in pc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![MultiPoly::zero(); size];
        for (k, c) in qc.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of `p` and `q` with respect to `x`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, x: VarId) -> Result<MultiPoly, AlgebraError> {
    if p.degree_in(x) == 0 || q.degree_in(x) == 0 {
        return Err(AlgebraError::DegreeZero(format!("#{}", x.0)));
    }
    Ok(det_poly(&sylvester_matrix(p, q, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;

    fn x() -> MultiPoly {
        MultiPoly::var(VarId(0))
    }

    #[test]
    fn linear_pair() {
        let r = resultant(&(x() - MultiPoly::one()), &(x() + MultiPoly::one()), VarId(0)).unwrap();
        assert_eq!(r, MultiPoly::int(2));
    }

    #[test]
    fn common_root() {
        let r = resultant(&x().pow(2), &x(), VarId(0)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn degree_zero_rejected() {
        let y = MultiPoly::var(VarId(1));
        assert!(matches!(resultant(&y, &x(), VarId(0)), Err(AlgebraError::DegreeZero(_))));
    }

    #[test]
    fn product_of_root_differences() {
        // lc(p)^deg(q) * prod of q over the roots of p = (1-5)(2-5)
        let p = (x() - MultiPoly::int(1)) * (x() - MultiPoly::int(2));
        let q = x() - MultiPoly::int(5);
        let r = resultant(&p, &q, VarId(0)).unwrap();
        assert_eq!(r.as_constant(), Some(int(12)));
    }
}

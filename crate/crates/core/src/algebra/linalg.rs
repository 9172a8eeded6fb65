//! Determinants over expressions, polynomials and scalars.

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::RationalExpr;
use super::scalar::ExactScalar;

pub fn det2(m: &[[RationalExpr; 2]; 2]) -> RationalExpr {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

/// Cofactor expansion along the first row.
pub fn det3(m: &[[RationalExpr; 3]; 3]) -> RationalExpr {
    let minor = |a: usize, b: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][b] * &m[2][a]);
    let t0 = &m[0][0] * &minor(1, 2);
    let t1 = &m[0][1] * &minor(0, 2);
    let t2 = &m[0][2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// Laplace expansion of a square matrix of rational expressions that passes every product and partial sum through
/// `reduce`, for callers working modulo side relations.
pub fn det_with(m: &[Vec<RationalExpr>], reduce: &dyn Fn(&RationalExpr) -> RationalExpr) -> RationalExpr {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n <= 1 {
        return m.first().map_or_else(RationalExpr::one, |r| r[0].clone());
    }
    let mut acc = RationalExpr::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RationalExpr>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = reduce(&(&m[0][j] * &det_with(&minor, reduce)));
        acc = reduce(&if j % 2 == 0 { &acc + &t } else { &acc - &t });
    }
    acc
}

/// Laplace expansion; meant for the small (n <= 4) matrices of the
/// certificates.
pub fn det(m: &[Vec<RationalExpr>]) -> RationalExpr {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    match n {
        0 => RationalExpr::one(),
        1 => m[0][0].clone(),
        2 => det2(&[[m[0][0].clone(), m[0][1].clone()], [m[1][0].clone(), m[1][1].clone()]]),
        _ => {
            let mut acc = RationalExpr::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RationalExpr>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &m[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Fraction-free (Bareiss) elimination over polynomial entries. Every
/// division is exact; a failed division is a bug and panics.
pub fn det_poly(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return MultiPoly::one();
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            a[i][k] = MultiPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Gaussian elimination over the rationals.
pub fn det_scalar(m: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = m.len();
    let mut a: Vec<Vec<ExactScalar>> = m.to_vec();
    let mut d = ExactScalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return ExactScalar::zero();
        };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        let pivot = a[k][k].clone();
        d *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::registry::VarId;
    use crate::algebra::scalar::int;

    fn c(n: i64) -> RationalExpr {
        RationalExpr::int(n)
    }

    #[test]
    fn identity_det() {
        let m = [[c(1), c(0), c(0)], [c(0), c(1), c(0)], [c(0), c(0), c(1)]];
        assert_eq!(det3(&m), c(1));
    }

    #[test]
    fn equal_rows_vanish() {
        let x = RationalExpr::var(VarId(0));
        let r = [x.clone(), c(2), &x / &c(3)];
        let m = [r.clone(), [c(5), x.clone(), c(1)], r];
        assert!(det3(&m).is_zero());
    }

    #[test]
    fn laplace_matches_cofactor() {
        let x = RationalExpr::var(VarId(0));
        let y = RationalExpr::var(VarId(1));
        let rows =
            vec![vec![x.clone(), c(1), y.clone()], vec![c(2), &x * &y, c(-1)], vec![y.clone(), c(3), &x + &c(1)]];
        let arr = [
            [rows[0][0].clone(), rows[0][1].clone(), rows[0][2].clone()],
            [rows[1][0].clone(), rows[1][1].clone(), rows[1][2].clone()],
            [rows[2][0].clone(), rows[2][1].clone(), rows[2][2].clone()],
        ];
        assert_eq!(det(&rows), det3(&arr));
    }

    #[test]
    fn bareiss_and_gauss_agree() {
        let x = MultiPoly::var(VarId(0));
        let k = |n: i64| MultiPoly::int(n);
        let m = vec![
            vec![k(0), x.clone(), k(2), k(1)],
            vec![x.clone(), k(1), k(0), k(3)],
            vec![k(4), k(1), &x * &x, k(0)],
            vec![k(1), k(0), k(1), x.clone()],
        ];
        let d = det_poly(&m);
        let at = [int(3)];
        let ms: Vec<Vec<ExactScalar>> = m.iter().map(|r| r.iter().map(|p| p.eval(&at)).collect()).collect();
        assert_eq!(d.eval(&at), det_scalar(&ms));
    }
}

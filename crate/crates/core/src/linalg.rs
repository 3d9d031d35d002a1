//! Exact fraction-free linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lincomb::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("matrix is not square ({rows} x {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (no pivot in column {0})")]
    Singular(usize),
}

fn to_integer_rows(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut l = BigInt::one();
    for row in m {
        for q in row {
            l = l.lcm(q.denom());
        }
    }
    let rows = m
        .iter()
        .map(|row| row.iter().map(|q| q.numer() * (&l / q.denom())).collect())
        .collect();
    (rows, l)
}

/// Bareiss elimination on the first `pivot_cols` columns; returns the pivot columns in order.
fn bareiss(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let rows = a.len();
    let width = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                for j in c + 1..width {
                    let v = &a[r][c] * &a[i][j];
                    a[i][j] = v / &prev;
                }
                continue;
            }
            for j in c + 1..width {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact inverse of a square rational matrix.
pub fn inverse(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, SolveError> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(SolveError::NotSquare { rows: n, cols: row.len() });
        }
    }
    let (ints, l) = to_integer_rows(m);
    let mut a: Vec<Vec<BigInt>> = ints
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let pivots = bareiss(&mut a, n);
    if pivots.len() < n {
        return Err(SolveError::Singular(pivots.len()));
    }
    let lq = Rational::from_integer(l);
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for c in 0..n {
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(a[i][n + c].clone());
            for j in i + 1..n {
                if !a[i][j].is_zero() {
                    acc -= Rational::from_integer(a[i][j].clone()) * &inv[j][c];
                }
            }
            inv[i][c] = acc / Rational::from_integer(a[i][i].clone());
        }
    }
    for row in inv.iter_mut() {
        for q in row.iter_mut() {
            *q *= &lq;
        }
    }
    Ok(inv)
}

/// Exact rank of a rational matrix given by rows.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let width = m[0].len();
    let (mut a, _) = to_integer_rows(m);
    bareiss(&mut a, width).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::{int, rat};

    fn mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(-1, 2)]];
        let inv = inverse(&m).unwrap();
        let id = mul(&m, &inv);
        assert_eq!(id, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn singular_and_rank() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(matches!(inverse(&m), Err(SolveError::Singular(_))));
        assert_eq!(rank(&m), 1);
        let p = vec![vec![int(0), int(1), int(0)], vec![int(1), int(0), int(0)], vec![int(1), int(1), int(0)]];
        assert_eq!(rank(&p), 2);
    }

    #[test]
    fn pivoting_needed() {
        let m = vec![vec![int(0), int(3), int(1)], vec![int(2), int(0), int(0)], vec![int(1), int(1), int(5)]];
        let inv = inverse(&m).unwrap();
        let id = mul(&m, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, q) in row.iter().enumerate() {
                assert_eq!(*q, if i == j { int(1) } else { int(0) });
            }
        }
    }
}

//! Dense Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Row-reduces `a` in place and returns the pivot columns.
fn reduce(a: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, pr);
        let inv = Scalar::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let (src, dst) = if r < row {
                    let (lo, hi) = a.split_at_mut(row);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[row], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

pub fn rank(a: &[Vec<Scalar>]) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut m = a.to_vec();
    reduce(&mut m, cols).len()
}

/// The unique solution of `a·x = b`, or `None` if there is none or it is not
/// unique.
pub fn solve_unique(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.len(), b.len());
    let n = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = reduce(&mut m, n + 1);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Some solution of `a·x = b`, with free variables set to zero, or `None`
/// if the system is inconsistent.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.len(), b.len());
    let n = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = reduce(&mut m, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = m[row][n].clone();
    }
    Some(x)
}

/// Inverse of a square matrix.
pub fn inverse(a: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let pivots = reduce(&mut m, n);
    if pivots.len() != n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), k);
            (0..m)
                .map(|j| {
                    let mut s = Scalar::zero();
                    for (i, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[i][j].is_zero() {
                            s += x * &b[i][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

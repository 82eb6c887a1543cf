//! Small exact-rational linear algebra helpers.
//!
//! Everything geometric in this crate runs over `Ratio<i64>`; ranks are at
//! most 8 and all inputs are tiny integers, so machine-word rationals are
//! ample (overflow checks stay on in every profile).

use num::rational::Ratio;
use num::{One, Zero};

pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

pub fn rat_int(n: i64) -> Rat {
    Ratio::from_integer(n)
}

pub fn mat_vec_i64(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Integer matrix applied to a rational vector.
pub fn mat_vec_i_rat(m: &[Vec<i64>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| rat_int(*a) * b).sum())
        .collect()
}

/// Rational matrix applied to an integer vector.
pub fn mat_vec_rat_i(m: &[Vec<Rat>], v: &[i64]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * rat_int(*b)).sum())
        .collect()
}

pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let ail = a[i][l];
            if ail == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

pub fn identity_i64(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Exact determinant of an integer matrix (fraction-free Bareiss elimination).
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn invert_rat(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let ac = a[col][j];
                    let ic = inv[col][j];
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Reduced row echelon form in place. Returns the pivot column of each
/// surviving row; zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col];
        for x in rows[rank].iter_mut() {
            *x /= p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col];
                for j in 0..ncols {
                    let v = rows[rank][j];
                    rows[r][j] -= f * v;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Unique solution of `a x = b` where the columns of `a` are linearly
/// independent (the system may be overdetermined). `None` when inconsistent.
pub fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent if some pivot landed in the augmented column.
    if pivots.contains(&ncols) {
        return None;
    }
    if pivots.len() != ncols {
        return None; // columns were not independent
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &col) in aug.iter().zip(&pivots) {
        x[col] = row[ncols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_determinant() {
        let m = vec![vec![2, -1], vec![-2, 2]];
        assert_eq!(det_i64(&m), 2);
        let id = identity_i64(4);
        assert_eq!(det_i64(&id), 1);
        let sing = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(det_i64(&sing), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![rat_int(2), rat_int(-1)], vec![rat_int(-2), rat_int(2)]];
        let inv = invert_rat(&m).unwrap();
        assert_eq!(inv[0][0], rat_int(1));
        assert_eq!(inv[0][1], rat(1, 2));
        assert_eq!(inv[1][0], rat_int(1));
        assert_eq!(inv[1][1], rat_int(1));
    }

    #[test]
    fn solve_overdetermined() {
        // x = 1, y = 2 seen through three consistent equations.
        let a = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ];
        let b = vec![rat_int(1), rat_int(2), rat_int(3)];
        assert_eq!(solve_unique(&a, &b), Some(vec![rat_int(1), rat_int(2)]));
        let bad = vec![rat_int(1), rat_int(2), rat_int(4)];
        assert_eq!(solve_unique(&a, &bad), None);
    }
}

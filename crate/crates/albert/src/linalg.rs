//! Small dense linear algebra: exact elimination over any field and a few
//! floating-point routines (rank, determinant, Pfaffian).

use crate::scalar::Scalar;
use nalgebra::{Complex, DMatrix};

/// Determinant by elimination with first-nonzero pivoting (exact fields).
pub fn det<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m.to_vec();
    let mut d = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let piv = a[col][col].clone();
        d = d * piv.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / piv.clone();
            for c in col..n {
                let t = a[col][c].clone() * f.clone();
                a[r][c] = a[r][c].clone() - t;
            }
        }
    }
    d
}

/// Row-reduces in place and returns the pivot columns.
pub fn rref<S: Scalar>(a: &mut Vec<Vec<S>>) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = S::one() / a[r][c].clone();
        for k in c..cols {
            a[r][k] = a[r][k].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..cols {
                    let t = a[r][k].clone() * f.clone();
                    a[i][k] = a[i][k].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(m: &[Vec<S>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of {x : m x = 0} for an m with `ncols` columns, one vector per free column.
pub fn nullspace<S: Scalar>(m: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let is_pivot: Vec<bool> = (0..ncols).map(|c| pivots.contains(&c)).collect();
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![S::zero(); ncols];
            v[free] = S::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

/// Solves `m x = b` for square nonsingular `m` (first-nonzero pivoting).
pub fn solve<S: Scalar>(m: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = m.len();
    let mut a: Vec<Vec<S>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Rank of a complex float matrix from its singular values, relative tolerance `rtol`.
pub fn rank_c64(rows: &[Vec<Complex<f64>>], rtol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rtol * smax).count()
}

pub fn det_c64(rows: &[Vec<Complex<f64>>]) -> Complex<f64> {
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j]).determinant()
}

/// Pfaffian of a real antisymmetric matrix by skew-symmetric Gaussian
/// elimination with pivoting.
pub fn pfaffian(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n % 2 == 1 {
        return 0.0;
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut pf = 1.0;
    let mut k = 0;
    while k < n {
        // bring the largest entry of row k (beyond the diagonal) to column k+1
        let (p, _) =
            (k + 1..n)
                .map(|j| (j, a[k][j].abs()))
                .fold((k + 1, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if p != k + 1 {
            a.swap(k + 1, p);
            for row in a.iter_mut() {
                row.swap(k + 1, p);
            }
            pf = -pf;
        }
        let piv = a[k][k + 1];
        if piv == 0.0 {
            return 0.0;
        }
        pf *= piv;
        for i in k + 2..n {
            let f = a[k][i] / piv;
            if f == 0.0 {
                continue;
            }
            // row_i -= f row_{k+1}; col_i -= f col_{k+1}
            for j in 0..n {
                a[i][j] -= f * a[k + 1][j];
            }
            for j in 0..n {
                a[j][i] -= f * a[j][k + 1];
            }
        }
        k += 2;
    }
    pf
}

pub fn det_f64(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j]).determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn exact_det_and_solve() {
        let m: Vec<Vec<Q>> =
            vec![vec![q(0, 1), q(2, 1), q(1, 3)], vec![q(1, 1), q(1, 2), q(0, 1)], vec![q(3, 1), q(0, 1), q(-1, 1)]];
        // expand along the first row
        let d = q(0, 1) - q(2, 1) * (q(-1, 1) - q(0, 1)) + q(1, 3) * (q(0, 1) - q(3, 2));
        assert_eq!(det(&m), d);
        let b = vec![q(1, 1), q(2, 1), q(3, 1)];
        let x = solve(&m, &b).unwrap();
        for i in 0..3 {
            let lhs = (0..3).fold(q(0, 1), |acc, j| acc + m[i][j].clone() * x[j].clone());
            assert_eq!(lhs, b[i]);
        }
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let n = 8;
        let mut m = vec![vec![0.0; n]; n];
        let mut s = 0.37_f64;
        for i in 0..n {
            for j in i + 1..n {
                s = (s * 97.13).fract();
                m[i][j] = s - 0.5;
                m[j][i] = -(s - 0.5);
            }
        }
        let pf = pfaffian(&m);
        assert!((pf * pf - det_f64(&m)).abs() < 1e-12);
        // the standard symplectic matrix has Pfaffian 1 in interleaved order
        let mut j = vec![vec![0.0; 4]; 4];
        j[0][1] = 1.0;
        j[1][0] = -1.0;
        j[2][3] = 1.0;
        j[3][2] = -1.0;
        assert_eq!(pfaffian(&j), 1.0);
    }
}

//! Small dense linear algebra: just enough for 4x4 normal equations and
//! spectra of tiny Hermitian matrices.

use crate::num::Scalar;

/// Solves `a x = b` for a symmetric positive definite `a` by Cholesky
/// factorization. Returns `None` if `a` is not numerically positive definite.
pub fn cholesky_solve<F: Scalar, const N: usize>(a: &[[F; N]; N], b: &[F; N]) -> Option<[F; N]> {
    let l = cholesky(a)?;
    let mut y = [F::zero(); N];
    for i in 0..N {
        let mut s = b[i];
        for k in 0..i {
            s = s - l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = [F::zero(); N];
    for i in (0..N).rev() {
        let mut s = y[i];
        for k in i + 1..N {
            s = s - l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    Some(x)
}

fn cholesky<F: Scalar, const N: usize>(a: &[[F; N]; N]) -> Option<[[F; N]; N]> {
    let mut l = [[F::zero(); N]; N];
    for i in 0..N {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s = s - l[i][k] * l[j][k];
            }
            if i == j {
                if !(s > F::zero()) {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Inverse of a symmetric positive definite matrix.
pub fn spd_inverse<F: Scalar, const N: usize>(a: &[[F; N]; N]) -> Option<[[F; N]; N]> {
    let mut inv = [[F::zero(); N]; N];
    for col in 0..N {
        let mut e = [F::zero(); N];
        e[col] = F::one();
        let x = cholesky_solve(a, &e)?;
        for row in 0..N {
            inv[row][col] = x[row];
        }
    }
    Some(inv)
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending.
pub fn symmetric_eigenvalues<F: Scalar>(mut a: Vec<Vec<F>>) -> Vec<F> {
    let n = a.len();
    let two = F::lit(2.0);
    for _sweep in 0..100 {
        let mut off = F::zero();
        for (i, row) in a.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    off = off + *v * *v;
                }
            }
        }
        if off <= F::epsilon() * F::epsilon() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == F::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + F::one()).sqrt());
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<F> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

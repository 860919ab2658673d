//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the whole
//! update is a single 2x2 unitary `J` acting as `A <- J^H A J`.

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64, ZERO};

pub const MAX_SWEEPS: usize = 100;
/// Convergence when the off-diagonal Frobenius norm drops below this times `||A||_F`.
pub const OFF_DIAGONAL_RTOL: f64 = 1e-12;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix. The input is assumed Hermitian; only its
/// Hermitian part is used.
pub fn jacobi_eigh(m: &ComplexMatrix) -> Result<Eigen> {
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_RTOL * a.frobenius_norm();

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let residual = off_diagonal_norm(&a);
        if residual > threshold {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                residual,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = order.iter().map(|&i| v.column(i)).collect();
    Ok(Eigen { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let abs_b = b.norm();
    if abs_b == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip pivots that are negligible against both diagonal entries.
    if abs_b * 1e-3 < f64::EPSILON * app.abs().min(aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = b / abs_b;
    let theta = (aqq - app) / (2.0 * abs_b);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let ph = phase.conj();
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = ph * (-s);
    let j_qq = ph * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{dot, vec_norm, ONE};

    fn residual(m: &ComplexMatrix, e: &Eigen) -> f64 {
        e.values
            .iter()
            .zip(&e.vectors)
            .map(|(&l, x)| {
                let ax = m.matvec(x);
                let r: Vec<C64> = ax.iter().zip(x).map(|(a, b)| a - b * l).collect();
                vec_norm(&r)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn pauli_x() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = jacobi_eigh(&m).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        // eigenvector for -1 is (1,-1)/sqrt2 up to phase
        let x = &e.vectors[0];
        assert!((x[0] + x[1]).norm() < 1e-14);
        assert!((vec_norm(x) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_two_by_two() {
        let i = C64::new(0.0, 1.0);
        let two = C64::new(2.0, 0.0);
        let m = ComplexMatrix::from_rows(&[vec![two, i], vec![-i, two]]).unwrap();
        let e = jacobi_eigh(&m).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        assert!(residual(&m, &e) < 1e-13);
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let m = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 1.0]);
        let e = jacobi_eigh(&m).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 3.0]);
    }

    #[test]
    fn zero_matrix() {
        let e = jacobi_eigh(&ComplexMatrix::zeros(3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
    }

    #[test]
    fn dense_complex_orthonormal() {
        let n = 6;
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let re = ((i * 7 + j * 3) % 5) as f64 - 2.0;
                let im = ((i * 2 + j * 5) % 7) as f64 - 3.0;
                m[(i, j)] = C64::new(re, im);
            }
        }
        let m = m.hermitian_part();
        let e = jacobi_eigh(&m).unwrap();
        assert!(residual(&m, &e) < 1e-11);
        for a in 0..n {
            for b in 0..n {
                let g = dot(&e.vectors[a], &e.vectors[b]);
                let expect = if a == b { ONE } else { ZERO };
                assert!((g - expect).norm() < 1e-12);
            }
        }
    }
}

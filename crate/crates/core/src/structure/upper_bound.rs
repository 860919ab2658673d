use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::{commutator_norm, dot, jacobi_eigh, HermitianObservable};

/// A common upper bound `C` with `A ⪯ C` and `B ⪯ C`, with the constants used to build it.
#[derive(Debug, Clone)]
pub struct JointUpperBound {
    pub bound: HermitianObservable,
    /// Largest spectral norm of the diagonal blocks `P_j B P_j`.
    pub tau: f64,
    /// Block separation `4 tau + diam(sigma(A)) + 1`.
    pub beta: f64,
}

/// For commuting `A`, `B`: with `A = sum_j lambda_j P_j` (ascending, `j = 1..m`),
/// returns `C = sum_j (P_j B P_j + j beta P_j)`.
pub fn joint_upper_bound(a: &HermitianObservable, b: &HermitianObservable, tol: f64) -> Result<JointUpperBound> {
    let norm = commutator_norm(a, b)?;
    if norm > tol {
        return Err(Error::NotCommuting { norm });
    }
    let da = a.spectral()?;
    let bm = b.matrix();

    let mut tau = 0.0_f64;
    for group in da.groups() {
        let r = group.rank();
        let images: Vec<_> = group.basis.iter().map(|v| bm.matvec(v)).collect();
        let mut block = ComplexMatrix::zeros(r);
        for i in 0..r {
            for j in 0..r {
                block[(i, j)] = dot(&group.basis[i], &images[j]);
            }
        }
        let eig = jacobi_eigh(&block)?;
        let spectral_norm = eig.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
        tau = tau.max(spectral_norm);
    }
    let beta = 4.0 * tau + da.diameter() + 1.0;

    let mut c = ComplexMatrix::zeros(a.dim());
    for (j, group) in da.groups().iter().enumerate() {
        let p = &group.projector;
        let block = p.matmul(bm).matmul(p);
        c = &c + &block;
        c = &c + &p.scale((j + 1) as f64 * beta);
    }
    Ok(JointUpperBound {
        bound: HermitianObservable::new(c)?,
        tau,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::decide_order_default;

    fn d(v: &[f64]) -> HermitianObservable {
        HermitianObservable::diagonal(v)
    }

    #[test]
    fn block_arithmetic_example() {
        let a = d(&[1.0, 1.0, 5.0]);
        let b = d(&[2.0, 0.0, 3.0]);
        let j = joint_upper_bound(&a, &b, 1e-10).unwrap();
        assert_eq!((j.tau, j.beta), (3.0, 17.0));
        assert!(j.bound.distance(&d(&[19.0, 17.0, 37.0])).unwrap() < 1e-12);
        assert!(decide_order_default(&a, &j.bound).unwrap().holds());
        assert!(decide_order_default(&b, &j.bound).unwrap().holds());
    }

    #[test]
    fn equal_diagonal_inputs() {
        let a = d(&[0.0, 1.0]);
        let j = joint_upper_bound(&a, &a, 1e-10).unwrap();
        assert_eq!(j.beta, 6.0);
        assert!(j.bound.distance(&d(&[6.0, 13.0])).unwrap() < 1e-12);
    }

    #[test]
    fn scalar_a_gives_shifted_b() {
        let mut rng = crate::random::seeded(2);
        let b = crate::random::hermitian(3, &mut rng);
        let a = HermitianObservable::scalar(3, 2.0);
        let j = joint_upper_bound(&a, &b, 1e-10).unwrap();
        assert!(j.bound.distance(&b.shift(j.beta)).unwrap() < 1e-10);
        assert!(decide_order_default(&b, &j.bound).unwrap().holds());
        assert!(decide_order_default(&a, &j.bound).unwrap().holds());
    }

    #[test]
    fn rejects_non_commuting() {
        let x = HermitianObservable::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let err = joint_upper_bound(&x, &d(&[1.0, -1.0]), 1e-10).unwrap_err();
        assert!(matches!(err, Error::NotCommuting { norm } if (norm - 8f64.sqrt()).abs() < 1e-12));
    }
}

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};

/// Relative tolerance on `max |M - M^H|` accepted at construction.
pub const HERMITIAN_RTOL: f64 = 1e-10;

/// A Hermitian matrix: a finite-dimensional bounded observable.
///
/// Construction checks `max |M - M^H| <= 1e-10 * max(1, max|M_ij|)` and then
/// stores the exact Hermitian part, so downstream code may assume exact symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianObservable {
    matrix: ComplexMatrix,
}

impl HermitianObservable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let tol = HERMITIAN_RTOL * matrix.max_abs().max(1.0);
        let deviation = matrix.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    /// Wraps a matrix already known to be Hermitian up to rounding; symmetrizes it.
    pub(crate) fn from_hermitian_part(matrix: &ComplexMatrix) -> Self {
        Self {
            matrix: matrix.hermitian_part(),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diagonal(values),
        }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows)?)
    }

    pub fn scalar(dim: usize, c: f64) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(c),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self {
            matrix: self.matrix.scale(alpha),
        }
    }

    /// `self + c I`
    pub fn shift(&self, c: f64) -> Self {
        Self {
            matrix: self.matrix.shift(c),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        Ok(Self::from_hermitian_part(&(&self.matrix + &other.matrix)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        Ok(Self::from_hermitian_part(&(&self.matrix - &other.matrix)))
    }

    pub fn square(&self) -> Self {
        Self::from_hermitian_part(&self.matrix.matmul(&self.matrix))
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.matrix.matvec(v)
    }

    /// `||self - other||_F`
    pub fn distance(&self, other: &Self) -> Result<f64> {
        check_dims(self, other)?;
        Ok((&self.matrix - &other.matrix).frobenius_norm())
    }
}

pub(crate) fn check_dims(a: &HermitianObservable, b: &HermitianObservable) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// A unitary `U`, or the antiunitary `x -> U conj(x)` when `antiunitary` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMap {
    matrix: ComplexMatrix,
    antiunitary: bool,
}

impl UnitaryMap {
    pub const UNITARITY_TOL: f64 = 1e-10;

    pub fn new(matrix: ComplexMatrix, antiunitary: bool) -> Result<Self> {
        let gram = matrix.adjoint().matmul(&matrix);
        let deviation = (&gram - &ComplexMatrix::identity(matrix.dim())).max_abs();
        if deviation > Self::UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { matrix, antiunitary })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
            antiunitary: false,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn is_antiunitary(&self) -> bool {
        self.antiunitary
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `U A U^*` (with `A` conjugated entrywise first for an antiunitary map).
    pub fn conjugate(&self, a: &HermitianObservable) -> Result<HermitianObservable> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            });
        }
        let inner = if self.antiunitary {
            a.matrix().conj()
        } else {
            a.matrix().clone()
        };
        Ok(HermitianObservable::from_hermitian_part(
            &inner.conjugate_by(&self.matrix),
        ))
    }

    /// Image of a state vector: `U x` or `U conj(x)`.
    pub fn apply_vector(&self, x: &[C64]) -> Vec<C64> {
        if self.antiunitary {
            let c: Vec<C64> = x.iter().map(|z| z.conj()).collect();
            self.matrix.matvec(&c)
        } else {
            self.matrix.matvec(x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let err = HermitianObservable::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn accepts_rounding_noise_and_symmetrizes() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0 + 1e-12], vec![2.0, 3.0]]).unwrap();
        let a = HermitianObservable::new(m).unwrap();
        assert_eq!(a.matrix().hermitian_deviation(), 0.0);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = ComplexMatrix::identity(2).scale(2.0);
        assert!(matches!(UnitaryMap::new(m, false), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn antiunitary_conjugates_entries() {
        let i = C64::new(0.0, 1.0);
        let m = ComplexMatrix::from_rows(&[vec![C64::new(2.0, 0.0), i], vec![-i, C64::new(2.0, 0.0)]]).unwrap();
        let a = HermitianObservable::new(m).unwrap();
        let u = UnitaryMap::new(ComplexMatrix::identity(2), true).unwrap();
        let b = u.conjugate(&a).unwrap();
        assert_eq!(b.matrix()[(0, 1)], -i);
    }
}

use crate::error::{Error, Result};
use crate::linalg::eigen::jacobi_eigh;
use crate::linalg::matrix::{ComplexMatrix, C64};
use crate::linalg::observable::{check_dims, HermitianObservable};
use crate::order::lipschitz::FunctionTable;

/// Default eigenvalue grouping tolerance: `1e-8 * max(1, ||A||_F)`.
pub fn default_group_tol(a: &HermitianObservable) -> f64 {
    1e-8 * a.frobenius_norm().max(1.0)
}

/// One eigenspace: eigenvalue, orthogonal projector and an orthonormal basis of its range.
#[derive(Debug, Clone)]
pub struct SpectralGroup {
    pub eigenvalue: f64,
    pub projector: ComplexMatrix,
    pub basis: Vec<Vec<C64>>,
}

impl SpectralGroup {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// `A = sum_j lambda_j P_j` with eigenvalues grouped up to a tolerance and sorted ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    groups: Vec<SpectralGroup>,
    source_dim: usize,
    group_tol: f64,
}

/// Eigendecomposes `a`, merging sorted eigenvalues whose consecutive gaps are at most `group_tol`.
/// A merged group reports the mean of its eigenvalues.
pub fn eigendecompose(a: &HermitianObservable, group_tol: f64) -> Result<SpectralDecomposition> {
    if !(group_tol >= 0.0) {
        return Err(Error::Precondition(format!(
            "group tolerance must be nonnegative, got {group_tol}"
        )));
    }
    let n = a.dim();
    let eig = jacobi_eigh(a.matrix())?;

    let mut groups: Vec<SpectralGroup> = Vec::new();
    let mut members: Vec<f64> = Vec::new();
    let mut basis: Vec<Vec<C64>> = Vec::new();
    let mut flush = |members: &mut Vec<f64>, basis: &mut Vec<Vec<C64>>| {
        if members.is_empty() {
            return;
        }
        let eigenvalue = members.iter().sum::<f64>() / members.len() as f64;
        let mut projector = ComplexMatrix::zeros(n);
        for v in basis.iter() {
            projector = &projector + &ComplexMatrix::outer(v, v);
        }
        groups.push(SpectralGroup {
            eigenvalue,
            projector: projector.hermitian_part(),
            basis: std::mem::take(basis),
        });
        members.clear();
    };
    for (value, vector) in eig.values.into_iter().zip(eig.vectors) {
        if let Some(&last) = members.last() {
            if value - last > group_tol {
                flush(&mut members, &mut basis);
            }
        }
        members.push(value);
        basis.push(vector);
    }
    flush(&mut members, &mut basis);

    Ok(SpectralDecomposition {
        groups,
        source_dim: n,
        group_tol,
    })
}

impl HermitianObservable {
    /// Spectral decomposition with [`default_group_tol`].
    pub fn spectral(&self) -> Result<SpectralDecomposition> {
        eigendecompose(self, default_group_tol(self))
    }

    /// Distinct eigenvalues (grouped with the default tolerance), ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(self.spectral()?.eigenvalues())
    }
}

impl SpectralDecomposition {
    pub fn groups(&self) -> &[SpectralGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn group_tol(&self) -> f64 {
        self.group_tol
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.eigenvalue).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.groups.first().map_or(0.0, |g| g.eigenvalue)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.groups.last().map_or(0.0, |g| g.eigenvalue)
    }

    /// `max sigma - min sigma`
    pub fn diameter(&self) -> f64 {
        self.max_eigenvalue() - self.min_eigenvalue()
    }

    /// `(eigenvalue, multiplicity)` pairs, ascending.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        self.groups.iter().map(|g| (g.eigenvalue, g.rank())).collect()
    }

    /// `sum_j g(lambda_j) P_j` for an arbitrary real function.
    pub fn map<F: Fn(f64) -> f64>(&self, g: F) -> HermitianObservable {
        let mut m = ComplexMatrix::zeros(self.source_dim);
        for group in &self.groups {
            m = &m + &group.projector.scale(g(group.eigenvalue));
        }
        HermitianObservable::from_hermitian_part(&m)
    }

    pub fn reconstruct(&self) -> HermitianObservable {
        self.map(|l| l)
    }

    /// Functional calculus `f(A) = sum_j f(lambda_j) P_j` for a tabulated `f`.
    pub fn apply_function(&self, f: &FunctionTable) -> Result<HermitianObservable> {
        let values = self
            .groups
            .iter()
            .map(|g| {
                let tol = self.group_tol.max(1e-12 * g.eigenvalue.abs().max(1.0));
                f.lookup(g.eigenvalue, tol)
                    .ok_or(Error::Domain { lambda: g.eigenvalue })
            })
            .collect::<Result<Vec<f64>>>()?;
        let mut m = ComplexMatrix::zeros(self.source_dim);
        for (group, v) in self.groups.iter().zip(values) {
            m = &m + &group.projector.scale(v);
        }
        Ok(HermitianObservable::from_hermitian_part(&m))
    }

    /// The identity table on the spectrum.
    pub fn identity_table(&self) -> FunctionTable {
        FunctionTable::from_sorted_unchecked(self.groups.iter().map(|g| (g.eigenvalue, g.eigenvalue)).collect())
    }
}

pub fn apply_function(d: &SpectralDecomposition, f: &FunctionTable) -> Result<HermitianObservable> {
    d.apply_function(f)
}

/// `||AB - BA||_F`
pub fn commutator_norm(a: &HermitianObservable, b: &HermitianObservable) -> Result<f64> {
    check_dims(a, b)?;
    let ab = a.matrix().matmul(b.matrix());
    let ba = b.matrix().matmul(a.matrix());
    Ok((&ab - &ba).frobenius_norm())
}

/// Loewner order `A <= B`, decided as `lambda_min(B - A) >= -tol`.
pub fn loewner_leq(a: &HermitianObservable, b: &HermitianObservable, tol: f64) -> Result<bool> {
    let diff = b.sub(a)?;
    let eig = jacobi_eigh(diff.matrix())?;
    Ok(eig.values.first().is_none_or(|&m| m >= -tol))
}

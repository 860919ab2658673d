//! Pure and mixed states, Born measures and the expectation/variance functionals.

use crate::error::{Error, Result};
use crate::linalg::matrix::{dot, vec_norm, ComplexMatrix, C64};
use crate::linalg::{jacobi_eigh, HermitianObservable, SpectralDecomposition};
use crate::order::lipschitz::LipschitzExtension;

const PURE_NORM_TOL: f64 = 1e-12;
const DENSITY_TOL: f64 = 1e-10;
/// Born atoms lighter than this are dropped before renormalizing.
pub const ATOM_DROP: f64 = 1e-14;
const MEASURE_MASS_TOL: f64 = 1e-10;

/// Anything that assigns expectation values `Tr(rho M)` to matrices.
pub trait State {
    fn dim(&self) -> usize;

    /// `Tr(rho M)` (real part; exact for Hermitian `M`).
    fn expect_matrix(&self, m: &ComplexMatrix) -> f64;

    /// `Tr(rho A^2)`
    fn second_moment(&self, a: &HermitianObservable) -> f64 {
        self.expect_matrix(&a.square().into_matrix())
    }

    fn density_matrix(&self) -> ComplexMatrix;
}

/// A unit vector `x`, standing for the rank-one projection onto it.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    vector: Vec<C64>,
}

impl PureState {
    pub fn new(vector: Vec<C64>) -> Result<Self> {
        if vector.is_empty() {
            return Err(Error::InvalidState("empty state vector".into()));
        }
        if vector.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm = vec_norm(&vector);
        if (norm - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::InvalidState(format!("vector norm {norm} is not 1")));
        }
        Ok(Self { vector })
    }

    /// Rescales a nonzero vector to unit length.
    pub fn normalized(vector: Vec<C64>) -> Result<Self> {
        let norm = vec_norm(&vector);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidState(format!("cannot normalize a vector of norm {norm}")));
        }
        Self::new(vector.into_iter().map(|z| z / norm).collect())
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::normalized(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// The standard basis vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[k] = C64::new(1.0, 0.0);
        Self { vector: v }
    }

    pub fn vector(&self) -> &[C64] {
        &self.vector
    }

    pub fn into_vector(self) -> Vec<C64> {
        self.vector
    }
}

impl State for PureState {
    fn dim(&self) -> usize {
        self.vector.len()
    }

    fn expect_matrix(&self, m: &ComplexMatrix) -> f64 {
        dot(&self.vector, &m.matvec(&self.vector)).re
    }

    fn second_moment(&self, a: &HermitianObservable) -> f64 {
        vec_norm(&a.apply(&self.vector)).powi(2)
    }

    fn density_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.vector, &self.vector)
    }
}

/// A positive semidefinite matrix of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    matrix: ComplexMatrix,
}

impl DensityState {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dev = matrix.hermitian_deviation();
        if dev > DENSITY_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix not Hermitian (deviation {dev:e})"
            )));
        }
        let matrix = matrix.hermitian_part();
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = jacobi_eigh(&matrix)?.values[0];
        if min < -DENSITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    pub fn from_pure(x: &PureState) -> Self {
        Self {
            matrix: x.density_matrix(),
        }
    }

    /// `I / n`
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `U^* rho U`
    pub fn conjugate_by_adjoint(&self, u: &ComplexMatrix) -> Self {
        Self {
            matrix: u.adjoint().matmul(&self.matrix).matmul(u).hermitian_part(),
        }
    }
}

impl State for DensityState {
    fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn expect_matrix(&self, m: &ComplexMatrix) -> f64 {
        let n = self.matrix.dim();
        let mut s = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                s += self.matrix[(i, j)] * m[(j, i)];
            }
        }
        s.re
    }

    fn density_matrix(&self) -> ComplexMatrix {
        self.matrix.clone()
    }
}

fn check_state_dim<S: State + ?Sized>(a: &HermitianObservable, s: &S) -> Result<()> {
    if a.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: s.dim(),
        });
    }
    Ok(())
}

/// `E_rho(A) = Tr(rho A)`
pub fn expectation<S: State + ?Sized>(a: &HermitianObservable, s: &S) -> Result<f64> {
    check_state_dim(a, s)?;
    Ok(s.expect_matrix(a.matrix()))
}

/// `Delta_rho(A) = Tr(rho A^2) - Tr(rho A)^2`, clamped at zero against rounding.
pub fn variance<S: State + ?Sized>(a: &HermitianObservable, s: &S) -> Result<f64> {
    check_state_dim(a, s)?;
    let mean = s.expect_matrix(a.matrix());
    Ok((s.second_moment(a) - mean * mean).max(0.0))
}

/// `||Ax - E_x(A) x||^2`, the pure-state variance written as an eigen-residual.
pub fn variance_defect(a: &HermitianObservable, x: &PureState) -> Result<f64> {
    check_state_dim(a, x)?;
    let ax = a.apply(x.vector());
    let mean = dot(x.vector(), &ax).re;
    let r: Vec<C64> = ax.iter().zip(x.vector()).map(|(p, q)| p - q * mean).collect();
    Ok(vec_norm(&r).powi(2))
}

/// A finitely supported probability measure on the real line.
#[derive(Debug, Clone, PartialEq)]
pub struct BornMeasure {
    atoms: Vec<(f64, f64)>,
}

impl BornMeasure {
    /// Validates `(location, mass)` atoms: masses nonnegative summing to 1,
    /// locations strictly increasing.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        for &(loc, p) in &atoms {
            if !loc.is_finite() || !p.is_finite() {
                return Err(Error::InvalidMeasure("non-finite atom".into()));
            }
            if p < 0.0 {
                return Err(Error::InvalidMeasure(format!("negative mass {p} at {loc}")));
            }
        }
        if atoms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidMeasure("locations are not strictly increasing".into()));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > MEASURE_MASS_TOL {
            return Err(Error::InvalidMeasure(format!("total mass {total} is not 1")));
        }
        Ok(Self { atoms })
    }

    pub fn dirac(location: f64) -> Self {
        Self {
            atoms: vec![(location, 1.0)],
        }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|&(t, p)| t * p).sum()
    }

    /// `int t^2 dmu - (int t dmu)^2`
    pub fn moment_variance(&self) -> f64 {
        let m = self.mean();
        let second: f64 = self.atoms.iter().map(|&(t, p)| t * t * p).sum();
        second - m * m
    }

    /// `1/2 int int (t - s)^2 dmu(t) dmu(s)`
    pub fn pairwise_variance(&self) -> f64 {
        let mut s = 0.0;
        for &(t, p) in &self.atoms {
            for &(u, q) in &self.atoms {
                s += (t - u) * (t - u) * p * q;
            }
        }
        0.5 * s
    }

    fn scale(&self) -> f64 {
        self.atoms.iter().map(|a| a.0.abs()).fold(1.0, f64::max)
    }
}

/// Born measure of `s` with respect to the spectral decomposition `d`:
/// an atom `Tr(P_j rho)` at each eigenvalue.
pub fn born_measure<S: State + ?Sized>(d: &SpectralDecomposition, s: &S) -> Result<BornMeasure> {
    if d.source_dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.source_dim(),
            found: s.dim(),
        });
    }
    let mut atoms: Vec<(f64, f64)> = d
        .groups()
        .iter()
        .map(|g| (g.eigenvalue, s.expect_matrix(&g.projector)))
        .filter(|&(_, p)| p >= ATOM_DROP)
        .collect();
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    if !(total > 0.0) {
        return Err(Error::Inconsistent("Born measure has no mass".into()));
    }
    for atom in &mut atoms {
        atom.1 /= total;
    }
    BornMeasure::new(atoms)
}

/// Variance of a Born measure by the moment formula, cross-checked against the
/// pairwise double-sum formula.
pub fn measure_variance(mu: &BornMeasure) -> Result<f64> {
    let moment = mu.moment_variance();
    let pairwise = mu.pairwise_variance();
    let tol = 1e-10 * mu.scale().powi(2);
    if (moment - pairwise).abs() > tol {
        return Err(Error::Inconsistent(format!(
            "moment variance {moment} and pairwise variance {pairwise} disagree"
        )));
    }
    Ok(moment.max(0.0))
}

/// Push-forward `f_* mu` under an arbitrary real function; coinciding images are merged.
pub fn pushforward_with<F: Fn(f64) -> f64>(mu: &BornMeasure, f: F) -> Result<BornMeasure> {
    let mut image: Vec<(f64, f64)> = mu.atoms.iter().map(|&(t, p)| (f(t), p)).collect();
    image.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(image.len());
    for (loc, p) in image {
        match merged.last_mut() {
            Some(last) if (loc - last.0).abs() <= 1e-12 * loc.abs().max(1.0) => last.1 += p,
            _ => merged.push((loc, p)),
        }
    }
    BornMeasure::new(merged)
}

pub fn pushforward(mu: &BornMeasure, f: &LipschitzExtension) -> Result<BornMeasure> {
    pushforward_with(mu, |t| f.evaluate(t))
}

/// The three quantities of the approximate-eigenvector sandwich
/// `D/2 <= Delta + err^2 <= 2D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    /// `||Ax - lambda x||^2`
    pub defect: f64,
    /// `Delta_x(A)`
    pub variance: f64,
    /// `|E_x(A) - lambda|`
    pub err: f64,
}

pub fn approx_eigen_sandwich(a: &HermitianObservable, x: &PureState, lambda: f64) -> Result<Sandwich> {
    check_state_dim(a, x)?;
    let ax = a.apply(x.vector());
    let r: Vec<C64> = ax.iter().zip(x.vector()).map(|(p, q)| p - q * lambda).collect();
    let defect = vec_norm(&r).powi(2);
    let var = variance(a, x)?;
    let err = (expectation(a, x)? - lambda).abs();
    let middle = var + err * err;
    let tol = 1e-10 * (defect.max(middle)).max(1.0);
    if 0.5 * defect > middle + tol || middle > 2.0 * defect + tol {
        return Err(Error::Inconsistent(format!(
            "sandwich violated: D={defect}, Delta+err^2={middle}"
        )));
    }
    Ok(Sandwich {
        defect,
        variance: var,
        err,
    })
}

/// `Delta_z(A)` for `z = (alpha x + beta y) / ||alpha x + beta y||`, where `x`, `y`
/// are eigenvectors of `A` for distinct eigenvalues. Computed directly from `z`.
pub fn superposition_variance(
    a: &HermitianObservable,
    x: &PureState,
    y: &PureState,
    alpha: f64,
    beta: f64,
) -> Result<f64> {
    check_state_dim(a, x)?;
    check_state_dim(a, y)?;
    if alpha == 0.0 || beta == 0.0 {
        return Err(Error::Precondition("superposition weights must be nonzero".into()));
    }
    let tol = 1e-8 * a.frobenius_norm().max(1.0);
    for (name, v) in [("x", x), ("y", y)] {
        let residual = variance_defect(a, v)?.sqrt();
        if residual > tol {
            return Err(Error::Precondition(format!(
                "{name} is not an eigenvector (residual {residual:e})"
            )));
        }
    }
    let lx = expectation(a, x)?;
    let ly = expectation(a, y)?;
    if (lx - ly).abs() <= tol {
        return Err(Error::Precondition("eigenvalues of x and y coincide".into()));
    }
    if dot(x.vector(), y.vector()).norm() > 1e-8 {
        return Err(Error::Precondition("x and y are not orthogonal".into()));
    }
    let z: Vec<C64> = x
        .vector()
        .iter()
        .zip(y.vector())
        .map(|(p, q)| p * alpha + q * beta)
        .collect();
    variance(a, &PureState::normalized(z)?)
}

/// `sup_x sqrt(Delta_x(A))`, which is half the spectral diameter.
pub fn maximal_deviation(a: &HermitianObservable) -> Result<f64> {
    Ok(0.5 * a.spectral()?.diameter())
}

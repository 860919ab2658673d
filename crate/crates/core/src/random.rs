//! Seeded samplers for observables, states, unitaries and Lipschitz tables.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::matrix::{dot, vec_norm, ComplexMatrix, C64};
use crate::linalg::{HermitianObservable, UnitaryMap};
use crate::order::lipschitz::FunctionTable;
use crate::state::{DensityState, PureState};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from `seed`.
pub fn seeded_stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Uniformly distributed pure state.
pub fn pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PureState {
    loop {
        let v = gaussian_vector(n, rng);
        if let Ok(s) = PureState::normalized(v) {
            return s;
        }
    }
}

fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_row_major(n, gaussian_vector(n * n, rng)).expect("finite gaussian entries")
}

/// `(G + G^H) / 2` with complex Gaussian `G`.
pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianObservable {
    HermitianObservable::from_hermitian_part(&ginibre(n, rng))
}

/// Real symmetric Gaussian matrix.
pub fn real_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianObservable {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = C64::new(rng.sample(StandardNormal), 0.0);
        }
    }
    HermitianObservable::from_hermitian_part(&m)
}

/// Haar-ish unitary from Gram-Schmidt on a Ginibre matrix, returned as columns.
pub fn unitary_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = gaussian_vector(n, rng);
        for c in &cols {
            let proj = dot(c, &v);
            for (x, y) in v.iter_mut().zip(c) {
                *x -= proj * y;
            }
        }
        // second pass for orthogonality to working precision
        for c in &cols {
            let proj = dot(c, &v);
            for (x, y) in v.iter_mut().zip(c) {
                *x -= proj * y;
            }
        }
        let norm = vec_norm(&v);
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let mut u = ComplexMatrix::zeros(n);
    for (j, c) in cols.iter().enumerate() {
        for (i, &z) in c.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

pub fn unitary<R: Rng + ?Sized>(n: usize, antiunitary: bool, rng: &mut R) -> UnitaryMap {
    UnitaryMap::new(unitary_matrix(n, rng), antiunitary).expect("Gram-Schmidt output is unitary")
}

pub fn permutation_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnitaryMap {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut u = ComplexMatrix::zeros(n);
    for (i, &p) in perm.iter().enumerate() {
        u[(p, i)] = C64::new(1.0, 0.0);
    }
    UnitaryMap::new(u, false).expect("permutation matrices are unitary")
}

/// `G G^H / Tr(G G^H)` with complex Gaussian `G`.
pub fn density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DensityState {
    let g = ginibre(n, rng);
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    DensityState::new(w.scale(1.0 / tr)).expect("Wishart matrices are valid states")
}

/// Random table on `domain` (ascending) whose consecutive slopes are drawn
/// uniformly from `[-max_slope, max_slope]`; the result is `max_slope`-Lipschitz.
pub fn lipschitz_table<R: Rng + ?Sized>(domain: &[f64], max_slope: f64, rng: &mut R) -> FunctionTable {
    let mut value = rng.random_range(-1.0..1.0);
    let mut points = Vec::with_capacity(domain.len());
    for (i, &x) in domain.iter().enumerate() {
        if i > 0 {
            let slope = if max_slope > 0.0 {
                rng.random_range(-max_slope..=max_slope)
            } else {
                0.0
            };
            value += slope * (x - domain[i - 1]);
        }
        points.push((x, value));
    }
    FunctionTable::new(points).expect("ascending finite domain")
}

/// Sorted spectrum of `n` points in `[lo, hi]` with all gaps at least `min_gap`.
pub fn spectrum<R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, min_gap: f64, rng: &mut R) -> Vec<f64> {
    assert!(n >= 1 && (n as f64 - 1.0) * min_gap <= hi - lo);
    // Spread the slack uniformly, then add the mandatory gaps back.
    let slack = hi - lo - (n as f64 - 1.0) * min_gap;
    let mut u: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=slack)).collect();
    u.sort_by(f64::total_cmp);
    u.iter()
        .enumerate()
        .map(|(i, &x)| lo + x + i as f64 * min_gap)
        .collect()
}

/// `U diag(eigenvalues) U^H` for a random unitary `U`.
pub fn with_spectrum<R: Rng + ?Sized>(eigenvalues: &[f64], rng: &mut R) -> HermitianObservable {
    let u = unitary_matrix(eigenvalues.len(), rng);
    HermitianObservable::from_hermitian_part(&ComplexMatrix::from_real_diagonal(eigenvalues).conjugate_by(&u))
}

//! Order-derived pair quantities of a finite spectrum and recovery of its metric.
//!
//! For an `n`-point spectrum (`n >= 4`) and eigenvectors `x_j`,
//! `q_jk = sup |<B x_j, x_j> - <B x_k, x_k>|` over `B ⪯ A` with fewer than `n`
//! spectral points. The supremum equals `|λ_j - λ_k|` except on the diameter pair,
//! where it drops to `diam - mingap`. The case analysis on how often the maximum
//! of `q` is attained pins down the diameter endpoints, from which all distances
//! follow.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    n: usize,
    q: Vec<f64>,
}

impl QMatrix {
    /// Validates a symmetric, nonnegative, zero-diagonal `n x n` matrix (`n >= 4`).
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n < 4 {
            return Err(Error::InvalidSpectrum(format!("q-matrix needs n >= 4, got {n}")));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidShape("q-matrix is not square".into()));
        }
        let q: Vec<f64> = rows.concat();
        for j in 0..n {
            for k in 0..n {
                let v = q[j * n + k];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Reconstruction(format!(
                        "entry ({j},{k}) = {v} is not a nonnegative number"
                    )));
                }
                if j == k && v != 0.0 {
                    return Err(Error::Reconstruction(format!(
                        "diagonal entry ({j},{j}) = {v} is not zero"
                    )));
                }
                if v != q[k * n + j] {
                    return Err(Error::Reconstruction(format!("entries ({j},{k}) and ({k},{j}) differ")));
                }
            }
        }
        Ok(Self { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.q[j * self.n + k]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.q.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Maximum off-diagonal entry and the pairs `(j, k)`, `j < k`, attaining it up to
    /// relative tolerance `rtol`.
    pub fn max_pairs(&self, rtol: f64) -> (f64, Vec<(usize, usize)>) {
        let max = self.q.iter().copied().fold(0.0, f64::max);
        let tol = rtol * max.max(1.0);
        let mut pairs = Vec::new();
        for j in 0..self.n {
            for k in (j + 1)..self.n {
                if self.get(j, k) >= max - tol {
                    pairs.push((j, k));
                }
            }
        }
        (max, pairs)
    }
}

/// Relative tolerance for ties among maximal `q` entries and for the final
/// round-trip check.
pub const TIE_RTOL: f64 = 1e-9;

/// `q_jk = |λ_j - λ_k|`, except `diam - mingap` on the diameter pair.
pub fn q_matrix(spectrum: &[f64]) -> Result<QMatrix> {
    let n = spectrum.len();
    if n < 4 {
        return Err(Error::InvalidSpectrum(format!("need at least 4 points, got {n}")));
    }
    if spectrum.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidSpectrum("non-finite point".into()));
    }
    let mut sorted = spectrum.to_vec();
    sorted.sort_by(f64::total_cmp);
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidSpectrum(format!("duplicate point {}", w[0])));
    }
    let mingap = sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let diam = sorted[n - 1] - sorted[0];
    let lo = spectrum.iter().position(|&x| x == sorted[0]).expect("min present");
    let hi = spectrum.iter().position(|&x| x == sorted[n - 1]).expect("max present");

    let mut q = vec![0.0; n * n];
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            let is_diameter = (j == lo && k == hi) || (j == hi && k == lo);
            q[j * n + k] = if is_diameter {
                diam - mingap
            } else {
                (spectrum[j] - spectrum[k]).abs()
            };
        }
    }
    Ok(QMatrix { n, q })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricReconstruction {
    /// Pairwise distances `|λ_j - λ_k|`, row-major `n x n`.
    pub distances: Vec<Vec<f64>>,
    /// Positions indexed like `Q`, anchored so the lower-indexed diameter endpoint sits at 0.
    pub spectrum: Vec<f64>,
    /// The diameter endpoints `(j, k)`, `j < k`.
    pub endpoints: (usize, usize),
    /// How many pairs attain `max q` (1, 2 or 3).
    pub max_count: usize,
}

impl MetricReconstruction {
    pub fn sorted_spectrum(&self) -> Vec<f64> {
        let mut s = self.spectrum.clone();
        s.sort_by(f64::total_cmp);
        s
    }
}

/// Recovers all pairwise distances (and a spectrum, up to reflection and
/// translation) from a q-matrix.
pub fn reconstruct_metric(q: &QMatrix) -> Result<MetricReconstruction> {
    let n = q.n();
    let (max, pairs) = q.max_pairs(TIE_RTOL);
    if !(max > 0.0) {
        return Err(Error::Reconstruction("all entries are zero".into()));
    }

    // Distances agree with q off the diameter pair; for a maximal pair the detour
    // through any interior point is exact and never undercuts the true distance.
    let detour = |a: usize, b: usize| -> f64 {
        (0..n)
            .filter(|&j| j != a && j != b)
            .map(|j| q.get(a, j) + q.get(j, b))
            .fold(f64::INFINITY, f64::min)
    };
    let mut dist = q.rows();
    for &(a, b) in &pairs {
        let d = detour(a, b);
        dist[a][b] = d;
        dist[b][a] = d;
    }

    let count_in = |i: usize| pairs.iter().filter(|&&(a, b)| a == i || b == i).count();
    let endpoints = match pairs.len() {
        1 => pairs[0],
        2 => {
            let shared: Vec<usize> = (0..n).filter(|&i| count_in(i) == 2).collect();
            if shared.len() != 1 {
                return Err(Error::Reconstruction(
                    "two maximal pairs do not share exactly one index".into(),
                ));
            }
            // the longer corrected distance is the diameter
            let (p0, p1) = (pairs[0], pairs[1]);
            if dist[p0.0][p0.1] >= dist[p1.0][p1.1] {
                p0
            } else {
                p1
            }
        }
        3 => {
            let twice: Vec<usize> = (0..n).filter(|&i| count_in(i) == 2).collect();
            if twice.len() != 2 || !pairs.contains(&(twice[0], twice[1])) {
                return Err(Error::Reconstruction(
                    "three maximal pairs do not form the pattern (k1,k_{n-1}), (k1,k_n), (k2,k_n)".into(),
                ));
            }
            (twice[0], twice[1])
        }
        c => {
            return Err(Error::Reconstruction(format!(
                "maximum attained by {c} pairs; a spectrum allows at most 3"
            )))
        }
    };

    let origin = endpoints.0;
    let spectrum: Vec<f64> = (0..n).map(|a| dist[origin][a]).collect();
    let distances: Vec<Vec<f64>> = (0..n)
        .map(|a| (0..n).map(|b| (spectrum[a] - spectrum[b]).abs()).collect())
        .collect();

    let tol = TIE_RTOL * max.max(1.0);
    for a in 0..n {
        for b in 0..n {
            if (distances[a][b] - dist[a][b]).abs() > tol {
                return Err(Error::Reconstruction(format!(
                    "pair ({a},{b}) is not consistent with points on a line"
                )));
            }
        }
    }
    let round_trip = q_matrix(&spectrum).map_err(|e| Error::Reconstruction(e.to_string()))?;
    for a in 0..n {
        for b in 0..n {
            if (round_trip.get(a, b) - q.get(a, b)).abs() > tol {
                return Err(Error::Reconstruction(format!(
                    "recovered spectrum does not reproduce q at ({a},{b})"
                )));
            }
        }
    }

    Ok(MetricReconstruction {
        distances,
        spectrum,
        endpoints,
        max_count: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_values_for_0_1_3_7() {
        let q = q_matrix(&[0.0, 1.0, 3.0, 7.0]).unwrap();
        let got = [
            q.get(0, 1),
            q.get(0, 2),
            q.get(1, 2),
            q.get(2, 3),
            q.get(1, 3),
            q.get(0, 3),
        ];
        assert_eq!(got, [1.0, 3.0, 2.0, 4.0, 6.0, 6.0]);
        assert_eq!(q.max_pairs(TIE_RTOL).1, vec![(0, 3), (1, 3)]);
    }

    #[test]
    fn three_pair_case() {
        let q = q_matrix(&[0.0, 1.0, 5.0, 6.0]).unwrap();
        assert_eq!(q.get(0, 3), 5.0);
        assert_eq!(q.max_pairs(TIE_RTOL).1, vec![(0, 2), (0, 3), (1, 3)]);
    }

    #[test]
    fn arithmetic_progression() {
        let q = q_matrix(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(q.get(0, 3), 2.0);
        assert_eq!(q.get(0, 2), 2.0);
        assert_eq!(q.get(1, 3), 2.0);
        assert_eq!(q.get(0, 1), 1.0);
    }

    #[test]
    fn q_matrix_preconditions() {
        assert!(q_matrix(&[0.0, 1.0, 2.0]).is_err());
        assert!(q_matrix(&[0.0, 1.0, 1.0, 2.0]).is_err());
        assert!(q_matrix(&[0.0, 1.0, f64::NAN, 2.0]).is_err());
    }

    #[test]
    fn reconstruct_two_pair_example() {
        let r = reconstruct_metric(&q_matrix(&[0.0, 1.0, 3.0, 7.0]).unwrap()).unwrap();
        assert_eq!(r.distances[0][3], 7.0);
        assert_eq!(r.distances[1][3], 6.0);
        assert_eq!(r.spectrum, vec![0.0, 1.0, 3.0, 7.0]);
        assert_eq!(r.max_count, 2);
    }

    #[test]
    fn reconstruct_three_pair_example() {
        let r = reconstruct_metric(&q_matrix(&[0.0, 1.0, 5.0, 6.0]).unwrap()).unwrap();
        assert_eq!(r.distances[0][3], 6.0);
        assert_eq!(r.spectrum, vec![0.0, 1.0, 5.0, 6.0]);
        assert_eq!(r.max_count, 3);
    }

    #[test]
    fn reflection_gives_same_distances() {
        let s = [0.3, 2.0, 2.5, 4.75, 9.0];
        let reflected: Vec<f64> = s.iter().map(|x| 10.0 - x).collect();
        let a = reconstruct_metric(&q_matrix(&s).unwrap()).unwrap();
        let b = reconstruct_metric(&q_matrix(&reflected).unwrap()).unwrap();
        for j in 0..s.len() {
            for k in 0..s.len() {
                assert!((a.distances[j][k] - b.distances[j][k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unsorted_indexing() {
        let s = [3.0, 7.0, 0.0, 1.0];
        let r = reconstruct_metric(&q_matrix(&s).unwrap()).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                assert!((r.distances[j][k] - (s[j] - s[k]).abs()).abs() < 1e-12);
            }
        }
        // recovered up to reflection: the origin is the first diameter endpoint
        let sorted = r.sorted_spectrum();
        assert!(sorted == vec![0.0, 1.0, 3.0, 7.0] || sorted == vec![0.0, 4.0, 6.0, 7.0]);
    }

    #[test]
    fn rejects_inconsistent_q() {
        // all off-diagonal entries equal: maximum attained 6 times
        let flat = vec![
            vec![0.0, 1.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0, 1.0],
            vec![1.0, 1.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0, 0.0],
        ];
        assert!(matches!(
            reconstruct_metric(&QMatrix::new(flat).unwrap()),
            Err(Error::Reconstruction(_))
        ));

        // unique maximum but distances not realizable on a line
        let mut rows = q_matrix(&[0.0, 1.0, 3.0, 7.0]).unwrap().rows();
        rows[0][1] = 2.5;
        rows[1][0] = 2.5;
        assert!(reconstruct_metric(&QMatrix::new(rows).unwrap()).is_err());

        assert!(QMatrix::new(vec![vec![0.0; 3]; 3]).is_err());
        let mut asym = q_matrix(&[0.0, 1.0, 3.0, 7.0]).unwrap().rows();
        asym[0][1] = 9.0;
        assert!(QMatrix::new(asym).is_err());
    }
}

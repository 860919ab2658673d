//! Independent numerical checks of `A ⪯ B` that never look at spectra: gradient
//! ascent of the variance gap over pure states, and random sampling of mixed states.

use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::matrix::{dot, vec_norm, ComplexMatrix, C64};
use crate::linalg::observable::check_dims;
use crate::linalg::HermitianObservable;
use crate::random;
use crate::state::{variance, DensityState, PureState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub restarts: usize,
    pub steps: usize,
    pub initial_step: f64,
    pub max_halvings: usize,
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            steps: 500,
            initial_step: 1.0,
            max_halvings: 60,
            grad_tol: 1e-10,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSearch {
    pub state: PureState,
    /// `Delta_x(A) - Delta_x(B)` at `state`.
    pub value: f64,
}

struct Gap<'a> {
    a: &'a ComplexMatrix,
    a2: ComplexMatrix,
    b: &'a ComplexMatrix,
    b2: ComplexMatrix,
}

impl Gap<'_> {
    fn value(&self, x: &[C64]) -> f64 {
        let var = |m: &ComplexMatrix, m2: &ComplexMatrix| {
            let e = dot(x, &m.matvec(x)).re;
            dot(x, &m2.matvec(x)).re - e * e
        };
        var(self.a, &self.a2) - var(self.b, &self.b2)
    }

    /// Tangential part of the Euclidean gradient
    /// `2(A^2 - 2E_x(A) A)x - 2(B^2 - 2E_x(B) B)x`.
    fn tangent_gradient(&self, x: &[C64]) -> Vec<C64> {
        let ax = self.a.matvec(x);
        let a2x = self.a2.matvec(x);
        let bx = self.b.matvec(x);
        let b2x = self.b2.matvec(x);
        let ea = dot(x, &ax).re;
        let eb = dot(x, &bx).re;
        let g: Vec<C64> = (0..x.len())
            .map(|i| (a2x[i] - ax[i] * (2.0 * ea) - b2x[i] + bx[i] * (2.0 * eb)) * 2.0)
            .collect();
        let radial = dot(x, &g).re;
        g.iter().zip(x).map(|(gi, xi)| gi - xi * radial).collect()
    }
}

fn normalize(v: Vec<C64>) -> Vec<C64> {
    let n = vec_norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

fn ascend(gap: &Gap<'_>, start: Vec<C64>, cfg: &OracleConfig) -> (Vec<C64>, f64) {
    let mut x = start;
    let mut fx = gap.value(&x);
    for _ in 0..cfg.steps {
        let g = gap.tangent_gradient(&x);
        if vec_norm(&g) < cfg.grad_tol {
            break;
        }
        let mut step = cfg.initial_step;
        let mut accepted = false;
        for _ in 0..cfg.max_halvings {
            let trial: Vec<C64> = x.iter().zip(&g).map(|(xi, gi)| xi + gi * step).collect();
            let trial = normalize(trial);
            let ft = gap.value(&trial);
            if ft > fx {
                x = trial;
                fx = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (x, fx)
}

/// Maximizes `Delta_x(A) - Delta_x(B)` over unit vectors by multi-restart projected
/// gradient ascent. Restarts run in parallel; each draws its start from its own
/// seeded stream and the best restart wins, ties to the lowest restart index.
pub fn witness_search(a: &HermitianObservable, b: &HermitianObservable, cfg: &OracleConfig) -> Result<WitnessSearch> {
    check_dims(a, b)?;
    let n = a.dim();
    let gap = Gap {
        a: a.matrix(),
        a2: a.square().into_matrix(),
        b: b.matrix(),
        b2: b.square().into_matrix(),
    };
    let restarts = cfg.restarts.max(1);
    let results: Vec<(usize, Vec<C64>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = random::seeded_stream(cfg.seed, r as u64);
            let start = random::pure_state(n, &mut rng).into_vector();
            let (x, fx) = ascend(&gap, start, cfg);
            (r, x, fx)
        })
        .collect();
    let (_, x, _) = results
        .into_iter()
        .reduce(|best, cand| if cand.2 > best.2 { cand } else { best })
        .expect("at least one restart");
    let state = PureState::normalized(x)?;
    let value = variance(a, &state)? - variance(b, &state)?;
    Ok(WitnessSearch { state, value })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateOrderCheck {
    /// No sampled state had `Delta_rho(A) > Delta_rho(B) + tol`.
    pub holds: bool,
    pub trials: usize,
    /// The sampled state with the largest gap `Delta_rho(A) - Delta_rho(B)`, when it exceeds `tol`.
    pub violation: Option<(DensityState, f64)>,
}

/// Samples `trials` Wishart-distributed density matrices and compares variances.
/// A falsifier, not a decision procedure.
pub fn check_state_order(
    a: &HermitianObservable,
    b: &HermitianObservable,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<StateOrderCheck> {
    check_dims(a, b)?;
    let mut rng = random::seeded(seed);
    let mut worst: Option<(DensityState, f64)> = None;
    for _ in 0..trials {
        let rho = random::density(a.dim(), &mut rng);
        let gap = variance(a, &rho)? - variance(b, &rho)?;
        if gap > tol && worst.as_ref().is_none_or(|w| gap > w.1) {
            worst = Some((rho, gap));
        }
    }
    Ok(StateOrderCheck {
        holds: worst.is_none(),
        trials,
        violation: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::decide::decide_order_default;

    fn d(v: &[f64]) -> HermitianObservable {
        HermitianObservable::diagonal(v)
    }

    #[test]
    fn doubled_observable_peaks_at_equal_superposition() {
        let b = d(&[0.0, 1.0]);
        let a = b.scale(2.0);
        let cfg = OracleConfig {
            restarts: 4,
            ..OracleConfig::default()
        };
        let w = witness_search(&a, &b, &cfg).unwrap();
        assert!((w.value - 0.75).abs() < 1e-9, "{}", w.value);
        let amps: Vec<f64> = w.state.vector().iter().map(|z| z.norm()).collect();
        assert!((amps[0] - amps[1]).abs() < 1e-4);
    }

    #[test]
    fn holds_instance_has_no_positive_gap() {
        let a = d(&[0.0, 1.0, 2.0]);
        let b = d(&[0.0, 1.0, 3.0]);
        assert!(decide_order_default(&a, &b).unwrap().holds());
        let w = witness_search(&a, &b, &OracleConfig::default()).unwrap();
        assert!(w.value <= 1e-9, "{}", w.value);
    }

    #[test]
    fn failing_instance_reaches_known_witness_value() {
        let w = witness_search(&d(&[0.0, 2.0, 3.0]), &d(&[0.0, 1.0, 3.0]), &OracleConfig::default()).unwrap();
        assert!(w.value >= 0.75 - 1e-9, "{}", w.value);
    }

    #[test]
    fn search_is_deterministic() {
        let mut rng = random::seeded(1);
        let a = random::hermitian(4, &mut rng);
        let b = random::hermitian(4, &mut rng);
        let cfg = OracleConfig {
            restarts: 8,
            steps: 100,
            ..OracleConfig::default()
        };
        assert_eq!(
            witness_search(&a, &b, &cfg).unwrap(),
            witness_search(&a, &b, &cfg).unwrap()
        );
    }

    #[test]
    fn state_order_examples() {
        let a = d(&[0.0, 1.0, 2.0]);
        let b = d(&[0.0, 1.0, 3.0]);
        assert!(check_state_order(&a, &b, 200, 0, 1e-9).unwrap().holds);

        let bad = d(&[0.0, 2.0, 3.0]);
        let r = check_state_order(&bad, &b, 1000, 0, 1e-9).unwrap();
        assert!(!r.holds);
        let (rho, gap) = r.violation.unwrap();
        assert!(gap > 0.0);
        assert!((variance(&bad, &rho).unwrap() - variance(&b, &rho).unwrap() - gap).abs() < 1e-15);

        let c = HermitianObservable::scalar(3, 2.0);
        assert!(
            check_state_order(&c, &random::hermitian(3, &mut random::seeded(2)), 200, 0, 1e-9)
                .unwrap()
                .holds
        );
    }
}

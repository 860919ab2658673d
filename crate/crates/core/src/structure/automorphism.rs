//! Checking that a map on observables preserves the variance order in both directions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{HermitianObservable, UnitaryMap};
use crate::order::decide_order_default;
use crate::random;

/// The map `A -> alpha U A U^*` (antiunitary `U` conjugating entries first).
#[derive(Debug, Clone)]
pub struct AutomorphismSpec {
    alpha: f64,
    unitary: UnitaryMap,
}

impl AutomorphismSpec {
    pub fn new(alpha: f64, unitary: UnitaryMap) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidAutomorphism(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        Ok(Self { alpha, unitary })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn unitary(&self) -> &UnitaryMap {
        &self.unitary
    }

    pub fn dim(&self) -> usize {
        self.unitary.dim()
    }

    pub fn apply(&self, a: &HermitianObservable) -> Result<HermitianObservable> {
        Ok(self.unitary.conjugate(a)?.scale(self.alpha))
    }
}

/// A sampled pair on which the map broke `B ⪯ A ⇔ Φ(B) ⪯ Φ(A)`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub trial: usize,
    /// The pair `(B, A)` as tested for `B ⪯ A`.
    pub lower: HermitianObservable,
    pub upper: HermitianObservable,
    pub before: bool,
    pub after: bool,
}

#[derive(Debug, Clone)]
pub struct AutomorphismReport {
    pub passed: bool,
    pub trials: usize,
    /// Pairs that satisfied `B ⪯ A` before mapping (across both orientations).
    pub related_pairs: usize,
    /// First counterexample by trial index.
    pub counterexample: Option<Counterexample>,
}

/// Pair for trial `t`. Even trials: `A = f(B)` with `f` random 1-Lipschitz, so
/// `A ⪯ B`. Odd trials alternate between an independent random pair and
/// `A = g(B)` with `g` of Lipschitz constant up to 2 (commuting, usually unrelated).
pub fn sample_pair(trial: usize, dim: usize, seed: u64) -> Result<(HermitianObservable, HermitianObservable)> {
    let mut rng = random::seeded_stream(seed, trial as u64);
    let b = random::hermitian(dim, &mut rng);
    let scale = rng.random_range(0.5..2.0);
    let b = b.scale(scale);
    let a = match trial % 4 {
        0 | 2 => {
            let d = b.spectral()?;
            let f = random::lipschitz_table(&d.eigenvalues(), 1.0, &mut rng);
            d.apply_function(&f)?
        }
        1 => random::hermitian(dim, &mut rng),
        _ => {
            let d = b.spectral()?;
            let g = random::lipschitz_table(&d.eigenvalues(), 2.0, &mut rng);
            d.apply_function(&g)?
        }
    };
    Ok((a, b))
}

/// Samples `trials` pairs and checks that `map` preserves the variance order in both
/// directions on each pair, in both orientations.
pub fn verify_map<F>(map: F, trials: usize, dim: usize, seed: u64) -> Result<AutomorphismReport>
where
    F: Fn(&HermitianObservable) -> Result<HermitianObservable>,
{
    if dim < 2 {
        return Err(Error::Precondition(format!("dimension must be at least 2, got {dim}")));
    }
    let mut related = 0;
    for trial in 0..trials {
        let (a, b) = sample_pair(trial, dim, seed)?;
        let (fa, fb) = (map(&a)?, map(&b)?);
        for (lower, upper, flower, fupper) in [(&a, &b, &fa, &fb), (&b, &a, &fb, &fa)] {
            let before = decide_order_default(lower, upper)?.holds();
            let after = decide_order_default(flower, fupper)?.holds();
            related += before as usize;
            if before != after {
                return Ok(AutomorphismReport {
                    passed: false,
                    trials: trial + 1,
                    related_pairs: related,
                    counterexample: Some(Counterexample {
                        trial,
                        lower: lower.clone(),
                        upper: upper.clone(),
                        before,
                        after,
                    }),
                });
            }
        }
    }
    Ok(AutomorphismReport {
        passed: true,
        trials,
        related_pairs: related,
        counterexample: None,
    })
}

pub fn verify_automorphism(
    spec: &AutomorphismSpec,
    trials: usize,
    dim: usize,
    seed: u64,
) -> Result<AutomorphismReport> {
    if dim != spec.dim() {
        return Err(Error::InvalidAutomorphism(format!(
            "unitary acts on dimension {}, trials requested in dimension {dim}",
            spec.dim()
        )));
    }
    verify_map(|x| spec.apply(x), trials, dim, seed)
}

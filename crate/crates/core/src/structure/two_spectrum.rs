//! Recognizing two-point spectra from the order alone: `#σ(A) = 2` iff the set of
//! observables below `A` is strictly larger than the class of `A` and totally
//! ordered.

use rand::Rng;

use crate::error::Result;
use crate::linalg::HermitianObservable;
use crate::order::{decide_order_default, FunctionTable};
use crate::random;

/// `#σ(A) = 2`, read off the spectrum.
pub fn two_spectrum_detector(a: &HermitianObservable) -> Result<bool> {
    Ok(a.spectral()?.len() == 2)
}

/// The hinge pair at an interior spectral point `pivot`:
/// `f(x) = max(0, x - pivot)` and `g(x) = min(0, x - pivot)`, both 1-Lipschitz.
pub fn hinge_pair(a: &HermitianObservable, pivot: f64) -> Result<(HermitianObservable, HermitianObservable)> {
    let d = a.spectral()?;
    let f = d.map(|x| (x - pivot).max(0.0));
    let g = d.map(|x| (x - pivot).min(0.0));
    Ok((f, g))
}

/// Default number of random members of the lower set sampled by [`two_spectrum_by_order`].
pub const ORDER_SAMPLES: usize = 20;

fn comparable(x: &HermitianObservable, y: &HermitianObservable) -> Result<bool> {
    Ok(decide_order_default(x, y)?.holds() || decide_order_default(y, x)?.holds())
}

/// Order-theoretic test: samples members `f(A)` of the lower set of `A` (random
/// 1-Lipschitz tables plus the hinge pair at each interior point) and checks that
/// they form a chain. Scalars fail because their lower set is their own class.
pub fn two_spectrum_by_order(a: &HermitianObservable, samples: usize, seed: u64) -> Result<bool> {
    let d = a.spectral()?;
    if d.len() < 2 {
        return Ok(false);
    }
    let ev = d.eigenvalues();
    let mut members: Vec<HermitianObservable> = Vec::new();
    let mut rng = random::seeded(seed);
    for _ in 0..samples {
        // slopes bounded away from zero keep members away from the scalars
        let mut value = rng.random_range(-1.0..1.0);
        let mut points = vec![(ev[0], value)];
        for w in ev.windows(2) {
            let magnitude: f64 = rng.random_range(0.05..=1.0);
            let slope = if rng.random_bool(0.5) { magnitude } else { -magnitude };
            value += slope * (w[1] - w[0]);
            points.push((w[1], value));
        }
        members.push(d.apply_function(&FunctionTable::new(points)?)?);
    }
    for &pivot in &ev[1..ev.len() - 1] {
        let (f, g) = hinge_pair(a, pivot)?;
        members.push(f);
        members.push(g);
    }
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            if !comparable(&members[i], &members[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

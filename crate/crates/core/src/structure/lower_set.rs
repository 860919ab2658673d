//! Observables with at most two spectral points lying below a given observable.
//!
//! `B ⪯ A` with `#σ(B) <= 2` means `B = f(A)` for a two-valued 1-Lipschitz `f`,
//! i.e. `B` is class-equal to `t E_A(ω)` for a nonempty proper `ω ⊂ σ(A)` and
//! `0 <= t <= t_ω = dist(ω, σ(A) \ ω)`.

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::observable::check_dims;
use crate::linalg::{default_group_tol, HermitianObservable, SpectralDecomposition};
use crate::order::{decide_order, default_order_tol, OrderVerdict};

/// Spectra larger than this are not enumerated (there are `2^(m-1) - 1` families).
pub const MAX_LOWER_SET_POINTS: usize = 20;

#[derive(Debug, Clone)]
pub struct TwoPointFamily {
    /// Eigenvalues of `A` in `ω`, ascending.
    pub subset: Vec<f64>,
    /// Indices of `ω` into the ascending spectrum of `A`.
    pub indices: Vec<usize>,
    /// `E_A(ω)`
    pub projector: ComplexMatrix,
    /// `t_ω`
    pub threshold: f64,
}

impl TwoPointFamily {
    /// `t E_A(ω)`
    pub fn member(&self, t: f64) -> HermitianObservable {
        HermitianObservable::new(self.projector.scale(t)).expect("projectors are Hermitian")
    }

    fn contains_index(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

fn spectral_points(a: &HermitianObservable) -> Result<SpectralDecomposition> {
    let d = a.spectral()?;
    if d.len() < 2 {
        return Err(Error::Degenerate("observable has a one-point spectrum".into()));
    }
    if d.len() > MAX_LOWER_SET_POINTS {
        return Err(Error::Precondition(format!(
            "spectrum has {} points; at most {MAX_LOWER_SET_POINTS} are enumerated",
            d.len()
        )));
    }
    Ok(d)
}

/// One family per complementary pair `{ω, σ(A)\ω}`. The representative is the
/// smaller of the two sets, or the one omitting `max σ(A)` when sizes tie.
pub fn two_point_lower_set(a: &HermitianObservable) -> Result<Vec<TwoPointFamily>> {
    let d = spectral_points(a)?;
    let m = d.len();
    let ev = d.eigenvalues();
    let mut families = Vec::new();
    for mask in 1u32..((1u32 << m) - 1) {
        let size = mask.count_ones() as usize;
        let top = mask & (1 << (m - 1)) != 0;
        let representative = 2 * size < m || (2 * size == m && !top);
        if !representative {
            continue;
        }
        let indices: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let mut threshold = f64::INFINITY;
        for &i in &indices {
            for j in (0..m).filter(|j| mask & (1 << j) == 0) {
                threshold = threshold.min((ev[i] - ev[j]).abs());
            }
        }
        let mut projector = ComplexMatrix::zeros(a.dim());
        for &i in &indices {
            projector = &projector + &d.groups()[i].projector;
        }
        families.push(TwoPointFamily {
            subset: indices.iter().map(|&i| ev[i]).collect(),
            indices,
            projector,
            threshold,
        });
    }
    Ok(families)
}

/// Locates `B` in the lower set: `Some((family, t))` when `B ⪯ A`, `#σ(B) <= 2`
/// and `B` is class-equal to `t E_ω` for that family; `None` otherwise.
/// A scalar `B` is reported as `t = 0` in the first family.
pub fn classify_two_point(
    a: &HermitianObservable,
    b: &HermitianObservable,
    families: &[TwoPointFamily],
) -> Result<Option<(usize, f64)>> {
    check_dims(a, b)?;
    let tol = default_order_tol(a, b);
    let certificate = match decide_order(b, a, tol)? {
        OrderVerdict::Holds { certificate } => certificate,
        OrderVerdict::Fails { .. } => return Ok(None),
    };
    let values = certificate.values();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let vtol = tol.max(default_group_tol(b));
    if hi - lo <= vtol {
        return Ok(if families.is_empty() { None } else { Some((0, 0.0)) });
    }
    if values.iter().any(|&v| v - lo > vtol && hi - v > vtol) {
        return Ok(None);
    }
    let upper: Vec<usize> = (0..values.len()).filter(|&i| hi - values[i] <= vtol).collect();
    let found = families.iter().position(|f| {
        let inside = upper.iter().filter(|&&i| f.contains_index(i)).count();
        (inside == upper.len() && f.indices.len() == upper.len())
            || (inside == 0 && f.indices.len() + upper.len() == values.len())
    });
    Ok(found.map(|k| (k, hi - lo)))
}

/// Class representatives of all observables whose two-point lower set coincides
/// with that of a three-point-spectrum `A`, built on the same eigenprojectors.
///
/// Generically there are two (`A` itself and one rearrangement); when the two
/// spectral gaps of `A` are equal a third appears.
pub fn lower_set_correspondents(a: &HermitianObservable) -> Result<Vec<HermitianObservable>> {
    let d = a.spectral()?;
    if d.len() != 3 {
        return Err(Error::Precondition(format!(
            "expected a three-point spectrum, found {} points",
            d.len()
        )));
    }
    let ev = d.eigenvalues();
    let tol = default_group_tol(a);
    // threshold of each singleton {P_i}: distance to the nearest other point
    let thresholds: Vec<f64> = (0..3)
        .map(|i| {
            (0..3)
                .filter(|&j| j != i)
                .map(|j| (ev[i] - ev[j]).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut out: Vec<HermitianObservable> = Vec::new();
    // Arrangement (left, mid, right) with gaps g1 = t_left, g2 = t_right; the middle
    // projector then has threshold min(g1, g2). Reflections give the same class,
    // so each middle index is tried once with left < right.
    for mid in 0..3 {
        let (left, right) = match mid {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let g1 = thresholds[left];
        let g2 = thresholds[right];
        if (g1.min(g2) - thresholds[mid]).abs() > tol {
            continue;
        }
        let groups = d.groups();
        // left endpoint sits at 0
        let m = &groups[mid].projector.scale(g1) + &groups[right].projector.scale(g1 + g2);
        out.push(HermitianObservable::new(m)?);
    }
    Ok(out)
}

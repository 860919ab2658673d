//! Variance-equivalence classes `{A + cI, -A + cI}`.

use std::cmp::Ordering;

use crate::error::Result;
use crate::linalg::observable::check_dims;
use crate::linalg::{default_group_tol, HermitianObservable};

/// True iff `B - A` or `B + A` is within `tol` (Frobenius) of a real multiple of `I`.
pub fn class_equal(a: &HermitianObservable, b: &HermitianObservable, tol: f64) -> Result<bool> {
    check_dims(a, b)?;
    let diff = b.sub(a)?.into_matrix();
    let sum = b.add(a)?.into_matrix();
    Ok(diff.distance_to_real_scalar() <= tol || sum.distance_to_real_scalar() <= tol)
}

fn cmp_with_tol(x: f64, y: f64, tol: f64) -> Ordering {
    if (x - y).abs() <= tol {
        Ordering::Equal
    } else {
        x.total_cmp(&y)
    }
}

/// Canonical member of the class of `A` with smallest eigenvalue 0.
///
/// Chooses between `A - min(A) I` and `-A + max(A) I` by the lexicographic order
/// of their `(eigenvalue, multiplicity)` sequences. When those coincide, the
/// row-major entries `(re, im)` decide, and a full tie keeps `A - min(A) I`.
pub fn canonical_representative(a: &HermitianObservable) -> Result<HermitianObservable> {
    let d = a.spectral()?;
    let lower = a.shift(-d.min_eigenvalue());
    let upper = a.neg().shift(d.max_eigenvalue());
    let tol = default_group_tol(a);

    let spec_lower: Vec<(f64, usize)> = d
        .multiplicities()
        .iter()
        .map(|&(l, m)| (l - d.min_eigenvalue(), m))
        .collect();
    let spec_upper: Vec<(f64, usize)> = d
        .multiplicities()
        .iter()
        .rev()
        .map(|&(l, m)| (d.max_eigenvalue() - l, m))
        .collect();

    let by_spectrum = spec_lower
        .iter()
        .zip(&spec_upper)
        .map(|(x, y)| cmp_with_tol(x.0, y.0, tol).then(x.1.cmp(&y.1)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal);
    let order = by_spectrum.then_with(|| {
        lower
            .matrix()
            .as_slice()
            .iter()
            .zip(upper.matrix().as_slice())
            .map(|(x, y)| cmp_with_tol(x.re, y.re, tol).then(cmp_with_tol(x.im, y.im, tol)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    });
    Ok(if order == Ordering::Greater { upper } else { lower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn d(v: &[f64]) -> HermitianObservable {
        HermitianObservable::diagonal(v)
    }

    #[test]
    fn class_membership() {
        let a = random::hermitian(3, &mut random::seeded(4));
        assert!(class_equal(&a, &a.shift(3.0), 1e-10).unwrap());
        assert!(class_equal(&a, &a.neg(), 1e-10).unwrap());
        assert!(class_equal(&a, &a.neg().shift(-2.0), 1e-10).unwrap());
        assert!(!class_equal(&d(&[0.0, 1.0]), &d(&[0.0, 2.0]), 1e-10).unwrap());
        assert!(class_equal(&d(&[0.0]), &d(&[0.0, 2.0]), 1e-10).is_err());
    }

    #[test]
    fn canonical_examples() {
        let c = canonical_representative(&d(&[1.0, 2.0, 4.0])).unwrap();
        assert!(c.distance(&d(&[0.0, 1.0, 3.0])).unwrap() < 1e-14);

        let c = canonical_representative(&HermitianObservable::scalar(3, 5.0)).unwrap();
        assert!(c.frobenius_norm() < 1e-14);

        let c = canonical_representative(&d(&[0.0, 1.0])).unwrap();
        assert!(c.distance(&d(&[0.0, 1.0])).unwrap() < 1e-14);
        let c = canonical_representative(&d(&[1.0, 0.0])).unwrap();
        assert!(c.distance(&d(&[0.0, 1.0])).unwrap() < 1e-14);
    }

    #[test]
    fn canonical_is_class_invariant_and_idempotent() {
        let mut rng = random::seeded(9);
        for n in 2..7 {
            let a = random::hermitian(n, &mut rng);
            let c = canonical_representative(&a).unwrap();
            assert!(class_equal(&a, &c, 1e-9).unwrap());
            let again = canonical_representative(&c).unwrap();
            assert!(again.distance(&c).unwrap() < 1e-9);
            for (sign, shift) in [(1.0, 2.5), (-1.0, 0.0), (-1.0, -7.0)] {
                let b = a.scale(sign).shift(shift);
                let cb = canonical_representative(&b).unwrap();
                assert!(cb.distance(&c).unwrap() < 1e-8, "n={n}");
            }
        }
    }
}

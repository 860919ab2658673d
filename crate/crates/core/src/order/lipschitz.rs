//! Finite function tables on spectra and their Lipschitz extensions to the real line.

use crate::error::{Error, Result};

/// A real function on a finite set of points, `lambda` strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTable {
    points: Vec<(f64, f64)>,
    lipschitz_bound: f64,
}

fn max_slope(points: &[(f64, f64)]) -> f64 {
    // For points on a line the largest pairwise slope is attained by neighbours.
    points
        .windows(2)
        .map(|w| (w[1].1 - w[0].1).abs() / (w[1].0 - w[0].0))
        .fold(0.0, f64::max)
}

impl FunctionTable {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
            return Err(Error::InvalidTable("non-finite entry".into()));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidTable("points are not strictly increasing".into()));
        }
        Ok(Self::from_sorted_unchecked(points))
    }

    pub(crate) fn from_sorted_unchecked(points: Vec<(f64, f64)>) -> Self {
        let lipschitz_bound = max_slope(&points);
        Self {
            points,
            lipschitz_bound,
        }
    }

    pub fn from_fn<F: Fn(f64) -> f64>(domain: &[f64], f: F) -> Result<Self> {
        Self::new(domain.iter().map(|&x| (x, f(x))).collect())
    }

    pub fn constant(domain: &[f64], c: f64) -> Result<Self> {
        Self::from_fn(domain, |_| c)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn domain(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }

    /// Smallest `c` with `|f(s) - f(t)| <= c |s - t|` on the table.
    pub fn lipschitz_constant(&self) -> f64 {
        self.lipschitz_bound
    }

    /// Checks `|f(s) - f(t)| <= c |s - t| + tol` for all pairs; the error names the
    /// pair with the largest excess.
    pub fn check_lipschitz(&self, c: f64, tol: f64) -> Result<()> {
        let mut worst: Option<(f64, usize, usize)> = None;
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                let (s, fs) = self.points[i];
                let (t, ft) = self.points[j];
                let excess = (fs - ft).abs() - c * (t - s) - tol;
                if excess > 0.0 && worst.is_none_or(|w| excess > w.0) {
                    worst = Some((excess, i, j));
                }
            }
        }
        match worst {
            None => Ok(()),
            Some((_, i, j)) => {
                let (s, fs) = self.points[i];
                let (t, ft) = self.points[j];
                Err(Error::NotLipschitz {
                    lo: s,
                    hi: t,
                    slope: (ft - fs).abs() / (t - s),
                    constant: c,
                })
            }
        }
    }

    /// Value at the table point nearest to `x`, if it lies within `tol`.
    pub fn lookup(&self, x: f64, tol: f64) -> Option<f64> {
        let idx = self.points.partition_point(|p| p.0 < x);
        [idx.checked_sub(1), Some(idx)]
            .into_iter()
            .flatten()
            .filter_map(|i| self.points.get(i))
            .map(|&(l, v)| ((l - x).abs(), v))
            .filter(|&(dist, _)| dist <= tol)
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(_, v)| v)
    }

    /// `self ∘ inner`, tabulated on the domain of `inner`.
    pub fn compose(&self, inner: &FunctionTable, tol: f64) -> Result<FunctionTable> {
        let points = inner
            .points
            .iter()
            .map(|&(x, gx)| self.lookup(gx, tol).map(|v| (x, v)).ok_or(Error::Domain { lambda: gx }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_sorted_unchecked(points))
    }
}

/// Which extremal extension is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionKind {
    /// Upper extension `x -> min_k (f(l_k) + c |x - l_k|)`. The lower (Whitney)
    /// extension of `f` is the negation of the upper extension of `-f`.
    McShane,
}

/// A `c`-Lipschitz function on the whole real line agreeing with a table on its points.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzExtension {
    base: FunctionTable,
    constant: f64,
    kind: ExtensionKind,
}

impl LipschitzExtension {
    pub fn base(&self) -> &FunctionTable {
        &self.base
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn kind(&self) -> ExtensionKind {
        self.kind
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.base
            .points
            .iter()
            .map(|&(l, v)| v + self.constant * (x - l).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Relative slack accepted by [`mcshane_extend`] on the Lipschitz precondition.
pub const EXTEND_RTOL: f64 = 1e-8;

/// McShane extension of a `c`-Lipschitz table.
pub fn mcshane_extend(f: &FunctionTable, c: f64) -> Result<LipschitzExtension> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::Precondition(format!(
            "Lipschitz constant must be finite and >= 0, got {c}"
        )));
    }
    let scale = f.points.iter().map(|p| p.0.abs().max(p.1.abs())).fold(1.0, f64::max);
    f.check_lipschitz(c, EXTEND_RTOL * scale)?;
    Ok(LipschitzExtension {
        base: f.clone(),
        constant: c,
        kind: ExtensionKind::McShane,
    })
}

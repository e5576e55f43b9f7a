//! Lower and upper transition rate operators of the imprecise rate set.
//!
//! For a gamble `h` the lower operator is `inf_{Q in set} (Q h)(x)`, which
//! has the closed form
//!
//! ```text
//! (s / d_x) min_y (h(y) - h(x)) + sum_{y != x} (n_xy / d_x) (h(y) - h(x))
//! ```
//!
//! The minimum runs over all states including `x`, so the first term is never
//! positive. [`lower_rate_bruteforce`] recomputes the infimum by enumerating
//! vertices and is kept as an independent check.

use ndarray::Array1;

use crate::continuous::ImpreciseRateSet;
use crate::error::{Error, Result};

/// A real-valued function on the state space, aligned with its order.
#[derive(Debug, Clone, PartialEq)]
pub struct Gamble(Array1<f64>);

impl Gamble {
    pub fn new(values: impl Into<Array1<f64>>) -> Result<Self> {
        let h = values.into();
        if h.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(h))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &Array1<f64> {
        &self.0
    }

    pub fn negate(&self) -> Self {
        Self(-&self.0)
    }
}

fn check_dim(set: &ImpreciseRateSet, h: &Gamble) -> Result<()> {
    if h.len() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), got: h.len() });
    }
    Ok(())
}

pub fn lower_rate_apply(set: &ImpreciseRateSet, h: &Gamble) -> Result<Array1<f64>> {
    check_dim(set, h)?;
    let k = set.dim();
    let st = set.stats();
    let h = h.values();
    let h_min = h.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(Array1::from_iter((0..k).map(|x| {
        let d = st.duration(x);
        let drift: f64 = (0..k)
            .filter(|&y| y != x)
            .map(|y| st.count(x, y) as f64 / d * (h[y] - h[x]))
            .sum();
        set.s() / d * (h_min - h[x]) + drift
    })))
}

pub fn upper_rate_apply(set: &ImpreciseRateSet, h: &Gamble) -> Result<Array1<f64>> {
    Ok(lower_rate_apply(set, &h.negate())?.mapv(|v| 0.0 - v))
}

/// How [`lower_rate_bruteforce`] enumerates candidate matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Enumeration {
    /// `k` row vertices per row; `(Q h)(x)` only depends on row `x`.
    #[default]
    RowWise,
    /// All `k^k` vertex matrices.
    Global,
}

/// Infimum of `(Q h)(x)` over the vertices of the set. The objective is
/// linear and the set is a product of simplices, so a vertex attains it.
pub fn lower_rate_bruteforce(set: &ImpreciseRateSet, h: &Gamble, mode: Enumeration) -> Result<Array1<f64>> {
    check_dim(set, h)?;
    let k = set.dim();
    let hv = h.values();
    match mode {
        Enumeration::RowWise => Ok(Array1::from_iter((0..k).map(|x| {
            (0..k)
                .map(|z| set.row_vertex(x, z).dot(hv))
                .fold(f64::INFINITY, f64::min)
        }))),
        Enumeration::Global => {
            let mut best = Array1::from_elem(k, f64::INFINITY);
            for q in set.extreme_points()? {
                let qh = q.apply(hv.view());
                best.zip_mut_with(&qh, |b, &v| *b = b.min(v));
            }
            Ok(best)
        }
    }
}

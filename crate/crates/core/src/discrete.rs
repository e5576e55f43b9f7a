//! Discrete-time estimators on a discretised path.
//!
//! For a fixed level `m` the grid path is treated as a DTMC sample. Rows get
//! independent Dirichlet priors with strength `s` and location `A`; the IDM
//! lets `A` range over the interior of the transition matrices. The induced
//! rate set maps each posterior mean `T` to `(T - I) / delta`.

use ndarray::{Array1, Array2};

use crate::continuous::enumerate_choices;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::matrix::{RateMatrix, TransitionMatrix};
use crate::path::DiscreteStats;

/// Discrete ML estimate. Rows never left from (`n_x = 0`) are undefined and
/// hold the unit row `e_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMl {
    pub matrix: TransitionMatrix,
    pub defined: Vec<bool>,
}

impl DiscreteMl {
    pub fn undefined_rows(&self) -> Vec<usize> {
        self.defined.iter().enumerate().filter(|(_, d)| !**d).map(|(x, _)| x).collect()
    }
}

pub fn dt_ml(dstats: &DiscreteStats) -> DiscreteMl {
    let k = dstats.dim();
    let mut t = Array2::zeros((k, k));
    let mut defined = vec![true; k];
    for x in 0..k {
        let n = dstats.row_total(x);
        if n == 0 {
            defined[x] = false;
            t[[x, x]] = 1.0;
            continue;
        }
        for y in 0..k {
            t[[x, y]] = dstats.count(x, y) as f64 / n as f64;
        }
    }
    DiscreteMl { matrix: TransitionMatrix::from_array_unchecked(t), defined }
}

/// Dirichlet posterior mean `(s A(x,y) + n_xy) / (s + n_x)`.
pub fn dt_posterior_mean(s: f64, a: &TransitionMatrix, dstats: &DiscreteStats) -> Result<TransitionMatrix> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::NegativeS(s));
    }
    let k = dstats.dim();
    if a.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, got: a.dim() });
    }
    let mut t = Array2::zeros((k, k));
    for x in 0..k {
        let n = dstats.row_total(x) as f64;
        if s == 0.0 && n == 0.0 {
            return Err(Error::DegenerateRow { row: x });
        }
        for y in 0..k {
            t[[x, y]] = (s * a.get(x, y) + dstats.count(x, y) as f64) / (s + n);
        }
    }
    Ok(TransitionMatrix::from_array_unchecked(t))
}

/// The IDM posterior-mean set at level `m`, held as `(s, dstats)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpreciseTransSet {
    s: f64,
    dstats: DiscreteStats,
}

impl ImpreciseTransSet {
    pub fn new(s: f64, dstats: &DiscreteStats) -> Result<Self> {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::NegativeS(s));
        }
        Ok(Self { s, dstats: dstats.clone() })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn dstats(&self) -> &DiscreteStats {
        &self.dstats
    }

    /// Open bounds `(n_xy / (s + n_x), (s + n_xy) / (s + n_x))`.
    pub fn idm_bounds(&self) -> Result<Array2<Interval>> {
        if self.s == 0.0 {
            return Err(Error::ZeroS);
        }
        let k = self.dstats.dim();
        let mut b = Array2::default((k, k));
        for x in 0..k {
            let denom = self.s + self.dstats.row_total(x) as f64;
            for y in 0..k {
                let n = self.dstats.count(x, y) as f64;
                b[[x, y]] = Interval::open(n / denom, (self.s + n) / denom);
            }
        }
        Ok(b)
    }

    pub fn induced_rate_set(&self) -> InducedRateSet {
        InducedRateSet { s: self.s, dstats: self.dstats.clone() }
    }
}

/// `{(T - I) / delta : T in T_s^(m)}`. Only its closure is enumerated.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedRateSet {
    s: f64,
    dstats: DiscreteStats,
}

impl InducedRateSet {
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn delta(&self) -> f64 {
        self.dstats.delta
    }

    pub fn dim(&self) -> usize {
        self.dstats.dim()
    }

    /// Rows with `s = 0` and `n_x = 0`, where no posterior mean exists.
    pub fn undefined_rows(&self) -> Vec<usize> {
        if self.s > 0.0 {
            return Vec::new();
        }
        (0..self.dim()).filter(|&x| self.dstats.row_total(x) == 0).collect()
    }

    /// Row `x` of the closure vertex where `A(x, ·) = e_choice`:
    /// `q_xy = (s [y = choice] + n_xy) / (delta (s + n_x))` off the diagonal.
    /// `None` for an undefined row.
    pub fn row_vertex(&self, x: usize, choice: usize) -> Option<Array1<f64>> {
        let k = self.dim();
        let n_x = self.dstats.row_total(x) as f64;
        let denom = self.dstats.delta * (self.s + n_x);
        if denom == 0.0 {
            return None;
        }
        let mut row = Array1::zeros(k);
        let mut off = 0.0;
        for y in (0..k).filter(|&y| y != x) {
            let extra = if y == choice { self.s } else { 0.0 };
            let v = (extra + self.dstats.count(x, y) as f64) / denom;
            row[y] = v;
            off += v;
        }
        row[x] = 0.0 - off;
        Some(row)
    }

    fn vertex(&self, choices: &[usize]) -> RateMatrix {
        let k = self.dim();
        let rows: Vec<Array1<f64>> = (0..k)
            .map(|x| self.row_vertex(x, choices[x]).unwrap_or_else(|| Array1::zeros(k)))
            .collect();
        RateMatrix::from_off_diagonal(k, |x, y| rows[x][y])
    }

    /// Vertices of the closure. Undefined rows are zero rows, matching the
    /// `e_x` placeholder of [`dt_ml`].
    pub fn extreme_points_closure(&self) -> Result<Vec<RateMatrix>> {
        let k = self.dim();
        if self.s == 0.0 {
            let diag: Vec<usize> = (0..k).collect();
            return Ok(vec![self.vertex(&diag)]);
        }
        enumerate_choices(k, |c| self.vertex(c))
    }
}

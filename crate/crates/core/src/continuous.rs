//! Continuous-time estimators from sufficient statistics `(n_xy, d_x)`.
//!
//! * [`log_likelihood`]: `sum_{x != y} n_xy ln q_xy - q_xy d_x`.
//! * [`ml_estimate`]: `q_xy = n_xy / d_x`.
//! * [`posterior_mean`]: Gamma-conjugate mean `(alpha_xy + n_xy) / (beta_x + d_x)`.
//! * [`imprecise_estimate`]: the set of posterior means obtained with
//!   `beta = 0` and `alpha` ranging over the off-diagonals of `s A`, `A` any
//!   transition matrix. Each row of the set is the ML row shifted by the
//!   corner simplex `{alpha >= 0, sum alpha <= s}` scaled by `1 / d_x`.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::matrix::{RateMatrix, TransitionMatrix};
use crate::path::SufficientStats;

/// Upper limit on the number of matrices produced by global vertex enumeration.
pub const MAX_VERTICES: usize = 1_000_000;

pub fn log_likelihood(q: &RateMatrix, stats: &SufficientStats) -> Result<f64> {
    let k = stats.dim();
    if q.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, got: q.dim() });
    }
    let mut ll = 0.0;
    for x in 0..k {
        for y in (0..k).filter(|&y| y != x) {
            let rate = q.get(x, y);
            let n = stats.count(x, y);
            if n > 0 {
                if rate == 0.0 {
                    return Ok(f64::NEG_INFINITY);
                }
                ll += n as f64 * rate.ln();
            }
            ll -= rate * stats.duration(x);
        }
    }
    Ok(ll)
}

pub fn ml_estimate(stats: &SufficientStats) -> RateMatrix {
    RateMatrix::from_off_diagonal(stats.dim(), |x, y| stats.count(x, y) as f64 / stats.duration(x))
}

/// Gamma prior hyperparameters: shapes `alpha_xy` (diagonal ignored) and rates `beta_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaHyper {
    alpha: Array2<f64>,
    beta: Array1<f64>,
}

impl GammaHyper {
    pub fn new(mut alpha: Array2<f64>, beta: Array1<f64>) -> Result<Self> {
        let k = beta.len();
        if alpha.dim() != (k, k) {
            return Err(Error::InvalidHyper("alpha must be k x k with k = len(beta)"));
        }
        if alpha.iter().chain(beta.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        for x in 0..k {
            alpha[[x, x]] = 0.0;
        }
        if alpha.iter().any(|&a| a < 0.0) {
            return Err(Error::InvalidHyper("alpha must be non-negative"));
        }
        if beta.iter().any(|&b| b < 0.0) {
            return Err(Error::InvalidHyper("beta must be non-negative"));
        }
        Ok(Self { alpha, beta })
    }

    /// The improper prior `alpha = beta = 0`.
    pub fn zero(k: usize) -> Self {
        Self { alpha: Array2::zeros((k, k)), beta: Array1::zeros(k) }
    }

    /// `alpha = s A` off the diagonal, `beta = 0`.
    pub fn from_location(s: f64, a: &TransitionMatrix) -> Result<Self> {
        let k = a.dim();
        Self::new(a.as_array() * s, Array1::zeros(k))
    }

    pub fn alpha(&self, x: usize, y: usize) -> f64 {
        self.alpha[[x, y]]
    }

    pub fn beta(&self, x: usize) -> f64 {
        self.beta[x]
    }

    pub fn dim(&self) -> usize {
        self.beta.len()
    }
}

/// Posterior mean under the Gamma prior. An entry with `alpha_xy = n_xy = 0`
/// is exactly zero.
pub fn posterior_mean(h: &GammaHyper, stats: &SufficientStats) -> Result<RateMatrix> {
    let k = stats.dim();
    if h.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, got: h.dim() });
    }
    Ok(RateMatrix::from_off_diagonal(k, |x, y| {
        let num = h.alpha(x, y) + stats.count(x, y) as f64;
        if num == 0.0 {
            0.0
        } else {
            num / (h.beta(x) + stats.duration(x))
        }
    }))
}

/// The imprecise estimator for imprecision parameter `s`, held as `(s, stats)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpreciseRateSet {
    s: f64,
    stats: SufficientStats,
}

pub fn imprecise_estimate(stats: &SufficientStats, s: f64) -> Result<ImpreciseRateSet> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::NegativeS(s));
    }
    Ok(ImpreciseRateSet { s, stats: stats.clone() })
}

impl ImpreciseRateSet {
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn stats(&self) -> &SufficientStats {
        &self.stats
    }

    pub fn dim(&self) -> usize {
        self.stats.dim()
    }

    /// The member with `A = I`, i.e. the ML estimate.
    pub fn ml_member(&self) -> RateMatrix {
        ml_estimate(&self.stats)
    }

    /// Member for a given location matrix `A`.
    pub fn member(&self, a: &TransitionMatrix) -> Result<RateMatrix> {
        let k = self.dim();
        if a.dim() != k {
            return Err(Error::DimensionMismatch { expected: k, got: a.dim() });
        }
        let st = &self.stats;
        Ok(RateMatrix::from_off_diagonal(k, |x, y| {
            (self.s * a.get(x, y) + st.count(x, y) as f64) / st.duration(x)
        }))
    }

    /// Per-entry bounds. Off-diagonals are `[n_xy / d_x, (s + n_xy) / d_x]`;
    /// the diagonal gets the loose hull `[-sum upper, -sum lower]` of its row.
    pub fn element_bounds(&self) -> Array2<Interval> {
        let k = self.dim();
        let st = &self.stats;
        let mut b = Array2::default((k, k));
        for x in 0..k {
            let d = st.duration(x);
            let (mut lo_sum, mut hi_sum) = (0.0, 0.0);
            for y in (0..k).filter(|&y| y != x) {
                let n = st.count(x, y) as f64;
                let iv = Interval::closed(n / d, (self.s + n) / d);
                lo_sum += iv.lower;
                hi_sum += iv.upper;
                b[[x, y]] = iv;
            }
            b[[x, x]] = Interval::closed(0.0 - hi_sum, 0.0 - lo_sum);
        }
        b
    }

    /// Membership within `tol`, measured in pseudo-counts:
    /// `alpha_xy = q_xy d_x - n_xy` must satisfy `alpha_xy >= -tol` and
    /// `sum_y alpha_xy <= s + tol` on every row.
    pub fn contains(&self, q: &RateMatrix, tol: f64) -> bool {
        let k = self.dim();
        if q.dim() != k {
            return false;
        }
        let st = &self.stats;
        (0..k).all(|x| {
            let d = st.duration(x);
            let mut total = 0.0;
            for y in (0..k).filter(|&y| y != x) {
                let alpha = q.get(x, y) * d - st.count(x, y) as f64;
                if alpha < -tol {
                    return false;
                }
                total += alpha;
            }
            total <= self.s + tol
        })
    }

    /// Row `x` of the vertex where that row's pseudo-count mass sits on
    /// state `choice` (`choice == x` means no mass). Diagonal included.
    pub fn row_vertex(&self, x: usize, choice: usize) -> Array1<f64> {
        let k = self.dim();
        let st = &self.stats;
        let d = st.duration(x);
        let mut row = Array1::zeros(k);
        let mut off = 0.0;
        for y in (0..k).filter(|&y| y != x) {
            let extra = if y == choice { self.s } else { 0.0 };
            let v = (extra + st.count(x, y) as f64) / d;
            row[y] = v;
            off += v;
        }
        row[x] = 0.0 - off;
        row
    }

    /// The vertex whose row `x` uses `choices[x]`.
    pub fn vertex(&self, choices: &[usize]) -> RateMatrix {
        let k = self.dim();
        let rows: Vec<Array1<f64>> = (0..k).map(|x| self.row_vertex(x, choices[x])).collect();
        RateMatrix::from_off_diagonal(k, |x, y| rows[x][y])
    }

    /// All vertices of the set: the Cartesian product over rows of the
    /// `k` corner-simplex vertices. A single matrix when `s = 0`.
    pub fn extreme_points(&self) -> Result<Vec<RateMatrix>> {
        if self.s == 0.0 {
            return Ok(vec![self.ml_member()]);
        }
        let k = self.dim();
        enumerate_choices(k, |c| self.vertex(c))
    }
}

/// Runs `f` on every `choices` vector in `{0..k}^k`, in odometer order
/// (last row fastest).
pub(crate) fn enumerate_choices<T>(k: usize, mut f: impl FnMut(&[usize]) -> T) -> Result<Vec<T>> {
    let count = (k as f64).powi(k as i32);
    if count > MAX_VERTICES as f64 {
        return Err(Error::TooManyVertices { count, limit: MAX_VERTICES });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut choices = vec![0usize; k];
    loop {
        out.push(f(&choices));
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choices[i] += 1;
            if choices[i] < k {
                break;
            }
            choices[i] = 0;
        }
    }
}

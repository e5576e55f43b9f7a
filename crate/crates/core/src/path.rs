//! Sample paths, sufficient statistics and grid discretisation.
//!
//! A path is stored as its jump epochs: an ordered list of segments
//! `(start, state)` covering `[0, t_max]`, each segment holding on the
//! half-open interval `[start, next_start)`. The last segment also holds at
//! `t_max` itself.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::StateSpace;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub state: usize,
}

impl Segment {
    pub fn new(start: f64, state: usize) -> Self {
        Self { start, state }
    }
}

/// A structurally valid piecewise-constant path: starts at 0, strictly
/// increasing epochs below `t_max`, no self-transitions. States may be
/// unvisited; see [`SamplePath`] for the fully validated form.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    space: StateSpace,
    t_max: f64,
    segments: Vec<Segment>,
}

impl Trajectory {
    pub fn new(space: StateSpace, t_max: f64, segments: Vec<Segment>) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidHorizon);
        }
        let first = segments.first().ok_or(Error::EmptyPath)?;
        if first.start != 0.0 {
            return Err(Error::FirstSegmentNotZero);
        }
        for (i, seg) in segments.iter().enumerate() {
            if seg.state >= space.len() {
                return Err(Error::UnknownState(format!("#{}", seg.state)));
            }
            if !seg.start.is_finite() {
                return Err(Error::NonFinite);
            }
            if seg.start >= t_max {
                return Err(Error::SegmentBeyondHorizon { index: i });
            }
            if i > 0 {
                let prev = &segments[i - 1];
                if seg.start <= prev.start {
                    return Err(Error::NonIncreasingTimes { index: i });
                }
                if seg.state == prev.state {
                    return Err(Error::SelfTransition { index: i });
                }
            }
        }
        Ok(Self { space, t_max, segments })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of jumps `J`.
    pub fn jump_count(&self) -> usize {
        self.segments.len() - 1
    }

    /// End time of segment `i`.
    fn segment_end(&self, i: usize) -> f64 {
        self.segments.get(i + 1).map_or(self.t_max, |s| s.start)
    }

    /// Total time spent in each state, summed segment by segment.
    pub fn durations(&self) -> Array1<f64> {
        let mut d = Array1::zeros(self.space.len());
        for (i, seg) in self.segments.iter().enumerate() {
            d[seg.state] += self.segment_end(i) - seg.start;
        }
        d
    }

    pub fn unvisited_states(&self) -> Vec<usize> {
        let d = self.durations();
        (0..self.space.len()).filter(|&x| d[x].is_nan() || d[x] <= 0.0).collect()
    }

    /// Smallest gap between consecutive epochs, counting `0` and `t_max`.
    pub fn min_epoch_gap(&self) -> f64 {
        (0..self.segments.len())
            .map(|i| self.segment_end(i) - self.segments[i].start)
            .fold(f64::INFINITY, f64::min)
    }

    /// State at time `t` (right-continuous); `t >= t_max` gives the last state.
    pub fn state_at(&self, t: f64) -> usize {
        let idx = self.segments.partition_point(|s| s.start <= t);
        self.segments[idx.saturating_sub(1)].state
    }

    /// Requires every state to have positive total duration.
    pub fn into_sample_path(self) -> Result<SamplePath> {
        let durations = self.durations();
        if let Some(x) = (0..self.space.len()).find(|&x| durations[x].is_nan() || durations[x] <= 0.0) {
            return Err(Error::ZeroDurationState { state: x, label: self.space.label(x).to_owned() });
        }
        Ok(SamplePath { traj: self, durations })
    }

    pub fn to_file(&self) -> PathFile {
        PathFile {
            states: self.space.labels().to_vec(),
            t_max: self.t_max,
            segments: self
                .segments
                .iter()
                .map(|s| (s.start, self.space.label(s.state).to_owned()))
                .collect(),
        }
    }
}

/// A trajectory on which every state has strictly positive duration.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    traj: Trajectory,
    durations: Array1<f64>,
}

/// Validates raw segments into a [`SamplePath`].
pub fn validate_path(segments: Vec<Segment>, t_max: f64, space: StateSpace) -> Result<SamplePath> {
    Trajectory::new(space, t_max, segments)?.into_sample_path()
}

impl SamplePath {
    pub fn trajectory(&self) -> &Trajectory {
        &self.traj
    }

    pub fn space(&self) -> &StateSpace {
        self.traj.space()
    }

    pub fn t_max(&self) -> f64 {
        self.traj.t_max()
    }

    pub fn segments(&self) -> &[Segment] {
        self.traj.segments()
    }

    pub fn jump_count(&self) -> usize {
        self.traj.jump_count()
    }

    pub fn durations(&self) -> &Array1<f64> {
        &self.durations
    }

    pub fn min_epoch_gap(&self) -> f64 {
        self.traj.min_epoch_gap()
    }

    pub fn state_at(&self, t: f64) -> usize {
        self.traj.state_at(t)
    }

    pub fn to_file(&self) -> PathFile {
        self.traj.to_file()
    }

    pub fn from_file(file: &PathFile) -> Result<Self> {
        file.to_trajectory()?.into_sample_path()
    }
}

/// Transition counts `n_xy` (zero diagonal) and sojourn durations `d_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct SufficientStats {
    counts: Array2<u64>,
    durations: Array1<f64>,
    t_max: f64,
    jump_count: u64,
}

pub fn sufficient_stats(path: &SamplePath) -> SufficientStats {
    let k = path.space().len();
    let mut counts = Array2::zeros((k, k));
    for w in path.segments().windows(2) {
        counts[[w[0].state, w[1].state]] += 1;
    }
    SufficientStats {
        counts,
        durations: path.durations().clone(),
        t_max: path.t_max(),
        jump_count: path.jump_count() as u64,
    }
}

impl SufficientStats {
    /// Builds statistics directly; `t_max` is taken as the sum of durations.
    pub fn new(counts: Array2<u64>, durations: Array1<f64>) -> Result<Self> {
        let k = durations.len();
        if counts.nrows() != counts.ncols() {
            return Err(Error::NotSquare { rows: counts.nrows(), cols: counts.ncols() });
        }
        if counts.nrows() != k {
            return Err(Error::DimensionMismatch { expected: k, got: counts.nrows() });
        }
        if k < 2 {
            return Err(Error::TooFewStates(k));
        }
        if let Some(x) = (0..k).find(|&x| counts[[x, x]] != 0) {
            return Err(Error::InvalidArgument(format!("count diagonal must be zero (row {x})")));
        }
        if durations.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(x) = (0..k).find(|&x| durations[x].is_nan() || durations[x] <= 0.0) {
            return Err(Error::ZeroDurationState { state: x, label: format!("#{x}") });
        }
        let t_max = durations.sum();
        let jump_count = counts.sum();
        Ok(Self { counts, durations, t_max, jump_count })
    }

    pub fn dim(&self) -> usize {
        self.durations.len()
    }

    pub fn count(&self, x: usize, y: usize) -> u64 {
        self.counts[[x, y]]
    }

    pub fn duration(&self, x: usize) -> f64 {
        self.durations[x]
    }

    pub fn counts(&self) -> &Array2<u64> {
        &self.counts
    }

    pub fn durations(&self) -> &Array1<f64> {
        &self.durations
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn jump_count(&self) -> u64 {
        self.jump_count
    }

    /// Number of jumps out of `x`.
    pub fn out_count(&self, x: usize) -> u64 {
        self.counts.row(x).sum()
    }

    /// Pools statistics of independent paths on the same state space.
    pub fn merge(&self, other: &SufficientStats) -> Result<SufficientStats> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(SufficientStats {
            counts: &self.counts + &other.counts,
            durations: &self.durations + &other.durations,
            t_max: self.t_max + other.t_max,
            jump_count: self.jump_count + other.jump_count,
        })
    }
}

/// The path evaluated on the grid `i * t_max / m`, `i = 0..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePath {
    pub m: usize,
    pub delta: f64,
    pub states: Vec<usize>,
    k: usize,
}

pub fn discretize(path: &SamplePath, m: usize) -> Result<DiscretePath> {
    discretize_trajectory(path.trajectory(), m)
}

pub(crate) fn discretize_trajectory(traj: &Trajectory, m: usize) -> Result<DiscretePath> {
    if m == 0 {
        return Err(Error::ZeroSteps);
    }
    let t_max = traj.t_max();
    let segs = traj.segments();
    let mut states = Vec::with_capacity(m + 1);
    let mut cur = 0;
    for i in 0..=m {
        // i * t_max / m rather than accumulated steps, so grid points do not drift
        let t = i as f64 * t_max / m as f64;
        while cur + 1 < segs.len() && segs[cur + 1].start <= t {
            cur += 1;
        }
        states.push(segs[cur].state);
    }
    Ok(DiscretePath { m, delta: t_max / m as f64, states, k: traj.space().len() })
}

/// Step counts `n_xy^(m)` (diagonal included) and row totals `n_x^(m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteStats {
    pub m: usize,
    pub delta: f64,
    counts: Array2<u64>,
    row_totals: Array1<u64>,
}

pub fn discrete_stats(dpath: &DiscretePath) -> DiscreteStats {
    let mut counts = Array2::zeros((dpath.k, dpath.k));
    for w in dpath.states.windows(2) {
        counts[[w[0], w[1]]] += 1;
    }
    let row_totals = counts.sum_axis(ndarray::Axis(1));
    DiscreteStats { m: dpath.m, delta: dpath.delta, counts, row_totals }
}

impl DiscreteStats {
    /// Builds statistics directly from a count matrix; `m` is the total count.
    pub fn new(counts: Array2<u64>, delta: f64) -> Result<Self> {
        if counts.nrows() != counts.ncols() {
            return Err(Error::NotSquare { rows: counts.nrows(), cols: counts.ncols() });
        }
        if counts.nrows() < 2 {
            return Err(Error::TooFewStates(counts.nrows()));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidArgument(format!("step must be positive, got {delta}")));
        }
        let row_totals = counts.sum_axis(ndarray::Axis(1));
        let m = row_totals.sum() as usize;
        if m == 0 {
            return Err(Error::ZeroSteps);
        }
        Ok(Self { m, delta, counts, row_totals })
    }

    pub fn dim(&self) -> usize {
        self.counts.nrows()
    }

    pub fn count(&self, x: usize, y: usize) -> u64 {
        self.counts[[x, y]]
    }

    pub fn row_total(&self, x: usize) -> u64 {
        self.row_totals[x]
    }

    pub fn counts(&self) -> &Array2<u64> {
        &self.counts
    }

    pub fn row_totals(&self) -> &Array1<u64> {
        &self.row_totals
    }
}

/// On-disk path format:
/// `{"states": [...], "t_max": 2.0, "segments": [[0.0, "a"], [0.5, "b"]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub states: Vec<String>,
    pub t_max: f64,
    pub segments: Vec<(f64, String)>,
}

impl PathFile {
    pub fn to_trajectory(&self) -> Result<Trajectory> {
        let space = StateSpace::new(self.states.clone())?;
        let segments = self
            .segments
            .iter()
            .map(|(t, label)| Ok(Segment::new(*t, space.index_of(label)?)))
            .collect::<Result<Vec<_>>>()?;
        Trajectory::new(space, self.t_max, segments)
    }
}

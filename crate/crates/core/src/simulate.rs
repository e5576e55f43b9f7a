//! Jump-chain simulation of a CTMC on `[0, t_max]`.
//!
//! The generator is `ChaCha8Rng` seeded with `seed_from_u64(seed)`, so a
//! given configuration yields the same path on every platform and build.
//! Holding times use the inverse CDF `-ln(u) / r` with `u` in `(0, 1]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{RateMatrix, StateSpace};
use crate::path::{Segment, Trajectory};

#[derive(Debug, Clone)]
pub struct SimConfig {
    space: StateSpace,
    q: RateMatrix,
    initial: Vec<f64>,
    t_max: f64,
    seed: u64,
}

impl SimConfig {
    pub fn new(space: StateSpace, q: RateMatrix, initial: Vec<f64>, t_max: f64, seed: u64) -> Result<Self> {
        let k = space.len();
        if q.dim() != k {
            return Err(Error::DimensionMismatch { expected: k, got: q.dim() });
        }
        if initial.len() != k
            || initial.iter().any(|p| !(p.is_finite() && *p >= 0.0))
            || (initial.iter().sum::<f64>() - 1.0).abs() > 1e-12
        {
            return Err(Error::InvalidInitial);
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidHorizon);
        }
        Ok(Self { space, q, initial, t_max, seed })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_t_max(mut self, t_max: f64) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidHorizon);
        }
        self.t_max = t_max;
        Ok(self)
    }

    pub fn q(&self) -> &RateMatrix {
        &self.q
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }
}

/// A simulated path plus the states it never visited (`d_x = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub path: Trajectory,
    pub unvisited: Vec<usize>,
}

fn pick(weights: impl Iterator<Item = (usize, f64)>, total: f64, u: f64) -> Option<usize> {
    let target = u * total;
    let mut acc = 0.0;
    let mut last = None;
    for (i, w) in weights {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last = Some(i);
        if target < acc {
            return Some(i);
        }
    }
    last
}

pub fn simulate(cfg: &SimConfig) -> SimOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let k = cfg.space.len();
    let q = &cfg.q;

    let x0 = pick(cfg.initial.iter().copied().enumerate(), 1.0, rng.random::<f64>())
        .expect("initial distribution has positive mass");
    let mut segments = vec![Segment::new(0.0, x0)];
    let mut t = 0.0;
    let mut x = x0;
    loop {
        let rate = q.exit_rate(x);
        if rate <= 0.0 {
            break;
        }
        let u = 1.0 - rng.random::<f64>();
        t += -u.ln() / rate;
        if t >= cfg.t_max {
            break;
        }
        let v = rng.random::<f64>();
        let y = pick((0..k).filter(|&y| y != x).map(|y| (y, q.get(x, y))), rate, v)
            .expect("positive exit rate has a target");
        push_jump(&mut segments, t, y);
        x = segments.last().unwrap().state;
    }
    let path = Trajectory::new(cfg.space.clone(), cfg.t_max, segments)
        .expect("simulated segments are structurally valid");
    let unvisited = path.unvisited_states();
    SimOutcome { path, unvisited }
}

// A zero holding time (u == 1) would give two segments at the same epoch;
// the earlier one has no duration and is dropped.
fn push_jump(segments: &mut Vec<Segment>, t: f64, y: usize) {
    if segments.len() > 1 && segments.last().unwrap().start >= t {
        segments.pop();
        if segments.last().unwrap().state == y {
            return;
        }
    }
    segments.push(Segment::new(t, y));
}

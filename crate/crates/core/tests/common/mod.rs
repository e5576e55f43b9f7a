#![allow(dead_code)]

use ndarray::{Array1, Array2};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ratemat::matrix::{validate_rate_matrix, validate_transition_matrix, RateMatrix, StateSpace, TransitionMatrix};
use ratemat::path::{validate_path, SamplePath, Segment, SufficientStats};

pub fn p1() -> SamplePath {
    let space = StateSpace::new(["a", "b", "c"]).unwrap();
    validate_path(
        vec![Segment::new(0.0, 0), Segment::new(0.5, 1), Segment::new(1.25, 0), Segment::new(1.75, 2)],
        2.0,
        space,
    )
    .unwrap()
}

/// State sequence of `jumps + 1` segments without self-transitions that visits all `k` states.
fn state_sequence(rng: &mut ChaCha8Rng, k: usize, jumps: usize) -> Vec<usize> {
    loop {
        let mut seq = vec![rng.random_range(0..k)];
        for _ in 0..jumps {
            let prev = *seq.last().unwrap();
            let mut next = rng.random_range(0..k - 1);
            if next >= prev {
                next += 1;
            }
            seq.push(next);
        }
        if (0..k).all(|x| seq.contains(&x)) {
            return seq;
        }
    }
}

/// Uniformly placed jump epochs on `(0, t_max)`, `k` states, `k - 1 ..= max_jumps` jumps.
pub fn random_path(rng: &mut ChaCha8Rng, k_max: usize, max_jumps: usize) -> SamplePath {
    let k = rng.random_range(2..=k_max);
    let jumps = rng.random_range(k - 1..=max_jumps.max(k - 1));
    let t_max = rng.random_range(0.5..10.0);
    let states = state_sequence(rng, k, jumps);
    let mut epochs: Vec<f64> = (0..jumps).map(|_| rng.random_range(0.0..t_max)).collect();
    epochs.sort_by(f64::total_cmp);
    epochs.dedup();
    if epochs.len() != jumps || epochs.first().is_some_and(|&e| e == 0.0) {
        return random_path(rng, k_max, max_jumps);
    }
    let segments = std::iter::once(0.0)
        .chain(epochs)
        .zip(states)
        .map(|(t, x)| Segment::new(t, x))
        .collect();
    validate_path(segments, t_max, StateSpace::indexed(k).unwrap()).unwrap()
}

/// Segment lengths proportional to weights drawn from `[1, 2]`, so every
/// sojourn is at least `t_max / (2 (jumps + 1))`.
pub fn random_balanced_path(rng: &mut ChaCha8Rng, k_max: usize, max_jumps: usize) -> SamplePath {
    let k = rng.random_range(2..=k_max);
    let jumps = rng.random_range(k - 1..=max_jumps.max(k - 1));
    let t_max = rng.random_range(0.5..10.0);
    let states = state_sequence(rng, k, jumps);
    let weights: Vec<f64> = (0..=jumps).map(|_| rng.random_range(1.0..2.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut t = 0.0;
    let mut segments = Vec::with_capacity(jumps + 1);
    for (w, x) in weights.iter().zip(states) {
        segments.push(Segment::new(t, x));
        t += w / total * t_max;
    }
    validate_path(segments, t_max, StateSpace::indexed(k).unwrap()).unwrap()
}

pub fn random_stats(rng: &mut ChaCha8Rng, k: usize, max_count: u64, d_range: (f64, f64)) -> SufficientStats {
    let mut counts = Array2::zeros((k, k));
    for x in 0..k {
        for y in 0..k {
            if x != y {
                counts[[x, y]] = rng.random_range(0..=max_count);
            }
        }
    }
    let durations = Array1::from_iter((0..k).map(|_| rng.random_range(d_range.0..d_range.1)));
    SufficientStats::new(counts, durations).unwrap()
}

pub fn random_rate_matrix(rng: &mut ChaCha8Rng, k: usize, lo: f64, hi: f64) -> RateMatrix {
    let mut m = Array2::zeros((k, k));
    for x in 0..k {
        let mut off = 0.0;
        for y in 0..k {
            if x != y {
                m[[x, y]] = rng.random_range(lo..hi);
                off += m[[x, y]];
            }
        }
        m[[x, x]] = -off;
    }
    validate_rate_matrix(m).unwrap()
}

/// Random row-stochastic matrix; `interior` keeps every entry positive.
pub fn random_transition(rng: &mut ChaCha8Rng, k: usize, interior: bool) -> TransitionMatrix {
    let mut m = Array2::zeros((k, k));
    for x in 0..k {
        let lo = if interior { 0.01 } else { 0.0 };
        let w: Vec<f64> = (0..k).map(|_| rng.random_range(lo..1.0)).collect();
        let total: f64 = w.iter().sum();
        for y in 0..k {
            m[[x, y]] = w[y] / total;
        }
    }
    validate_transition_matrix(m).unwrap()
}

pub fn max_gap(a: &Array1<f64>, b: &Array1<f64>) -> f64 {
    (a - b).iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Like [`random_balanced_path`] but every epoch is a multiple of
/// `t_max / 2^bits`, so grid levels `m >= 2^bits` hit the epochs exactly.
pub fn random_dyadic_path(rng: &mut ChaCha8Rng, k_max: usize, max_jumps: usize, bits: u32) -> SamplePath {
    let k = rng.random_range(2..=k_max);
    let jumps = rng.random_range(k - 1..=max_jumps.max(k - 1));
    let t_max = rng.random_range(0.5..10.0);
    let cells = 1u64 << bits;
    let states = state_sequence(rng, k, jumps);
    let weights: Vec<f64> = (0..=jumps).map(|_| rng.random_range(1.0..2.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut acc = 0.0;
    let mut ticks = Vec::with_capacity(jumps + 1);
    for w in &weights {
        ticks.push((acc / total * cells as f64).round() as u64);
        acc += w;
    }
    let segments = ticks
        .iter()
        .zip(states)
        .map(|(&j, x)| Segment::new(j as f64 * t_max / cells as f64, x))
        .collect();
    validate_path(segments, t_max, StateSpace::indexed(k).unwrap()).unwrap()
}

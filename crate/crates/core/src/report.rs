//! JSON report schemas and reproducible number formatting.
//!
//! Every float is written with 17 significant digits (trailing zeros
//! trimmed), which round-trips exactly, so reruns produce identical bytes.

use std::io;

use ndarray::Array2;
use serde::Serialize;

use crate::continuous::ImpreciseRateSet;
use crate::discrete::{dt_ml, DiscreteMl};
use crate::interval::Interval;
use crate::matrix::{rows, RateMatrix, StateSpace};
use crate::path::{DiscreteStats, SufficientStats};

/// Formats a float with 17 significant digits. Non-finite values become `null`.
pub fn fmt_f64(v: f64) -> String {
    if !v.is_finite() {
        return "null".to_owned();
    }
    let sci = format!("{v:.16e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mant),
    };
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };

    if !(-5..17).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        let frac = if tail.is_empty() { "0" } else { tail };
        return format!("{sign}{head}.{frac}e{exp}");
    }
    if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        return format!("{sign}0.{zeros}{digits}");
    }
    let int_len = exp as usize + 1;
    if digits.len() <= int_len {
        let pad = "0".repeat(int_len - digits.len());
        format!("{sign}{digits}{pad}.0")
    } else {
        let (int, frac) = digits.split_at(int_len);
        format!("{sign}{int}.{frac}")
    }
}

struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        writer.write_all(fmt_f64(value as f64).as_bytes())
    }
}

/// Serializes `value` as compact JSON with 17-digit floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bounds {
    pub lower: Vec<Vec<f64>>,
    pub upper: Vec<Vec<f64>>,
}

impl Bounds {
    pub fn from_intervals(b: &Array2<Interval>) -> Self {
        Self { lower: rows(&b.mapv(|i| i.lower)), upper: rows(&b.mapv(|i| i.upper)) }
    }

    pub fn degenerate(q: &RateMatrix) -> Self {
        Self { lower: q.to_rows(), upper: q.to_rows() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsBlock {
    pub n: Vec<Vec<u64>>,
    pub d: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimateKind {
    Ml,
    Bayes,
    Imprecise,
}

/// `{"kind", "states", "q", "bounds": {"lower", "upper"}, "s", "stats": {"n", "d"}}`,
/// with `m`, `delta` and `undefined_rows` added for discrete-time reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub kind: EstimateKind,
    pub states: Vec<String>,
    pub q: Vec<Vec<f64>>,
    pub bounds: Bounds,
    pub s: Option<f64>,
    pub stats: StatsBlock,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub undefined_rows: Option<Vec<usize>>,
}

fn stats_block(stats: &SufficientStats) -> StatsBlock {
    StatsBlock { n: rows(stats.counts()), d: stats.durations().to_vec() }
}

impl EstimateReport {
    /// Report for a point estimate (`ml` or `bayes`); bounds are degenerate.
    pub fn point(kind: EstimateKind, space: &StateSpace, q: &RateMatrix, stats: &SufficientStats) -> Self {
        Self {
            kind,
            states: space.labels().to_vec(),
            q: q.to_rows(),
            bounds: Bounds::degenerate(q),
            s: None,
            stats: stats_block(stats),
            m: None,
            delta: None,
            undefined_rows: None,
        }
    }

    /// Report for the imprecise set; `q` is its ML member.
    pub fn imprecise(space: &StateSpace, set: &ImpreciseRateSet) -> Self {
        Self {
            kind: EstimateKind::Imprecise,
            states: space.labels().to_vec(),
            q: set.ml_member().to_rows(),
            bounds: Bounds::from_intervals(&set.element_bounds()),
            s: Some(set.s()),
            stats: stats_block(set.stats()),
            m: None,
            delta: None,
            undefined_rows: None,
        }
    }

    /// Discrete-time report at one grid level: `q = (T_ML - I) / delta` and
    /// the entrywise hull of the closure of the induced rate set. `stats.d`
    /// holds the grid durations `delta * n_x^(m)`.
    pub fn discrete(space: &StateSpace, dstats: &DiscreteStats, s: f64) -> Self {
        let k = dstats.dim();
        let DiscreteMl { matrix, defined } = dt_ml(dstats);
        let delta = dstats.delta;
        let q = RateMatrix::from_off_diagonal(k, |x, y| matrix.get(x, y) / delta);
        let mut b = Array2::default((k, k));
        for x in 0..k {
            let denom = delta * (s + dstats.row_total(x) as f64);
            let (mut lo_sum, mut hi_sum) = (0.0, 0.0);
            for y in (0..k).filter(|&y| y != x) {
                let n = dstats.count(x, y) as f64;
                let iv = if denom > 0.0 { Interval::closed(n / denom, (s + n) / denom) } else { Interval::point(0.0) };
                lo_sum += iv.lower;
                hi_sum += iv.upper;
                b[[x, y]] = iv;
            }
            b[[x, x]] = Interval::closed(0.0 - hi_sum, 0.0 - lo_sum);
        }
        let undefined: Vec<usize> = if s > 0.0 {
            Vec::new()
        } else {
            (0..k).filter(|&x| !defined[x]).collect()
        };
        Self {
            kind: if s > 0.0 { EstimateKind::Imprecise } else { EstimateKind::Ml },
            states: space.labels().to_vec(),
            q: q.to_rows(),
            bounds: Bounds::from_intervals(&b),
            s: Some(s),
            stats: StatsBlock {
                n: rows(dstats.counts()),
                d: dstats.row_totals().iter().map(|&n| delta * n as f64).collect(),
            },
            m: Some(dstats.m),
            delta: Some(delta),
            undefined_rows: Some(undefined),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub states: Vec<String>,
    pub t_max: f64,
    pub jumps: u64,
    pub n: Vec<Vec<u64>>,
    pub d: Vec<f64>,
}

impl StatsReport {
    pub fn new(space: &StateSpace, stats: &SufficientStats) -> Self {
        Self {
            states: space.labels().to_vec(),
            t_max: stats.t_max(),
            jumps: stats.jump_count(),
            n: rows(stats.counts()),
            d: stats.durations().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorReport {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

//! Finite checks that discretised statistics and discrete-time estimator
//! sets approach their continuous-time counterparts as the grid is refined.
//!
//! Set convergence is measured by the matched-vertex discrepancy: both the
//! continuous set and the closure of the induced discrete set are products
//! over rows of corner simplices, so their vertices pair up by `(row, choice)`
//! and the max-norm over matched pairs bounds the Hausdorff distance.

use rayon::prelude::*;
use serde::Serialize;

use crate::continuous::{imprecise_estimate, ImpreciseRateSet};
use crate::discrete::ImpreciseTransSet;
use crate::error::{Error, Result};
use crate::path::{discrete_stats, discretize, sufficient_stats, DiscreteStats, SamplePath, SufficientStats};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma2Record {
    pub m: usize,
    pub delta: f64,
    /// Off-diagonal grid counts equal the continuous counts.
    pub count_match: bool,
    /// `max_x |delta n_x^(m) - d_x|`.
    pub duration_err: f64,
    /// `J delta`.
    pub duration_bound: f64,
}

fn lemma2_record(stats: &SufficientStats, dstats: &DiscreteStats) -> Lemma2Record {
    let k = stats.dim();
    let count_match = (0..k).all(|x| (0..k).filter(|&y| y != x).all(|y| dstats.count(x, y) == stats.count(x, y)));
    let duration_err = (0..k)
        .map(|x| (dstats.delta * dstats.row_total(x) as f64 - stats.duration(x)).abs())
        .fold(0.0, f64::max);
    Lemma2Record {
        m: dstats.m,
        delta: dstats.delta,
        count_match,
        duration_err,
        duration_bound: stats.jump_count() as f64 * dstats.delta,
    }
}

pub fn lemma2_check(path: &SamplePath, m_values: &[usize]) -> Result<Vec<Lemma2Record>> {
    let stats = sufficient_stats(path);
    m_values
        .par_iter()
        .map(|&m| Ok(lemma2_record(&stats, &discrete_stats(&discretize(path, m)?))))
        .collect()
}

/// Max-norm distance between matched closure vertices of the discrete
/// induced set and the continuous set, over all rows, choices and entries
/// (diagonal included). Fails with the first undefined row when `s = 0`
/// and some state is never left on the grid.
pub fn vertex_discrepancy(stats: &SufficientStats, dstats: &DiscreteStats, s: f64) -> Result<f64> {
    let k = stats.dim();
    if dstats.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, got: dstats.dim() });
    }
    let ct = imprecise_estimate(stats, s)?;
    let dt = ImpreciseTransSet::new(s, dstats)?.induced_rate_set();
    let mut worst = 0.0f64;
    for x in 0..k {
        for z in 0..k {
            let v = ct.row_vertex(x, z);
            let vm = dt.row_vertex(x, z).ok_or(Error::DegenerateRow { row: x })?;
            worst = (0..k).map(|y| (vm[y] - v[y]).abs()).fold(worst, f64::max);
        }
    }
    Ok(worst)
}

/// Largest absolute entry over all vertices of the continuous set.
pub fn max_vertex_magnitude(set: &ImpreciseRateSet) -> f64 {
    let k = set.dim();
    let mut best = 0.0f64;
    for x in 0..k {
        for z in 0..k {
            best = set.row_vertex(x, z).iter().fold(best, |a, v| a.max(v.abs()));
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub m: usize,
    pub delta: f64,
    pub count_match: bool,
    pub duration_err: f64,
    pub duration_bound: f64,
    /// `None` when some row of the discrete set is undefined.
    pub vertex_discrepancy: Option<f64>,
    pub undefined_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub path_id: String,
    pub s: f64,
    /// Relative tolerance; the absolute threshold is `tol * max_vertex_magnitude`.
    pub tol: f64,
    pub max_vertex_magnitude: f64,
    pub rows: Vec<ConvergenceRow>,
    pub pass: bool,
}

impl ConvergenceReport {
    pub fn discrepancies(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.vertex_discrepancy).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,delta,count_match,duration_err,duration_bound,vertex_discrepancy\n");
        for r in &self.rows {
            let disc = r.vertex_discrepancy.map(crate::report::fmt_f64).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.m,
                crate::report::fmt_f64(r.delta),
                r.count_match,
                crate::report::fmt_f64(r.duration_err),
                crate::report::fmt_f64(r.duration_bound),
                disc
            ));
        }
        out
    }
}

/// Powers of two `2^lo ..= 2^hi`.
pub fn dyadic_levels(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|e| 1usize << e).collect()
}

/// Runs the grid count and duration checks and the vertex discrepancy for each `m`.
/// PASS iff the last discrepancy is defined, below `tol` times the largest
/// continuous vertex magnitude, and no larger than any earlier one.
pub fn theorem1_report(path: &SamplePath, path_id: &str, s: f64, m_values: &[usize], tol: f64) -> Result<ConvergenceReport> {
    if m_values.is_empty() {
        return Err(Error::InvalidArgument("at least one m value is required".into()));
    }
    if m_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("m values must be strictly increasing".into()));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be non-negative, got {tol}")));
    }
    let stats = sufficient_stats(path);
    let ct = imprecise_estimate(&stats, s)?;
    let magnitude = max_vertex_magnitude(&ct);

    let rows = m_values
        .par_iter()
        .map(|&m| {
            let dstats = discrete_stats(&discretize(path, m)?);
            let rec = lemma2_record(&stats, &dstats);
            let undefined_rows = ImpreciseTransSet::new(s, &dstats)?.induced_rate_set().undefined_rows();
            let vertex_discrepancy = if undefined_rows.is_empty() {
                Some(vertex_discrepancy(&stats, &dstats, s)?)
            } else {
                None
            };
            Ok(ConvergenceRow {
                m,
                delta: rec.delta,
                count_match: rec.count_match,
                duration_err: rec.duration_err,
                duration_bound: rec.duration_bound,
                vertex_discrepancy,
                undefined_rows,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let pass = match rows.last().and_then(|r| r.vertex_discrepancy) {
        Some(last) => {
            let min = rows.iter().filter_map(|r| r.vertex_discrepancy).fold(f64::INFINITY, f64::min);
            last < tol * magnitude && last <= min
        }
        None => false,
    };
    Ok(ConvergenceReport { path_id: path_id.to_owned(), s, tol, max_vertex_magnitude: magnitude, rows, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::dt_ml;
    use crate::continuous::ml_estimate;
    use crate::matrix::RateMatrix;
    use crate::path::tests::p1;

    #[test]
    fn grid_checks_on_p1_at_m4() {
        let recs = lemma2_check(&p1(), &[4]).unwrap();
        let r = &recs[0];
        assert!(r.count_match);
        assert_eq!(r.duration_err, 0.25);
        assert_eq!(r.duration_bound, 1.5);
    }

    #[test]
    fn grid_check_sweep_on_p1() {
        let ms = dyadic_levels(3, 10);
        let recs = lemma2_check(&p1(), &ms).unwrap();
        for r in &recs {
            assert!(r.duration_err <= r.duration_bound);
            assert!(r.count_match, "m = {}", r.m);
        }
        for w in recs.windows(2) {
            assert!(w[1].duration_err <= w[0].duration_err);
        }
    }

    #[test]
    fn discrepancy_vertex_example() {
        let path = p1();
        let stats = sufficient_stats(&path);
        let d8 = discrete_stats(&discretize(&path, 8).unwrap());
        let ct = imprecise_estimate(&stats, 1.0).unwrap();
        let dt = ImpreciseTransSet::new(1.0, &d8).unwrap().induced_rate_set();
        let gap = (dt.row_vertex(0, 1).unwrap()[1] - ct.row_vertex(0, 1)[1]).abs();
        assert!((gap - 0.4).abs() < 1e-15);
        assert!(vertex_discrepancy(&stats, &d8, 1.0).unwrap() >= gap);
    }

    #[test]
    fn s_zero_discrepancy_is_ml_gap() {
        let path = p1();
        let stats = sufficient_stats(&path);
        for m in [8, 16, 64] {
            let d = discrete_stats(&discretize(&path, m).unwrap());
            let q_m = RateMatrix::from_transition(&dt_ml(&d).matrix, d.delta).unwrap();
            let ml = ml_estimate(&stats);
            let gap = (q_m.as_array() - ml.as_array()).iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let disc = vertex_discrepancy(&stats, &d, 0.0).unwrap();
            assert!((disc - gap).abs() < 1e-12);
        }
        // P1 epochs sit on the m = 8 grid
        let d = discrete_stats(&discretize(&path, 1024).unwrap());
        assert_eq!(vertex_discrepancy(&stats, &d, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn undefined_rows_are_reported() {
        let rep = theorem1_report(&p1(), "p1", 0.0, &[1, 4, 8], 1e-3).unwrap();
        assert_eq!(rep.rows[0].undefined_rows, vec![1, 2]);
        assert_eq!(rep.rows[0].vertex_discrepancy, None);
        assert_eq!(rep.rows[1].undefined_rows, vec![2]);
        assert!(rep.rows[2].vertex_discrepancy.is_some());
        assert!(vertex_discrepancy(&sufficient_stats(&p1()), &discrete_stats(&discretize(&p1(), 4).unwrap()), 0.0).is_err());
    }

    #[test]
    fn p1_sweep_passes() {
        let rep = theorem1_report(&p1(), "p1", 1.0, &dyadic_levels(3, 16), 1e-3).unwrap();
        assert!(rep.pass, "{:?}", rep.discrepancies());
        let s0 = theorem1_report(&p1(), "p1", 0.0, &dyadic_levels(3, 16), 1e-3).unwrap();
        assert!(s0.pass);
    }

    #[test]
    fn single_level_and_bad_input() {
        let rep = theorem1_report(&p1(), "p1", 1.0, &[1], 1e-3).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert!(!rep.pass);
        assert!(theorem1_report(&p1(), "p1", 1.0, &[], 1e-3).is_err());
        assert!(theorem1_report(&p1(), "p1", 1.0, &[8, 4], 1e-3).is_err());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let rep = theorem1_report(&p1(), "p1", 1.0, &[8, 16], 1e-3).unwrap();
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("m,delta"));
    }
}

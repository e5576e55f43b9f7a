//! State spaces and validated rate / transition matrices.
//!
//! Matrices are dense `k x k` arrays indexed by position in a [`StateSpace`].
//! A [`RateMatrix`] has non-negative off-diagonal entries and zero row sums,
//! a [`TransitionMatrix`] is row stochastic. Both are only constructed through
//! validation, so downstream code can rely on the invariants.

use ndarray::{Array1, Array2, ArrayView1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative row-sum tolerance for rate matrices, scaled by `max(1, |row|_1)`.
pub const RATE_ROW_TOL: f64 = 1e-12;
/// Absolute row-sum tolerance for transition matrices.
pub const PROB_ROW_TOL: f64 = 1e-12;

/// Ordered, distinct state labels. Position defines the matrix index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct StateSpace {
    labels: Vec<String>,
}

impl StateSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::TooFewStates(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// States named `s0, s1, ...`.
    pub fn indexed(k: usize) -> Result<Self> {
        Self::new((0..k).map(|i| format!("s{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownState(label.to_owned()))
    }
}

impl TryFrom<Vec<String>> for StateSpace {
    type Error = Error;

    fn try_from(labels: Vec<String>) -> Result<Self> {
        Self::new(labels)
    }
}

impl From<StateSpace> for Vec<String> {
    fn from(space: StateSpace) -> Self {
        space.labels
    }
}

/// A validated transition rate matrix (generator).
#[derive(Debug, Clone, PartialEq)]
pub struct RateMatrix(Array2<f64>);

/// A validated row-stochastic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix(Array2<f64>);

fn check_shape(m: &Array2<f64>) -> Result<usize> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows < 2 {
        return Err(Error::TooFewStates(rows));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(rows)
}

/// Checks that `m` is a rate matrix. On success the diagonal is replaced by
/// the exact negative sum of the off-diagonal entries of its row.
pub fn validate_rate_matrix(mut m: Array2<f64>) -> Result<RateMatrix> {
    let k = check_shape(&m)?;
    for x in 0..k {
        let row = m.row(x);
        let mut sum = 0.0;
        let mut norm = 0.0;
        for (y, &v) in row.iter().enumerate() {
            if y != x && v < 0.0 {
                return Err(Error::NegativeOffDiagonal { row: x, col: y });
            }
            sum += v;
            norm += v.abs();
        }
        if sum.abs() > RATE_ROW_TOL * norm.max(1.0) {
            return Err(Error::RowSumNonZero { row: x, residual: sum });
        }
    }
    close_diagonal(&mut m);
    Ok(RateMatrix(m))
}

/// Sets each diagonal entry to minus the sum of the off-diagonal entries of its row.
pub(crate) fn close_diagonal(m: &mut Array2<f64>) {
    let k = m.nrows();
    for x in 0..k {
        let off: f64 = (0..k).filter(|&y| y != x).map(|y| m[[x, y]]).sum();
        m[[x, x]] = 0.0 - off;
    }
}

pub fn validate_transition_matrix(m: Array2<f64>) -> Result<TransitionMatrix> {
    let k = check_shape(&m)?;
    for x in 0..k {
        let mut sum = 0.0;
        for y in 0..k {
            let v = m[[x, y]];
            if v < 0.0 {
                return Err(Error::NegativeEntry { row: x, col: y });
            }
            sum += v;
        }
        if (sum - 1.0).abs() > PROB_ROW_TOL {
            return Err(Error::RowSumNotOne { row: x, residual: sum - 1.0 });
        }
    }
    Ok(TransitionMatrix(m))
}

/// True iff every entry of `t` is strictly positive.
pub fn interior_check(t: &TransitionMatrix) -> bool {
    t.0.iter().all(|&v| v > 0.0)
}

impl RateMatrix {
    /// Builds a rate matrix from off-diagonal entries; the diagonal is closed.
    /// Entries must be finite and non-negative.
    pub(crate) fn from_off_diagonal(k: usize, mut entry: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Array2::zeros((k, k));
        for x in 0..k {
            for y in 0..k {
                if x != y {
                    let v = entry(x, y);
                    debug_assert!(v >= 0.0 && v.is_finite(), "bad rate {v} at ({x},{y})");
                    m[[x, y]] = v;
                }
            }
        }
        close_diagonal(&mut m);
        RateMatrix(m)
    }

    pub fn zeros(k: usize) -> Self {
        RateMatrix(Array2::zeros((k, k)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.0[[x, y]]
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.0
    }

    pub fn into_array(self) -> Array2<f64> {
        self.0
    }

    /// Exit rate `-Q(x,x)` of state `x`.
    pub fn exit_rate(&self, x: usize) -> f64 {
        -self.0[[x, x]]
    }

    /// Matrix-vector product `Q h`.
    pub fn apply(&self, h: ArrayView1<f64>) -> Array1<f64> {
        self.0.dot(&h)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// `I + delta Q`, defined when `delta * max_x(-Q(x,x)) <= 1`.
    pub fn euler_step(&self, delta: f64) -> Result<TransitionMatrix> {
        let k = self.dim();
        let max_rate = (0..k).map(|x| self.exit_rate(x)).fold(0.0, f64::max);
        if !(delta > 0.0 && delta * max_rate <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "step {delta} too large for maximal exit rate {max_rate}"
            )));
        }
        let mut t = &self.0 * delta;
        for x in 0..k {
            let off: f64 = (0..k).filter(|&y| y != x).map(|y| t[[x, y]]).sum();
            t[[x, x]] = 1.0 - off;
        }
        Ok(TransitionMatrix(t))
    }

    /// `(T - I) / delta` with the diagonal closed from the off-diagonals.
    pub fn from_transition(t: &TransitionMatrix, delta: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidArgument(format!("step must be positive, got {delta}")));
        }
        Ok(Self::from_off_diagonal(t.dim(), |x, y| t.get(x, y) / delta))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        rows(&self.0)
    }
}

impl TransitionMatrix {
    pub fn identity(k: usize) -> Self {
        TransitionMatrix(Array2::eye(k))
    }

    /// Every row equal to the uniform distribution `1/k`.
    pub fn uniform(k: usize) -> Self {
        TransitionMatrix(Array2::from_elem((k, k), 1.0 / k as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.0[[x, y]]
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.0
    }

    pub fn into_array(self) -> Array2<f64> {
        self.0
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        rows(&self.0)
    }

    pub(crate) fn from_array_unchecked(m: Array2<f64>) -> Self {
        TransitionMatrix(m)
    }
}

pub(crate) fn rows<T: Clone>(m: &Array2<T>) -> Vec<Vec<T>> {
    m.rows().into_iter().map(|r| r.to_vec()).collect()
}

/// Converts nested rows into a dense matrix, checking that it is square.
pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<Array2<f64>> {
    let k = rows.len();
    let mut m = Array2::zeros((k, k));
    for (x, row) in rows.iter().enumerate() {
        if row.len() != k {
            return Err(Error::NotSquare { rows: k, cols: row.len() });
        }
        for (y, &v) in row.iter().enumerate() {
            m[[x, y]] = v;
        }
    }
    Ok(m)
}

/// JSON form of a matrix: row-major nested arrays with the state labels alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub states: StateSpace,
    pub matrix: Vec<Vec<f64>>,
}

impl LabeledMatrix {
    pub fn new(states: &StateSpace, m: &Array2<f64>) -> Result<Self> {
        if m.nrows() != states.len() || m.ncols() != states.len() {
            return Err(Error::DimensionMismatch { expected: states.len(), got: m.nrows() });
        }
        Ok(Self { states: states.clone(), matrix: rows(m) })
    }

    pub fn to_rate_matrix(&self) -> Result<RateMatrix> {
        let m = matrix_from_rows(&self.matrix)?;
        if m.nrows() != self.states.len() {
            return Err(Error::DimensionMismatch { expected: self.states.len(), got: m.nrows() });
        }
        validate_rate_matrix(m)
    }

    pub fn to_transition_matrix(&self) -> Result<TransitionMatrix> {
        let m = matrix_from_rows(&self.matrix)?;
        if m.nrows() != self.states.len() {
            return Err(Error::DimensionMismatch { expected: self.states.len(), got: m.nrows() });
        }
        validate_transition_matrix(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn zero_matrix_is_a_rate_matrix() {
        let q = validate_rate_matrix(Array2::zeros((3, 3))).unwrap();
        assert_eq!(q.max_abs(), 0.0);
    }

    #[test]
    fn p1_style_rate_matrix_is_valid() {
        let q = validate_rate_matrix(array![
            [-2.0, 1.0, 1.0],
            [4.0 / 3.0, -4.0 / 3.0, 0.0],
            [0.0, 0.0, 0.0]
        ])
        .unwrap();
        assert_eq!(q.exit_rate(0), 2.0);
        assert_eq!(q.exit_rate(1), 4.0 / 3.0);
    }

    #[test]
    fn row_sum_residual_is_reported() {
        let err = validate_rate_matrix(array![
            [-1.0, 0.5, 0.4],
            [0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0]
        ])
        .unwrap_err();
        match err {
            Error::RowSumNonZero { row, residual } => {
                assert_eq!(row, 0);
                assert!((residual + 0.1).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_off_diagonal_and_non_finite() {
        assert!(matches!(
            validate_rate_matrix(array![[1.0, -1.0], [0.0, 0.0]]),
            Err(Error::NegativeOffDiagonal { row: 0, col: 1 })
        ));
        assert!(matches!(
            validate_rate_matrix(array![[f64::NAN, 0.0], [0.0, 0.0]]),
            Err(Error::NonFinite)
        ));
        assert!(matches!(
            validate_rate_matrix(Array2::zeros((1, 1))),
            Err(Error::TooFewStates(1))
        ));
    }

    #[test]
    fn validation_closes_diagonal_exactly() {
        let q = validate_rate_matrix(array![
            [-0.3 - 1e-14, 0.1, 0.2],
            [0.0, 0.0, 0.0],
            [0.7, 0.0, -0.7]
        ])
        .unwrap();
        assert_eq!(q.get(0, 0), -(0.1 + 0.2));
        let again = validate_rate_matrix(q.as_array().clone()).unwrap();
        assert_eq!(again, q);
    }

    #[test]
    fn transition_matrix_examples() {
        let id = validate_transition_matrix(Array2::eye(3)).unwrap();
        assert!(!interior_check(&id));
        let uni = validate_transition_matrix(Array2::from_elem((3, 3), 1.0 / 3.0)).unwrap();
        assert!(interior_check(&uni));
        assert!(matches!(
            validate_transition_matrix(array![
                [0.6, 0.6, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0]
            ]),
            Err(Error::RowSumNotOne { row: 0, .. })
        ));
        assert!(matches!(
            validate_transition_matrix(array![[1.5, -0.5], [0.0, 1.0]]),
            Err(Error::NegativeEntry { row: 0, col: 1 })
        ));
    }

    #[test]
    fn tiny_positive_rows_are_interior() {
        let e = 1e-9;
        let t = validate_transition_matrix(array![
            [1.0 - 2.0 * e, e, e],
            [e, 1.0 - 2.0 * e, e],
            [e, e, 1.0 - 2.0 * e]
        ])
        .unwrap();
        assert!(interior_check(&t));
    }

    #[test]
    fn state_space_rules() {
        assert!(matches!(StateSpace::new(["a", "a"]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(StateSpace::new(["a"]), Err(Error::TooFewStates(1))));
        let s = StateSpace::new(["a", "b", "c"]).unwrap();
        assert_eq!(s.index_of("c").unwrap(), 2);
        assert!(s.index_of("d").is_err());
    }

    #[test]
    fn labeled_matrix_json_shape() {
        let space = StateSpace::new(["a", "b"]).unwrap();
        let lm = LabeledMatrix::new(&space, &array![[-1.0, 1.0], [2.0, -2.0]]).unwrap();
        let json = serde_json::to_string(&lm).unwrap();
        assert_eq!(json, r#"{"states":["a","b"],"matrix":[[-1.0,1.0],[2.0,-2.0]]}"#);
        let back: LabeledMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_rate_matrix().unwrap().get(1, 0), 2.0);
    }
}

use serde::Serialize;

/// A real interval with both endpoints either included or excluded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    pub open: bool,
}

impl Interval {
    pub fn closed(lower: f64, upper: f64) -> Self {
        Self { lower, upper, open: false }
    }

    pub fn open(lower: f64, upper: f64) -> Self {
        Self { lower, upper, open: true }
    }

    pub fn point(v: f64) -> Self {
        Self::closed(v, v)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64) -> bool {
        if self.open {
            self.lower < v && v < self.upper
        } else {
            self.lower <= v && v <= self.upper
        }
    }
}

impl Default for Interval {
    fn default() -> Self {
        Self::point(0.0)
    }
}

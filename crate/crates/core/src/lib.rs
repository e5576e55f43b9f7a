//! # ratemat
//!
//! Estimation of the transition rate matrix of a homogeneous continuous-time
//! Markov chain from one finite-duration sample path.
//!
//! * [`matrix`]: state spaces and validated rate / transition matrices.
//! * [`path`]: sample paths, sufficient statistics `(n_xy, d_x)` and grid
//!   discretisation.
//! * [`simulate`]: seeded jump-chain simulation.
//! * [`continuous`]: likelihood, maximum likelihood, Gamma-conjugate
//!   posterior means and the imprecise set-valued estimator.
//! * [`discrete`]: discrete-time ML, Dirichlet posterior means, IDM sets and
//!   the rate sets they induce.
//! * [`convergence`]: grid-refinement checks linking the discrete and
//!   continuous estimators.
//! * [`lower`]: lower and upper transition rate operators.
//! * [`cli`]: the commands behind the `ratemat` binary.
//!
//! ```
//! use ratemat::matrix::StateSpace;
//! use ratemat::path::{sufficient_stats, validate_path, Segment};
//! use ratemat::continuous::{imprecise_estimate, ml_estimate};
//!
//! let space = StateSpace::new(["a", "b", "c"]).unwrap();
//! let segments = vec![
//!     Segment::new(0.0, 0),
//!     Segment::new(0.5, 1),
//!     Segment::new(1.25, 0),
//!     Segment::new(1.75, 2),
//! ];
//! let path = validate_path(segments, 2.0, space).unwrap();
//! let stats = sufficient_stats(&path);
//! assert_eq!(ml_estimate(&stats).get(0, 1), 1.0);
//!
//! let set = imprecise_estimate(&stats, 1.0).unwrap();
//! let bounds = set.element_bounds();
//! assert_eq!((bounds[[0, 1]].lower, bounds[[0, 1]].upper), (1.0, 2.0));
//! ```

pub mod cli;
pub mod continuous;
pub mod convergence;
pub mod discrete;
pub mod error;
pub mod interval;
pub mod lower;
pub mod matrix;
pub mod path;
pub mod report;
pub mod simulate;

pub use error::{Error, Result};

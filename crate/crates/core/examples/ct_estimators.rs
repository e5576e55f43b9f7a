//! Maximum likelihood and Gamma posterior means from continuous-time statistics.

use ndarray::array;
use ratemat::continuous::{log_likelihood, ml_estimate, posterior_mean, GammaHyper};
use ratemat::matrix::TransitionMatrix;
use ratemat::path::SufficientStats;

fn main() -> ratemat::Result<()> {
    let st = SufficientStats::new(array![[0, 1, 1], [1, 0, 0], [0, 0, 0]], array![1.0, 0.75, 0.25])?;

    let ml = ml_estimate(&st);
    println!("ML: {:?}", ml.to_rows());
    println!("log-likelihood at ML: {}", log_likelihood(&ml, &st)?);

    let flat = posterior_mean(&GammaHyper::zero(3), &st)?;
    println!("alpha = beta = 0 reproduces ML: {}", flat == ml);

    let prior = GammaHyper::new(array![[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]], array![1.0, 1.0, 1.0])?;
    println!("Gamma(1, 1) posterior mean: {:?}", posterior_mean(&prior, &st)?.to_rows());

    // beta = 0 with alpha = s A off the diagonal
    let located = GammaHyper::from_location(2.0, &TransitionMatrix::uniform(3))?;
    println!("s = 2, uniform A: {:?}", posterior_mean(&located, &st)?.to_rows());
    Ok(())
}

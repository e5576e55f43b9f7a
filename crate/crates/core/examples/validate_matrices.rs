//! Validating generators and transition matrices, and moving between them.

use ndarray::array;
use ratemat::matrix::{validate_rate_matrix, validate_transition_matrix, RateMatrix};

fn main() -> ratemat::Result<()> {
    // the diagonal is closed to the exact negative off-diagonal sum
    let q = validate_rate_matrix(array![[-2.0, 1.0, 1.0], [0.5, -0.5, 0.0], [0.0, 3.0, -3.0]])?;
    println!("Q = {:?}", q.to_rows());

    let t = q.euler_step(0.25)?;
    println!("I + 0.25 Q = {:?}", t.to_rows());

    let back = RateMatrix::from_transition(&t, 0.25)?;
    println!("(T - I) / 0.25 = {:?}", back.to_rows());

    match validate_rate_matrix(array![[-1.0, 1.0], [-0.5, 0.5]]) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
    match validate_transition_matrix(array![[0.7, 0.2], [0.5, 0.5]]) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

//! Simulating a path from a known generator and recovering the rates.

use ndarray::array;
use ratemat::continuous::ml_estimate;
use ratemat::matrix::{validate_rate_matrix, StateSpace};
use ratemat::path::sufficient_stats;
use ratemat::simulate::{simulate, SimConfig};

fn main() -> ratemat::Result<()> {
    let q = validate_rate_matrix(array![[-3.0, 1.0, 2.0], [2.0, -3.0, 1.0], [1.0, 2.0, -3.0]])?;
    let space = StateSpace::new(["x", "y", "z"])?;
    let cfg = SimConfig::new(space, q.clone(), vec![1.0, 0.0, 0.0], 2000.0, 42)?;

    let out = simulate(&cfg);
    println!("{} jumps, unvisited {:?}", out.path.jump_count(), out.unvisited);

    let st = sufficient_stats(&out.path.into_sample_path()?);
    let ml = ml_estimate(&st);
    for x in 0..3 {
        for y in (0..3).filter(|&y| y != x) {
            println!("q[{x}][{y}] true {:.2}  estimated {:.3}", q.get(x, y), ml.get(x, y));
        }
    }
    Ok(())
}

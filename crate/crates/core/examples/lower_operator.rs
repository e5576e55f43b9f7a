//! Lower and upper transition rate operators of the imprecise set.

use ndarray::array;
use ratemat::continuous::imprecise_estimate;
use ratemat::lower::{lower_rate_apply, lower_rate_bruteforce, upper_rate_apply, Enumeration, Gamble};
use ratemat::path::SufficientStats;

fn main() -> ratemat::Result<()> {
    let st = SufficientStats::new(array![[0, 1, 1], [1, 0, 0], [0, 0, 0]], array![1.0, 0.75, 0.25])?;
    let set = imprecise_estimate(&st, 1.0)?;
    let h = Gamble::new(array![0.0, 1.0, 2.0])?;

    println!("lower: {}", lower_rate_apply(&set, &h)?);
    println!("upper: {}", upper_rate_apply(&set, &h)?);
    println!("row-wise vertices: {}", lower_rate_bruteforce(&set, &h, Enumeration::RowWise)?);
    println!("all 27 vertices:   {}", lower_rate_bruteforce(&set, &h, Enumeration::Global)?);
    Ok(())
}

//! Sufficient statistics of a sample path and of its grid discretisations.

use ratemat::matrix::StateSpace;
use ratemat::path::{discrete_stats, discretize, sufficient_stats, validate_path, Segment};

fn main() -> ratemat::Result<()> {
    let space = StateSpace::new(["a", "b", "c"])?;
    let segments = vec![Segment::new(0.0, 0), Segment::new(0.5, 1), Segment::new(1.25, 0), Segment::new(1.75, 2)];
    let path = validate_path(segments, 2.0, space)?;

    let st = sufficient_stats(&path);
    println!("jumps J = {}", st.jump_count());
    println!("counts n = {:?}", st.counts().rows().into_iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    println!("durations d = {}", st.durations());
    println!("min epoch gap = {}", path.min_epoch_gap());

    for m in [4, 8, 16] {
        let dp = discretize(&path, m)?;
        let ds = discrete_stats(&dp);
        let approx: Vec<f64> = ds.row_totals().iter().map(|&n| ds.delta * n as f64).collect();
        println!("m = {m:2}: grid states {:?}, delta n_x = {approx:?}", dp.states);
    }
    Ok(())
}

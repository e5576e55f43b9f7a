//! The imprecise set of posterior means: bounds, vertices and membership.

use ratemat::continuous::imprecise_estimate;
use ratemat::matrix::TransitionMatrix;
use ratemat::path::{sufficient_stats, validate_path, Segment};
use ratemat::matrix::StateSpace;

fn main() -> ratemat::Result<()> {
    let space = StateSpace::new(["a", "b", "c"])?;
    let path = validate_path(
        vec![Segment::new(0.0, 0), Segment::new(0.5, 1), Segment::new(1.25, 0), Segment::new(1.75, 2)],
        2.0,
        space,
    )?;
    let set = imprecise_estimate(&sufficient_stats(&path), 1.0)?;

    let b = set.element_bounds();
    for x in 0..3 {
        let row: Vec<String> = (0..3).map(|y| format!("[{:.3}, {:.3}]", b[[x, y]].lower, b[[x, y]].upper)).collect();
        println!("row {x}: {}", row.join(" "));
    }

    let vertices = set.extreme_points()?;
    println!("{} extreme points, all members: {}", vertices.len(), vertices.iter().all(|q| set.contains(q, 1e-12)));

    let centre = set.member(&TransitionMatrix::uniform(3))?;
    println!("uniform-location member: {:?}", centre.to_rows());

    let wider = imprecise_estimate(set.stats(), 0.0)?;
    println!("s = 0 keeps a single matrix: {}", wider.extreme_points()?.len());
    Ok(())
}

//! Refining the grid: discrete statistics and estimator sets approach their
//! continuous-time counterparts.

use ratemat::convergence::{dyadic_levels, theorem1_report};
use ratemat::matrix::StateSpace;
use ratemat::path::{validate_path, Segment};

fn main() -> ratemat::Result<()> {
    let space = StateSpace::new(["a", "b", "c"])?;
    let path = validate_path(
        vec![Segment::new(0.0, 0), Segment::new(0.5, 1), Segment::new(1.25, 0), Segment::new(1.75, 2)],
        2.0,
        space,
    )?;

    let report = theorem1_report(&path, "p1", 1.0, &dyadic_levels(2, 16), 1e-3)?;
    println!("largest vertex magnitude {}", report.max_vertex_magnitude);
    for r in &report.rows {
        let disc = r.vertex_discrepancy.map_or("undefined".to_owned(), |d| format!("{d:.3e}"));
        println!(
            "m = {:6}  counts match {:5}  |dn - d| = {:.2e} <= {:.2e}  discrepancy {disc}",
            r.m, r.count_match, r.duration_err, r.duration_bound
        );
    }
    println!("pass: {}", report.pass);
    Ok(())
}

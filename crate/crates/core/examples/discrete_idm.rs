//! Discrete-time estimators on a grid and the rate set they induce.

use ratemat::discrete::{dt_ml, dt_posterior_mean, ImpreciseTransSet};
use ratemat::matrix::{StateSpace, TransitionMatrix};
use ratemat::path::{discrete_stats, discretize, validate_path, Segment};

fn main() -> ratemat::Result<()> {
    let space = StateSpace::new(["a", "b", "c"])?;
    let path = validate_path(
        vec![Segment::new(0.0, 0), Segment::new(0.5, 1), Segment::new(1.25, 0), Segment::new(1.75, 2)],
        2.0,
        space,
    )?;

    for m in [4, 8] {
        let ds = discrete_stats(&discretize(&path, m)?);
        let ml = dt_ml(&ds);
        println!("m = {m}: T_ML = {:?}, undefined rows {:?}", ml.matrix.to_rows(), ml.undefined_rows());

        let t = dt_posterior_mean(1.0, &TransitionMatrix::uniform(3), &ds)?;
        println!("  Dirichlet mean (s = 1, uniform A) = {:?}", t.to_rows());

        let idm = ImpreciseTransSet::new(1.0, &ds)?;
        let b = idm.idm_bounds()?;
        println!("  IDM bound on a -> b: ({:.3}, {:.3})", b[[0, 1]].lower, b[[0, 1]].upper);

        let rates = idm.induced_rate_set();
        println!("  induced vertex for row a, mass on b: {}", rates.row_vertex(0, 1).unwrap());
    }
    Ok(())
}

//! Shifted partials: derivatives of order `k` multiplied by monomials of
//! degree `l`. Small depth-4 circuits against a generic polynomial.

use seplab::circuit::EasyClass;
use seplab::functions::random_dense;
use seplab::measures::{shifted_partials_matrix, Measure};
use seplab::seed::rng_from_seed;
use seplab::Field;

fn main() -> seplab::Result<()> {
    let q = Field::Rationals;
    let generic = random_dense(6, 4, 11, q);
    let class: EasyClass = "depth4:6,4,2,1".parse()?;
    for (k, l) in [(1, 0), (1, 1), (2, 0), (2, 1)] {
        let m = Measure::Shifted { order: k, shift_degree: l };
        let easy: Vec<usize> = (0..5)
            .map(|s| class.sample(q, &mut rng_from_seed(s)).and_then(|c| m.evaluate(&c.expand())))
            .collect::<seplab::Result<_>>()?;
        let shape = shifted_partials_matrix(&generic, k, l)?;
        println!(
            "k={k} l={l}: generic {:>3} ({} x {}), depth-4 samples {easy:?}",
            m.evaluate(&generic)?,
            shape.rows(),
            shape.cols()
        );
    }
    Ok(())
}
